"""The ``fnil`` command line.

Every subcommand parses its ring and inputs into an immutable ``Session`` before computing anything,
runs one library operation, and reports either as text or as JSON (``--json``) of the form::

    {"command", "ring", "inputs", "result", "status", "cap", "witnesses"}

``status`` is one of certified, cap-reached, witness or error. Exit codes: 0 for any completed
computation (cap-reached included), 1 for parse and usage errors, 2 for precondition violations.
``fnil --script FILE`` runs one command per line and exits with the largest code seen.

Default caps can be overridden through ``FNIL_EMAX``, ``FNIL_BIG_E``, ``FNIL_FIND_BUDGET``,
``FNIL_ORACLE_CAP``, ``FNIL_DEGREE_CAP`` and ``FNIL_MAX_GENERATORS``.
"""
import json
import logging
import shlex
import sys

import attr
import click

from fnilpotent import config
from fnilpotent.cohomology import (FAILS_WITH_WITNESS, PASSES_ALL_CHECKS, YES, colon_capturing_witnesses,
                                   f_nilpotent_test, filter_regular_check, filter_regular_find, h0_quotient,
                                   lc_constant, relative_h0_nilpotence)
from fnilpotent.dsl import format_ideal, format_ring, parse_ideal, parse_poly, parse_ring, parse_sequence
from fnilpotent.errors import FNilpotentError, UsageError
from fnilpotent.frobenius import (EQUAL_CERTIFIED, GAP_CANDIDATE, STABILIZED, bracket_power, closure_equality_check,
                                  frobenius_closure, frobenius_membership, frobenius_root, fte_estimate,
                                  tight_closure_upper)
from fnilpotent.ideals import colon, dimension, ideal_membership, saturate, zero_ideal
from fnilpotent.monomials import ORDERS
from fnilpotent.oracle import (ArtinianModel, enumerate_frobenius_closure, ideal_image, minimal_root_oracle,
                               multiplier_search)
from fnilpotent.polys import format_poly
from fnilpotent.util import NEG_INFINITY, FrozenDict

logger = logging.getLogger(__name__)

CERTIFIED = 'certified'
CAP_REACHED = 'cap-reached'
WITNESS = 'witness'
ERROR = 'error'


@attr.s(frozen=True)
class Session:
    """A parsed ring, its named ideals and polynomials, and the run options. Built once, never changed."""
    ring = attr.ib()
    ideals = attr.ib(converter=FrozenDict)
    polys = attr.ib(converter=FrozenDict)
    options = attr.ib(converter=FrozenDict)

    @classmethod
    def from_texts(cls, ring_text, order='grevlex', ideals=None, polys=None, sequence=None, **options):
        ring = parse_ring(ring_text, order=order)
        parsed_ideals = {}
        for name, text in (ideals or {}).items():
            if isinstance(text, (list, tuple)):
                parsed_ideals[name] = tuple(parse_ideal(t, ring) for t in text)
            elif text is not None:
                parsed_ideals[name] = parse_ideal(text, ring)
        parsed_polys = {name: parse_poly(text, ring) for name, text in (polys or {}).items() if text is not None}
        if sequence is not None:
            parsed_polys['sequence'] = tuple(parse_sequence(sequence, ring))
        return cls(ring, parsed_ideals, parsed_polys, options)

    def ideal(self, name, default=None):
        if name in self.ideals:
            return self.ideals[name]
        if default is not None:
            return default
        raise UsageError(f"--{name} is required")

    def poly(self, name):
        if name not in self.polys:
            raise UsageError(f"--{name.replace('_', '-')} is required")
        return self.polys[name]

    def lifted(self, name='ideal'):
        return self.ring.lift(self.ideal(name))

    @property
    def e_max(self):
        emax = self.options.get('emax')
        return config.default_emax(self.ring.p) if emax is None else emax

    @property
    def big_e(self):
        big_e = self.options.get('big_e')
        return config.get('big_e') if big_e is None else big_e

    def test_element(self):
        if 'test_element' in self.polys:
            return self.polys['test_element']
        if self.ring.A.is_zero:
            return self.ring.ambient.one
        raise UsageError("--test-element is required when the ring has relations")

    def flag(self, name):
        return bool(self.options.get(name))


@attr.s
class Outcome:
    result = attr.ib(factory=dict)
    status = attr.ib(default=CERTIFIED)
    witnesses = attr.ib(factory=list)
    cap = attr.ib(factory=dict)


def _gens(I):
    return [format_poly(g) for g in I.gb]


def _dim(d):
    return '-infinity' if d is NEG_INFINITY else d


def _witness(element, **where):
    return dict(element=format_poly(element), **where)


def _inputs(session):
    inputs = {name: ([format_ideal(I) for I in value] if isinstance(value, tuple) else format_ideal(value))
              for name, value in session.ideals.items()}
    for name, value in session.polys.items():
        inputs[name] = [format_poly(f) for f in value] if isinstance(value, tuple) else format_poly(value)
    return inputs


def _render_text(report):
    lines = [f"{report['command']} over {report['ring']}: {report['status']}"]
    for key, value in report['result'].items():
        if isinstance(value, list) and value and not isinstance(value[0], (list, dict)):
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in value)
        else:
            lines.append(f"{key}: {value}")
    for w in report['witnesses']:
        where = ', '.join(f"{k}={v}" for k, v in w.items() if k != 'element')
        lines.append(f"witness: {w['element']}" + (f" ({where})" if where else ''))
    if report['cap']:
        lines.append('cap: ' + ', '.join(f"{k}={v}" for k, v in sorted(report['cap'].items())))
    return '\n'.join(lines)


def emit(report, as_json):
    if as_json:
        click.echo(json.dumps(report, sort_keys=True, indent=2))
    else:
        click.echo(_render_text(report))


def _configure_logging(verbose):
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(level=level, format='%(name)s %(levelname)s: %(message)s')
    logging.getLogger('fnilpotent').setLevel(level)


def execute(command, kw, handler, ideals=(), polys=()):
    """Parse, run ``handler(session)``, report. Returns the exit code of a completed computation."""
    as_json = kw.pop('as_json')
    polys = list(polys) + (['test_element'] if 'test_element' not in polys else [])
    _configure_logging(kw.pop('verbose'))
    session = Session.from_texts(
        kw.pop('ring_text'), order=kw.pop('order') or config.get('order'),
        ideals={name: kw.pop(name, None) for name in ideals},
        polys={name: kw.pop(name, None) for name in polys},
        sequence=kw.pop('sequence', None), **kw)
    outcome = handler(session)
    report = dict(command=command, ring=format_ring(session.ring), inputs=_inputs(session),
                  result=outcome.result, status=outcome.status, cap=outcome.cap, witnesses=outcome.witnesses)
    emit(report, as_json)
    return 0


_COMMON_OPTIONS = [
    click.option('--ring', 'ring_text', required=True, help='Ring, e.g. "F2[x,y]/(x^2*y)".'),
    click.option('--emax', type=int, default=None, help='Frobenius exponent cap.'),
    click.option('--bigE', 'big_e', type=int, default=None, help='Depth of the tight-closure upper bound.'),
    click.option('--test-element', 'test_element', default=None, help='Test element c for tight closure.'),
    click.option('--seed', type=int, default=0, show_default=True),
    click.option('--assume-equidimensional', is_flag=True),
    click.option('--assume-reduced', is_flag=True),
    click.option('--verify-with-oracle', is_flag=True),
    click.option('--json', 'as_json', is_flag=True, help='Emit a JSON report.'),
    click.option('--order', type=click.Choice(sorted(ORDERS)), default=None, help='Monomial order (default grevlex).'),
    click.option('--verbose', is_flag=True),
]


def common_options(func):
    for option in reversed(_COMMON_OPTIONS):
        func = option(func)
    return func


ideal_option = click.option('--ideal', default=None, help='Ideal, e.g. "(x, y^2)".')
by_option = click.option('--by', default=None, help='Second ideal; defaults to the maximal ideal.')
poly_option = click.option('--poly', default=None, help='Polynomial.')
e_option = click.option('--e', 'e', type=int, default=1, show_default=True, help='Frobenius exponent.')
sequence_option = click.option('--sequence', default=None, help='Sequence, e.g. "T1+T2, T3".')


@click.group(invoke_without_command=True)
@click.option('--script', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Run one command per line; blank lines and # comments are skipped.')
@click.pass_context
def fnil(ctx, script):
    """Frobenius closure, tight closure and F-nilpotence over F_p[x_1..x_n]/A."""
    if ctx.invoked_subcommand is not None:
        return None
    if script is None:
        click.echo(ctx.get_help())
        return 0
    code = 0
    with open(script) as fp:
        for line in fp:
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            code = max(code, run(shlex.split(line)))
    return code


@fnil.command('gb')
@common_options
@ideal_option
def gb_cmd(**kw):
    """Reduced Groebner basis of I + A."""
    return execute('gb', kw, lambda s: Outcome({'generators': _gens(s.lifted())}), ideals=['ideal'])


@fnil.command('dim')
@common_options
@ideal_option
def dim_cmd(**kw):
    """Krull dimension of R/I (of R when no ideal is given)."""
    def handler(s):
        I = s.ideal('ideal', default=zero_ideal(s.ring.ambient))
        return Outcome({'dimension': _dim(dimension(s.ring.lift(I)))})
    return execute('dim', kw, handler, ideals=['ideal'])


@fnil.command('member')
@common_options
@ideal_option
@poly_option
def member_cmd(**kw):
    """Whether a polynomial lies in I + A."""
    def handler(s):
        return Outcome({'member': ideal_membership(s.poly('poly'), s.lifted())})
    return execute('member', kw, handler, ideals=['ideal'], polys=['poly'])


@fnil.command('colon')
@common_options
@ideal_option
@by_option
def colon_cmd(**kw):
    """(I + A) : J."""
    def handler(s):
        return Outcome({'generators': _gens(colon(s.lifted(), s.ideal('by', default=s.ring.m)))})
    return execute('colon', kw, handler, ideals=['ideal', 'by'])


@fnil.command('sat')
@common_options
@ideal_option
@by_option
def sat_cmd(**kw):
    """(I + A) : J^∞, with J the maximal ideal by default."""
    def handler(s):
        sat, steps = saturate(s.lifted(), s.ideal('by', default=s.ring.m))
        return Outcome({'generators': _gens(sat), 'steps': steps})
    return execute('sat', kw, handler, ideals=['ideal', 'by'])


@fnil.command('bpow')
@common_options
@ideal_option
@e_option
def bpow_cmd(**kw):
    """Frobenius bracket power I^[p^e] + A."""
    e = kw.pop('e')
    def handler(s):
        return Outcome({'generators': _gens(s.ring.lift(bracket_power(s.ideal('ideal'), e))), 'e': e})
    return execute('bpow', kw, handler, ideals=['ideal'])


@fnil.command('froot')
@common_options
@ideal_option
@e_option
def froot_cmd(**kw):
    """Frobenius root (I + A)^[1/p^e]: the least J with I + A ⊆ J^[p^e]."""
    e = kw.pop('e')
    def handler(s):
        K = s.lifted()
        root = frobenius_root(K, e)
        result = {'generators': _gens(root), 'e': e}
        if s.flag('verify_with_oracle'):
            if len(K.gb) != 1:
                raise UsageError("--verify-with-oracle on froot needs a principal ideal")
            oracle = minimal_root_oracle(K.gb[0], e)
            result['oracle'] = {'agrees': oracle == root, 'generators': _gens(oracle)}
        return Outcome(result)
    return execute('froot', kw, handler, ideals=['ideal'])


@fnil.command('fclosure')
@common_options
@ideal_option
def fclosure_cmd(**kw):
    """Frobenius closure I^F, up to --emax."""
    def handler(s):
        report = frobenius_closure(s.ideal('ideal'), s.ring, s.e_max)
        result = {'generators': _gens(report.closure), 'stabilization_exponent': report.stabilization_exponent,
                  'certified': report.certified, 'chain_length': len(report.chain)}
        if s.flag('verify_with_oracle'):
            model = ArtinianModel.from_spec(s.ring)
            enumerated = enumerate_frobenius_closure(s.ideal('ideal'), model, s.e_max)
            engine = set(ideal_image(model, report.closure).elements())
            result['oracle'] = {'agrees': enumerated == engine, 'size': len(enumerated)}
        status = CERTIFIED if report.certified == STABILIZED else CAP_REACHED
        return Outcome(result, status, cap={'e_max': s.e_max})
    return execute('fclosure', kw, handler, ideals=['ideal'])


@fnil.command('fmember')
@common_options
@ideal_option
@poly_option
def fmember_cmd(**kw):
    """Least e ≤ --emax with f^(p^e) ∈ I^[p^e] + A."""
    def handler(s):
        e = frobenius_membership(s.poly('poly'), s.ideal('ideal'), s.ring, s.e_max)
        return Outcome({'member': e is not None, 'e': e}, CERTIFIED if e is not None else CAP_REACHED,
                       cap={'e_max': s.e_max})
    return execute('fmember', kw, handler, ideals=['ideal'], polys=['poly'])


@fnil.command('tcupper')
@common_options
@ideal_option
def tcupper_cmd(**kw):
    """Upper bound for the tight closure I*, from the test element over e ≤ --bigE."""
    def handler(s):
        upper = tight_closure_upper(s.ideal('ideal'), s.ring, s.test_element(), s.big_e,
                                    assume_equidimensional=s.flag('assume_equidimensional'))
        return Outcome({'generators': _gens(upper), 'bound': 'upper'}, cap={'E': s.big_e})
    return execute('tcupper', kw, handler, ideals=['ideal'])


@fnil.command('ceq')
@common_options
@ideal_option
def ceq_cmd(**kw):
    """Compare I^F with the tight-closure upper bound."""
    def handler(s):
        bracket = closure_equality_check(s.ideal('ideal'), s.ring, s.test_element(), s.big_e, s.e_max,
                                         assume_equidimensional=s.flag('assume_equidimensional'))
        result = {'lower': _gens(bracket.lower), 'upper': _gens(bracket.upper), 'verdict': bracket.verdict}
        cap = {'E': s.big_e, 'e_max': s.e_max}
        if bracket.verdict == EQUAL_CERTIFIED:
            return Outcome(result, CERTIFIED, cap=cap)
        if bracket.verdict == GAP_CANDIDATE:
            if s.flag('verify_with_oracle'):
                c = multiplier_search(bracket.witness, s.ideal('ideal'), s.ring, config.get('multiplier_degree'),
                                      list(range(1, s.big_e + 1)),
                                      assume_equidimensional=s.flag('assume_equidimensional'))
                result['oracle'] = {'multiplier': None if c is None else format_poly(c)}
            return Outcome(result, WITNESS, [_witness(bracket.witness)], cap)
        return Outcome(result, CAP_REACHED, cap=cap)
    return execute('ceq', kw, handler, ideals=['ideal'])


@fnil.command('filterreg-check')
@common_options
@sequence_option
def filterreg_check_cmd(**kw):
    """Whether a sequence is filter regular and part of a system of parameters."""
    def handler(s):
        report = filter_regular_check(s.poly('sequence'), s.ring)
        return Outcome({'ok': report.ok, 'failing_index': report.failing_index, 'is_sop': report.is_sop,
                        'dims': [_dim(d) for d in report.dims]})
    return execute('filterreg-check', kw, handler)


@fnil.command('filterreg-find')
@common_options
@click.option('--t', 't', type=int, required=True, help='Sequence length.')
@click.option('--budget', type=int, default=None, help='Random draws per slot.')
def filterreg_find_cmd(**kw):
    """Seeded random search for a filter regular sequence."""
    t, budget = kw.pop('t'), kw.pop('budget')
    def handler(s):
        budget_used = config.get('find_budget') if budget is None else budget
        seq = filter_regular_find(s.ring, t, budget=budget_used, seed=s.options['seed'])
        cap = {'budget': budget_used, 'seed': s.options['seed']}
        if seq is None:
            return Outcome({'sequence': None}, CAP_REACHED, cap=cap)
        return Outcome({'sequence': [format_poly(x) for x in seq]}, cap=cap)
    return execute('filterreg-find', kw, handler)


@fnil.command('h0')
@common_options
@ideal_option
def h0_cmd(**kw):
    """(I + A) : m^∞ and the length of H^0_m(R/I)."""
    def handler(s):
        sat, length = h0_quotient(s.ideal('ideal'), s.ring)
        return Outcome({'generators': _gens(sat), 'length': length})
    return execute('h0', kw, handler, ideals=['ideal'])


@fnil.command('relnil')
@common_options
@ideal_option
@by_option
def relnil_cmd(**kw):
    """Whether (I + A) : K^∞ ⊆ I^F, with K the maximal ideal by default."""
    def handler(s):
        report = relative_h0_nilpotence(s.ideal('ideal'), s.ideal('by', default=s.ring.m), s.ring, s.e_max)
        result = {'verdict': report.verdict, 'exponent': report.exponent, 'saturation': _gens(report.saturation)}
        if report.verdict == YES:
            return Outcome(result, cap={'e_max': s.e_max})
        return Outcome(result, WITNESS, [_witness(report.witness)], {'e_max': s.e_max})
    return execute('relnil', kw, handler, ideals=['ideal', 'by'])


@fnil.command('lcconst')
@common_options
@ideal_option
@click.option('--force', is_flag=True, help='Continue on input that is not filter regular.')
def lcconst_cmd(**kw):
    """The (LC) table N_e for e ≤ --bigE and the constant C."""
    force = kw.pop('force')
    def handler(s):
        report = lc_constant(s.ideal('ideal'), s.ring, s.big_e, force=force)
        result = {'table': [list(row) for row in report.table], 'C': report.C, 'overflow_at': report.overflow_at}
        return Outcome(result, CERTIFIED if report.overflow_at is None else CAP_REACHED, cap={'E': s.big_e})
    return execute('lcconst', kw, handler, ideals=['ideal'])


@fnil.command('fnilpotent')
@common_options
@sequence_option
@click.option('--budget', type=int, default=None, help='Random draws per slot.')
@click.option('--exhaustive', is_flag=True, help='Run every check instead of stopping at the first failure.')
def fnilpotent_cmd(**kw):
    """Decide F-nilpotence of R up to the caps."""
    budget, exhaustive = kw.pop('budget'), kw.pop('exhaustive')
    def handler(s):
        c = s.polys.get('test_element')
        report = f_nilpotent_test(s.ring, c=c, e_max=s.e_max, E=s.big_e, seed=s.options['seed'],
                                  sequence=s.polys.get('sequence'),
                                  assume_equidimensional=s.flag('assume_equidimensional'),
                                  assume_reduced=s.flag('assume_reduced'), exhaustive=exhaustive, budget=budget)
        result = {
            'verdict': report.verdict,
            'sequence': None if report.sequence is None else [format_poly(x) for x in report.sequence],
            'lower': [[chk.s, chk.e, chk.verdict] for chk in report.lower],
            'top': [[chk.s, chk.e, chk.verdict] for chk in report.top],
            'notes': report.notes,
        }
        witnesses = [_witness(w.element, stage=w.stage, t=w.t, e=w.e) for w in report.witnesses]
        status = {PASSES_ALL_CHECKS: CERTIFIED, FAILS_WITH_WITNESS: WITNESS}.get(report.verdict, CAP_REACHED)
        return Outcome(result, status, witnesses, report.cap)
    return execute('fnilpotent', kw, handler)


@fnil.command('fte')
@common_options
@click.option('--ideal', multiple=True, help='Sample parameter ideal; repeat for several.')
def fte_cmd(**kw):
    """Sample-based estimate of the Frobenius test exponent for parameter ideals."""
    kw['ideal'] = tuple(kw['ideal'])
    def handler(s):
        samples = s.ideal('ideal')
        if not samples:
            raise UsageError("fte needs at least one --ideal")
        estimate = fte_estimate(s.ring, samples, s.e_max)
        return Outcome({'estimate': estimate, 'samples': len(samples)},
                       CERTIFIED if estimate is not None else CAP_REACHED, cap={'e_max': s.e_max})
    return execute('fte', kw, handler, ideals=['ideal'])


@fnil.command('witnesses')
@common_options
@sequence_option
@click.option('--t', 't', type=int, required=True, help='Prefix length.')
def witnesses_cmd(**kw):
    """Colon-capturing candidates ((x_1..x_t) + A) : x_(t+1)^∞, reduced modulo (x_1..x_t) + A."""
    t = kw.pop('t')
    def handler(s):
        found = colon_capturing_witnesses(s.poly('sequence'), s.ring, t)
        return Outcome({'candidates': [format_poly(g) for g in found]})
    return execute('witnesses', kw, handler)


def _report_error(argv, err, exit_code):
    if '--json' in argv:
        report = dict(command=argv[0] if argv else None, status=ERROR,
                      error={'type': type(err).__name__, 'message': str(err), 'exit_code': exit_code})
        click.echo(json.dumps(report, sort_keys=True, indent=2))
    elif isinstance(err, click.ClickException):
        err.show()
    else:
        click.echo(f"error: {err}", err=True)
    return exit_code


def run(argv):
    """Run one command line (without the program name) and return its exit code."""
    argv = list(argv)
    try:
        rv = fnil.main(args=argv, prog_name='fnil', standalone_mode=False)
    except click.ClickException as err:
        return _report_error(argv, err, UsageError.exit_code)
    except click.Abort:
        return UsageError.exit_code
    except FNilpotentError as err:
        return _report_error(argv, err, err.exit_code)
    return rv or 0


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == '__main__':
    main()
