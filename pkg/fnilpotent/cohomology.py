"""Filter regular sequences, H^0 through saturation, the (LC) constant and the F-nilpotence pipeline.

Local cohomology never appears as a module here. Everything is checked on ideals of R = P/A:

* H^0_m(R/I) ≅ (I : m^∞)/I, so it is nilpotent under Frobenius exactly when I : m^∞ ⊆ I^F.
* For a filter regular system of parameters x_1..x_d, the lower cohomology is Frobenius nilpotent
  iff (x_1^q..x_s^q) : m^∞ ⊆ (x_1^q..x_s^q)^F for all s < d and all q = p^e.
* The top cohomology is handled through q^F = q* for the parameter ideals q = (x_1^q..x_d^q).

Every "for all e" is truncated at a cap, and every report says which cap.

>>> from fnilpotent.ideals import RingSpec
>>> spec = RingSpec.build(2, ['x', 'y'])
>>> x, y = spec.ambient.gens
>>> report = filter_regular_check([x, y], spec)
>>> report.ok, report.is_sop, report.dims
(True, True, [2, 1, 0])
"""
import logging
import random
import warnings

import attr

from fnilpotent import config
from fnilpotent.deco import log_calls
from fnilpotent.errors import DegreeOverflowError, ModelingWarning, PreconditionError
from fnilpotent.frobenius import (GAP_CANDIDATE, INCONCLUSIVE, bracket_power, closure_equality_check,
                                  frobenius_membership)
from fnilpotent.groebner import normal_form
from fnilpotent.ideals import (IdealHandle, colon, contains, dimension, ideal_membership, ideal_product,
                               maximal_ideal_power, principal, quotient_dimension, saturate)
from fnilpotent.monomials import monomials_of_degree
from fnilpotent.polys import format_poly, from_terms, poly_pow

logger = logging.getLogger(__name__)

YES = 'yes'
NO_UP_TO_CAP = 'no-up-to-cap'

PASSES_ALL_CHECKS = 'passes-all-checks'
FAILS_WITH_WITNESS = 'fails-with-witness'


def h0_quotient(I, spec):
    """(I + A) : m^∞ and the length of H^0_m(R/I) ≅ ((I + A) : m^∞)/(I + A).

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> sat, length = h0_quotient(spec.ideal([x**2, x*y]), spec)
    >>> sat == spec.ideal([x]), length
    (True, 1)
    """
    lifted = spec.lift(I)
    sat, _ = saturate(lifted, spec.m)
    return sat, quotient_dimension(sat, lifted)


@attr.s
class FilterRegularReport:
    sequence = attr.ib()
    ok = attr.ib()
    failing_index = attr.ib()
    is_sop = attr.ib()
    dims = attr.ib(factory=list)


def _check_in_maximal_ideal(xs, spec):
    m_plus_A = spec.lift(spec.m)
    for i, x in enumerate(xs, 1):
        if not ideal_membership(x, m_plus_A):
            raise PreconditionError(f"sequence element {i} ({format_poly(x)}) is not in the maximal ideal",
                                    index=i)


def _step_ok(prev, x, spec):
    """(prev : x) ⊆ prev : m^∞, i.e. (prev : x)/prev has finite length."""
    sat, _ = saturate(prev, spec.m)
    return contains(sat, colon(prev, principal(x)))


def filter_regular_check(xs, spec):
    """Whether x_1..x_t is filter regular on R, and whether it is part of a system of parameters
    (dim R/(x_1..x_i) = dim R - i at every step). ``failing_index`` is 1-based."""
    xs = list(xs)
    _check_in_maximal_ideal(xs, spec)
    d = spec.dim
    dims = [d]
    failing_index = None
    prev = spec.A
    for i, x in enumerate(xs, 1):
        if failing_index is None and not _step_ok(prev, x, spec):
            failing_index = i
        prev = spec.lift(IdealHandle(spec.ambient, xs[:i]))
        dims.append(dimension(prev))
    is_sop = all(dims[i] == d - i for i in range(len(dims)))
    return FilterRegularReport(xs, failing_index is None, failing_index, is_sop, dims)


def _random_linear_form(rng, spec):
    p = spec.p
    while True:
        coeffs = [rng.randrange(p) for _ in range(spec.n)]
        if any(coeffs):
            break
    return from_terms(spec.ambient, [(tuple(int(j == i) for j in range(spec.n)), c)
                                     for i, c in enumerate(coeffs) if c])


def _random_quadratic_perturbation(rng, spec):
    quads = monomials_of_degree(spec.n, 2)
    terms = [(m, rng.randrange(spec.p)) for m in quads]
    return from_terms(spec.ambient, [(m, c) for m, c in terms if c])


@log_calls
def filter_regular_find(spec, t, budget=None, seed=0):
    """A filter regular sequence of length t that is part of a system of parameters, or None.

    Each slot tries ``budget`` random candidates from ``random.Random(seed)``: linear forms first, then,
    after half the budget, linear forms plus a random quadratic part.
    """
    budget = config.get('find_budget') if budget is None else budget
    if t > spec.dim:
        raise PreconditionError(f"t = {t} exceeds dim R = {spec.dim}")
    rng = random.Random(seed)
    seq = []
    prev = spec.A
    for slot in range(t):
        target_dim = spec.dim - slot - 1
        for draw in range(budget):
            x = _random_linear_form(rng, spec)
            if draw >= budget // 2:
                x = x + _random_quadratic_perturbation(rng, spec)
            if not x or not ideal_membership(x, spec.lift(spec.m)):
                continue
            nxt = prev + principal(x)
            if dimension(nxt) != target_dim or not _step_ok(prev, x, spec):
                continue
            logger.debug("filter regular slot %d filled after %d draws: %s", slot + 1, draw + 1, format_poly(x))
            seq.append(x)
            prev = nxt
            break
        else:
            logger.info("no filter regular element found for slot %d within %d draws", slot + 1, budget)
            return None
    return seq


def power_sequence_stability_check(xs, spec, exponents):
    """filter_regular_check on x_1^(n_1)..x_t^(n_t)."""
    powered = [poly_pow(x, n) for x, n in zip(xs, exponents)]
    return filter_regular_check(powered, spec).ok


@attr.s
class RelativeNilpotenceReport:
    """Whether (I + A) : K^∞ ⊆ I^F, checked generator by generator up to ``cap``."""
    verdict = attr.ib()
    exponent = attr.ib()
    witness = attr.ib()
    saturation = attr.ib(repr=False)
    cap = attr.ib()


def relative_h0_nilpotence(I, K, spec, e_max):
    """
    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> report = relative_h0_nilpotence(spec.ideal([x**2, x*y]), spec.m, spec, e_max=2)
    >>> report.verdict, report.witness == x
    ('no-up-to-cap', True)
    >>> relative_h0_nilpotence(spec.ideal([x]), spec.m, spec, e_max=2).verdict
    'yes'
    """
    lifted = spec.lift(I)
    sat, _ = saturate(lifted, K)
    exponent = 0
    for g in sat.gb:
        if ideal_membership(g, lifted):
            continue
        e = frobenius_membership(g, I, spec, e_max)
        if e is None:
            return RelativeNilpotenceReport(NO_UP_TO_CAP, None, g, sat, e_max)
        exponent = max(exponent, e)
    return RelativeNilpotenceReport(YES, exponent, None, sat, e_max)


@attr.s
class StageCheck:
    """One cell of a pipeline grid: ``stage`` is 'lower' or 'top', s the prefix length, e the exponent."""
    stage = attr.ib()
    s = attr.ib()
    e = attr.ib()
    verdict = attr.ib()
    witness = attr.ib(default=None)


def _require_filter_regular_sop(xs, spec):
    report = filter_regular_check(xs, spec)
    if not report.ok:
        raise PreconditionError(f"the sequence is not filter regular at element {report.failing_index}",
                                index=report.failing_index)
    if not report.is_sop:
        bad = next(i for i in range(1, len(report.dims)) if report.dims[i] != spec.dim - i)
        raise PreconditionError(f"the sequence is not part of a system of parameters at element {bad}", index=bad)
    return report


def lower_cohomology_nilpotence(spec, xs, t, e_max, exhaustive=False):
    """Check (x_1^q..x_s^q) : m^∞ ⊆ (x_1^q..x_s^q)^F for s = 1..t and e = 0..e_max.

    Cells are visited in (s, e) order and the run stops at the first failure unless ``exhaustive``.
    Returns the list of ``StageCheck``s.
    """
    xs = list(xs)
    if t > len(xs):
        raise PreconditionError(f"t = {t} exceeds the sequence length {len(xs)}")
    if t >= spec.dim and t > 0:
        raise PreconditionError(f"t = {t} must be below dim R = {spec.dim}")
    _require_filter_regular_sop(xs, spec)
    checks = []
    for s in range(1, t + 1):
        prefix = IdealHandle(spec.ambient, xs[:s])
        for e in range(e_max + 1):
            report = relative_h0_nilpotence(bracket_power(prefix, e), spec.m, spec, e_max)
            checks.append(StageCheck('lower', s, e, report.verdict, report.witness))
            if report.verdict != YES:
                logger.info("lower cohomology check fails at s=%d, e=%d: %s", s, e, format_poly(report.witness))
                if not exhaustive:
                    return checks
    return checks


@attr.s
class LCReport:
    """N_e = least N with m^N·((I^[p^e] + A) : m^∞) ⊆ I^[p^e] + A, and C = max_e ceil(N_e / p^e)."""
    ideal = attr.ib()
    table = attr.ib()
    C = attr.ib()
    overflow_at = attr.ib(default=None)


def _annihilated(N, sat, J):
    return contains(J, ideal_product(maximal_ideal_power(J.ring, N), sat))


def _least_annihilating_power(sat, J):
    if contains(J, sat):
        return 0
    hi = 1
    while not _annihilated(hi, sat, J):
        hi *= 2
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _annihilated(mid, sat, J):
            hi = mid
        else:
            lo = mid + 1
    return hi


def _ceil_div(a, b):
    return -(-a // b)


@log_calls
def lc_constant(I, spec, E, force=False):
    """Tabulate N_e for e = 0..E and the constant C bounding N_e ≤ C·p^e.

    I must be generated by a filter regular sequence; ``force`` downgrades that to a warning.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> report = lc_constant(spec.ideal([x]), spec, 2)
    >>> report.table, report.C
    ([(0, 0), (1, 0), (2, 0)], 0)
    """
    gens = list(I.generators)
    report = filter_regular_check(gens, spec)
    if not report.ok:
        if not force:
            raise PreconditionError(f"the generators are not filter regular at element {report.failing_index}",
                                    index=report.failing_index)
        warnings.warn("estimating the (LC) constant for an ideal not generated by a filter regular sequence",
                      ModelingWarning)
    table = []
    overflow_at = None
    for e in range(E + 1):
        try:
            J = spec.lift(bracket_power(I, e))
            sat, _ = saturate(J, spec.m)
            table.append((e, _least_annihilating_power(sat, J)))
        except DegreeOverflowError as err:
            logger.warning("(LC) table truncated at e=%d: %s", e, err)
            overflow_at = e
            break
    p = spec.p
    C = max((_ceil_div(N, p ** e) for e, N in table), default=0)
    return LCReport(I, table, C, overflow_at)


@attr.s
class Witness:
    element = attr.ib()
    stage = attr.ib()
    t = attr.ib()
    e = attr.ib()


@attr.s
class FNilpotenceReport:
    sequence = attr.ib()
    lower = attr.ib()
    top = attr.ib()
    verdict = attr.ib()
    witnesses = attr.ib(factory=list)
    cap = attr.ib(factory=dict)
    notes = attr.ib(factory=list)
    test_element = attr.ib(default=None)


def _top_stage_spec(spec, assume_reduced):
    if assume_reduced or spec.is_reduced():
        return spec
    reduced = spec.reduced_spec()
    if reduced is None:
        raise PreconditionError("cannot decide whether R is reduced; assert it to run the top-dimensional checks")
    return reduced


@log_calls
def f_nilpotent_test(spec, c=None, e_max=None, E=None, seed=0, sequence=None, assume_equidimensional=False,
                     assume_reduced=False, exhaustive=False, budget=None):
    """Test whether R is F-nilpotent, up to caps.

    1. Find (or check) a filter regular system of parameters x_1..x_d.
    2. Lower cohomology: ``lower_cohomology_nilpotence`` for t = d - 1. No equidimensionality is needed.
    3. Top cohomology, on R/√0: ``closure_equality_check`` on (x_1^q..x_d^q) for e = 0..e_max with test
       element c. Requires R equidimensional (checked, or asserted).

    A witness from either stage shows that R is not F-nilpotent. Passing means no failure was found
    within the caps.
    """
    e_max = config.default_emax(spec.p) if e_max is None else e_max
    E = config.get('big_e') if E is None else E
    cap = dict(e_max=e_max, E=E)
    d = spec.dim
    if d == 0:
        return FNilpotenceReport([], [], [], PASSES_ALL_CHECKS, cap=cap,
                                 notes=["dimension 0: every element of the nilradical is Frobenius nilpotent"])
    if sequence is None:
        sequence = filter_regular_find(spec, d, budget=budget, seed=seed)
        if sequence is None:
            return FNilpotenceReport(None, [], [], INCONCLUSIVE, cap=cap,
                                     notes=["no filter regular system of parameters found within the budget"])
    sequence = list(sequence)
    if len(sequence) != d:
        raise PreconditionError(f"a system of parameters needs {d} elements, got {len(sequence)}")
    _require_filter_regular_sop(sequence, spec)

    lower = lower_cohomology_nilpotence(spec, sequence, d - 1, e_max, exhaustive=exhaustive)
    witnesses = [Witness(chk.witness, 'lower', chk.s, chk.e) for chk in lower if chk.witness is not None]
    report = FNilpotenceReport(sequence, lower, [], PASSES_ALL_CHECKS, witnesses, cap)
    if witnesses and not exhaustive:
        report.verdict = FAILS_WITH_WITNESS
        return report

    equidimensional = spec.is_equidimensional()
    if equidimensional is False:
        report.verdict = FAILS_WITH_WITNESS if witnesses else INCONCLUSIVE
        report.notes.append("R is not equidimensional, so it is not F-nilpotent; "
                            "the failure lies beyond the caps of the lower cohomology checks")
        return report
    if equidimensional is None and not assume_equidimensional:
        raise PreconditionError("cannot decide whether R is equidimensional; "
                                "assert it to run the top-dimensional checks")

    top_spec = _top_stage_spec(spec, assume_reduced)
    if top_spec is not spec:
        report.notes.append("top-dimensional checks run on R/√0")
    if c is None:
        if not top_spec.A.is_zero:
            raise PreconditionError("a test element c is required for the top-dimensional checks")
        c = top_spec.ambient.one
    report.test_element = c
    full = IdealHandle(top_spec.ambient, sequence)
    inconclusive = False
    for e in range(e_max + 1):
        bracket = closure_equality_check(bracket_power(full, e), top_spec, c, E, e_max,
                                         assume_equidimensional=assume_equidimensional)
        report.top.append(StageCheck('top', d, e, bracket.verdict, bracket.witness))
        if bracket.verdict == GAP_CANDIDATE:
            report.witnesses.append(Witness(bracket.witness, 'top', d, e))
            if not exhaustive:
                break
        elif bracket.verdict == INCONCLUSIVE:
            inconclusive = True

    if report.witnesses:
        report.verdict = FAILS_WITH_WITNESS
    elif inconclusive:
        report.verdict = INCONCLUSIVE
    return report


def colon_capturing_witnesses(xs, spec, t):
    """Generators of ((x_1..x_t) + A) : x_(t+1)^∞, reduced modulo (x_1..x_t) + A and dropped when zero.

    Under colon capturing these lie in (x_1..x_t)*, so they are natural candidates for tight-closure gaps.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> colon_capturing_witnesses([x, y], spec, 1)
    []
    """
    if t >= spec.dim:
        raise PreconditionError(f"t = {t} must be below dim R = {spec.dim}")
    xs = list(xs)
    if t >= len(xs):
        raise PreconditionError(f"the sequence needs an element x_{t + 1}")
    J = spec.lift(IdealHandle(spec.ambient, xs[:t]))
    sat, _ = saturate(J, principal(xs[t]))
    out = []
    for g in sat.gb:
        r = normal_form(g, J.gb)
        if r:
            out.append(r)
    return out
