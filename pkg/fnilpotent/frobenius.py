"""Frobenius bracket powers, Frobenius roots and preimages, Frobenius closure and the tight-closure bracket.

Throughout, q = p^e and R = P/A. Ideals of R are handled through their preimages in P, which
always contain A. Since coefficients in F_p are fixed by Frobenius, (sum a_m x^m)^q = sum a_m x^(q·m),
so every Frobenius power is an exponent scaling.

Two inverse operations of the bracket power are provided:

* ``frobenius_root(K, e)``: the smallest J with K ⊆ J^[q] (generators split along the basis of P
  over its q-th power subring).
* ``frobenius_preimage(K, e)``: the ideal {f : c·f^q ∈ K}, which is what membership in a Frobenius
  or tight closure asks about. It always lies inside the root, and is usually smaller.

>>> from fnilpotent.ideals import RingSpec
>>> spec = RingSpec.build(2, ['x', 'y'])
>>> x, y = spec.ambient.gens
>>> frobenius_root(spec.ideal([x**2 + y**3]), 1) == spec.ideal([x, y])
True
>>> frobenius_preimage(spec.ideal([x**2 + y**3]), 1) == spec.ideal([x**2 + y**3])
True
>>> frobenius_closure(spec.ideal([x]), spec, e_max=2).certified
'stabilized'
"""
import logging
import warnings

import attr

from fnilpotent import config
from fnilpotent.deco import log_calls
from fnilpotent.errors import (DegreeOverflowError, InvariantViolation, ModelingWarning, OracleRefusal,
                               PreconditionError)
from fnilpotent.groebner import normal_form
from fnilpotent.ideals import (IdealHandle, TriState, colon, contains, dimension, eliminate, ideal_membership,
                               ideal_sum, in_R_circ, intersect, is_parameter_ideal, principal,
                               standard_monomials, zero_ideal)
from fnilpotent.linalg import kernel
from fnilpotent.monomials import elimination_order, frobenius_monomial
from fnilpotent.polys import (characteristic, embed, ensure_same_ring, format_poly, fresh_names, from_terms,
                              frobenius_power, make_ring, monomial_poly, partial_derivative, variable_names)

logger = logging.getLogger(__name__)

STABILIZED = 'stabilized'
CAP_REACHED = 'cap-reached'

EQUAL_CERTIFIED = 'equal-certified'
GAP_CANDIDATE = 'gap-candidate'
INCONCLUSIVE = 'inconclusive'


def _at_exponent(func, e, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except DegreeOverflowError as err:
        if err.e is not None:
            raise
        raise err.at_frobenius_exponent(e) from err


def bracket_power(I, e):
    """I^[p^e], generated by the p^e-th powers of the generators of I.

    >>> from fnilpotent.polys import make_ring
    >>> x, y = make_ring(2, ['x', 'y']).gens
    >>> bracket_power(IdealHandle(x.ring, [x, y]), 1)
    (x^2, y^2)
    >>> bracket_power(IdealHandle(x.ring, [x + y]), 1)
    (x^2 + y^2)
    """
    if e < 0:
        raise PreconditionError(f"the Frobenius exponent must be non-negative, got {e}")
    if e == 0:
        return I
    return _at_exponent(lambda: IdealHandle(I.ring, [frobenius_power(g, e) for g in I.generators]), e)


def _root_components(g, q):
    """The h_r with g = sum_r h_r^q · x^r, over the residues r with all exponents below q."""
    parts = {}
    for m, c in g.items():
        r = tuple(a % q for a in m)
        parts.setdefault(r, {})[tuple(a // q for a in m)] = c
    return [g.ring.from_dict(terms) for r, terms in sorted(parts.items())]


def frobenius_root(K, e):
    """K^[1/p^e]: the smallest ideal J of P with K ⊆ J^[p^e].

    P is free over its subring of p^e-th powers on the monomials with all exponents below p^e, so
    each generator decomposes uniquely as g = sum_r h_r^q · x^r, and the root is generated by all h_r.

    >>> from fnilpotent.polys import make_ring
    >>> x, y = make_ring(2, ['x', 'y']).gens
    >>> frobenius_root(IdealHandle(x.ring, [x**2 * y**3]), 1)
    (x*y)
    >>> frobenius_root(IdealHandle(x.ring, [x**2 + y**3]), 1) == IdealHandle(x.ring, [x, y])
    True
    """
    if e < 0:
        raise PreconditionError(f"the Frobenius exponent must be non-negative, got {e}")
    if e == 0 or K.is_zero:
        return K
    q = characteristic(K.ring) ** e
    gens = []
    for g in K.generators:
        gens.extend(_root_components(g, q))
    return IdealHandle(K.ring, gens)


def _column(K, e, c, mu, index):
    """The normal form of c·mu^(p^e) modulo K, as a sparse vector keyed by (index, monomial)."""
    p = characteristic(K.ring)
    q = p ** e
    image = normal_form(c * monomial_poly(K.ring, frobenius_monomial(mu, q)), K.gb)
    return {(index, m): int(a) % p for m, a in image.items()}


def _linear_preimage(conditions, floor):
    """floor + {f : c·f^(p^e) ∈ K for every (K, e, c) in conditions}, for P/floor finite and floor inside
    each of these preimages.

    f lies in the answer exactly when its normal form modulo floor does, and on that finite-dimensional
    space each condition is F_p-linear: c·(sum a_mu mu)^q = sum a_mu c·mu^q.
    """
    ring = floor.ring
    p = characteristic(ring)
    basis = standard_monomials(floor)
    columns = []
    for mu in basis:
        col = {}
        for index, (K, e, c) in enumerate(conditions):
            col.update(_column(K, e, c, mu, index))
        columns.append(col)
    relations = kernel(columns, p)
    logger.debug("linear preimage: %d standard monomials, %d relations", len(basis), len(relations))
    extra = [from_terms(ring, [(basis[j], a) for j, a in combo.items()]) for combo in relations]
    return IdealHandle(ring, list(floor.generators) + extra)


def _graph_preimage(K, e, c, floor=None):
    """{f : c·f^q ∈ K}, q = p^e, as (K:c + (y_i - x_i^q)) ∩ F_p[y], with y renamed back to x."""
    ring = K.ring
    n = len(ring.gens)
    q = characteristic(ring) ** e
    target = K if c == ring.one else colon(K, principal(c))
    if target.is_unit:
        return target
    names = variable_names(ring)
    T = make_ring(characteristic(ring), fresh_names(names, 't', n) + names, elimination_order(n))
    ys = T.gens[n:]
    gens = [embed(g, T, offset=0) for g in target.generators]
    gens += [ys[i] - monomial_poly(T, frobenius_monomial(_unit(2 * n, i), q)) for i in range(n)]
    if floor is not None:
        gens += [embed(g, T, offset=n) for g in floor.generators]
    return eliminate(gens, T, n, ring)


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def _check_floor(conditions, floor):
    for K, e, c in conditions:
        for g in floor.generators:
            if not ideal_membership(c * frobenius_power(g, e), K):
                raise PreconditionError(f"the floor generator {format_poly(g)} is not in the preimage")


def _joint_preimage(conditions, floor=None):
    ring = conditions[0][0].ring
    if floor is not None:
        _check_floor(conditions, floor)
        if dimension(floor) == 0:
            try:
                return _linear_preimage(conditions, floor)
            except OracleRefusal:
                logger.info("quotient by the floor too large for linear algebra, eliminating instead")
    result = None
    for K, e, c in conditions:
        T = _graph_preimage(K, e, c, floor)
        result = T if result is None else intersect(result, T)
    return result if result is not None else zero_ideal(ring)


@log_calls
def frobenius_preimage(K, e, floor=None, multiplier=None):
    """{f ∈ P : c·f^(p^e) ∈ K}, with c = ``multiplier`` (default 1).

    ``floor``, when given, must be an ideal already inside the answer. If P/floor is finite the answer is
    found by linear algebra over the standard monomials of floor; otherwise by eliminating x from
    K:c + (y_i - x_i^q).

    >>> from fnilpotent.polys import make_ring
    >>> x, y = make_ring(3, ['x', 'y']).gens
    >>> K = IdealHandle(x.ring, [x**3, y**6])
    >>> frobenius_preimage(K, 1) == IdealHandle(x.ring, [x, y**2])
    True
    >>> frobenius_preimage(K, 1, floor=IdealHandle(x.ring, [x, y**2])) == IdealHandle(x.ring, [x, y**2])
    True
    """
    if e < 0:
        raise PreconditionError(f"the Frobenius exponent must be non-negative, got {e}")
    ring = K.ring
    c = ring.one if multiplier is None else multiplier
    ensure_same_ring(c, ring=ring)
    return _at_exponent(_joint_preimage, e, [(K, e, c)], floor)


@attr.s
class ClosureReport:
    """The ascending chain J_e = {f : f^(p^e) ∈ I^[p^e] + A}, e = 0..cap, and where it settled.

    ``stabilization_exponent`` is the least e from which J_e, ..., J_cap all agree, or None when
    J_(cap-1) ≠ J_cap. A repeat can be followed by growth, so ``stabilized`` is evidence, not proof.
    """
    closure = attr.ib()
    stabilization_exponent = attr.ib()
    cap = attr.ib()
    certified = attr.ib()
    chain = attr.ib(factory=list, repr=False)


@log_calls
def frobenius_closure(I, spec, e_max):
    """I^F in R, approximated by J_(e_max). Every J_e up to the cap is computed.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(3, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> report = frobenius_closure(spec.ideal([x]), spec, e_max=2)
    >>> report.closure, report.stabilization_exponent, report.certified
    ((x), 0, 'stabilized')

    A repeat does not end the chain: in F_2[y]/(y^3), J_0 = J_1 = (y^2) but y^4 ∈ (y^8, y^3).

    >>> spec = RingSpec.build(2, ['y'], [lambda y: y**3])
    >>> y, = spec.ambient.gens
    >>> report = frobenius_closure(spec.ideal([y**2]), spec, e_max=3)
    >>> report.closure == spec.ideal([y]), report.stabilization_exponent
    (True, 2)
    """
    if e_max < 1:
        raise PreconditionError(f"e_max must be at least 1, got {e_max}")
    base = spec.lift(I)
    chain = [base]
    for e in range(1, e_max + 1):
        K = ideal_sum(bracket_power(I, e), spec.A)
        J = frobenius_preimage(K, e, floor=chain[-1])
        if not contains(J, chain[-1]):
            raise InvariantViolation(f"Frobenius closure chain is not ascending at e={e}")
        chain.append(J)
    start = len(chain) - 1
    while start > 0 and chain[start - 1] == chain[-1]:
        start -= 1
    if start == len(chain) - 1:
        logger.info("Frobenius closure chain still growing at its cap e_max=%d", e_max)
        return ClosureReport(chain[-1], None, e_max, CAP_REACHED, chain)
    logger.info("Frobenius closure chain constant from e=%d to the cap e_max=%d", start, e_max)
    return ClosureReport(chain[-1], start, e_max, STABILIZED, chain)


def frobenius_membership(f, I, spec, e_max):
    """The least e ≤ e_max with f^(p^e) ∈ I^[p^e] + A, or None.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x'], [lambda x: x**2])
    >>> x, = spec.ambient.gens
    >>> frobenius_membership(x, spec.ideal([]), spec, e_max=2)
    1
    """
    ensure_same_ring(f, ring=spec.ambient)
    for e in range(e_max + 1):
        K = ideal_sum(bracket_power(I, e), spec.A)
        if _at_exponent(lambda: ideal_membership(frobenius_power(f, e), K), e):
            return e
    return None


def _require_multiplier(c, spec, assume_equidimensional):
    ensure_same_ring(c, ring=spec.ambient)
    if ideal_membership(c, spec.A):
        raise PreconditionError("the multiplier c is zero in R")
    verdict = in_R_circ(c, spec, assume_equidimensional=assume_equidimensional)
    if verdict == TriState.no:
        raise PreconditionError(f"the multiplier {format_poly(c)} lies in a minimal prime of R")
    if verdict == TriState.unknown:
        raise PreconditionError(f"cannot decide whether {format_poly(c)} avoids the minimal primes of R; "
                                "assert equidimensionality to use the dimension criterion")


@log_calls
def tight_closure_upper(I, spec, c, E, assume_equidimensional=False):
    """The intersection over 0 ≤ e ≤ E of T_e = {f : c·f^(p^e) ∈ I^[p^e] + A}.

    For a test element c this contains I*; it is only ever an upper bound.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(3, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> tight_closure_upper(spec.ideal([x]), spec, spec.ambient.one, 2)
    (x)
    """
    if E < 1:
        raise PreconditionError(f"E must be at least 1, got {E}")
    _require_multiplier(c, spec, assume_equidimensional)
    base = spec.lift(I)
    conditions = [(ideal_sum(bracket_power(I, e), spec.A), e, c) for e in range(E + 1)]
    try:
        return _joint_preimage(conditions, floor=base)
    except DegreeOverflowError as err:
        raise err.at_frobenius_exponent(E) if err.e is None else err


@attr.s
class TightClosureBracket:
    """lower = I^F (as computed) ⊆ I* ⊆ upper, with a verdict on whether the sandwich closes."""
    lower = attr.ib()
    upper = attr.ib()
    E = attr.ib()
    test_element = attr.ib()
    verdict = attr.ib()
    witness = attr.ib(default=None)
    e_max = attr.ib(default=None)
    closure_report = attr.ib(default=None, repr=False)


def closure_equality_check(I, spec, c, E, e_max, assume_equidimensional=False):
    """Compare I^F with the tight-closure upper bound.

    * equal-certified: every generator of upper is shown to be in I^F, so I^F = I* = upper.
    * gap-candidate: some Groebner basis element of upper is not in I^F up to e_max; it is the witness.
    * inconclusive: a membership check overflowed.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> closure_equality_check(spec.ideal([x, y**2]), spec, spec.ambient.one, 2, 2).verdict
    'equal-certified'
    """
    report = frobenius_closure(I, spec, e_max)
    lower = report.closure
    upper = tight_closure_upper(I, spec, c, E, assume_equidimensional=assume_equidimensional)
    if not contains(upper, lower):
        raise PreconditionError(f"{format_poly(c)} is not a test element: the Frobenius closure "
                                "is not inside the computed upper bound")
    bracket = dict(E=E, test_element=c, e_max=e_max, closure_report=report)
    if contains(lower, upper):
        return TightClosureBracket(lower, upper, verdict=EQUAL_CERTIFIED, **bracket)
    members = []
    overflowed = False
    for g in upper.gb:
        if ideal_membership(g, lower):
            continue
        try:
            e = frobenius_membership(g, I, spec, e_max)
        except DegreeOverflowError as err:
            logger.warning("membership check of %s overflowed: %s", format_poly(g), err)
            overflowed = True
            continue
        if e is None:
            return TightClosureBracket(lower, upper, verdict=GAP_CANDIDATE, witness=g, **bracket)
        members.append(g)
    if overflowed:
        return TightClosureBracket(lower, upper, verdict=INCONCLUSIVE, **bracket)
    lower = ideal_sum(lower, IdealHandle(spec.ambient, members))
    if lower != upper:
        raise InvariantViolation("enlarged Frobenius closure differs from the upper bound")
    return TightClosureBracket(lower, upper, verdict=EQUAL_CERTIFIED, **bracket)


def fte_estimate(spec, parameter_ideals, e_max, closure_e_max=None):
    """The least e ≤ e_max with (q^F)^[p^e] = q^[p^e] in R for every sample q, or None.

    A lower estimate of the Frobenius test exponent for parameter ideals, from the given samples only.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x'], [lambda x: x**2])
    >>> fte_estimate(spec, [spec.ideal([])], e_max=3), fte_estimate(spec, [spec.ideal([])], e_max=0)
    (1, None)
    """
    closure_e_max = config.default_emax(spec.p) if closure_e_max is None else closure_e_max
    for i, q in enumerate(parameter_ideals):
        if not is_parameter_ideal(q, spec):
            raise PreconditionError(f"sample {i} ({q!r}) is not a parameter ideal", index=i)
    closures = [frobenius_closure(q, spec, closure_e_max).closure for q in parameter_ideals]
    for e in range(e_max + 1):
        if all(ideal_sum(bracket_power(qF, e), spec.A) == ideal_sum(bracket_power(q, e), spec.A)
               for q, qF in zip(parameter_ideals, closures)):
            return e
    return None


def jacobian_test_elements(spec, assume_equidimensional=False):
    """Suggested test elements: partial derivatives of the generators of A, and their terms, that avoid
    every minimal prime. These are suggestions only; callers decide whether to trust them.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(7, ['x', 'y', 'z'], [lambda x, y, z: x**3 + y**3 + z**3])
    >>> [format_poly(c) for c in jacobian_test_elements(spec)]
    ['x^2', 'y^2', 'z^2']
    """
    ring = spec.ambient
    if spec.A.is_zero:
        return [ring.one]
    if not spec.is_homogeneous:
        warnings.warn("test element suggestions for a non-homogeneous A are only heuristic", ModelingWarning)
    candidates = []
    for g in spec.A.gb:
        for i in range(spec.n):
            d = partial_derivative(g, i)
            if not d:
                continue
            candidates.append(d.monic())
            candidates.extend(monomial_poly(ring, m) for m in d.monoms())
    seen = []
    for d in candidates:
        if d in seen or ideal_membership(d, spec.A):
            continue
        if in_R_circ(d, spec, assume_equidimensional) == TriState.yes:
            seen.append(d)
    return seen
