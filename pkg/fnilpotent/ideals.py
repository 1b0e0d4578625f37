"""Ideals of F_p[x_1..x_n], the working ring R = P/A, and the classical ideal operations.

An ``IdealHandle`` is a generator list with a lazily computed, write-once reduced Groebner basis.
Two handles are equal exactly when their reduced Groebner bases coincide termwise.

>>> from fnilpotent.polys import make_ring
>>> P = make_ring(2, ['x', 'y'])
>>> x, y = P.gens
>>> IdealHandle(P, [x, y]) == IdealHandle(P, [y, x + y])
True
>>> x in IdealHandle(P, [x, y]), P.one in IdealHandle(P, [x, y])
(True, False)
>>> intersect(IdealHandle(P, [x]), IdealHandle(P, [y])) == IdealHandle(P, [x * y])
True
>>> colon(IdealHandle(P, [x**2]), IdealHandle(P, [x])) == IdealHandle(P, [x])
True
>>> dimension(IdealHandle(P, [])), dimension(IdealHandle(P, [x])), dimension(IdealHandle(P, [P.one]))
(2, 1, NEG_INFINITY)
"""
import warnings
from enum import Enum
from itertools import combinations

import attr
from sympy import isprime
from sympy.polys.rings import PolyElement

from fnilpotent import config
from fnilpotent.deco import log_calls
from fnilpotent.errors import (ModelingWarning, NonPrimeCharacteristicError, OracleRefusal, PreconditionError,
                               UsageError)
from fnilpotent.groebner import groebner_basis, normal_form
from fnilpotent.monomials import elimination_order, monomial_divides, monomials_of_degree, support
from fnilpotent.polys import (characteristic, embed, ensure_same_ring, format_poly, fresh_names, is_homogeneous,
                              make_ring, monomial_poly, partial_derivative, variable_names)
from fnilpotent.util import NEG_INFINITY, lazyprop


@attr.s(eq=False, repr=False)
class IdealHandle:
    ring = attr.ib()
    generators = attr.ib(converter=tuple)

    def __attrs_post_init__(self):
        ensure_same_ring(*self.generators, ring=self.ring)
        self.generators = tuple(g for g in self.generators if g)

    @lazyprop
    def gb(self):
        """The reduced Groebner basis, computed on first use."""
        return tuple(groebner_basis(self.generators, self.ring))

    @lazyprop
    def leading_monomials(self):
        return tuple(g.LM for g in self.gb)

    @property
    def is_zero(self):
        return not self.generators

    @property
    def is_unit(self):
        return len(self.gb) == 1 and self.gb[0] == self.ring.one

    def __contains__(self, f):
        return ideal_membership(f, self)

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __le__(self, other):
        return contains(other, self)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __repr__(self):
        return '(' + ', '.join(format_poly(g) for g in self.generators) + ')' if self.generators else '(0)'


def zero_ideal(ring):
    return IdealHandle(ring, [])


def unit_ideal(ring):
    return IdealHandle(ring, [ring.one])


def variables_ideal(ring):
    """The ideal (x_1..x_n) of P, i.e. m lifted to P."""
    return IdealHandle(ring, ring.gens)


def principal(f):
    return IdealHandle(f.ring, [f])


def ideal_membership(f, I):
    ensure_same_ring(f, ring=I.ring)
    return not normal_form(f, I.gb)


def ideal_equal(I, J):
    ensure_same_ring(J.ring.one, ring=I.ring)
    return I.gb == J.gb


def contains(I, J):
    """Whether J is contained in I."""
    return all(ideal_membership(g, I) for g in J.generators)


def ideal_sum(*ideals):
    ring = ideals[0].ring
    gens = []
    for I in ideals:
        ensure_same_ring(*I.generators, ring=ring)
        gens.extend(I.generators)
    return IdealHandle(ring, gens)


def ideal_product(I, J):
    ensure_same_ring(*J.generators, ring=I.ring)
    return IdealHandle(I.ring, [f * g for f in I.generators for g in J.generators])


def maximal_ideal_power(ring, N):
    """m^N, as the ideal of all monomials of degree N."""
    return IdealHandle(ring, [monomial_poly(ring, m) for m in monomials_of_degree(len(ring.gens), N)])


def _elimination_ring(ring, k):
    names = fresh_names(variable_names(ring), 't', k) + variable_names(ring)
    return make_ring(characteristic(ring), names, elimination_order(k))


def eliminate(polys, ring, k, target):
    """(polys) intersected with the subring on the last variables of ``ring``, moved into ``target``.

    ``ring`` must carry the block order eliminating its first k variables.
    """
    kept = []
    for g in groebner_basis(polys, ring):
        if not any(g.LM[:k]):
            kept.append(target.from_dict({m[k:]: c for m, c in g.items()}))
    return IdealHandle(target, kept)


@log_calls
def intersect(I, J):
    """I ∩ J, as (t·I + (1 - t)·J) ∩ P."""
    ensure_same_ring(*J.generators, ring=I.ring)
    ring = I.ring
    if I.is_zero or J.is_zero:
        return zero_ideal(ring)
    if I.is_unit:
        return J
    if J.is_unit:
        return I
    T = _elimination_ring(ring, 1)
    t = T.gens[0]
    gens = [t * embed(f, T, offset=1) for f in I.generators]
    gens += [(T.one - t) * embed(g, T, offset=1) for g in J.generators]
    return eliminate(gens, T, 1, ring)


def colon(I, J):
    """I : J = {g : g·J ⊆ I}, intersected over the generators f of J as (I ∩ (f)) / f."""
    ensure_same_ring(*J.generators, ring=I.ring)
    ring = I.ring
    result = None
    for f in J.generators:
        if ideal_membership(f, I):
            continue
        meet = intersect(I, principal(f))
        quotient = IdealHandle(ring, [h.exquo(f) for h in meet.generators])
        result = quotient if result is None else intersect(result, quotient)
    return unit_ideal(ring) if result is None else result


@log_calls
def saturate(I, J):
    """I : J^∞, by the colon chain I, I:J, (I:J):J, ... up to the first repeated term.

    Returns the fixed point and the number of colons taken (1 when I is already saturated).
    """
    current = I
    steps = 0
    while True:
        nxt = colon(current, J)
        steps += 1
        if nxt == current:
            return current, steps
        current = nxt


def _independent_set_size(leading_monomials, n):
    supports = [support(m) for m in leading_monomials]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if not any(s <= S for s in supports):
                return size
    return NEG_INFINITY


def dimension(I):
    """Krull dimension of P/I: the largest set of variables independent modulo the leading-term ideal.
    The unit ideal has dimension ``NEG_INFINITY``."""
    if I.is_unit:
        return NEG_INFINITY
    return _independent_set_size(I.leading_monomials, len(I.ring.gens))


def standard_monomials(I, cap=None):
    """Monomials not divisible by any leading monomial of I, ascending in the ring order.

    Raises ``PreconditionError`` when P/I is infinite and ``OracleRefusal`` past ``cap``.
    """
    if dimension(I) != 0 and not I.is_unit:
        raise PreconditionError(f"P/I is not finite-dimensional for I = {I!r}")
    if I.is_unit:
        return []
    cap = config.get('preimage_basis_cap') if cap is None else cap
    lms = I.leading_monomials
    n = len(I.ring.gens)
    start = (0,) * n
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if mm in seen or any(monomial_divides(lm, mm) for lm in lms):
                    continue
                seen.add(mm)
                nxt.append(mm)
                if len(seen) > cap:
                    raise OracleRefusal(f"more than {cap} standard monomials")
        frontier = nxt
    return sorted(seen, key=I.ring.order)


def quotient_dimension(outer, inner):
    """dim_{F_p} outer/inner for inner ⊆ outer of finite length.

    Cuts both by m^D for D = 1, 2, 4, ... until outer ∩ m^D ⊆ inner, after which
    outer/inner ≅ (outer + m^D)/(inner + m^D).
    """
    if contains(inner, outer):
        return 0
    ring = outer.ring
    D = 1
    while True:
        mD = maximal_ideal_power(ring, D)
        if contains(inner, intersect(outer, mD)):
            return len(standard_monomials(inner + mD)) - len(standard_monomials(outer + mD))
        D *= 2


class TriState(str, Enum):
    yes = 'yes'
    no = 'no'
    unknown = 'unknown'


@attr.s(eq=True, repr=False)
class RingSpec:
    """R = P/A with P = F_p[x_1..x_n] under a monomial order; m = (x_1..x_n) + A."""
    ambient = attr.ib()
    defining_ideal = attr.ib()
    order_name = attr.ib(default='grevlex', eq=False)

    def __attrs_post_init__(self):
        ensure_same_ring(*self.defining_ideal.generators, ring=self.ambient)
        if self.defining_ideal.is_unit:
            raise PreconditionError("the defining ideal is the unit ideal (R = 0)")
        if not all(is_homogeneous(g) for g in self.defining_ideal.generators):
            warnings.warn("non-homogeneous defining ideal: statements about the local ring at m "
                          "are modelled by the affine quotient", ModelingWarning)

    @classmethod
    def build(cls, p, variables, relations=(), order='grevlex'):
        if not isprime(int(p)):
            raise NonPrimeCharacteristicError(f"{p} is not prime")
        variables = tuple(variables)
        if not variables:
            raise UsageError("at least one variable is required")
        if len(set(variables)) != len(variables):
            raise UsageError(f"repeated variable names in {variables}")
        P = make_ring(p, variables, order)
        rels = [r if isinstance(r, PolyElement) else r(*P.gens) for r in relations]
        return cls(P, IdealHandle(P, rels), order)

    @property
    def p(self):
        return characteristic(self.ambient)

    @property
    def variables(self):
        return variable_names(self.ambient)

    @property
    def n(self):
        return len(self.ambient.gens)

    @property
    def A(self):
        return self.defining_ideal

    @lazyprop
    def m(self):
        return variables_ideal(self.ambient)

    @lazyprop
    def dim(self):
        return dimension(self.defining_ideal)

    def lift(self, I):
        """I + A, the preimage in P of the ideal of R generated by I."""
        if isinstance(I, IdealHandle):
            return ideal_sum(I, self.defining_ideal)
        return ideal_sum(IdealHandle(self.ambient, I), self.defining_ideal)

    def ideal(self, gens):
        return IdealHandle(self.ambient, gens)

    @lazyprop
    def is_monomial(self):
        return all(len(g) == 1 for g in self.defining_ideal.gb)

    @lazyprop
    def is_principal(self):
        return len(self.defining_ideal.gb) <= 1

    @lazyprop
    def is_homogeneous(self):
        return all(is_homogeneous(g) for g in self.defining_ideal.generators)

    def minimal_primes(self):
        """Minimal primes of a monomial A, each as the set of variable indices S of the prime (x_S):
        the minimal vertex covers of the supports of A's generators."""
        if not self.is_monomial:
            return None
        edges = [support(m) for m in self.defining_ideal.leading_monomials]
        covers = []
        for size in range(self.n + 1):
            for S in combinations(range(self.n), size):
                S = frozenset(S)
                if any(c <= S for c in covers):
                    continue
                if all(e & S for e in edges):
                    covers.append(S)
        return covers

    def is_equidimensional(self):
        if self.is_monomial:
            return len({len(S) for S in self.minimal_primes()}) == 1
        if self.is_principal:
            return True
        return None

    def radical(self):
        """√A, when computable (monomial A: squarefree parts of the generators)."""
        if self.defining_ideal.is_zero:
            return self.defining_ideal
        if not self.is_monomial:
            return None
        squarefree = [tuple(1 if a else 0 for a in m) for m in self.defining_ideal.leading_monomials]
        return IdealHandle(self.ambient, [monomial_poly(self.ambient, m) for m in squarefree])

    def is_reduced(self):
        A = self.defining_ideal
        if A.is_zero:
            return True
        if self.is_monomial:
            return self.radical() == A
        if self.is_principal:
            # Jacobian criterion; a hypersurface is Cohen-Macaulay, so generically reduced means reduced
            f = A.gb[0]
            jac = A + IdealHandle(self.ambient, [partial_derivative(f, i) for i in range(self.n)])
            return dimension(jac) < self.dim
        return None

    def reduced_spec(self):
        """R/√0 as a RingSpec, or None when the radical is not computable."""
        if self.is_reduced():
            return self
        rad = self.radical()
        if rad is None:
            return None
        return RingSpec(self.ambient, rad, self.order_name)

    def __repr__(self):
        from fnilpotent.dsl import format_ring
        return f"RingSpec({format_ring(self)!r})"


def in_R_circ(c, spec, assume_equidimensional=False):
    """Whether c avoids every minimal prime of R, as yes / no / unknown.

    Exact for monomial A. Otherwise decided by dim(A + (c)) < dim(A) when R is equidimensional
    (checked, or asserted with ``assume_equidimensional``), and unknown when it is not.
    """
    ensure_same_ring(c, ring=spec.ambient)
    if ideal_membership(c, spec.defining_ideal):
        return TriState.no
    if spec.is_monomial:
        for S in spec.minimal_primes():
            if not any(all(m[i] == 0 for i in S) for m in c.keys()):
                return TriState.no
        return TriState.yes
    equidimensional = spec.is_equidimensional()
    if equidimensional is None and assume_equidimensional:
        equidimensional = True
    if not equidimensional:
        return TriState.unknown
    cut = dimension(spec.defining_ideal + principal(c))
    return TriState.yes if cut < spec.dim else TriState.no


def is_parameter_ideal(q, spec):
    """Generated by dim R elements of m whose ideal in R is m-primary.

    >>> spec = RingSpec.build(2, ['x'])
    >>> x, = spec.ambient.gens
    >>> is_parameter_ideal(spec.ideal([x**3]), spec), is_parameter_ideal(spec.ideal([x + 1]), spec)
    (True, False)
    """
    if len(q.generators) != spec.dim:
        return False
    lifted = spec.lift(q)
    return contains(spec.lift(spec.m), lifted) and dimension(lifted) == 0
