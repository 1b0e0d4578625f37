"""Brute-force verifiers at finite scale.

Everything here works by literal enumeration over F_p, independently of the Groebner-basis
machinery in ``frobenius``, and refuses loudly (``OracleRefusal``) rather than truncating when a
search would exceed its cap. Elements of an Artinian ring are dense coordinate tuples over its
standard-monomial basis.

>>> from fnilpotent.ideals import RingSpec
>>> spec = RingSpec.build(2, ['x'], [lambda x: x**2])
>>> model = ArtinianModel.from_spec(spec)
>>> model.basis
[(0,), (1,)]
>>> sorted(enumerate_frobenius_closure(spec.ideal([]), model, e_max=1))
[(0, 0), (0, 1)]
"""
import logging
from itertools import combinations, product

import attr

from fnilpotent import config
from fnilpotent.errors import OracleRefusal
from fnilpotent.frobenius import bracket_power
from fnilpotent.groebner import normal_form
from fnilpotent.ideals import (IdealHandle, TriState, contains, ideal_membership, ideal_sum, in_R_circ,
                              standard_monomials)
from fnilpotent.linalg import echelon_basis
from fnilpotent.monomials import checked_mul, monomials_up_to_degree
from fnilpotent.polys import characteristic, ensure_same_ring, frobenius_power, from_terms, monomial_poly
from fnilpotent.util import lazyprop

logger = logging.getLogger(__name__)


def _cap(cap):
    return config.get('oracle_cap') if cap is None else cap


@attr.s
class Subspace:
    """An F_p-subspace of coordinate space, kept as the rows of its reduced echelon form."""
    p = attr.ib()
    length = attr.ib()
    rows = attr.ib(factory=list)

    @classmethod
    def spanned_by(cls, p, length, vectors):
        return cls(p, length, echelon_basis([_sparse(v) for v in vectors], p, length))

    def _with(self, v):
        return echelon_basis(self.rows + [_sparse(v)], self.p, self.length)

    def add(self, v):
        rows = self._with(v)
        if len(rows) == len(self.rows):
            return False
        self.rows = rows
        return True

    def __contains__(self, v):
        return len(self._with(v)) == len(self.rows)

    @property
    def dim(self):
        return len(self.rows)

    def elements(self):
        for coeffs in product(range(self.p), repeat=len(self.rows)):
            v = [0] * self.length
            for c, row in zip(coeffs, self.rows):
                for j, a in row.items():
                    v[j] = (v[j] + c * a) % self.p
            yield tuple(v)


def _sparse(v):
    return {j: a for j, a in enumerate(v) if a}


@attr.s
class ArtinianModel:
    """R = P/A with dim R = 0, as a finite F_p-algebra on its standard monomials."""
    spec = attr.ib()
    basis = attr.ib()
    table = attr.ib(repr=False)

    @classmethod
    def from_spec(cls, spec, cap=None):
        basis = standard_monomials(spec.A, cap=cap)
        model = cls(spec, basis, None)
        model.table = [[model.coords(monomial_poly(spec.ambient, checked_mul(a, b))) for b in basis]
                       for a in basis]
        model._spot_check()
        return model

    @lazyprop
    def index(self):
        return {m: i for i, m in enumerate(self.basis)}

    @property
    def p(self):
        return self.spec.p

    @property
    def size(self):
        return len(self.basis)

    def coords(self, f):
        ensure_same_ring(f, ring=self.spec.ambient)
        index = self.index
        v = [0] * self.size
        for m, c in normal_form(f, self.spec.A.gb).items():
            v[index[m]] = int(c) % self.p
        return tuple(v)

    def element(self, v):
        return from_terms(self.spec.ambient, [(m, c) for m, c in zip(self.basis, v) if c])

    def zero(self):
        return (0,) * self.size

    def one(self):
        return self.coords(self.spec.ambient.one)

    def multiply(self, u, v):
        out = [0] * self.size
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    out = [(o + a * b * t) % self.p for o, t in zip(out, self.table[i][j])]
        return tuple(out)

    def power(self, v, n):
        result = self.one()
        while n:
            if n & 1:
                result = self.multiply(result, v)
            v = self.multiply(v, v)
            n >>= 1
        return result

    def frobenius(self, v):
        return self.power(v, self.p)

    def span(self, vectors):
        return Subspace.spanned_by(self.p, self.size, vectors)

    def elements(self, cap=None):
        cap = _cap(cap)
        if self.p ** self.size > cap:
            raise OracleRefusal(f"{self.p}^{self.size} elements exceed the enumeration cap {cap}")
        return product(range(self.p), repeat=self.size)

    def _spot_check(self):
        gens = self.spec.ambient.gens
        for g in gens[:2]:
            for h in gens[-2:]:
                if self.multiply(self.coords(g), self.coords(h)) != self.coords(g * h):
                    raise OracleRefusal("multiplication table disagrees with polynomial arithmetic")


def ideal_image(model, I):
    """The F_p-subspace I·R of the model."""
    vectors = []
    for g in I.generators:
        gv = model.coords(g)
        vectors.extend(model.multiply(gv, model.coords(monomial_poly(model.spec.ambient, b)))
                       for b in model.basis)
    return model.span(vectors)


def enumerate_frobenius_closure(I, model, e_max, cap=None):
    """{x ∈ R : x^(p^e) ∈ I^[p^e] for some e ≤ e_max}, by trying every element of R."""
    images = [ideal_image(model, bracket_power(I, e)) for e in range(e_max + 1)]
    closure = set()
    for x in model.elements(cap):
        y = x
        for e in range(e_max + 1):
            if y in images[e]:
                closure.add(x)
                break
            y = model.frobenius(y)
    logger.debug("enumerated Frobenius closure: %d of %d elements", len(closure), model.p ** model.size)
    return closure


def nilradical_by_enumeration(model, cap=None):
    """The nilpotent elements of R: x with x^(p^k) = 0 once p^k reaches the length of R."""
    k = 0
    while model.p ** k < model.size:
        k += 1
    zero = model.zero()
    return {x for x in model.elements(cap) if model.power(x, model.p ** k) == zero}


def _monic_candidates(ring, degree_cap, cap):
    monos = monomials_up_to_degree(len(ring.gens), degree_cap)
    p = characteristic(ring)
    if p ** len(monos) > cap:
        raise OracleRefusal(f"{p}^{len(monos)} candidate polynomials exceed the cap {cap}")
    out = []
    for coeffs in product(range(p), repeat=len(monos)):
        terms = [(m, c) for m, c in zip(monos, coeffs) if c]
        if terms and terms[0][1] == 1:
            out.append(from_terms(ring, terms))
    return out


def minimal_root_oracle(f, e, degree_cap=None, max_generators=None, cap=None):
    """The least ideal J with f ∈ J^[p^e], searched over generator sets of polynomials of degree at
    most ``degree_cap`` with at most ``max_generators`` elements.

    >>> from fnilpotent.polys import make_ring
    >>> x, y = make_ring(2, ['x', 'y']).gens
    >>> minimal_root_oracle(x**2, 1, max_generators=1)
    (x)
    """
    degree_cap = config.get('degree_cap') if degree_cap is None else degree_cap
    max_generators = config.get('max_generators') if max_generators is None else max_generators
    cap = _cap(cap)
    ring = f.ring
    polys = _monic_candidates(ring, degree_cap, cap)
    candidates = []
    for k in range(1, max_generators + 1):
        for gens in combinations(polys, k):
            J = IdealHandle(ring, gens)
            if ideal_membership(f, bracket_power(J, e)):
                candidates.append(J)
        if len(candidates) > cap:
            raise OracleRefusal(f"more than {cap} candidate roots")
    if not candidates:
        raise OracleRefusal(f"no ideal generated in degree ≤ {degree_cap} has f in its bracket power")
    best = candidates[0]
    for J in candidates[1:]:
        if contains(best, J):
            best = J
    if not all(contains(J, best) for J in candidates):
        raise OracleRefusal("no least candidate root within the search caps")
    return best


def multiplier_search(f, I, spec, degrees, e_list, assume_equidimensional=False):
    """The first monomial c of degree ≤ ``degrees`` (degree-ascending, lex-descending) with c ∈ R° and
    c·f^(p^e) ∈ I^[p^e] + A for every e in ``e_list``, or None.

    >>> from fnilpotent.ideals import RingSpec
    >>> spec = RingSpec.build(2, ['x', 'y'])
    >>> x, y = spec.ambient.gens
    >>> multiplier_search(x, spec.ideal([x]), spec, 2, [1, 2]) == spec.ambient.one
    True
    >>> multiplier_search(spec.ambient.one, spec.ideal([x, y]), spec, 3, [1, 2, 3]) is None
    True
    """
    ring = spec.ambient
    ensure_same_ring(f, ring=ring)
    targets = [(ideal_sum(bracket_power(I, e), spec.A), frobenius_power(f, e)) for e in e_list]
    for m in monomials_up_to_degree(spec.n, degrees):
        c = monomial_poly(ring, m)
        if in_R_circ(c, spec, assume_equidimensional=assume_equidimensional) != TriState.yes:
            continue
        if all(ideal_membership(c * fq, K) for K, fq in targets):
            logger.info("multiplier found: %s", m)
            return c
    return None
