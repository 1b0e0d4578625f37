"""Sparse exact polynomials over F_p.

A ``Poly`` is a ``sympy.polys.rings.PolyElement`` of a ``PolyRing`` over ``GF(p)``: a sparse map from
exponent tuples to field elements, with no zero coefficients, ordered by the ring's monomial order.
This module adds what the rest of the package needs on top of it: ring construction, canonical
integer coefficients, the Frobenius map on polynomials, ring embeddings and a canonical printer.

>>> P = make_ring(2, ['x', 'y'])
>>> x, y = P.gens
>>> format_poly(frobenius_power(x + y, 1))
'x^2 + y^2'
>>> format_poly(poly_pow(x + y, 3))
'x^3 + x^2*y + x*y^2 + y^3'
>>> field_elem(make_ring(7, ['x']).domain(-1), 7)
6
"""
from functools import lru_cache

from sympy.polys.domains import GF
from sympy.polys.rings import PolyElement, PolyRing

from fnilpotent.errors import RingMismatchError
from fnilpotent.monomials import check_exponents, degree, frobenius_monomial, order_by_name

Poly = PolyElement

__all__ = ['Poly', 'make_ring', 'characteristic', 'variable_names', 'field_elem',
           'coefficients', 'ensure_same_ring', 'frobenius_power', 'poly_pow', 'embed', 'from_terms',
           'monomial_poly', 'is_homogeneous', 'partial_derivative', 'format_poly',
           'format_monomial', 'fresh_names']


@lru_cache(maxsize=None)
def _ring(p, names, order):
    return PolyRing(list(names), GF(p), order)


def make_ring(p, names, order='grevlex'):
    """The polynomial ring F_p[names] with the given monomial order (a name or a sympy order object).
    Rings are cached, so equal arguments give the identical ring."""
    if isinstance(order, str):
        order = order_by_name(order)
    return _ring(int(p), tuple(names), order)


def characteristic(ring):
    return int(ring.domain.characteristic())


def variable_names(ring):
    return tuple(str(s) for s in ring.symbols)


def field_elem(c, p):
    """The canonical residue of a field element, in [0, p)."""
    return int(c) % p


def coefficients(f):
    """Terms of f in descending monomial order, with canonical integer coefficients."""
    p = characteristic(f.ring)
    return [(m, field_elem(c, p)) for m, c in f.terms()]


def ensure_same_ring(*polys, ring=None):
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise RingMismatchError(f"polynomial {format_poly(f)} lives in {_describe(f.ring)}, "
                                    f"expected {_describe(ring)}")
    return ring


def _describe(ring):
    return f"F{characteristic(ring)}[{','.join(variable_names(ring))}]"


def from_terms(ring, terms):
    """Build a polynomial from (monomial, integer) pairs; repeated monomials are summed."""
    acc = {}
    p = characteristic(ring)
    for m, c in terms:
        acc[m] = (acc.get(m, 0) + int(c)) % p
    return ring.from_dict({m: c for m, c in acc.items() if c})


def monomial_poly(ring, m, c=1):
    return from_terms(ring, [(check_exponents(tuple(m)), c)])


def frobenius_power(f, e):
    """f^(p^e). Coefficients are fixed by Frobenius over F_p, so only exponents scale."""
    if e == 0:
        return f
    q = characteristic(f.ring) ** e
    return f.ring.from_dict({frobenius_monomial(m, q): c for m, c in f.items()})


def poly_pow(f, n):
    """f^n, splitting n in base p so that the p-power parts are plain exponent scalings."""
    ring = f.ring
    p = characteristic(ring)
    result = ring.one
    e = 0
    while n:
        n, digit = divmod(n, p)
        if digit:
            result = result * frobenius_power(f, e) ** digit
        e += 1
    return result


def embed(f, target, offset=0, width=None):
    """Move f into ``target``, placing its variables at positions offset..offset+n-1."""
    n = len(f.ring.gens) if width is None else width
    pad_left = (0,) * offset
    pad_right = (0,) * (len(target.gens) - offset - n)
    return target.from_dict({pad_left + m + pad_right: c for m, c in f.items()})


def is_homogeneous(f):
    return len({degree(m) for m in f.keys()}) <= 1


def partial_derivative(f, i):
    return f.diff(f.ring.gens[i])


def fresh_names(taken, stem, k):
    """k variable names starting with ``stem`` that clash with nothing in ``taken``.

    >>> fresh_names({'t0', 'x'}, 't', 2)
    ('t1', 't2')
    """
    taken = set(taken)
    names = []
    i = 0
    while len(names) < k:
        name = f"{stem}{i}"
        if name not in taken:
            names.append(name)
        i += 1
    return tuple(names)


def format_monomial(m, names):
    """
    >>> format_monomial((2, 0, 1), ('T1', 'T2', 'T3'))
    'T1^2*T3'
    >>> format_monomial((0, 0), ('x', 'y'))
    '1'
    """
    factors = []
    for a, name in zip(m, names):
        if a == 1:
            factors.append(name)
        elif a:
            factors.append(f"{name}^{a}")
    return '*'.join(factors) or '1'


def format_poly(f):
    """Print f with terms in descending order, coefficients as the signed residue of least magnitude.

    >>> P = make_ring(7, ['x', 'y', 'z'])
    >>> x, y, z = P.gens
    >>> format_poly(x**3 + y**3 + z**3)
    'x^3 + y^3 + z^3'
    >>> format_poly(6*x*y - 2 + 3*z)
    '-x*y + 3*z - 2'
    >>> format_poly(P.zero)
    '0'
    """
    if not f:
        return '0'
    p = characteristic(f.ring)
    names = variable_names(f.ring)
    pieces = []
    for m, c in coefficients(f):
        sign = '+'
        if c > p // 2 and p > 2:
            sign, c = '-', p - c
        mono = format_monomial(m, names)
        if mono == '1':
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ('-' if first_sign == '-' else '') + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
