"""Multivariate division and reduced Groebner bases over F_p.

Groebner bases come from sympy's Buchberger implementation (Gebauer-Moeller pair selection, with
the product and chain criteria), which returns the unique reduced, monic basis sorted by
decreasing leading monomial. The division algorithm is sympy's ``PolyElement.rem``, which always
uses the first divisor (in the order given) whose leading monomial divides the current term.

>>> from fnilpotent.polys import make_ring
>>> P = make_ring(2, ['x', 'y'])
>>> x, y = P.gens
>>> groebner_basis([x + y, y]) == [x, y]
True
>>> normal_form(x**2 * y, [x**2]) == 0
True
>>> normal_form(x + y, [x]) == y
True
"""
from sympy.polys.groebnertools import groebner as _sympy_groebner

from fnilpotent.deco import log_calls
from fnilpotent.polys import ensure_same_ring

__all__ = ['normal_form', 'groebner_basis', 'is_groebner_reduced']


def normal_form(f, G):
    """The remainder r of f on division by G: f - r lies in (G) and no term of r is divisible by a
    leading monomial of G."""
    G = [g for g in G if g]
    ensure_same_ring(f, *G)
    if not G or not f:
        return f
    return f.rem(G)


@log_calls
def groebner_basis(gens, ring=None):
    """The reduced Groebner basis of (gens) for the ring's monomial order.

    ``ring`` is only needed when ``gens`` may be empty; the zero ideal has the empty basis.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = ensure_same_ring(*gens, ring=ring)
    return _sympy_groebner(gens, ring, method='buchberger')


def is_groebner_reduced(G):
    """Whether G is already a reduced, monic Groebner basis (as returned by ``groebner_basis``).

    >>> from fnilpotent.polys import make_ring
    >>> x, y = make_ring(3, ['x', 'y']).gens
    >>> is_groebner_reduced([x, y]), is_groebner_reduced([x + y, y])
    (True, False)
    """
    G = list(G)
    return bool(G) and groebner_basis(G) == G
