"""Exponent vectors (monomials), their orders, and checked exponent arithmetic.

A monomial of F_p[x_1..x_n] is the tuple of its exponents. Python integers never overflow,
so the 64-bit exponent bound is enforced explicitly: anything that would leave it raises
``DegreeOverflowError`` instead of silently producing a monomial no other system could hold.

>>> grevlex = order_by_name('grevlex')
>>> grevlex((1, 0)) > grevlex((0, 1))  # x > y
True
>>> grevlex((1, 0, 1)) > grevlex((0, 2, 0))  # xz < y^2 in grevlex ...
False
>>> order_by_name('lex')((1, 0, 1)) > order_by_name('lex')((0, 2, 0))  # ... but not in lex
True
>>> frobenius_monomial((1, 2), 4)
(4, 8)
>>> monomials_of_degree(2, 2)
[(2, 0), (1, 1), (0, 2)]
"""
from functools import lru_cache
from itertools import combinations_with_replacement

from sympy.polys.monomials import monomial_divides, monomial_mul
from sympy.polys.orderings import ProductOrder, grevlex, lex

from fnilpotent import config
from fnilpotent.errors import DegreeOverflowError, UsageError

MAX_EXPONENT = config.DFLT['max_exponent']

ORDERS = {'grevlex': grevlex, 'lex': lex}

__all__ = ['MAX_EXPONENT', 'ORDERS', 'order_by_name', 'elimination_order', 'check_exponents',
           'frobenius_monomial', 'checked_mul', 'monomial_divides', 'degree', 'support', 'monomials_of_degree',
           'monomials_up_to_degree']


def order_by_name(name):
    try:
        return ORDERS[name]
    except KeyError:
        raise UsageError(f"unknown monomial order {name!r}; choose from {sorted(ORDERS)}")


@lru_cache(maxsize=None)
def elimination_order(k):
    """Block order eliminating the first ``k`` variables: grevlex on the first block, ties broken by grevlex
    on the rest. Cached so that rings built on it are shared.

    >>> order = elimination_order(1)
    >>> order((1, 0, 0)) > order((0, 5, 5))
    True
    >>> order((0, 1, 0)) > order((0, 0, 1))
    True
    """
    return ProductOrder((grevlex, lambda m: m[:k]), (grevlex, lambda m: m[k:]))


def check_exponents(m):
    for a in m:
        if a > MAX_EXPONENT:
            raise DegreeOverflowError(a)
    return m


def frobenius_monomial(m, q):
    """The monomial m^q, checked."""
    return check_exponents(tuple(a * q for a in m))


def checked_mul(a, b):
    return check_exponents(monomial_mul(a, b))


def degree(m):
    return sum(m)


def support(m):
    """Indices of the variables that occur in m.

    >>> support((2, 0, 1))
    frozenset({0, 2})
    """
    return frozenset(i for i, a in enumerate(m) if a)


def monomials_of_degree(n, d):
    """All exponent vectors in n variables of total degree d, in lex-descending order."""
    result = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in combo:
            m[i] += 1
        result.append(tuple(m))
    return sorted(result, key=lex, reverse=True)


def monomials_up_to_degree(n, d):
    """Degree-ascending, lex-descending within a degree. The fixed enumeration order of the oracles."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out
