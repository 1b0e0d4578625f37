"""Row reduction and kernels over F_p, on sympy's sparse domain matrices.

Vectors are sparse dicts {coordinate: residue}; results come back in the same form with
residues in [0, p).

>>> echelon_basis([{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 2: 1}], 3, 3)
[{0: 1, 2: 1}, {1: 1, 2: 1}]
>>> kernel([{0: 1}, {0: 2}, {1: 1}], 3)
[{0: 1, 1: 1}]
"""
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

__all__ = ['echelon_basis', 'kernel']


def _matrix(rows, ncols, p):
    K = GF(p)
    entries = {}
    for i, row in enumerate(rows):
        nonzero = {j: K(a) for j, a in row.items() if a % p}
        if nonzero:
            entries[i] = nonzero
    return DomainMatrix(entries, (len(rows), ncols), K)


def _rows_of(M, p):
    rows = {}
    for (i, j), a in M.to_dok().items():
        a = int(a) % p
        if a:
            rows.setdefault(i, {})[j] = a
    return [dict(sorted(rows[i].items())) for i in sorted(rows)]


def echelon_basis(vectors, p, length):
    """The nonzero rows of the reduced row echelon form of ``vectors``, pivots ascending."""
    vectors = list(vectors)
    if not vectors:
        return []
    reduced, _ = _matrix(vectors, length, p).rref()
    return _rows_of(reduced, p)


def kernel(columns, p):
    """A basis of {c : sum_j c_j·columns[j] = 0} over F_p, for sparse column vectors with any hashable keys."""
    columns = list(columns)
    keys = sorted({k for col in columns for k in col})
    if not keys:
        return [{j: 1} for j in range(len(columns))]
    position = {k: i for i, k in enumerate(keys)}
    rows = [{} for _ in keys]
    for j, col in enumerate(columns):
        for k, a in col.items():
            rows[position[k]][j] = a
    return _rows_of(_matrix(rows, len(columns), p).nullspace(), p)
