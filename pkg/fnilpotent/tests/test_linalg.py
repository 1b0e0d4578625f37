try:
    import pytest
except ImportError as err:
    import warnings

    warnings.warn("You don't seem to have pytest, so I can't use it to test. Shame. pytest is nice.")
    warnings.warn(f"Error was: {err}")

from hypothesis import given, settings, strategies as st

from fnilpotent.linalg import echelon_basis, kernel


def test_echelon_basis():
    assert echelon_basis([], 5, 3) == []
    assert echelon_basis([{0: 2, 1: 4}], 5, 2) == [{0: 1, 1: 2}]
    assert echelon_basis([{0: 1, 1: 1}, {0: 1, 1: 1}, {}], 2, 2) == [{0: 1, 1: 1}]
    assert echelon_basis([{1: 1}, {0: 1, 1: 1}], 2, 2) == [{0: 1}, {1: 1}]


def test_kernel_of_labelled_columns():
    assert kernel([], 2) == []
    assert kernel([{}, {}], 3) == [{0: 1}, {1: 1}]
    assert kernel([{'a': 1}, {'b': 1}], 2) == []
    [relation] = kernel([{('u', 1): 1, ('v', 0): 1}, {('u', 1): 1}, {('v', 0): 1}], 2)
    assert relation == {0: 1, 1: 1, 2: 1}


@settings(max_examples=30, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 3), st.integers(0, 6), max_size=4), max_size=5))
def test_kernel_vectors_are_relations(columns):
    p = 7
    basis = kernel(columns, p)
    rank = len(echelon_basis(columns, p, 4))
    assert len(basis) == len(columns) - rank
    for relation in basis:
        total = {}
        for j, c in relation.items():
            for k, a in columns[j].items():
                total[k] = (total.get(k, 0) + c * a) % p
        assert not any(total.values())
