try:
    import pytest
except ImportError as err:
    import warnings

    warnings.warn("You don't seem to have pytest, so I can't use it to test. Shame. pytest is nice.")
    warnings.warn(f"Error was: {err}")

import random

from hypothesis import given, settings

from fnilpotent.errors import DegreeOverflowError, PreconditionError
from fnilpotent.frobenius import (CAP_REACHED, EQUAL_CERTIFIED, GAP_CANDIDATE, STABILIZED, bracket_power,
                                  closure_equality_check, frobenius_closure, frobenius_membership,
                                  frobenius_preimage, frobenius_root, fte_estimate, jacobian_test_elements,
                                  tight_closure_upper)
from fnilpotent.ideals import IdealHandle, contains, ideal_membership
from fnilpotent.polys import frobenius_power, make_ring, monomial_poly
from fnilpotent.tests.objects_for_testing import (cube_zero_line, dual_numbers, fermat_cubic, plane_and_line,
                                                  polynomial_ring, polys, random_poly)

P = make_ring(2, ['x', 'y'])
x, y = P.gens


def test_bracket_power():
    assert bracket_power(IdealHandle(P, [x, y]), 1) == IdealHandle(P, [x**2, y**2])
    assert bracket_power(IdealHandle(P, [x + y]), 2) == IdealHandle(P, [x**4 + y**4])
    I = IdealHandle(P, [x * y + y**2])
    assert bracket_power(I, 0) is I
    with pytest.raises(PreconditionError):
        bracket_power(I, -1)


@settings(max_examples=30, deadline=None)
@given(polys(P), polys(P))
def test_bracket_power_does_not_depend_on_the_generators(f, g):
    assert bracket_power(IdealHandle(P, [f, g]), 1) == bracket_power(IdealHandle(P, [f + g, g]), 1)


def test_bracket_power_overflow_names_the_exponent():
    huge = IdealHandle(P, [monomial_poly(P, (2 ** 62, 0))])
    with pytest.raises(DegreeOverflowError) as excinfo:
        bracket_power(huge, 2)
    assert excinfo.value.e == 2


def test_frobenius_root_of_a_monomial_rounds_exponents_down():
    assert frobenius_root(IdealHandle(P, [x**2 * y**3]), 1) == IdealHandle(P, [x * y])
    assert frobenius_root(IdealHandle(P, [x**4 * y**5]), 2) == IdealHandle(P, [x * y])
    assert frobenius_root(IdealHandle(P, [x**2 + y**3]), 1) == IdealHandle(P, [x, y])


@settings(max_examples=30, deadline=None)
@given(polys(P), polys(P))
def test_frobenius_root_undoes_the_bracket_power(f, g):
    J = IdealHandle(P, [f, g])
    assert frobenius_root(bracket_power(J, 1), 1) == J
    root = frobenius_root(J, 1)
    assert contains(bracket_power(root, 1), J)


@settings(max_examples=15, deadline=None)
@given(polys(P, max_exponent=2, max_terms=3), polys(P, max_exponent=3, max_terms=3),
       polys(P, max_exponent=2, max_terms=3))
def test_preimage_is_exactly_the_frobenius_condition(f, g, h):
    K = IdealHandle(P, [g, h])
    pre = frobenius_preimage(K, 1)
    assert ideal_membership(f, pre) == ideal_membership(frobenius_power(f, 1), K)
    assert contains(frobenius_root(K, 1), pre)


def test_linear_and_elimination_preimages_agree():
    K = IdealHandle(P, [x**4, y**4, x**2 * y**2 + x**3 * y])
    floor = IdealHandle(P, [x**2, y**2])
    assert frobenius_preimage(K, 1, floor=floor) == frobenius_preimage(K, 1)
    assert frobenius_preimage(K, 1, floor=floor, multiplier=x) == frobenius_preimage(K, 1, multiplier=x)


def test_floor_must_lie_in_the_preimage():
    with pytest.raises(PreconditionError):
        frobenius_preimage(IdealHandle(P, [x**4]), 1, floor=IdealHandle(P, [x, y**2]))


def test_closure_of_an_ideal_of_a_polynomial_ring_is_itself():
    spec = polynomial_ring(3)
    a, b = spec.ambient.gens
    report = frobenius_closure(spec.ideal([a, b**2]), spec, e_max=2)
    assert report.closure == spec.ideal([a, b**2])
    assert report.stabilization_exponent == 0
    assert report.certified == STABILIZED
    with pytest.raises(PreconditionError):
        frobenius_closure(spec.ideal([a]), spec, e_max=0)


@settings(max_examples=10, deadline=None)
@given(polys(P, max_exponent=2, max_terms=3), polys(P, max_exponent=2, max_terms=3))
def test_polynomial_rings_are_f_pure(f, g):
    spec = polynomial_ring(2)
    I = spec.ideal([f, g])
    assert frobenius_closure(I, spec, e_max=1).closure == spec.lift(I)


def test_closure_adds_a_nilpotent_on_the_plane_and_line():
    spec = plane_and_line()
    T1, T2, T3 = spec.ambient.gens
    I = spec.ideal([T1 + T2])
    assert frobenius_membership(T1**2, I, spec, e_max=3) == 1
    assert frobenius_membership(T1 + T2, I, spec, e_max=3) == 0
    assert frobenius_membership(T1**2, bracket_power(I, 1), spec, e_max=3) is None

    report = frobenius_closure(I, spec, e_max=2)
    assert ideal_membership(T1**2, report.closure)
    for smaller, larger in zip(report.chain, report.chain[1:]):
        assert contains(larger, smaller)


def test_dual_numbers_closure_of_zero_is_the_nilradical():
    spec = dual_numbers()
    report = frobenius_closure(spec.ideal([]), spec, e_max=3)
    assert report.closure == spec.ideal([spec.ambient.gens[0]])
    assert report.stabilization_exponent == 1
    capped = frobenius_closure(spec.ideal([]), spec, e_max=1)
    assert capped.certified == CAP_REACHED
    assert capped.stabilization_exponent is None


def test_closure_chain_keeps_going_after_a_repeat():
    spec = cube_zero_line()
    y, = spec.ambient.gens
    I = spec.ideal([y**2])
    report = frobenius_closure(I, spec, e_max=3)
    assert report.chain[0] == report.chain[1] == spec.lift(I)
    assert report.closure == spec.lift(spec.ideal([y]))
    assert report.stabilization_exponent == 2
    assert report.certified == STABILIZED
    assert frobenius_membership(y, I, spec, e_max=3) == 2

    short = frobenius_closure(I, spec, e_max=2)
    assert short.certified == CAP_REACHED
    assert short.stabilization_exponent is None


def test_closure_and_membership_agree():
    spec = cube_zero_line()
    y, = spec.ambient.gens
    for gens in ([], [y**2], [y]):
        I = spec.ideal(gens)
        for e_max in (1, 2, 3):
            closure = frobenius_closure(I, spec, e_max).closure
            for f in (y, y**2, y + y**2):
                assert ideal_membership(f, closure) == (frobenius_membership(f, I, spec, e_max) is not None)


@pytest.mark.slow
def test_frobenius_root_adjunction_on_seeded_pairs():
    rng = random.Random(2024)
    R = make_ring(2, ['x', 'y', 'z'])
    for _ in range(200):
        f = random_poly(rng, R, max_degree=2)
        g, h = random_poly(rng, R, max_degree=4), random_poly(rng, R, max_degree=4)
        K = IdealHandle(R, [f**2, g] if rng.random() < 0.5 else [g, h])
        J = IdealHandle(R, [random_poly(rng, R, max_degree=2)])
        root = frobenius_root(K, 1)
        if ideal_membership(f**2, K):
            assert ideal_membership(f, root)
        assert contains(bracket_power(root, 1), K)
        assert contains(J, root) == contains(bracket_power(J, 1), K)


@pytest.mark.slow
def test_seeded_ideals_of_a_polynomial_ring_are_frobenius_closed():
    rng = random.Random(3)
    spec = polynomial_ring(3)
    for _ in range(100):
        I = spec.ideal([random_poly(rng, spec.ambient, max_degree=2, constant=False)
                        for _ in range(rng.randint(1, 2))])
        assert frobenius_closure(I, spec, e_max=1).closure == spec.lift(I)


def test_tight_closure_upper_bound():
    spec = polynomial_ring(3)
    a, b = spec.ambient.gens
    assert tight_closure_upper(spec.ideal([a]), spec, spec.ambient.one, 2) == spec.ideal([a])
    with pytest.raises(PreconditionError):
        tight_closure_upper(spec.ideal([a]), spec, spec.ambient.one, 0)

    cubic = fermat_cubic()
    u, v, w = cubic.ambient.gens
    upper = tight_closure_upper(cubic.ideal([v, w]), cubic, u**2, 2)
    assert upper == cubic.lift(cubic.ideal([u**2, v, w]))


def test_multipliers_must_avoid_the_minimal_primes():
    cubic = fermat_cubic()
    u, v, w = cubic.ambient.gens
    with pytest.raises(PreconditionError):
        tight_closure_upper(cubic.ideal([v]), cubic, u**3 + v**3 + w**3, 1)
    spec = plane_and_line()
    T1, T2, T3 = spec.ambient.gens
    with pytest.raises(PreconditionError):
        tight_closure_upper(spec.ideal([T1 + T2]), spec, T2, 1)


@pytest.mark.slow
def test_fermat_cubic_has_a_tight_closure_gap():
    cubic = fermat_cubic()
    u, v, w = cubic.ambient.gens
    bracket = closure_equality_check(cubic.ideal([v, w]), cubic, u**2, 2, 2)
    assert bracket.verdict == GAP_CANDIDATE
    assert bracket.witness == u**2
    assert bracket.lower == cubic.lift(cubic.ideal([v, w]))
    assert contains(bracket.upper, bracket.lower)


def test_equal_closures_are_certified():
    spec = polynomial_ring(2)
    bracket = closure_equality_check(spec.ideal([x, y**2]), spec, spec.ambient.one, 2, 2)
    assert bracket.verdict == EQUAL_CERTIFIED
    assert bracket.lower == bracket.upper


def test_fte_estimate():
    spec = polynomial_ring(2)
    assert fte_estimate(spec, [spec.ideal([x, y]), spec.ideal([x**2, y])], e_max=2) == 0
    with pytest.raises(PreconditionError) as excinfo:
        fte_estimate(spec, [spec.ideal([x, y]), spec.ideal([x])], e_max=2)
    assert excinfo.value.index == 1

    dual = dual_numbers()
    assert fte_estimate(dual, [dual.ideal([])], e_max=3) == 1
    assert fte_estimate(dual, [dual.ideal([])], e_max=0) is None


def test_jacobian_test_elements():
    cubic = fermat_cubic()
    u, v, w = cubic.ambient.gens
    assert jacobian_test_elements(cubic) == [u**2, v**2, w**2]
    assert jacobian_test_elements(polynomial_ring(2)) == [P.one]
