try:
    import pytest
except ImportError as err:
    import warnings

    warnings.warn("You don't seem to have pytest, so I can't use it to test. Shame. pytest is nice.")
    warnings.warn(f"Error was: {err}")

from hypothesis import given, settings

from fnilpotent.errors import ModelingWarning, NonPrimeCharacteristicError, PreconditionError, UsageError
from fnilpotent.ideals import (IdealHandle, RingSpec, TriState, colon, contains, dimension, in_R_circ, intersect,
                               is_parameter_ideal, maximal_ideal_power, quotient_dimension, saturate,
                               standard_monomials, unit_ideal, zero_ideal)
from fnilpotent.polys import make_ring
from fnilpotent.tests.objects_for_testing import (fat_line, fermat_cubic, plane_and_line, polynomial_ring,
                                                  polys)
from fnilpotent.util import NEG_INFINITY

P = make_ring(2, ['x', 'y'])
x, y = P.gens


def test_equality_ignores_the_generating_set():
    assert IdealHandle(P, [x, y]) == IdealHandle(P, [x + y, y])
    assert IdealHandle(P, [x**2]) != IdealHandle(P, [x])
    assert hash(IdealHandle(P, [x, y])) == hash(IdealHandle(P, [y, x]))


def test_zero_generators_are_dropped():
    I = IdealHandle(P, [P.zero, x])
    assert I.generators == (x,)
    assert zero_ideal(P).is_zero
    assert unit_ideal(P).is_unit


@settings(max_examples=25, deadline=None)
@given(polys(P), polys(P))
def test_groebner_basis_does_not_depend_on_generator_order(f, g):
    assert IdealHandle(P, [f, g]).gb == IdealHandle(P, [g, f]).gb
    assert IdealHandle(P, [f, g]) == IdealHandle(P, [f + g, g])


def test_intersection_and_colon():
    assert intersect(IdealHandle(P, [x]), IdealHandle(P, [y])) == IdealHandle(P, [x * y])
    assert colon(IdealHandle(P, [x**2 * y]), IdealHandle(P, [x])) == IdealHandle(P, [x * y])
    assert colon(IdealHandle(P, [x]), IdealHandle(P, [x])).is_unit


def test_saturation_reports_its_steps():
    sat, steps = saturate(IdealHandle(P, [x**2, x * y]), IdealHandle(P, [x, y]))
    assert sat == IdealHandle(P, [x])
    assert steps == 2


def test_dimension():
    Q = make_ring(2, ['x', 'y', 'z'])
    a, b, c = Q.gens
    assert dimension(IdealHandle(Q, [a])) == 2
    assert dimension(IdealHandle(Q, [a, b])) == 1
    assert dimension(IdealHandle(Q, [a, b, c])) == 0
    assert dimension(IdealHandle(Q, [a * b + 1, b])) is NEG_INFINITY
    assert NEG_INFINITY < 0


def test_standard_monomials():
    basis = standard_monomials(IdealHandle(P, [x**2, y**2]))
    assert set(basis) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert basis[0] == (0, 0)
    with pytest.raises(PreconditionError):
        standard_monomials(IdealHandle(P, [x]))


def test_quotient_dimension():
    outer = IdealHandle(P, [x])
    assert quotient_dimension(outer, IdealHandle(P, [x**2, x * y])) == 1
    assert quotient_dimension(outer, outer) == 0
    assert quotient_dimension(IdealHandle(P, [x, y]), maximal_ideal_power(P, 2)) == 2


def test_ring_construction_errors():
    with pytest.raises(NonPrimeCharacteristicError):
        RingSpec.build(4, ['x'])
    with pytest.raises(UsageError):
        RingSpec.build(2, ['x', 'x'])
    with pytest.raises(PreconditionError):
        RingSpec.build(2, ['x'], [lambda x: x**0])
    with pytest.warns(ModelingWarning):
        RingSpec.build(3, ['x', 'y'], [lambda x, y: x**2 - y])


def test_relations_may_be_polynomials():
    T1, T2, T3 = make_ring(2, ['T1', 'T2', 'T3']).gens
    spec = RingSpec.build(2, ['T1', 'T2', 'T3'], [T1**2 * T2, T1**2 * T3])
    assert spec == plane_and_line()
    assert spec.A == IdealHandle(T1.ring, [T1**2 * T2, T1**2 * T3])
    mixed = RingSpec.build(2, ['T1', 'T2', 'T3'], [T1**2 * T2, lambda T1, T2, T3: T1**2 * T3])
    assert mixed == spec


def test_plane_and_line_facts():
    spec = plane_and_line()
    T1, T2, T3 = spec.ambient.gens
    assert spec.dim == 2
    assert spec.is_monomial
    assert spec.minimal_primes() == [frozenset({0}), frozenset({1, 2})]
    assert spec.is_equidimensional() is False
    assert not spec.is_reduced()
    assert spec.reduced_spec().A == spec.ideal([T1 * T2, T1 * T3])


def test_fermat_cubic_facts():
    spec = fermat_cubic()
    assert spec.dim == 2
    assert spec.is_equidimensional() is True
    assert spec.is_reduced()
    assert spec.reduced_spec() is spec


def test_reducedness_of_hypersurfaces():
    assert not RingSpec.build(2, ['x', 'y'], [lambda x, y: x**2]).is_reduced()
    assert not RingSpec.build(3, ['x', 'y'], [lambda x, y: (x + y)**2]).is_reduced()
    assert RingSpec.build(3, ['x', 'y'], [lambda x, y: x * y]).is_reduced()


def test_avoiding_minimal_primes():
    spec = plane_and_line()
    T1, T2, T3 = spec.ambient.gens
    assert in_R_circ(T1 + T2, spec) == TriState.yes
    assert in_R_circ(T2, spec) == TriState.no
    assert in_R_circ(T1, spec) == TriState.no
    assert in_R_circ(T1**2 * T2, spec) == TriState.no

    cubic = fermat_cubic()
    a, b, c = cubic.ambient.gens
    assert in_R_circ(a**2, cubic) == TriState.yes

    fat = fat_line()
    u, v, w = fat.ambient.gens
    assert fat.is_equidimensional() is None
    assert in_R_circ(w, fat) == TriState.unknown
    assert in_R_circ(w, fat, assume_equidimensional=True) == TriState.yes
    assert in_R_circ(u, fat, assume_equidimensional=True) == TriState.no


def test_parameter_ideals():
    spec = polynomial_ring(2)
    a, b = spec.ambient.gens
    assert is_parameter_ideal(spec.ideal([a, b]), spec)
    assert is_parameter_ideal(spec.ideal([a**2, b]), spec)
    assert not is_parameter_ideal(spec.ideal([a]), spec)
    assert not is_parameter_ideal(spec.ideal([a + 1, b]), spec)
    line = polynomial_ring(2, ['x'])
    t, = line.ambient.gens
    assert not is_parameter_ideal(line.ideal([t + 1]), line)
    assert is_parameter_ideal(line.ideal([t**3 + t]), line)
    pl = plane_and_line()
    T1, T2, T3 = pl.ambient.gens
    assert is_parameter_ideal(pl.ideal([T1 + T2, T3]), pl)


def test_lift_adds_the_defining_ideal():
    spec = plane_and_line()
    T1, T2, T3 = spec.ambient.gens
    lifted = spec.lift(spec.ideal([T1 + T2]))
    assert contains(lifted, spec.A)
    assert T1 + T2 in lifted
