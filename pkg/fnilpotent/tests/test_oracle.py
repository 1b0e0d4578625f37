try:
    import pytest
except ImportError as err:
    import warnings

    warnings.warn("You don't seem to have pytest, so I can't use it to test. Shame. pytest is nice.")
    warnings.warn(f"Error was: {err}")

import random

from fnilpotent.cohomology import PASSES_ALL_CHECKS, f_nilpotent_test
from fnilpotent.errors import OracleRefusal
from fnilpotent.frobenius import frobenius_closure, frobenius_root
from fnilpotent.ideals import IdealHandle, RingSpec
from fnilpotent.oracle import (ArtinianModel, Subspace, enumerate_frobenius_closure, ideal_image,
                               minimal_root_oracle, multiplier_search, nilradical_by_enumeration)
from fnilpotent.polys import make_ring
from fnilpotent.tests.objects_for_testing import (dual_numbers, fermat_cubic, polynomial_ring, random_artinian,
                                                  random_poly, square_zero_plane)


def test_subspace_membership():
    space = Subspace(3, 3)
    assert space.add((1, 2, 0))
    assert space.add((0, 1, 1))
    assert not space.add((1, 0, 1))  # (1,2,0) + (0,1,1) over F_3
    assert (2, 1, 0) in space
    assert (0, 0, 1) not in space
    assert space.dim == 2
    assert len(set(space.elements())) == 9


def test_artinian_model_multiplies_like_the_ring():
    spec = square_zero_plane()
    model = ArtinianModel.from_spec(spec)
    x, y = spec.ambient.gens
    assert model.size == 4
    assert model.multiply(model.coords(x), model.coords(x)) == model.zero()
    assert model.multiply(model.coords(x), model.coords(y)) == model.coords(x * y)
    assert model.element(model.coords(x + x * y)) == x + x * y
    assert model.frobenius(model.coords(x + y + 1)) == model.one()


def test_enumerated_closure_of_zero_in_the_dual_numbers():
    spec = dual_numbers()
    model = ArtinianModel.from_spec(spec)
    enumerated = enumerate_frobenius_closure(spec.ideal([]), model, e_max=1)
    assert enumerated == {(0, 0), (0, 1)}
    engine = frobenius_closure(spec.ideal([]), spec, e_max=2).closure
    assert set(ideal_image(model, engine).elements()) == enumerated


def test_engine_and_enumeration_agree_on_the_square_zero_plane():
    spec = square_zero_plane()
    model = ArtinianModel.from_spec(spec)
    x, y = spec.ambient.gens
    for gens in ([], [x * y], [x + y], [x, y]):
        I = spec.ideal(gens)
        engine = frobenius_closure(I, spec, e_max=2).closure
        assert set(ideal_image(model, engine).elements()) == enumerate_frobenius_closure(I, model, e_max=2)


def test_closure_of_zero_is_the_nilradical():
    spec = square_zero_plane()
    model = ArtinianModel.from_spec(spec)
    nil = nilradical_by_enumeration(model)
    assert len(nil) == 8
    engine = frobenius_closure(spec.ideal([]), spec, e_max=2).closure
    assert set(ideal_image(model, engine).elements()) == nil


def test_engine_and_enumeration_agree_when_the_chain_stalls():
    spec = RingSpec.build(2, ['x', 'y'], [lambda x, y: x**3, lambda x, y: y**3, lambda x, y: x * y + y**2])
    x, y = spec.ambient.gens
    model = ArtinianModel.from_spec(spec)
    I = spec.ideal([x**2 + x])
    enumerated = enumerate_frobenius_closure(I, model, e_max=3)
    engine = frobenius_closure(I, spec, e_max=3).closure
    assert len(enumerated) == 16
    assert set(ideal_image(model, engine).elements()) == enumerated


@pytest.mark.slow
def test_engine_and_enumeration_agree_on_seeded_artinian_rings():
    rng = random.Random(7)
    for _ in range(50):
        spec = random_artinian(rng)
        model = ArtinianModel.from_spec(spec)
        I = spec.ideal([random_poly(rng, spec.ambient, max_degree=2, constant=False)
                        for _ in range(rng.randint(0, 2))])
        engine = frobenius_closure(I, spec, e_max=3).closure
        assert set(ideal_image(model, engine).elements()) == enumerate_frobenius_closure(I, model, e_max=3)


@pytest.mark.slow
def test_closure_of_zero_is_the_nilradical_on_seeded_artinian_rings():
    rng = random.Random(11)
    for _ in range(20):
        spec = random_artinian(rng)
        model = ArtinianModel.from_spec(spec)
        engine = frobenius_closure(spec.ideal([]), spec, e_max=4).closure
        assert set(ideal_image(model, engine).elements()) == nilradical_by_enumeration(model)
        assert f_nilpotent_test(spec, e_max=2, E=2).verdict == PASSES_ALL_CHECKS


def test_oracles_refuse_past_their_caps():
    model = ArtinianModel.from_spec(square_zero_plane())
    with pytest.raises(OracleRefusal):
        list(model.elements(cap=8))
    x, y = make_ring(2, ['x', 'y']).gens
    with pytest.raises(OracleRefusal):
        minimal_root_oracle(x**2, 1, degree_cap=2, cap=10)


def test_minimal_root_oracle_matches_the_root():
    P = make_ring(2, ['x', 'y'])
    x, y = P.gens
    assert minimal_root_oracle(x**2 * y**3, 1, degree_cap=2, max_generators=1) == IdealHandle(P, [x * y])
    oracle = minimal_root_oracle(x**2 + y**3, 1, degree_cap=1, max_generators=2)
    assert oracle == frobenius_root(IdealHandle(P, [x**2 + y**3]), 1)


@pytest.mark.slow
def test_multiplier_search_on_the_fermat_cubic():
    spec = fermat_cubic()
    x, y, z = spec.ambient.gens
    assert multiplier_search(x**2, spec.ideal([y, z]), spec, 3, [1, 2]) == x


def test_multiplier_search_gives_up():
    spec = polynomial_ring(2)
    x, y = spec.ambient.gens
    assert multiplier_search(x, spec.ideal([x]), spec, 2, [1, 2]) == spec.ambient.one
    assert multiplier_search(spec.ambient.one, spec.ideal([x, y]), spec, 3, [1, 2, 3]) is None
