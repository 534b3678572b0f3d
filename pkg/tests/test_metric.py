"""Block tuples, weight and distance, enumeration, exact samplers."""

import random

import pytest
from hypothesis import given, strategies as st

from sumrank.counting import SpaceParams, ball_volume, sphere_volume
from sumrank.galois import field_from_order
from sumrank.guards import GuardError
from sumrank.linalg import MatrixFq, rank
from sumrank.metric import (BallSpec, BlockTuple, enumerate_ball,
                            enumerate_sphere, iter_all_tuples, matrix_code,
                            matrix_from_code, sample_ball_uniform,
                            sample_decomposable_rows,
                            sample_uniform_matrix_of_rank,
                            sample_uniform_tuple, sum_rank_distance,
                            sum_rank_weight, tuple_code, tuple_from_code,
                            weight_histogram, zero_tuple)
from sumrank.montecarlo import RandomStream

F2 = field_from_order(2)
F3 = field_from_order(3)


def params_for(q, m, eta, ell):
    field = F2 if q == 2 else field_from_order(q)
    return SpaceParams(field=field, m=m, eta=eta, ell=ell)


P222 = params_for(2, 2, 2, 2)


def random_tuple(params, rng):
    return tuple_from_code(params, rng.randrange(params.q ** params.total_dim))


def test_block_tuple_validation():
    with pytest.raises(ValueError):
        BlockTuple(P222, [((0, 0), (0, 0))])          # wrong block count
    with pytest.raises(ValueError):
        BlockTuple(P222, [((0, 0),), ((0, 0), (0, 0))])
    with pytest.raises(ValueError):
        BlockTuple(P222, [((0, 2), (0, 0)), ((0, 0), (0, 0))])


def test_weight_equals_rank_sum():
    rng = random.Random(17)
    for params in (P222, params_for(3, 2, 3, 2)):
        for _ in range(50):
            x = random_tuple(params, rng)
            expected = sum(rank(MatrixFq(params.field, block))
                           for block in x.blocks)
            assert x.weight() == expected == sum_rank_weight(x)


def test_weight_frozen():
    x = BlockTuple(P222, [((1, 0), (0, 1)), ((1, 1), (1, 1))])
    assert x.weight() == 3
    assert zero_tuple(P222).weight() == 0


def test_distance_axioms_random():
    rng = random.Random(29)
    for _ in range(60):
        x, y, z = (random_tuple(P222, rng) for _ in range(3))
        assert sum_rank_distance(x, y) == sum_rank_distance(y, x)
        assert (sum_rank_distance(x, y) == 0) == (x == y)
        assert (sum_rank_distance(x, z)
                <= sum_rank_distance(x, y) + sum_rank_distance(y, z))


def test_invariances_random():
    rng = random.Random(31)
    params = params_for(3, 1, 2, 2)
    for _ in range(60):
        x, y, z = (random_tuple(params, rng) for _ in range(3))
        assert sum_rank_distance(x.add(z), y.add(z)) == sum_rank_distance(x, y)
        assert x.neg().weight() == x.weight()
        for c in range(1, params.q):
            assert x.scale(c).weight() == x.weight()


def test_add_neg_sub_consistency():
    rng = random.Random(37)
    for _ in range(30):
        x, y = random_tuple(P222, rng), random_tuple(P222, rng)
        assert x.sub(y).add(y) == x
        assert x.add(x.neg()) == zero_tuple(P222)


@given(st.integers(min_value=0, max_value=2 ** 8 - 1))
def test_tuple_code_round_trip(code):
    x = tuple_from_code(P222, code)
    assert tuple_code(x) == code
    assert tuple_from_code(P222, code).blocks == x.blocks


def test_tuple_code_range_checked():
    with pytest.raises(ValueError):
        tuple_from_code(P222, 2 ** 8)
    with pytest.raises(ValueError):
        tuple_from_code(P222, -1)
    with pytest.raises(ValueError):
        matrix_from_code(2, 2, 2, 16)


def test_vector_round_trip():
    rng = random.Random(41)
    for _ in range(20):
        x = random_tuple(P222, rng)
        assert BlockTuple.from_vector(P222, x.to_vector()) == x
    assert len(zero_tuple(P222).to_vector()) == P222.total_dim


def test_matrix_code_round_trip():
    for code in range(3 ** 4):
        grid = matrix_from_code(3, 2, 2, code)
        assert matrix_code(3, grid) == code


def test_iter_all_tuples_is_the_whole_space():
    params = params_for(2, 1, 2, 2)
    seen = {tuple_code(x) for x in iter_all_tuples(params)}
    assert seen == set(range(2 ** 4))


def test_enumeration_matches_volumes():
    for params in (P222, params_for(3, 1, 2, 2)):
        for r in range(params.max_weight + 1):
            sphere = enumerate_sphere(params, r)
            assert len(sphere) == sphere_volume(params, r)
            assert all(x.weight() == r for x in sphere)
            assert len(enumerate_ball(params, r)) == ball_volume(params, r)


def test_weight_histogram_matches_volumes():
    params = params_for(2, 2, 3, 2)
    hist = weight_histogram(params)
    assert hist == [sphere_volume(params, r)
                    for r in range(params.max_weight + 1)]


def test_weight_histogram_guard():
    with pytest.raises(GuardError):
        weight_histogram(params_for(2, 3, 3, 2))


def test_ball_spec():
    center = zero_tuple(P222)
    spec = BallSpec(center=center, radius=2)
    inside = BlockTuple(P222, [((1, 0), (0, 0)), ((1, 1), (0, 0))])
    outside = BlockTuple(P222, [((1, 0), (0, 1)), ((1, 0), (0, 1))])
    assert spec.contains(inside)
    assert not spec.contains(outside)
    with pytest.raises(ValueError):
        BallSpec(center=center, radius=-1)
    with pytest.raises(ValueError):
        BallSpec(center=center, radius=5)


def test_rank_matrix_sampler_rank_exact():
    rng = random.Random(43)
    for r in range(3):
        for _ in range(40):
            grid = sample_uniform_matrix_of_rank(F2, 2, 3, r, rng)
            assert rank(MatrixFq(F2, grid)) == r


def test_ball_sampler_stays_inside_and_reproduces():
    stream = RandomStream(1, "ball-test")
    draws = [sample_ball_uniform(P222, 2, stream.child(i)) for i in range(200)]
    assert all(x.weight() <= 2 for x in draws)
    stream2 = RandomStream(1, "ball-test")
    again = [sample_ball_uniform(P222, 2, stream2.child(i)) for i in range(200)]
    assert draws == again


def test_ball_sampler_hits_every_weight():
    stream = RandomStream(2, "ball-weights")
    weights = {sample_ball_uniform(P222, 2, stream.child(i)).weight()
               for i in range(300)}
    assert weights == {0, 1, 2}


def test_uniform_tuple_sampler_marginal():
    rng = random.Random(47)
    params = params_for(2, 1, 1, 3)
    counts = [0] * 8
    for _ in range(4000):
        counts[tuple_code(sample_uniform_tuple(params, rng))] += 1
    assert min(counts) > 0


def test_decomposable_rows_weight_cap():
    rng = random.Random(53)
    params = P222
    exact = 0
    for _ in range(300):
        x = sample_decomposable_rows(params, 2, rng)
        assert x.weight() <= 2
        exact += x.weight() == 2
    # weight-w draws happen at constant rate (well above the K_q^ell floor)
    assert exact > 30
