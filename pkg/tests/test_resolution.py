import pytest
from hypothesis import given, settings

from canring.groebner import Ideal
from canring.hilbert import hilbert_numerator, poly_add
from canring.resolution import (BettiTable, GradedFreeModule, SyzygyMatrix, canonical_twist, is_complex,
                                minimal_resolution, syzygies)
from canring.ring import RingSpec
from canring.strata.build import build_type_a, build_type_b, build_type_dd
from test_groebner import small_ideal


def matrix(R, gens):
    return SyzygyMatrix(R, GradedFreeModule((0,)), GradedFreeModule(tuple(g.degree for g in gens)),
                        [[g] for g in gens])


def proportional_columns(a, b):
    (i, p), = [(i, p) for i, p in enumerate(a) if p][:1]
    c = b[i].lead()[1] * a[i].ring.field.inv(p.lead()[1])
    return all(q.scale(c) == r for q, r in zip(a, b))


def test_koszul_syzygy():
    R = RingSpec.make("x y")
    x, y = R.gens()
    S = syzygies(matrix(R, [x, y]))
    assert len(S.columns) == 1 and S.source.twists == (2,)
    assert proportional_columns(S.columns[0], [-y, x])


def test_syzygy_of_x2_xy():
    R = RingSpec.make("x y")
    x, y = R.gens()
    S = syzygies(matrix(R, [x ** 2, x * y]))
    assert len(S.columns) == 1
    assert proportional_columns(S.columns[0], [y, -x])


def test_regular_element_has_no_syzygies():
    R = RingSpec.make("x y")
    assert syzygies(matrix(R, [R["x"] ** 3 + R["y"] ** 3])).columns == []


def test_complete_intersection_is_koszul():
    res = minimal_resolution(build_type_dd(1).ideal)
    assert res.betti.steps == [(0,), (2, 10), (12,)]
    assert canonical_twist(res) == 1


def test_hypersurface_twist():
    res = minimal_resolution(build_type_a(1).ideal)
    assert res.betti.steps == [(0,), (10,)]
    assert canonical_twist(res) == 1


@pytest.fixture(scope="module")
def type_b_resolution():
    return minimal_resolution(build_type_b(1).ideal)


def test_type_b_betti(type_b_resolution):
    b = type_b_resolution.betti
    assert b.ranks() == [1, 9, 16, 9, 1]
    assert b.steps[-1] == (23,)
    assert canonical_twist(type_b_resolution) == 1


def test_type_b_self_duality(type_b_resolution):
    steps = type_b_resolution.betti.steps
    pd = len(steps) - 1
    for i in range(pd + 1):
        assert sorted(steps[i]) == sorted(23 - d for d in steps[pd - i])


def test_type_b_is_a_minimal_complex(type_b_resolution):
    assert is_complex(type_b_resolution)
    assert not any(m.has_unit_entry() for m in type_b_resolution.maps)


def euler_numerator(res):
    total = []
    for i, s in enumerate(res.betti.steps):
        for d in s:
            total = poly_add(total, [0] * d + [(-1) ** i])
    return total


def test_euler_characteristic_matches_hilbert_numerator(type_b_resolution):
    I = build_type_b(1).ideal
    assert euler_numerator(type_b_resolution) == hilbert_numerator(I.gb().leads(), I.ring.weights)


def test_betti_table_text():
    t = BettiTable([(0,), (2, 10), (12,)])
    assert str(t).splitlines()[:3] == ["       0 1 2", "total: 1 2 1", "    0: 1 . ."]


def test_canonical_twist_needs_rank_one_tail():
    R = RingSpec.make("x y z")
    x, y, z = R.gens()
    res = minimal_resolution(Ideal(R, [x * y, x * z, y * z]))
    assert res.betti.ranks() == [1, 3, 2]
    with pytest.raises(ValueError):
        canonical_twist(res)


@settings(max_examples=25)
@given(small_ideal())
def test_random_resolutions_are_exact_and_match_the_series(I):
    res = minimal_resolution(I)
    assert is_complex(res)
    assert not any(m.has_unit_entry() for m in res.maps)
    assert euler_numerator(res) == hilbert_numerator(I.gb().leads(), I.ring.weights)
    assert res.length <= I.ring.n
