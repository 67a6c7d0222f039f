import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from krcrystals.energy import pair_oracle
from krcrystals.kr import AlgebraSpec, TensorProduct, kr_crystal
from krcrystals.typea import promotion, promotion_inverse

RECTS = [(2, 1, 1), (3, 1, 2), (3, 2, 2), (4, 2, 2), (4, 1, 3), (5, 2, 2), (5, 3, 1)]


@pytest.mark.parametrize("n,r,s", RECTS)
def test_promotion_has_order_n_plus_one(n, r, s):
    k = kr_crystal("A", n, r, s)
    for x in range(len(k)):
        cols = k.columns(x)
        t = cols
        for _ in range(n + 1):
            t = promotion(t, n + 1)
        assert t == cols
        assert promotion_inverse(promotion(cols, n + 1), n + 1) == cols


@pytest.mark.parametrize("n,r,s", RECTS)
def test_promotion_shifts_colors(n, r, s):
    k = kr_crystal("A", n, r, s)
    g = k.graph
    pr = k.twist.astype(np.int64)
    for i in range(1, n):
        src = np.nonzero(g.e[i] >= 0)[0]
        assert np.array_equal(pr[g.e[i][src]], g.e[i + 1][pr[src]])
        assert np.all(g.e[i + 1][pr[g.e[i] < 0]] < 0)


def test_promotion_small_examples():
    assert promotion([[3]], 3) == ((1,),)
    assert promotion([[1]], 3) == ((2,),)
    assert promotion([[1, 2], [1, 3]], 3) == ((1, 2), (2, 3))


def _highest_h(n, shapes):
    T = TensorProduct.of(AlgebraSpec("A", n), shapes)
    oracle = pair_oracle(*T.factors)
    return {tuple(tuple(map(tuple, t)) for t in T.columns(b)): oracle.h_of(b) for b in T.highest_elements()}


@pytest.mark.parametrize("shapes", [[(1, 1), (1, 2)], [(2, 1), (1, 1)], [(1, 2), (2, 2)]])
def test_type_a_local_energy_is_rank_independent(shapes):
    low = _highest_h(4, shapes)
    high = _highest_h(6, shapes)
    assert low and all(high[key] == h for key, h in low.items())


def test_type_a_local_energy_single_boxes():
    # B^{1,1} (x) B^{1,1}: the symmetric part sits at 0, the antisymmetric part at 1
    h = _highest_h(3, [(1, 1), (1, 1)])
    assert h[(((1,),), ((1,),))] == 0
    assert h[(((1,),), ((2,),))] == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_promotion_is_a_bijection_on_random_tableaux(data):
    n, r, s = data.draw(st.sampled_from(RECTS))
    k = kr_crystal("A", n, r, s)
    x = data.draw(st.integers(0, len(k) - 1))
    y = k.find(promotion(k.columns(x), n + 1))
    assert k.find(promotion_inverse(k.columns(y), n + 1)) == x
