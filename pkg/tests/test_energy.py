import pytest
from hypothesis import given, settings, strategies as st

from conftest import EX1_ELEMENTS, EX1_HIGH, EX2_LEFT, EX2_PHI, EX2_R, EX2_R_AT_MAX, EX2_RIGHT
from krcrystals.combinat import exact_div
from krcrystals.energy import (
    bfs_R,
    combinatorial_R,
    contraction_sequence,
    format_path,
    intrinsic_D,
    local_H,
    pair_oracle,
    phi_map,
    replay_certificate,
    single_D,
    to_type_a,
    typeA_coenergy,
)
from krcrystals.kr import AlgebraSpec, TensorProduct

ALGEBRAS = [AlgebraSpec("D", 4), AlgebraSpec("C", 2), AlgebraSpec("C", 3)]
PAIRS = [[(1, 1), (1, 1)], [(1, 1), (1, 2)], [(2, 1), (1, 1)], [(1, 2), (1, 1)]]


def ids(x):
    return str(x)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=ids)
@pytest.mark.parametrize("shapes", PAIRS, ids=ids)
def test_contraction_route_matches_oracles_everywhere(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    oracle = pair_oracle(*T.factors)
    for b in T.all_elements():
        assert combinatorial_R(T, b).image == oracle.r_of(b), T.render(b)
        assert local_H(T, b) == oracle.h_of(b), T.render(b)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=ids)
@pytest.mark.parametrize("shapes", PAIRS, ids=ids)
def test_r_is_an_involution_and_respects_anchor(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    T2 = T.reversed_pair()
    forward, back = bfs_R(*T.factors), bfs_R(*T2.factors)
    assert forward(T.u) == T2.u
    for b in T.all_elements():
        assert back(forward(b)) == b
    assert local_H(T, T.u) == 0


@pytest.mark.parametrize("alg", ALGEBRAS[:2], ids=ids)
@pytest.mark.parametrize("shapes", PAIRS[1:], ids=ids)
def test_r_commutes_with_all_operators(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    T2 = T.reversed_pair()
    R = lambda b: combinatorial_R(T, b).image  # noqa: E731
    for b in T.all_elements():
        for i in T.colors:
            for op in ("e", "f"):
                y = T.apply(op, i, b)
                z = T2.apply(op, i, R(b))
                assert (y is None) == (z is None)
                if y is not None:
                    assert R(y) == z


def _swap(T: TensorProduct, b, pos, route):
    pair = TensorProduct(T.factors[pos:pos + 2])
    x = b[pos:pos + 2]
    y = combinatorial_R(pair, x).image if route == "contraction" else bfs_R(*pair.factors)(x)
    facs = list(T.factors)
    facs[pos], facs[pos + 1] = facs[pos + 1], facs[pos]
    return TensorProduct(facs), b[:pos] + y + b[pos + 2:]


TRIPLES = [
    (AlgebraSpec("D", 4), [(1, 1), (1, 1), (1, 1)]),
    (AlgebraSpec("C", 2), [(1, 1), (1, 1), (1, 1)]),
    (AlgebraSpec("D", 4), [(1, 1), (1, 2), (2, 1)]),
    (AlgebraSpec("C", 2), [(1, 2), (2, 1), (1, 1)]),
]


@pytest.mark.parametrize("alg,shapes", TRIPLES, ids=ids)
@pytest.mark.parametrize("route", ["contraction", "bfs"])
def test_yang_baxter(alg, shapes, route):
    T = TensorProduct.of(alg, shapes)
    for b in T.all_elements():
        A, x = _swap(*_swap(*_swap(T, b, 0, route), 1, route), 0, route)
        B, y = _swap(*_swap(*_swap(T, b, 1, route), 0, route), 1, route)
        assert A.shapes == B.shapes == shapes[::-1]
        assert x == y


@pytest.mark.parametrize("alg", ALGEBRAS, ids=ids)
@pytest.mark.parametrize("shapes", PAIRS, ids=ids)
def test_strange_local_energy_relation(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    oracle = pair_oracle(*T.factors)
    cells = alg.diamond.cell_count
    k2 = T.factors[1]
    for b in T.all_elements():
        image = oracle.r_of(b)
        gap = exact_div(sum(k2.weight(image[0])) - sum(k2.weight(b[1])), cells)
        assert oracle.h_of(b) - oracle.h_of(T.sigma(b)) == gap


SMALL_TENSORS = [
    (AlgebraSpec("D", 4), [(1, 1), (1, 2)]),
    (AlgebraSpec("D", 4), [(2, 1), (1, 1), (1, 1)]),
    (AlgebraSpec("C", 2), [(1, 2), (1, 1), (2, 1)]),
    (AlgebraSpec("C", 3), [(1, 1), (2, 1)]),
    (AlgebraSpec("D", 5), [(1, 1), (1, 1), (1, 2)]),
]


@pytest.mark.parametrize("alg,shapes", SMALL_TENSORS, ids=ids)
def test_phi_lowers_energy_by_the_gap(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    cells = alg.diamond.cell_count
    for b in T.highest_elements():
        x, path = phi_map(T, b)
        assert T.is_highest(x)
        assert T.apply_path("e", path, T.sigma(b)) == x
        gap = exact_div(T.size - sum(T.weight(b)), cells)
        assert intrinsic_D(T, x, "oracle") == intrinsic_D(T, b, "oracle") - gap


@pytest.mark.parametrize("alg,shapes", SMALL_TENSORS, ids=ids)
def test_energy_methods_agree(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    for b in T.highest_elements():
        d = intrinsic_D(T, b, "oracle")
        assert d >= 0
        assert intrinsic_D(T, b, "contraction") == d
        assert intrinsic_D(T, b, "pairwise") == d
    assert intrinsic_D(T, T.u) == 0


@pytest.mark.parametrize("alg,shapes", SMALL_TENSORS, ids=ids)
def test_energy_is_invariant_under_adjacent_r(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    for b in T.highest_elements():
        d = intrinsic_D(T, b, "oracle")
        for pos in range(len(T) - 1):
            T2, b2 = _swap(T, b, pos, "bfs")
            assert intrinsic_D(T2, b2, "oracle") == d


@pytest.mark.parametrize("alg,shapes", SMALL_TENSORS, ids=ids)
def test_energy_is_constant_on_classical_components(alg, shapes):
    T = TensorProduct.of(alg, shapes)
    for b in T.all_elements():
        assert intrinsic_D(T, b) == intrinsic_D(T, T.to_highest(b)[0])


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_certificates_replay(data):
    alg = data.draw(st.sampled_from(ALGEBRAS))
    T = TensorProduct.of(alg, data.draw(st.sampled_from(PAIRS)))
    b = tuple(data.draw(st.integers(0, len(k) - 1)) for k in T.factors)
    res = combinatorial_R(T, b)
    assert replay_certificate(T, res) == res.image
    cert = res.certificate(T)
    assert cert["iterates"][0] == T.columns(T.to_highest(b)[0])


def test_format_path():
    assert format_path([1, 2, 6]) == "126"
    assert format_path([3, 12]) == "3,12"


def test_single_factor_energy():
    k = TensorProduct.of(AlgebraSpec("D", 6), [(2, 2)]).factors[0]
    assert single_D(k, k.find([[1, 2], [1, 2]])) == 0
    assert single_D(k, k.find([[1, 2]])) == 1
    assert single_D(k, k.find([])) == 2


# ---------------------------------------------------------------- worked examples


def test_example_one(example1):
    T = example1
    for payload in EX1_ELEMENTS:
        b = T.element(payload)
        h = T.to_highest(T.sigma(b))[0]
        assert T.columns(h) == EX1_HIGH
        assert intrinsic_D(T, b) == 7
        TA, ha = to_type_a(T, h)
        assert typeA_coenergy(TA, ha) == 4
        assert intrinsic_D(T, h) == 4


def test_example_two(example2):
    T = example2
    b = T.element([EX2_LEFT, EX2_RIGHT])
    res = combinatorial_R(T, b)
    assert [T.columns(x) for x in res.iterates[1:]] == EX2_PHI
    assert res.target.columns(res.max_image) == EX2_R_AT_MAX
    assert res.target.columns(res.image) == EX2_R
    iterates, _ = contraction_sequence(T, b)
    assert intrinsic_D(T, iterates[2]) == 3
    assert intrinsic_D(T, b) == 12
    k1, k2 = T.factors
    assert single_D(k1, b[0]) == 3
    assert single_D(k2, res.image[0]) == 1
    assert local_H(T, b) == 8
    assert combinatorial_R(T, T.u).image == T.reversed_pair().u
