import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from krcrystals.classical import (
    ClassicalType,
    InadmissibleColumn,
    KNTableau,
    TableauSyntaxError,
    columns_to_word,
    generate_component,
    parse_tableau,
    render_tableau,
    signature,
    tensor_apply,
    validate_column,
    weyl_dimension,
    word_to_columns,
    word_weight,
)

# Dimensions of small irreducible modules, from standard tables.
KNOWN_DIMENSIONS = [
    ("A", 2, (1,), 3), ("A", 2, (2, 1), 8), ("A", 3, (1, 1), 6),
    ("C", 2, (1,), 4), ("C", 2, (1, 1), 5), ("C", 2, (2,), 10), ("C", 3, (1, 1, 1), 14),
    ("D", 4, (1,), 8), ("D", 4, (1, 1), 28), ("D", 4, (2,), 35), ("D", 5, (1, 1, 1), 120),
]


@pytest.mark.parametrize("family,n,shape,dim", KNOWN_DIMENSIONS)
def test_weyl_dimension_table(family, n, shape, dim):
    assert weyl_dimension(shape, ClassicalType(family, n)) == dim


@pytest.mark.parametrize("family,n,shape,dim", KNOWN_DIMENSIONS)
def test_component_sizes(family, n, shape, dim):
    assert len(generate_component(shape, ClassicalType(family, n))) == dim


def _admissible_columns(ct, height):
    out = []
    for col in itertools.combinations(sorted(ct.letters, key=ct.order_rank), height):
        try:
            validate_column(col, ct)
        except InadmissibleColumn:
            continue
        out.append(col)
    if ct.family == "D":
        # n and n-bar are incomparable and may alternate, so repeats must be tried
        n = ct.max_letter
        for col in itertools.product(ct.letters, repeat=height):
            if n in col and -n in col and col not in out:
                try:
                    validate_column(col, ct)
                except InadmissibleColumn:
                    continue
                out.append(col)
    return set(out)


@pytest.mark.parametrize("family,n,height", [("C", 2, 2), ("C", 3, 2), ("C", 3, 3), ("D", 4, 2), ("D", 4, 3), ("D", 5, 2)])
def test_single_column_elements_are_admissible_columns(family, n, height):
    ct = ClassicalType(family, n)
    g = generate_component((1,) * height, ct)
    got = {g.columns(k)[0] for k in range(len(g))}
    assert got == _admissible_columns(ct, height)


def test_column_inequality_rejects_one_one_bar():
    ct = ClassicalType("C", 3)
    with pytest.raises(InadmissibleColumn):
        parse_tableau("[[1,-1]]", ct)
    assert parse_tableau("[[2,-2]]", ct).columns == ((2, -2),)


def test_parse_errors():
    ct = ClassicalType("D", 4)
    for bad in ("[1,2]", "[[0]]", "[[true]]", '{"a": 1}'):
        with pytest.raises(TableauSyntaxError):
            parse_tableau(bad, ct)
    with pytest.raises(InadmissibleColumn):
        parse_tableau("[[2,1]]", ct)
    with pytest.raises(InadmissibleColumn):
        parse_tableau("[[9]]", ct)
    with pytest.raises(TableauSyntaxError):
        parse_tableau("[[1],[1,2]]", ct)


def test_render_round_trip():
    t = KNTableau(((1, 3, -3), (2,)))
    assert render_tableau(t) == "[[1,3,-3],[2]]"
    assert parse_tableau(render_tableau(t)) == t


def test_reading_word_convention():
    # columns right to left, each from its base upward
    assert columns_to_word([[1, 2], [3, 4]]) == (3, 4, 1, 2)
    assert word_to_columns((3, 4, 1, 2), (2, 2)) == ((1, 2), (3, 4))


GRAPHS = [("A", 3, (2, 1)), ("C", 3, (2, 1)), ("D", 4, (2, 1)), ("D", 5, (1, 1, 1)), ("C", 2, (2, 2))]


@pytest.mark.parametrize("family,n,shape", GRAPHS)
def test_crystal_axioms(family, n, shape):
    ct = ClassicalType(family, n)
    g = generate_component(shape, ct)
    idx = np.arange(len(g))
    for i in ct.colors:
        f, e = g.f[i], g.e[i]
        has = f >= 0
        assert np.array_equal(e[f[has]], idx[has])
        has = e >= 0
        assert np.array_equal(f[e[has]], idx[has])
        pair = np.array([ct.coroot_pairing(w, i) for w in g.weights])
        assert np.array_equal(g.phi[i] - g.eps[i], pair)
        src = np.nonzero(f >= 0)[0]
        assert np.all(g.weights[f[src]] == g.weights[src] - np.array(ct.simple_root(i)))
    assert len(g.highest()) == 1


@pytest.mark.parametrize("family,n,shape", GRAPHS)
def test_elements_are_valid_tableaux(family, n, shape):
    ct = ClassicalType(family, n)
    g = generate_component(shape, ct)
    for k in range(len(g)):
        parse_tableau([list(c) for c in g.columns(k)], ct)


letters_c3 = st.sampled_from(ClassicalType("C", 3).letters)


@settings(max_examples=200, deadline=None)
@given(st.lists(letters_c3, min_size=1, max_size=6), st.integers(1, 3))
def test_tensor_rule_on_words(word, i):
    ct = ClassicalType("C", 3)
    eps, phi, _, _ = signature(word, i, ct)
    assert phi - eps == ct.coroot_pairing(word_weight(word, ct), i)
    y = tensor_apply("f", i, word, ct)
    assert (y is None) == (phi == 0)
    if y is not None:
        assert tensor_apply("e", i, y, ct) == tuple(word)


@settings(max_examples=100, deadline=None)
@given(st.lists(letters_c3, min_size=2, max_size=6), st.integers(1, 3), st.integers(1, 5))
def test_tensor_rule_is_associative(word, i, cut):
    ct = ClassicalType("C", 3)
    cut = min(cut, len(word) - 1)
    left, right = word[:cut], word[cut:]
    el, pl, _, _ = signature(left, i, ct)
    er, pr, _, _ = signature(right, i, ct)
    eps, phi, _, _ = signature(word, i, ct)
    assert eps == el + max(0, er - pl)
    assert phi == pr + max(0, pl - er)
