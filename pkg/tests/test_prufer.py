import math
from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inducedforests.prufer import (
    ForestCode,
    IndependentSetTreeCode,
    LabeledRootedForest,
    LabeledTree,
    decode_rooted_forest,
    decode_tree,
    decode_tree_with_independent_set,
    encode_rooted_forest,
    encode_tree,
    encode_tree_with_independent_set,
)


@st.composite
def prufer_codes(draw, n_max=12):
    n = draw(st.integers(2, n_max))
    code = draw(st.lists(st.integers(1, n), min_size=n - 2, max_size=n - 2))
    return n, tuple(code)


@st.composite
def forest_codes(draw, n_max=10):
    n = draw(st.integers(1, n_max))
    m = draw(st.integers(1, n))
    roots = tuple(sorted(draw(st.sets(st.integers(1, n), min_size=m, max_size=m))))
    if m == n:
        return n, ForestCode(roots, (), roots[0])
    body = tuple(draw(st.lists(st.integers(1, n), min_size=n - m - 1, max_size=n - m - 1)))
    return n, ForestCode(roots, body, draw(st.sampled_from(roots)))


@st.composite
def independent_codes(draw, n_max=11):
    n = draw(st.integers(3, n_max))
    m = draw(st.integers(1, n - 2))
    a = tuple(draw(st.lists(st.integers(m + 1, n), min_size=m - 1, max_size=m - 1)))
    b = tuple(draw(st.lists(st.integers(1, n), min_size=n - m - 1, max_size=n - m - 1)))
    return n, IndependentSetTreeCode(m, a, b)


@given(prufer_codes())
def test_tree_round_trip(case):
    n, code = case
    tree = decode_tree(code, n)
    assert encode_tree(tree) == code
    deg = tree.degrees()
    assert all(deg[v] == 1 + code.count(v) for v in range(1, n + 1))


@given(forest_codes())
def test_forest_round_trip(case):
    n, code = case
    forest = decode_rooted_forest(code, n)
    assert forest.m == len(code.roots)
    assert encode_rooted_forest(forest) == code
    assert LabeledRootedForest.from_dict(forest.to_dict()) == forest
    assert ForestCode.from_dict(code.to_dict()) == code


@given(independent_codes())
def test_independent_set_round_trip(case):
    n, code = case
    tree = decode_tree_with_independent_set(code, n)
    assert not any(u <= code.m and v <= code.m for u, v in tree.edges)
    assert encode_tree_with_independent_set(tree, code.m) == code
    assert IndependentSetTreeCode.from_dict(code.to_dict()) == code


def test_worked_example():
    tree = LabeledTree(4, [(1, 3), (2, 3), (3, 4)])
    assert encode_tree(tree) == (3, 3)
    assert encode_tree_with_independent_set(tree, 2) == IndependentSetTreeCode(2, (3,), (3,))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cayley_by_exhaustion(n):
    trees = {decode_tree(c, n).edges for c in product(range(1, n + 1), repeat=n - 2)}
    assert len(trees) == n ** (n - 2)


@pytest.mark.parametrize("n,m", [(4, 2), (5, 1), (5, 3), (6, 2), (6, 6)])
def test_forest_cardinality(n, m):
    seen = set()
    for roots in combinations(range(1, n + 1), m):
        if m == n:
            seen.add(decode_rooted_forest(ForestCode(roots, (), roots[0]), n))
            continue
        for tail in roots:
            for body in product(range(1, n + 1), repeat=n - m - 1):
                seen.add(decode_rooted_forest(ForestCode(roots, body, tail), n))
    assert len(seen) == math.comb(n - 1, m - 1) * n ** (n - m)


def test_all_roots_convention():
    forest = LabeledRootedForest(3, [], [1, 2, 3])
    assert encode_rooted_forest(forest) == ForestCode((1, 2, 3), (), 1)
    with pytest.raises(ValueError):
        decode_rooted_forest(ForestCode((1, 2, 3), (), 2), 3)


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        LabeledTree(3, [(1, 2)])
    with pytest.raises(ValueError):
        LabeledTree(3, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        LabeledTree(4, [(1, 2), (2, 3), (3, 1)])
    with pytest.raises(ValueError):
        LabeledTree(3, [(1, 4), (2, 3)])
    with pytest.raises(ValueError):
        decode_tree((5,), 3)
    with pytest.raises(ValueError):
        decode_tree((1, 2), 3)
    with pytest.raises(ValueError):
        LabeledRootedForest(3, [(1, 2)], [1, 2])
    with pytest.raises(ValueError):
        LabeledRootedForest(3, [(1, 2)], [3])
    with pytest.raises(ValueError):
        decode_rooted_forest(ForestCode((1,), (2,), 3), 3)
    with pytest.raises(ValueError):
        decode_tree_with_independent_set(IndependentSetTreeCode(2, (1,), (3,)), 4)
    with pytest.raises(ValueError):
        encode_tree_with_independent_set(LabeledTree(4, [(1, 2), (2, 3), (3, 4)]), 2)


def test_tree_serialisation():
    tree = decode_tree((4, 4, 2), 5)
    assert LabeledTree.from_dict(tree.to_dict()) == tree
