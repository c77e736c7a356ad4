from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from distspec import all_pairs_distances, minimal_addressing_search, tree_addressing, verify_addressing
from distspec.addressing import OrderTooLarge, address_distance, addressing_lower_bound
from distspec.families import FamilySpec, build
from distspec.graphs import Graph

from conftest import connected, trees, up_to


def fam(kind, *params):
    return build(FamilySpec(kind, params))


addresses_st = st.integers(1, 6).flatmap(lambda r: st.tuples(st.text("01*", min_size=r, max_size=r),
                                                             st.text("01*", min_size=r, max_size=r)))


@given(addresses_st)
def test_address_distance_symmetric(pair):
    a, b = pair
    assert address_distance(a, b) == address_distance(b, a)
    assert address_distance(a, a) == 0


def test_verify_examples():
    assert verify_addressing(fam("complete", 3), ["0*", "10", "11"])
    assert verify_addressing(fam("cycle", 4), ["00", "01", "11", "10"])
    assert not verify_addressing(fam("cycle", 4), ["00", "01", "10", "11"])
    with pytest.raises(ValueError):
        verify_addressing(fam("complete", 3), ["0*", "10", "1"])
    with pytest.raises(ValueError):
        verify_addressing(fam("complete", 3), ["0*", "10"])
    with pytest.raises(ValueError):
        verify_addressing(fam("complete", 3), ["0x", "10", "11"])


def test_tree_addressing_examples():
    assert tree_addressing(fam("path", 4)) == ("000", "100", "110", "111")
    assert tree_addressing(fam("star", 4)) == ("000", "100", "010", "001")
    with pytest.raises(ValueError):
        tree_addressing(fam("cycle", 4))


@pytest.mark.parametrize("n", range(2, 10))
def test_tree_addressing_all_trees(n):
    for t in trees(n):
        for root in (0, t.n - 1):
            addr = tree_addressing(t, root)
            assert all(len(a) == n - 1 and "*" not in a for a in addr)
            assert verify_addressing(t, addr)


@pytest.mark.parametrize("g,expected", [("K4", 3), ("C4", 2), ("C5", 4), ("K3", 2), ("P4", 3), ("C6", 3)])
def test_exact_search_values(g, expected):
    graph = {"K4": fam("complete", 4), "C4": fam("cycle", 4), "C5": fam("cycle", 5),
             "K3": fam("complete", 3), "P4": fam("path", 4), "C6": fam("cycle", 6)}[g]
    n, witness = minimal_addressing_search(graph)
    assert n == expected and verify_addressing(graph, witness)


def _numeric_lower_bound(g: Graph) -> int:
    w = np.linalg.eigvalsh(all_pairs_distances(g).dist.astype(float))
    return max(int((w > 1e-9).sum()), int((w < -1e-9).sum()))


def test_search_bounds_all_graphs_up_to_5():
    for g in list(up_to(5, 2)) + [fam("complete", 6), fam("cycle", 6)]:
        n, witness = minimal_addressing_search(g)
        assert addressing_lower_bound(g) == _numeric_lower_bound(g)
        assert _numeric_lower_bound(g) <= n <= g.n - 1
        assert verify_addressing(g, witness) and all(len(a) == n for a in witness)


def test_search_bounds_order_6():
    for g in connected(6):
        n, witness = minimal_addressing_search(g)
        assert _numeric_lower_bound(g) <= n <= 5 and verify_addressing(g, witness)


def test_search_order_limit():
    with pytest.raises(OrderTooLarge):
        minimal_addressing_search(fam("path", 7))
    assert minimal_addressing_search(Graph(1, (0,))) == (0, ("",))
