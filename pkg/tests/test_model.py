"""Vertex/edge model: differences, rotation, orbits."""

import pytest
from hypothesis import given, strategies as st

from hopsolver.model import (
    ARC,
    BLACK,
    FOUR_FOLD,
    PINK,
    TWO_FOLD,
    Cycle,
    DegenerateEdgeError,
    Edge,
    OrbitTable,
    TwoFactor,
    all_edges,
    all_orbits,
    arc,
    black,
    blue,
    difference,
    edge_difference,
    orbit_of,
    pink,
    rotate,
    rotate_factor,
    rotate_vertex,
)

ns = st.integers(min_value=4, max_value=40)


@given(ns, st.data())
def test_difference_range_and_symmetry(n, data):
    u = data.draw(st.integers(0, n - 2))
    v = data.draw(st.integers(0, n - 2))
    if u == v:
        with pytest.raises(DegenerateEdgeError):
            difference(u, v, n)
        return
    d = difference(u, v, n)
    assert d == difference(v, u, n)
    assert 1 <= d <= (n - 1) // 2


@given(ns, st.integers(0, 38))
def test_difference_infinity(n, u):
    u %= n - 1
    assert difference(u, n - 1, n) == n - 1
    assert difference(n - 1, u, n) == n - 1


@given(ns, st.data())
def test_rotation_preserves_difference_and_kind(n, data):
    u = data.draw(st.integers(0, n - 1))
    v = data.draw(st.integers(0, n - 1))
    if u == v:
        return
    e = data.draw(st.sampled_from(
        [pink(u, v), blue(u, v), arc(u, v), arc(v, u)]))
    k = data.draw(st.integers(-5, 5))
    r = rotate(e, k, n)
    assert r.kind == e.kind
    assert edge_difference(r, n) == edge_difference(e, n)


def test_rotation_fixes_infinity_and_has_order_n_minus_1():
    n = 10
    assert rotate_vertex(n - 1, 3, n) == n - 1
    e = arc(2, 9)
    out = e
    for _ in range(n - 1):
        out = rotate(out, 1, n)
    assert out == e
    assert rotate(e, 1, n) != e


def test_edge_constructors_normalize():
    assert pink(5, 2) == Edge(2, 5, PINK)
    assert black(5, 2) == Edge(2, 5, BLACK)
    assert arc(5, 2) == Edge(5, 2, ARC)  # arcs keep their direction
    assert repr(pink(0, 1)) == "pink(0,1)"
    assert repr(arc(1, 0)) == "arc(1->0)"
    with pytest.raises(DegenerateEdgeError):
        pink(3, 3)


@pytest.mark.parametrize("n", range(4, 13))
@pytest.mark.parametrize("fold", [TWO_FOLD, FOUR_FOLD])
def test_all_edges_count(n, fold):
    edges = list(all_edges(n, fold))
    assert len(edges) == len(set(edges)) == fold * n * (n - 1) // 2


def _brute_force_orbits(n, fold):
    """Independent oracle: flood-fill closure under single-step rotation,
    never consulting difference/colour keys."""
    seen, out = set(), []
    for e in all_edges(n, fold):
        if e in seen:
            continue
        stack, comp = [e], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.append(rotate(x, 1, n))
        seen |= comp
        out.append(frozenset(comp))
    return out


@pytest.mark.parametrize("n", range(4, 13))
@pytest.mark.parametrize("fold", [TWO_FOLD, FOUR_FOLD])
def test_orbits_match_brute_force_closure(n, fold):
    ours = set(all_orbits(n, fold))
    brute = set(_brute_force_orbits(n, fold))
    assert ours == brute


@pytest.mark.parametrize("n,fold,count", [
    (10, TWO_FOLD, 10),   # (4 finite diffs + infinity) x 2 colours
    (10, FOUR_FOLD, 20),
    (11, FOUR_FOLD, 23),  # 2n+1: the half-turn black orbits merge
    (11, TWO_FOLD, 12),  # undirected blacks never merge
])
def test_orbit_counts(n, fold, count):
    assert len(all_orbits(n, fold)) == count


def test_merged_black_orbit_for_odd_n():
    n = 11
    k = (n - 1) // 2
    orb = orbit_of(arc(0, k), n)
    assert arc(k, 0) in orb          # both orientations share the orbit
    assert len(orb) == n - 1
    assert len(orbit_of(pink(0, k), n)) == k


def test_orbit_table_partitions_edges():
    for fold in (TWO_FOLD, FOUR_FOLD):
        table = OrbitTable(12, fold)
        edges = list(all_edges(12, fold))
        assert sorted(table.index) == sorted(edges)
        assert sum(len(o) for o in table.orbits) == len(edges)
        for e in edges:
            assert e in table.orbits[table.index[e]]


def test_rotate_factor_relabels_whole_cycles():
    f = TwoFactor(6, (
        Cycle((5, 0, 1, 2, 3, 4),
              (pink(5, 0), blue(0, 1), arc(1, 2), arc(2, 3), pink(3, 4),
               blue(4, 5))),
    ))
    g = rotate_factor(f, 2)
    assert g.n == 6
    assert g.cycles[0].vertices == (5, 2, 3, 4, 0, 1)
    assert g.cycle_type() == f.cycle_type()
