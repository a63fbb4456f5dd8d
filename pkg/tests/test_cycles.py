from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from hochquiv.algebra import compute_basis
from hochquiv.corpus import max_relation_length, random_monomial_algebra
from hochquiv.cycles import (
    OrientedCycle,
    build_window_graph,
    elementary_cycles,
    find_truncated_cycles,
    is_m_truncated,
    least_rotation,
    minimal_two_truncated,
)
from hochquiv.errors import EndpointMismatch
from oracles import brute_least_rotation


def cyc(A, text):
    return OrientedCycle.parse(A, text)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=12))
def test_least_rotation_matches_brute_force(word):
    assert least_rotation(word) == brute_least_rotation(word)


def test_window_graph_examples():
    D = build_window_graph(load("dual"), 2)
    assert D.nodes == [(0,)] and D.edges[(0,)] == [(0,)]
    C = build_window_graph(load("cycle2"), 2)
    assert sorted(C.edge_list()) == [((0,), (1,)), ((1,), (0,))]
    R = build_window_graph(load("remark7"), 2)
    assert len(R.nodes) == 2 and R.edge_list() == []


@pytest.mark.parametrize("m", [2, 3, 4])
def test_cubic_two_cycle_has_no_truncated_cycles(m):
    assert find_truncated_cycles(load("remark7"), m, 8) == []


def test_find_examples():
    D = load("dual")
    (w,) = find_truncated_cycles(D, 2, 4)
    assert w.cycle.names(D) == ["a"] and w.length == 1
    C = load("cycle2")
    (w,) = find_truncated_cycles(C, 2, 4)
    assert w.cycle.names(C) == ["a", "b"]


def test_is_m_truncated_examples():
    assert is_m_truncated(cyc(load("dual"), "a"), 2, load("dual"))[0]
    R = load("remark7")
    assert not is_m_truncated(cyc(R, "a1*a2"), 3, R)[0]
    assert not is_m_truncated(cyc(R, "a1*a2"), 2, R)[0]
    with pytest.raises(EndpointMismatch):
        cyc(R, "a1*a1")


def test_minimal_two_truncated_examples():
    assert minimal_two_truncated(load("dual")).arrows == (0,)
    assert minimal_two_truncated(load("cycle2")).arrows == (0, 1)
    assert minimal_two_truncated(load("remark7")) is None


def test_elementary_cycles_small_graph():
    edges = {0: [1, 2], 1: [0, 2], 2: [0]}
    found = sorted(tuple(c) for c in elementary_cycles([0, 1, 2], edges, 3))
    assert found == [(0, 1), (0, 1, 2), (0, 2)]


def _brute_truncated(A, m, max_len):
    """Every cyclic arrow word up to max_len, checked directly; aperiodic canonical forms."""
    q = A.quiver
    out = set()
    for l in range(1, max_len + 1):
        for word in itertools.product(range(len(q.arrows)), repeat=l):
            if any(q.arrows[word[i]].target != q.arrows[word[(i + 1) % l]].source for i in range(l)):
                continue
            c = OrientedCycle(word)
            if c.aperiodic and is_m_truncated(c, m, A)[0]:
                out.add(c.canonical)
    return out


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_truncated_cycles_sound_and_complete(seed):
    A = compute_basis(random_monomial_algebra(seed))
    for m in range(2, max_relation_length(A) + 1):
        found = find_truncated_cycles(A, m, 5)
        for w in found:
            assert is_m_truncated(w.cycle, m, A)[0]
            assert all(OrientedCycle(r).canonical == w.cycle.arrows for r in w.cycle.rotations())
            assert is_m_truncated(w.cycle.power(2), m, A)[0]
        # elementary window cycles <-> aperiodic truncated words whose windows are distinct
        brute = {c for c in _brute_truncated(A, m, 5)
                 if len({OrientedCycle(c).window(i, m - 1) for i in range(len(c))}) == len(c)}
        assert {w.cycle.arrows for w in found} == brute


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_minimal_two_truncated_is_shortest(seed):
    A = compute_basis(random_monomial_algebra(seed))
    c = minimal_two_truncated(A)
    brute = _brute_truncated(A, 2, 6)
    if c is None:
        assert not brute
        return
    assert c.aperiodic
    assert min(len(b) for b in brute) == c.length
