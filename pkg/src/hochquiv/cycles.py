"""Oriented cycles and m-truncated oriented cycles.

A cyclic arrow word a_1...a_l is m-truncated when every cyclic window of m
consecutive arrows vanishes in A while every window of m-1 arrows does not.
Indices wrap modulo l, so windows may run around the cycle more than once.

Such cycles are exactly the closed walks in the *window graph*: nodes are the
nonzero words of length m-1, and w -> w' when w' is w shifted by one arrow c
with w*c = 0 in A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra
from .errors import EndpointMismatch


def least_rotation(word: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation (Booth)."""
    s = tuple(word)
    n = len(s)
    if n == 0:
        return s
    ss = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        i = f[j - k - 1]
        while i != -1 and ss[j] != ss[k + i + 1]:
            if ss[j] < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and ss[j] != ss[k + i + 1]:
            if ss[j] < ss[k + i + 1]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return ss[k:k + n]


def _is_aperiodic(word: tuple[int, ...]) -> bool:
    n = len(word)
    for d in range(1, n):
        if n % d == 0 and word[:d] * (n // d) == word:
            return False
    return True


@dataclass(frozen=True)
class OrientedCycle:
    arrows: tuple[int, ...]

    def __post_init__(self):
        if not self.arrows:
            raise ValueError("an oriented cycle has at least one arrow")

    @classmethod
    def checked(cls, A: Algebra, arrows: Sequence[int]) -> OrientedCycle:
        arrs = A.quiver.arrows
        word = tuple(arrows)
        for i, a in enumerate(word):
            b = word[(i + 1) % len(word)]
            if arrs[a].target != arrs[b].source:
                raise EndpointMismatch(
                    f"{arrs[a].name} and {arrs[b].name} do not chain (t != s)")
        return cls(word)

    @classmethod
    def parse(cls, A: Algebra, text: str) -> OrientedCycle:
        names = [t.strip() for t in text.replace(",", "*").split("*") if t.strip()]
        return cls.checked(A, [A.quiver.arrow_named(n).index for n in names])

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def canonical(self) -> tuple[int, ...]:
        return least_rotation(self.arrows)

    @property
    def aperiodic(self) -> bool:
        return _is_aperiodic(self.arrows)

    def rotations(self) -> list[tuple[int, ...]]:
        w = self.arrows
        return [w[i:] + w[:i] for i in range(len(w))]

    def power(self, k: int) -> OrientedCycle:
        return OrientedCycle(self.arrows * k)

    def window(self, start: int, size: int) -> tuple[int, ...]:
        n = len(self.arrows)
        return tuple(self.arrows[(start + k) % n] for k in range(size))

    def names(self, A: Algebra) -> list[str]:
        return [A.quiver.arrows[a].name for a in self.arrows]


@dataclass
class TruncationWitness:
    cycle: OrientedCycle
    m: int
    zero_windows: list[tuple[int, ...]] = field(default_factory=list)
    nonzero_windows: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def length(self) -> int:
        return self.cycle.length

    def as_dict(self, A: Algebra) -> dict:
        q = A.quiver
        return {
            "cycle": self.cycle.names(A),
            "length": self.cycle.length,
            "m": self.m,
            "zero_windows": [q.word_name(w) for w in self.zero_windows],
            "nonzero_windows": [q.word_name(w) for w in self.nonzero_windows],
        }


@dataclass
class WindowGraph:
    m: int
    nodes: list[tuple[int, ...]]
    edges: dict[tuple[int, ...], list[tuple[int, ...]]]

    def edge_list(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(u, v) for u in self.nodes for v in self.edges[u]]


def _nonzero_words(A: Algebra, length: int) -> list[tuple[int, ...]]:
    q = A.quiver
    level = [(a.index,) for a in q.arrows]
    for _ in range(length - 1):
        level = [w + (b.index,) for w in level
                 for b in q.out_arrows(q.arrows[w[-1]].target)
                 if not A.is_zero_word(w + (b.index,))]
    return sorted(level)


def build_window_graph(A: Algebra, m: int) -> WindowGraph:
    if m < 2:
        raise ValueError("m must be at least 2")
    q = A.quiver
    nodes = _nonzero_words(A, m - 1)
    nodeset = set(nodes)
    edges: dict[tuple[int, ...], list[tuple[int, ...]]] = {w: [] for w in nodes}
    for w in nodes:
        for c in q.out_arrows(q.arrows[w[-1]].target):
            nxt = w[1:] + (c.index,)
            if nxt in nodeset and A.is_zero_word(w + (c.index,)):
                edges[w].append(nxt)
    return WindowGraph(m, nodes, edges)


def elementary_cycles(nodes: Sequence, edges, max_len: int) -> list[list]:
    """Elementary cycles of length <= max_len, each rooted at its least node.

    Bounded DFS that only visits nodes above the root, so every elementary
    cycle is produced exactly once.
    """
    order = {v: i for i, v in enumerate(nodes)}
    out = []
    for root in nodes:
        r = order[root]
        path = [root]
        on_path = {root}
        stack = [iter(edges[root])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if nxt == root:
                out.append(list(path))
            elif order[nxt] > r and nxt not in on_path and len(path) < max_len:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter(edges[nxt]))
    return out


def is_m_truncated(cycle: OrientedCycle, m: int, A: Algebra) -> tuple[bool, TruncationWitness]:
    if m < 2:
        raise ValueError("m must be at least 2")
    l = cycle.length
    zero = [cycle.window(i, m) for i in range(l)]
    nonzero = [cycle.window(i, m - 1) for i in range(l)]
    ok = all(A.is_zero_word(w) for w in zero) and not any(A.is_zero_word(w) for w in nonzero)
    return ok, TruncationWitness(cycle, m, zero, nonzero)


def default_max_len(A: Algebra, m: int, graph: WindowGraph | None = None) -> int:
    if m == 2:
        return 2 * len(A.quiver.arrows)
    graph = graph or build_window_graph(A, m)
    return 2 * len(graph.nodes)


def find_truncated_cycles(A: Algebra, m: int, max_len: int | None = None) -> list[TruncationWitness]:
    graph = build_window_graph(A, m)
    if max_len is None:
        max_len = default_max_len(A, m, graph)
    seen = set()
    out = []
    for walk in elementary_cycles(graph.nodes, graph.edges, max_len):
        cyc = OrientedCycle(least_rotation(tuple(w[0] for w in walk)))
        if cyc.arrows in seen:
            continue
        seen.add(cyc.arrows)
        ok, witness = is_m_truncated(cyc, m, A)
        if not ok:  # window graph and direct check disagree
            raise AssertionError(f"window-graph cycle {cyc.arrows} fails re-verification")
        out.append(witness)
    out.sort(key=lambda w: (w.cycle.length, w.cycle.arrows))
    return out


def minimal_two_truncated(A: Algebra) -> OrientedCycle | None:
    """A shortest 2-truncated cycle; ties go to the least canonical word."""
    graph = build_window_graph(A, 2)
    best = None
    for node in graph.nodes:
        d = _shortest_return(graph, node)
        if d is not None and (best is None or d < best):
            best = d
    if best is None:
        return None
    cands = [OrientedCycle(least_rotation(tuple(w[0] for w in walk)))
             for walk in elementary_cycles(graph.nodes, graph.edges, best)
             if len(walk) == best]
    return min(cands, key=lambda c: c.arrows)


def _shortest_return(graph: WindowGraph, start) -> int | None:
    frontier = [start]
    dist = {start: 0}
    while frontier:
        nxt = []
        for u in frontier:
            for v in graph.edges[u]:
                if v == start:
                    return dist[u] + 1
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return None
