"""Brute-force reference computations used only by the tests.

Nothing here calls into hochquiv's algebra, complex or elimination code: the
monomial algebra is rebuilt from its relation words by exhaustive path
enumeration, and ranks come from a dense textbook Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def dense_rank(rows: list[list], p: int | None = None) -> int:
    """Rank of a dense matrix over Q (p None) or F_p."""
    M = [[(Fraction(x) if p is None else int(x) % p) for x in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c] if p is None else pow(M[r][c], p - 2, p)
        M[r] = [x * inv if p is None else x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b if p is None else (a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
    return r


class BruteMonomial:
    """A monomial algebra given by vertices, arrows (s, t) and zero words."""

    def __init__(self, n: int, arrows: list[tuple[int, int]], zero_words: list[tuple[int, ...]],
                 max_len: int = 40):
        self.n = n
        self.arrows = arrows
        self.zero = [tuple(w) for w in zero_words]
        # elements: ("e", v) or ("p", word)
        self.elements: list[tuple] = [("e", v) for v in range(n)]
        level = [(a,) for a in range(len(arrows)) if self._ok((a,))]
        length = 1
        while level:
            if length > max_len:
                raise RuntimeError("algebra looks infinite-dimensional")
            self.elements.extend(("p", w) for w in level)
            level = [w + (b,) for w in level for b in range(len(arrows))
                     if arrows[w[-1]][1] == arrows[b][0] and self._ok(w + (b,))]
            length += 1
        self.index = {e: i for i, e in enumerate(self.elements)}

    def _ok(self, w: tuple[int, ...]) -> bool:
        for z in self.zero:
            for i in range(len(w) - len(z) + 1):
                if w[i:i + len(z)] == z:
                    return False
        return True

    @property
    def dim(self) -> int:
        return len(self.elements)

    def src(self, e) -> int:
        return e[1] if e[0] == "e" else self.arrows[e[1][0]][0]

    def tgt(self, e) -> int:
        return e[1] if e[0] == "e" else self.arrows[e[1][-1]][1]

    def mul(self, i: int, j: int) -> int | None:
        x, y = self.elements[i], self.elements[j]
        if self.tgt(x) != self.src(y):
            return None
        if x[0] == "e":
            return j
        if y[0] == "e":
            return i
        w = x[1] + y[1]
        return self.index[("p", w)] if self._ok(w) else None

    def chains(self, q: int) -> list[tuple[int, ...]]:
        """Unnormalized S-relative chains: any basis elements chaining cyclically."""
        out = []
        for t in product(range(self.dim), repeat=q + 1):
            els = [self.elements[i] for i in t]
            if all(self.tgt(els[k]) == self.src(els[(k + 1) % (q + 1)]) for k in range(q + 1)):
                out.append(t)
        return out

    def boundary_dense(self, q: int, dom, cod) -> list[list[int]]:
        row = {t: i for i, t in enumerate(cod)}
        M = [[0] * len(dom) for _ in cod]
        for j, t in enumerate(dom):
            for i in range(q):
                k = self.mul(t[i], t[i + 1])
                if k is not None:
                    M[row[t[:i] + (k,) + t[i + 2:]]][j] += (-1) ** i
            k = self.mul(t[q], t[0])
            if k is not None:
                M[row[(k,) + t[1:q]]][j] += (-1) ** q
        return M

    def hh(self, Q: int, p: int | None = None) -> list[int]:
        chains = [self.chains(q) for q in range(Q + 2)]
        ranks = [0] + [dense_rank(self.boundary_dense(q, chains[q], chains[q - 1]), p)
                       for q in range(1, Q + 2)]
        return [len(chains[q]) - ranks[q] - ranks[q + 1] for q in range(Q + 1)]


def brute_from_algebra(A) -> BruteMonomial:
    """Rebuild a monomial presentation as a BruteMonomial (reads only the presentation)."""
    q = A.quiver
    arrows = [(a.source, a.target) for a in q.arrows]
    zero = [r_path.arrows for rel in A.presentation.relations() for r_path in rel]
    return BruteMonomial(q.n, arrows, zero)


def brute_least_rotation(word) -> tuple:
    w = tuple(word)
    return min((w[i:] + w[:i] for i in range(len(w))), default=w)
