"""Path bases, normal forms and multiplication for A = KQ/I.

Two routes produce the basis:

* monomial presentations: the basis is every path avoiding the minimal
  forbidden words; finite dimension is decided on the window graph of
  nonzero words (a cycle there means arbitrarily long nonzero paths);
* general presentations: the ideal I + R^N is row reduced inside the span of
  paths of length < N, with larger paths (length, then lex) as pivots. The
  non-pivot paths form the basis and each pivot path rewrites to smaller ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InfiniteDimensional, MissingNilbound, NilboundViolated
from .linalg import FieldDescriptor, Scalar, _rref_rows
from .presentation import AlgebraPresentation, Path, Quiver

Element = dict  # basis index -> nonzero scalar


def _minimal_words(words: Iterable[tuple[int, ...]]) -> set[tuple[int, ...]]:
    words = sorted(set(words), key=len)
    kept: list[tuple[int, ...]] = []
    for w in words:
        if not any(_contains(w, u) for u in kept):
            kept.append(w)
    return set(kept)


def _contains(w: tuple[int, ...], u: tuple[int, ...]) -> bool:
    n = len(u)
    return any(w[i:i + n] == u for i in range(len(w) - n + 1))


def _has_cycle(succ: Mapping[object, list]) -> bool:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in succ}
    for root in succ:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = GRAY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = BLACK
                stack.pop()
            elif color[nxt] == GRAY:
                return True
            elif color[nxt] == WHITE:
                color[nxt] = GRAY
                stack.append((nxt, iter(succ[nxt])))
    return False


def _basis_sort_key(p: Path) -> tuple:
    if p.is_trivial:
        return (0, p.source, ())
    return (p.length, 0, p.arrows)


class Algebra:
    """A finite-dimensional bounded quiver algebra with its path basis.

    Use :func:`compute_basis` to construct. Instances are treated as immutable;
    the product cache only memoizes pure results.
    """

    def __init__(self, presentation: AlgebraPresentation, basis: list[Path], *,
                 forbidden: set[tuple[int, ...]] | None = None,
                 reductions: dict[tuple[int, ...], dict[int, Scalar]] | None = None,
                 nilbound: int | None = None):
        self.presentation = presentation
        self.quiver: Quiver = presentation.quiver
        self.field: FieldDescriptor = presentation.field
        self.basis = sorted(basis, key=_basis_sort_key)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self._word_index = {p.arrows: i for i, p in enumerate(self.basis) if p.arrows}
        self.monomial = forbidden is not None
        self._forbidden = forbidden or set()
        self._forbidden_lengths = sorted({len(w) for w in self._forbidden})
        self._reductions = reductions or {}
        self._nilbound = nilbound
        self._mul_cache: dict[tuple[int, int], dict[int, Scalar]] = {}
        self._nf_cache: dict[tuple[int, ...], dict[int, Scalar]] = {}
        n = self.quiver.n
        self.trivial = [self.index[Path(v, v, ())] for v in range(n)]
        self.radical = [i for i, p in enumerate(self.basis) if p.arrows]
        self.by_endpoints: dict[tuple[int, int], list[int]] = {}
        for i, p in enumerate(self.basis):
            self.by_endpoints.setdefault((p.source, p.target), []).append(i)
        self.nilpotency = self._nilpotency_index()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n_vertices(self) -> int:
        return self.quiver.n

    def name(self, i: int) -> str:
        return self.quiver.path_name(self.basis[i])

    def arrow_index(self, a: int) -> int:
        return self._word_index[(a,)]

    def starting_at(self, v: int, radical_only: bool = False) -> list[int]:
        return [i for i, p in enumerate(self.basis)
                if p.source == v and (p.arrows or not radical_only)]

    # normal forms -------------------------------------------------------

    def word_nf(self, word: tuple[int, ...]) -> dict[int, Scalar]:
        """Normal form of a composable nonempty arrow word."""
        hit = self._nf_cache.get(word)
        if hit is not None:
            return hit
        if self.monomial:
            out = {} if self._has_forbidden(word) else {self._word_index[word]: 1}
        elif len(word) >= self._nilbound:
            out = {}
        elif word in self._word_index:
            out = {self._word_index[word]: 1}
        else:
            out = self._reductions[word]
        self._nf_cache[word] = out
        return out

    def _has_forbidden(self, word: tuple[int, ...]) -> bool:
        L = len(word)
        for n in self._forbidden_lengths:
            if n > L:
                break
            for i in range(L - n + 1):
                if word[i:i + n] in self._forbidden:
                    return True
        return False

    def path_nf(self, p: Path) -> dict[int, Scalar]:
        if p.is_trivial:
            return {self.trivial[p.source]: 1}
        return self.word_nf(p.arrows)

    def is_zero_word(self, word: tuple[int, ...]) -> bool:
        return not self.word_nf(tuple(word))

    def normal_form(self, x: Mapping[Path, Scalar]) -> dict[int, Scalar]:
        """Coset representative of an element of KQ, as basis coefficients."""
        acc: dict[int, Scalar] = {}
        for p, c in x.items():
            for i, v in self.path_nf(p).items():
                acc[i] = acc.get(i, 0) + c * v
        return self._clean(acc)

    def _clean(self, acc: dict[int, Scalar]) -> dict[int, Scalar]:
        out = {}
        for i, v in acc.items():
            v = self.field.coerce(v)
            if v:
                out[i] = v
        return out

    # products ------------------------------------------------------------

    def mul_basis(self, i: int, j: int) -> dict[int, Scalar]:
        key = (i, j)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        p, q = self.basis[i], self.basis[j]
        if p.target != q.source:
            out = {}
        elif p.is_trivial:
            out = {j: 1}
        elif q.is_trivial:
            out = {i: 1}
        else:
            out = self.word_nf(p.arrows + q.arrows)
        self._mul_cache[key] = out
        return out

    def multiply(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> dict[int, Scalar]:
        acc: dict[int, Scalar] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mul_basis(i, j).items():
                    acc[k] = acc.get(k, 0) + a * b * c
        return self._clean(acc)

    def structure_constants(self) -> dict[tuple[int, int], dict[int, Scalar]]:
        return {(i, j): self.mul_basis(i, j)
                for i in range(self.dim) for j in range(self.dim) if self.mul_basis(i, j)}

    def _nilpotency_index(self) -> int:
        """Least N with J^N = 0 (paths of length N all vanish)."""
        if self.monomial:
            return max(p.length for p in self.basis) + 1
        k = 1
        while k < self._nilbound:
            if all(not self.word_nf(w) for w in _words_of_length(self.quiver, k)):
                return k
            k += 1
        return self._nilbound

    def summary(self) -> dict:
        return {
            "dim": self.dim,
            "nilpotency": self.nilpotency,
            "monomial": self.monomial,
            "vertices": self.quiver.n,
            "arrows": len(self.quiver.arrows),
        }


def _words_of_length(quiver: Quiver, k: int) -> list[tuple[int, ...]]:
    level: list[tuple[int, ...]] = [(a.index,) for a in quiver.arrows]
    for _ in range(k - 1):
        level = [w + (b.index,) for w in level for b in quiver.out_arrows(quiver.arrows[w[-1]].target)]
    return level


def _monomial_basis(P: AlgebraPresentation) -> tuple[list[Path], set[tuple[int, ...]]]:
    q = P.quiver
    forbidden = _minimal_words(next(iter(r)).arrows for r in P.relations())
    lengths = sorted({len(w) for w in forbidden})

    def ok_extension(word: tuple[int, ...]) -> bool:
        for n in lengths:
            if n > len(word):
                break
            if word[-n:] in forbidden:
                return False
        return True

    # window graph on nonzero words of length L-1
    L = max([2] + lengths)
    level = [(a.index,) for a in q.arrows]
    for _ in range(L - 2):
        level = [w + (b.index,) for w in level
                 for b in q.out_arrows(q.arrows[w[-1]].target) if ok_extension(w + (b.index,))]
    succ: dict[tuple[int, ...], list[tuple[int, ...]]] = {w: [] for w in level}
    for w in level:
        for b in q.out_arrows(q.arrows[w[-1]].target):
            ext = w + (b.index,)
            if ok_extension(ext):
                succ[w].append(ext[1:])
    if _has_cycle(succ):
        raise InfiniteDimensional("the forbidden-word automaton has a live cycle: "
                                  "arbitrarily long nonzero paths exist")

    basis = [q.trivial(v) for v in range(q.n)]
    level = [(a.index,) for a in q.arrows]
    while level:
        basis.extend(q.word(w) for w in level)
        level = [w + (b.index,) for w in level
                 for b in q.out_arrows(q.arrows[w[-1]].target) if ok_extension(w + (b.index,))]
    return basis, forbidden


def _truncated_reduction(P: AlgebraPresentation, N: int):
    """Row reduce I + R^N inside span{paths of length < N}.

    Returns (basis paths, reductions of pivot words).
    """
    q = P.quiver
    F = P.field
    paths = [q.trivial(v) for v in range(q.n)]
    level = [(a.index,) for a in q.arrows]
    words_by_len: list[list[tuple[int, ...]]] = [[]]
    length = 1
    while level and length < N:
        words_by_len.append(level)
        paths.extend(q.word(w) for w in level)
        level = [w + (b.index,) for w in level for b in q.out_arrows(q.arrows[w[-1]].target)]
        length += 1
    # largest first, so pivots are leading terms
    cols = sorted(paths, key=_basis_sort_key, reverse=True)
    col_of = {p: j for j, p in enumerate(cols)}
    ending_at: dict[int, list[Path]] = {v: [q.trivial(v)] for v in range(q.n)}
    starting_at: dict[int, list[Path]] = {v: [q.trivial(v)] for v in range(q.n)}
    for p in paths:
        if p.arrows:
            ending_at[p.target].append(p)
            starting_at[p.source].append(p)
    rows = []
    for g in P.relations():
        some = next(iter(g))
        minlen = min(t.length for t in g)
        for pre in ending_at[some.source]:
            if pre.length + minlen > N - 1:
                continue
            for post in starting_at[some.target]:
                if pre.length + minlen + post.length > N - 1:
                    continue
                row: dict[int, Scalar] = {}
                for t, c in g.items():
                    if pre.length + t.length + post.length >= N:
                        continue
                    full = Path(pre.source, post.target, pre.arrows + t.arrows + post.arrows)
                    j = col_of[full]
                    row[j] = F.coerce(row.get(j, 0) + c)
                row = {j: v for j, v in row.items() if v}
                if row:
                    rows.append(row)
    ech = _rref_rows(rows, len(cols), F)
    pivots = set(ech.pivot_columns)
    basis = [p for j, p in enumerate(cols) if j not in pivots]
    return basis, cols, ech


def _general_algebra(P: AlgebraPresentation, N: int) -> Algebra:
    basis, cols, ech = _truncated_reduction(P, N)
    order = sorted(basis, key=_basis_sort_key)
    idx = {p: i for i, p in enumerate(order)}
    reductions: dict[tuple[int, ...], dict[int, Scalar]] = {}
    F = P.field
    for pc, row in zip(ech.pivot_columns, ech.reduced_rows):
        word = cols[pc].arrows
        reductions[word] = {idx[cols[j]]: F.coerce(-v) for j, v in row.items() if j != pc}
    return Algebra(P, order, reductions=reductions, nilbound=N)


def compute_basis(P: AlgebraPresentation, method: str = "auto",
                  nilbound: int | None = None) -> Algebra:
    """Basis and multiplication for ``P``.

    ``method`` is ``"auto"``, ``"monomial"`` or ``"general"``; the general
    route needs a nil-bound (argument, or the presentation's own).
    """
    if method == "auto":
        method = "monomial" if P.monomial else "general"
    if method == "monomial":
        if not P.monomial:
            raise ValueError("presentation is not monomial")
        basis, forbidden = _monomial_basis(P)
        A = Algebra(P, basis, forbidden=forbidden)
        N = nilbound if nilbound is not None else P.nilbound
        if N is not None and A.nilpotency > N:
            raise NilboundViolated(
                f"J^{N} != 0 (nilpotency index is {A.nilpotency}); increase the nil-bound")
        return A
    if method != "general":
        raise ValueError(f"unknown method {method!r}")
    N = nilbound if nilbound is not None else P.nilbound
    if N is None:
        raise MissingNilbound("non-monomial relations need a nil-bound (nilbound: N)")
    A = _general_algebra(P, N)
    bigger, _, _ = _truncated_reduction(P, N + 1)
    if len(bigger) != A.dim:
        raise NilboundViolated(
            f"basis dimension changes from {A.dim} to {len(bigger)} when the nil-bound grows "
            f"from {N} to {N + 1}; increase the nil-bound")
    return A


@dataclass
class ValidationReport:
    ok: bool
    dim: int
    nilpotency: int
    monomial: bool
    radical_dim: int

    def as_dict(self) -> dict:
        return {"ok": self.ok, "dim": self.dim, "nilpotency": self.nilpotency,
                "monomial": self.monomial, "radical_dim": self.radical_dim}


def validate_presentation(P: AlgebraPresentation) -> ValidationReport:
    """Structural checks happen at construction; this adds the finiteness and
    nil-bound checks by computing the basis. Errors propagate."""
    A = compute_basis(P)
    return ValidationReport(True, A.dim, A.nilpotency, A.monomial, len(A.radical))


def load_algebra(text: str, field: FieldDescriptor | None = None) -> Algebra:
    from .presentation import parse_presentation

    P = parse_presentation(text)
    if field is not None:
        P = P.with_field(field)
    return compute_basis(P)
