"""Projective dimensions of simple modules and global dimension.

Modules are right modules. A representation assigns a vector space M_v to each
vertex and to each arrow a: s -> t a linear map M_s -> M_t, stored sparsely
as the images of the basis vectors of M_s; a path a1 a2 acts as a1 then a2.

For monomial algebras the minimal resolution of a simple is read off the
successor graph: Omega(S_v) is the sum of aA over arrows a at v, and
Omega(pA) is the sum of qA over the minimal q with pq = 0. For arbitrary
relations, syzygies are computed on representations up to a cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import Algebra
from .errors import NotMonomial, RelationViolation, ResourceLimit
from .linalg import FieldDescriptor, Scalar, SparseMatrix, rref

Matrix = list  # list of rows


@dataclass
class SuccessorGraph:
    nodes: list[int]
    edges: dict[int, list[int]]

    def edge_list(self) -> list[tuple[int, int]]:
        return [(p, q) for p in self.nodes for q in self.edges[p]]


def _require_monomial(A: Algebra) -> None:
    if not A.monomial:
        raise NotMonomial("this operation needs a monomial algebra")


def minimal_annihilators(A: Algebra, p: int) -> list[int]:
    """Minimal nonzero paths q at t(p) with pq = 0, in basis order."""
    path = A.basis[p]
    found: list[tuple[int, ...]] = []
    out = []
    for j in A.starting_at(path.target, radical_only=True):
        q = A.basis[j]
        if not A.is_zero_word(path.arrows + q.arrows):
            continue
        if any(A.is_zero_word(path.arrows + q.arrows[:k]) for k in range(1, q.length)):
            continue
        found.append(q.arrows)
        out.append(j)
    for i, u in enumerate(found):
        for w in found[i + 1:]:
            if w[:len(u)] == u or u[:len(w)] == w:
                raise AssertionError("minimal successors are not prefix-free")
    return out


def build_successor_graph(A: Algebra) -> SuccessorGraph:
    _require_monomial(A)
    starts = [A.arrow_index(a.index) for a in A.quiver.arrows]
    edges: dict[int, list[int]] = {}
    order: list[int] = []
    todo = list(starts)
    while todo:
        p = todo.pop(0)
        if p in edges:
            continue
        edges[p] = minimal_annihilators(A, p)
        order.append(p)
        todo.extend(q for q in edges[p] if q not in edges)
    return SuccessorGraph(order, edges)


@dataclass
class PdResult:
    value: float | int  # math.inf when infinite
    witness: list[int] = field(default_factory=list)
    per_vertex: dict[int, PdResult] | None = None

    @property
    def is_infinite(self) -> bool:
        return self.value == math.inf

    def as_dict(self, A: Algebra) -> dict:
        out = {
            "value": "infinite" if self.is_infinite else self.value,
            "witness_kind": "cycle" if self.is_infinite else "chain",
            "witness": [A.name(i) for i in self.witness],
        }
        if self.per_vertex is not None:
            out["per_vertex"] = {A.quiver.vertices[v]: r.as_dict(A)
                                 for v, r in self.per_vertex.items()}
        return out


def _first_cycle(graph: SuccessorGraph, roots: list[int]) -> list[int] | None:
    state: dict[int, int] = {}
    for root in roots:
        if state.get(root):
            continue
        path = [root]
        state[root] = 1
        stack = [iter(graph.edges[root])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                state[path.pop()] = 2
            elif state.get(nxt) == 1:
                return path[path.index(nxt):]
            elif not state.get(nxt):
                state[nxt] = 1
                path.append(nxt)
                stack.append(iter(graph.edges[nxt]))
    return None


def _longest_chain(graph: SuccessorGraph, p: int, memo: dict[int, list[int]]) -> list[int]:
    """Longest successor chain starting at p (acyclic part of the graph)."""
    if p in memo:
        return memo[p]
    best: list[int] = []
    for q in graph.edges[p]:
        c = _longest_chain(graph, q, memo)
        if len(c) > len(best):
            best = c
    memo[p] = [p] + best
    return memo[p]


def pd_simple_monomial(A: Algebra, vertex: int, graph: SuccessorGraph | None = None) -> PdResult:
    _require_monomial(A)
    graph = graph or build_successor_graph(A)
    starts = [A.arrow_index(a.index) for a in A.quiver.out_arrows(vertex)]
    if not starts:
        return PdResult(0, [])
    cyc = _first_cycle(graph, starts)
    if cyc is not None:
        return PdResult(math.inf, cyc)
    memo: dict[int, list[int]] = {}
    best: list[int] = []
    for a in starts:
        c = _longest_chain(graph, a, memo)
        if len(c) > len(best):
            best = c
    return PdResult(len(best), best)


def gldim_monomial(A: Algebra) -> PdResult:
    _require_monomial(A)
    graph = build_successor_graph(A)
    per = {v: pd_simple_monomial(A, v, graph) for v in range(A.n_vertices)}
    top = max(r.value for r in per.values())
    best = next(r for r in per.values() if r.value == top)
    return PdResult(best.value, best.witness, per)


def predicted_syzygy_dims(A: Algebra, vertex: int, steps: int) -> list[int]:
    """dim Omega^k(S_v) for k = 1..steps, from the successor graph alone."""
    _require_monomial(A)
    graph = build_successor_graph(A)

    def dim_pA(p: int) -> int:
        path = A.basis[p]
        return sum(1 for j in A.starting_at(path.target)
                   if not A.basis[j].arrows or not A.is_zero_word(path.arrows + A.basis[j].arrows))

    current = [A.arrow_index(a.index) for a in A.quiver.out_arrows(vertex)]
    out = []
    for _ in range(steps):
        out.append(sum(dim_pA(p) for p in current))
        current = [q for p in current for q in graph.edges[p]]
    return out


# representations ---------------------------------------------------------

Vector = dict  # sparse: coordinate -> nonzero scalar


def _add_scaled(acc: Vector, c: Scalar, v: Vector) -> None:
    for k, x in v.items():
        acc[k] = acc.get(k, 0) + c * x


def _cleaned(acc: Vector, F: FieldDescriptor) -> Vector:
    out = {}
    for k, x in acc.items():
        x = F.coerce(x)
        if x:
            out[k] = x
    return out


@dataclass
class Representation:
    """``maps[a][j]`` is the image in M_t of basis vector j of M_s, for a: s -> t."""

    dims: tuple[int, ...]
    maps: dict[int, list[Vector]]
    field: FieldDescriptor

    @classmethod
    def from_matrices(cls, dims: tuple[int, ...], matrices: dict[int, Matrix],
                      field: FieldDescriptor) -> Representation:
        """Build from dense dim M_t x dim M_s matrices (lists of rows)."""
        maps = {}
        for a, X in matrices.items():
            ncols = len(X[0]) if X else 0
            maps[a] = [{i: field.coerce(X[i][j]) for i in range(len(X)) if field.coerce(X[i][j])}
                       for j in range(ncols)]
        return cls(tuple(dims), maps, field)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def act(self, v: Vector, arrows: tuple[int, ...]) -> Vector:
        """v . a1 . a2 ... for a vector v of M_{s(a1)}."""
        for a in arrows:
            cols = self.maps[a]
            acc: Vector = {}
            for j, c in v.items():
                _add_scaled(acc, c, cols[j])
            v = _cleaned(acc, self.field)
            if not v:
                break
        return v

    def path_matrix(self, A: Algebra, arrows: tuple[int, ...]) -> Matrix:
        arrs = A.quiver.arrows
        s, t = arrs[arrows[0]].source, arrs[arrows[-1]].target
        X = [[0] * self.dims[s] for _ in range(self.dims[t])]
        for j in range(self.dims[s]):
            for i, c in self.act({j: 1}, arrows).items():
                X[i][j] = c
        return X

    def relation_defects(self, A: Algebra) -> list[int]:
        """Indices of presentation relations that do not act as zero."""
        bad = []
        for k, rel in enumerate(A.presentation.relations()):
            s = next(iter(rel)).source
            for j in range(self.dims[s]):
                acc: Vector = {}
                for p, c in rel.items():
                    _add_scaled(acc, c, self.act({j: 1}, p.arrows))
                if _cleaned(acc, self.field):
                    bad.append(k)
                    break
        return bad

    @classmethod
    def simple(cls, A: Algebra, vertex: int) -> Representation:
        dims = tuple(int(v == vertex) for v in range(A.n_vertices))
        maps = {a.index: [{} for _ in range(dims[a.source])] for a in A.quiver.arrows}
        return cls(dims, maps, A.field)

    @classmethod
    def projective(cls, A: Algebra, vertex: int) -> Representation:
        """P_v = e_v A, basis: basis paths from v, grouped by target."""
        by_target: dict[int, list[int]] = {w: [] for w in range(A.n_vertices)}
        for i in A.starting_at(vertex):
            by_target[A.basis[i].target].append(i)
        pos = {w: {p: k for k, p in enumerate(ps)} for w, ps in by_target.items()}
        dims = tuple(len(by_target[w]) for w in range(A.n_vertices))
        maps = {}
        for a in A.quiver.arrows:
            ai = A.arrow_index(a.index)
            maps[a.index] = [{pos[a.target][r]: c for r, c in A.mul_basis(p, ai).items()}
                             for p in by_target[a.source]]
        return cls(dims, maps, A.field)


def _top_generators(M: Representation, A: Algebra, v: int) -> list[int]:
    """Unit vectors of M_v spanning a complement of (M J)_v: the non-pivot
    coordinates of the echelon form of the radical."""
    rad = [col for a in A.quiver.arrows if a.target == v for col in M.maps[a.index] if col]
    if not rad:
        return list(range(M.dims[v]))
    ech = rref(SparseMatrix.build(len(rad), M.dims[v],
                                  {(r, c): x for r, col in enumerate(rad) for c, x in col.items()},
                                  M.field))
    piv = set(ech.pivot_columns)
    return [e for e in range(M.dims[v]) if e not in piv]


def _kernel_with_coords(M: SparseMatrix) -> tuple[list[Vector], list[int]]:
    """Sparse kernel basis plus the free columns: basis vector k has 1 at
    free[k] and 0 at every other free column, so coordinates are read off directly."""
    ech = rref(M)
    piv = set(ech.pivot_columns)
    free = [f for f in range(M.cols) if f not in piv]
    vecs: dict[int, Vector] = {f: {f: 1} for f in free}
    for pc, row in zip(ech.pivot_columns, ech.reduced_rows):
        for f, x in row.items():
            if f != pc:
                vecs[f][pc] = M.field.coerce(-x)
    return [vecs[f] for f in free], free


def _prefix_index(A: Algebra, i: int) -> int:
    p = A.basis[i]
    q = A.quiver
    if p.length == 1:
        return A.index[q.trivial(p.source)]
    return A.index[q.word(p.arrows[:-1])]


def projective_cover_and_syzygy(A: Algebra, M: Representation) -> tuple[dict[int, int], Representation]:
    """Minimal projective cover of M and its kernel.

    Returns ({vertex: multiplicity of P_vertex}, Omega(M)).
    """
    F = A.field
    if M.relation_defects(A):
        raise RelationViolation("the representation does not satisfy the relations of A")
    n = A.n_vertices
    arrs = A.quiver.arrows
    tops = {v: _top_generators(M, A, v) for v in range(n)}
    mult = {v: len(tops[v]) for v in range(n) if tops[v]}

    # P = sum_v P_v^{c_v}; basis of P e_w: (v, k, path from v to w).
    # The cover sends (v, k, p) to e.p, e the k-th top vector at v; images are
    # built along prefixes, which are basis paths again.
    pbasis: dict[int, list[tuple[int, int, int]]] = {w: [] for w in range(n)}
    images: dict[tuple[int, int, int], Vector] = {}
    for v, gens in tops.items():
        paths = sorted(A.starting_at(v), key=lambda i: A.basis[i].length)
        for k, e in enumerate(gens):
            for i in paths:
                p = A.basis[i]
                if p.is_trivial:
                    img = {e: 1}
                else:
                    prev = images[v, k, _prefix_index(A, i)]
                    img = M.act(prev, p.arrows[-1:]) if prev else {}
                images[v, k, i] = img
                pbasis[p.target].append((v, k, i))
    ppos = {w: {b: j for j, b in enumerate(bs)} for w, bs in pbasis.items()}

    kernels: dict[int, tuple[list[Vector], list[int]]] = {}
    for w in range(n):
        cols = [images[b] for b in pbasis[w]]
        kernels[w] = _kernel_with_coords(SparseMatrix.from_columns(M.dims[w], cols, F))

    dims = tuple(len(kernels[w][0]) for w in range(n))
    maps = {}
    for a in arrs:
        s, t = a.source, a.target
        ai = A.arrow_index(a.index)
        free_pos = {f: row for row, f in enumerate(kernels[t][1])}
        columns = []
        for kvec in kernels[s][0]:
            image: Vector = {}
            for j, c in kvec.items():
                v, k, i = pbasis[s][j]
                for r, d in A.mul_basis(i, ai).items():
                    key = ppos[t][(v, k, r)]
                    image[key] = image.get(key, 0) + c * d
            columns.append({free_pos[f]: F.coerce(x) for f, x in image.items()
                            if f in free_pos and F.coerce(x)})
        maps[a.index] = columns
    return mult, Representation(dims, maps, F)


@dataclass
class PdCutoff:
    value: int
    exact: bool

    def as_dict(self) -> dict:
        return {"value": self.value, "exact": self.exact,
                "text": str(self.value) if self.exact else f"at-least {self.value}"}

    def __str__(self) -> str:
        return str(self.value) if self.exact else f"at-least {self.value}"


def pd_simple_cutoff(A: Algebra, vertex: int, cutoff: int,
                     max_module_dim: int = 20_000) -> PdCutoff:
    M = Representation.simple(A, vertex)
    for n in range(cutoff + 1):
        _, K = projective_cover_and_syzygy(A, M)
        if K.is_zero():
            return PdCutoff(n, True)
        if K.total_dim > max_module_dim:
            raise ResourceLimit(f"syzygy dimension {K.total_dim} exceeds {max_module_dim}")
        M = K
    return PdCutoff(cutoff + 1, False)


@dataclass
class GldimCutoff:
    per_vertex: dict[int, PdCutoff]
    cutoff: int

    @property
    def exact(self) -> bool:
        return all(r.exact for r in self.per_vertex.values())

    @property
    def value(self) -> int:
        return max((r.value for r in self.per_vertex.values()), default=0)

    def as_dict(self, A: Algebra) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "text": str(self.value) if self.exact else f"at-least {self.value}",
            "cutoff": self.cutoff,
            "per_vertex": {A.quiver.vertices[v]: r.as_dict() for v, r in self.per_vertex.items()},
        }


def default_cutoff(A: Algebra) -> int:
    return 2 * A.dim


def gldim_cutoff(A: Algebra, cutoff: int | None = None) -> GldimCutoff:
    if cutoff is None:
        cutoff = default_cutoff(A)
    return GldimCutoff({v: pd_simple_cutoff(A, v, cutoff) for v in range(A.n_vertices)}, cutoff)
