"""The S-normalized Hochschild complex of A and its homology.

Degree q chains live in A (x)_{S^e} J^{(x)_S q}. With a path basis this is
spanned by tuples (x0; x1, ..., xq) of basis paths, x1..xq radical, that
chain end to end and close up: t(x_i) = s(x_{i+1}) and t(x_q) = s(x0).
A tuple is stored as a plain ``tuple`` of basis indices.

    b(x0, ..., xq) = sum_{i<q} (-1)^i (x0, ..., x_i x_{i+1}, ..., xq)
                     + (-1)^q (xq x0, x1, ..., x_{q-1})
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import Algebra, compute_basis
from .cycles import OrientedCycle, TruncationWitness, is_m_truncated
from .errors import EndpointMismatch, InvalidWitness, NotMonomial, NotTwoTruncated, ResourceLimit
from .linalg import QQ, FieldDescriptor, Scalar, SparseMatrix, rank, solve_in_image
from .presentation import AlgebraPresentation, Quiver

DEFAULT_CHAIN_CAP = 200_000

ChainTuple = tuple


@dataclass
class ChainVector:
    degree: int
    coeffs: dict[ChainTuple, Scalar] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.coeffs

    def named(self, A: Algebra) -> list[tuple[list[str], Scalar]]:
        return [([A.name(i) for i in t], c) for t, c in sorted(self.coeffs.items())]


def _radical_steps(A: Algebra) -> list[list[int]]:
    """Radical basis indices grouped by source vertex."""
    out: list[list[int]] = [[] for _ in range(A.n_vertices)]
    for i in A.radical:
        out[A.basis[i].source].append(i)
    return out


def chain_dimension(A: Algebra, q: int) -> int:
    """dim C_q without enumerating tuples (walk counts over radical paths)."""
    n = A.n_vertices
    step = [[0] * n for _ in range(n)]
    for i in A.radical:
        p = A.basis[i]
        step[p.source][p.target] += 1
    walks = [[int(u == w) for w in range(n)] for u in range(n)]
    for _ in range(q):
        walks = [[sum(walks[u][k] * step[k][w] for k in range(n) if walks[u][k]) for w in range(n)]
                 for u in range(n)]
    return sum(walks[p.target][p.source] for p in A.basis)


def _reach_table(A: Algebra, q: int) -> list[list[set[int]]]:
    """reach[k][u]: vertices reachable from u in exactly k radical steps."""
    n = A.n_vertices
    targets = [set() for _ in range(n)]
    for i in A.radical:
        p = A.basis[i]
        targets[p.source].add(p.target)
    reach = [[{u} for u in range(n)]]
    for _ in range(q):
        prev = reach[-1]
        reach.append([set().union(*(prev[w] for w in targets[u])) if targets[u] else set()
                      for u in range(n)])
    return reach


def iter_chain_basis(A: Algebra, q: int) -> Iterator[ChainTuple]:
    steps = _radical_steps(A)
    reach = _reach_table(A, q)
    basis = A.basis

    def extend(prefix: list[int], u: int, left: int, goal: int):
        if left == 0:
            if u == goal:
                yield tuple(prefix)
            return
        for x in steps[u]:
            t = basis[x].target
            if goal in reach[left - 1][t]:
                prefix.append(x)
                yield from extend(prefix, t, left - 1, goal)
                prefix.pop()

    for x0, p in enumerate(basis):
        yield from extend([x0], p.target, q, p.source)


def chain_basis(A: Algebra, q: int, cap: int | None = None) -> list[ChainTuple]:
    if cap is not None:
        size = chain_dimension(A, q)
        if size > cap:
            raise ResourceLimit(f"dim C_{q} = {size} exceeds the chain-space cap {cap}")
    return list(iter_chain_basis(A, q))


def boundary_of_tuple(A: Algebra, t: ChainTuple) -> dict[ChainTuple, Scalar]:
    q = len(t) - 1
    acc: dict[ChainTuple, Scalar] = {}
    if q == 0:
        return acc
    for i in range(q):
        sign = -1 if i % 2 else 1
        for k, c in A.mul_basis(t[i], t[i + 1]).items():
            new = t[:i] + (k,) + t[i + 2:]
            acc[new] = acc.get(new, 0) + sign * c
    sign = -1 if q % 2 else 1
    for k, c in A.mul_basis(t[q], t[0]).items():
        new = (k,) + t[1:q]
        acc[new] = acc.get(new, 0) + sign * c
    F = A.field
    return {k: v for k, v in ((k, F.coerce(v)) for k, v in acc.items()) if v}


def chain_boundary(A: Algebra, x: ChainVector) -> ChainVector:
    acc: dict[ChainTuple, Scalar] = {}
    for t, c in x.coeffs.items():
        for k, v in boundary_of_tuple(A, t).items():
            acc[k] = acc.get(k, 0) + c * v
    F = A.field
    return ChainVector(x.degree - 1,
                       {k: v for k, v in ((k, F.coerce(v)) for k, v in acc.items()) if v})


@dataclass
class BoundaryMatrix:
    degree: int
    matrix: SparseMatrix
    domain: list[ChainTuple]
    codomain: list[ChainTuple]


def boundary_matrix(A: Algebra, q: int, domain: list[ChainTuple] | None = None,
                    codomain: list[ChainTuple] | None = None,
                    cap: int | None = DEFAULT_CHAIN_CAP) -> BoundaryMatrix:
    """Matrix of b_q : C_q -> C_{q-1}, one column per domain tuple."""
    if q < 1:
        raise ValueError("b_q is defined for q >= 1")
    if domain is None:
        domain = chain_basis(A, q, cap)
    if codomain is None:
        codomain = chain_basis(A, q - 1, cap)
    row = {t: i for i, t in enumerate(codomain)}
    entries = {}
    for j, t in enumerate(domain):
        for k, v in boundary_of_tuple(A, t).items():
            entries[row[k], j] = v
    return BoundaryMatrix(q, SparseMatrix(len(codomain), len(domain), entries, A.field),
                          domain, codomain)


def hh_dimensions(A: Algebra, Q: int, cap: int = DEFAULT_CHAIN_CAP,
                  time_budget: float | None = None) -> list[int]:
    """[dim HH_0, ..., dim HH_Q]; ResourceLimit carries the computed prefix."""
    deadline = None if time_budget is None else time.monotonic() + time_budget
    dims = []
    ranks = [0]
    result: list[int] = []
    prev = None
    for q in range(Q + 2):
        size = chain_dimension(A, q)
        if size > cap:
            raise ResourceLimit(f"dim C_{q} = {size} exceeds the chain-space cap {cap}",
                                partial=result)
        cur = list(iter_chain_basis(A, q))
        dims.append(len(cur))
        if q >= 1:
            M = boundary_matrix(A, q, cur, prev).matrix
            try:
                ranks.append(rank(M, deadline))
            except ResourceLimit as exc:
                exc.partial = result
                raise
            result.append(dims[q - 1] - ranks[q - 1] - ranks[q])
        prev = cur
    return result


def hh0_direct(A: Algebra) -> int:
    """dim A/[A, A], from the span of all commutators of basis pairs."""
    cols = []
    F = A.field
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            acc = dict(A.mul_basis(i, j))
            for k, v in A.mul_basis(j, i).items():
                acc[k] = acc.get(k, 0) - v
            col = {k: F.coerce(v) for k, v in acc.items() if F.coerce(v)}
            if col:
                cols.append(col)
    return A.dim - rank(SparseMatrix.from_columns(A.dim, cols, F))


def xi_chain(A: Algebra, cycle: OrientedCycle, m: int) -> ChainVector:
    """(a1; a2, ..., al, a1, ..., al, ...): the cycle written out m times, x0 = a1."""
    if m < 1:
        raise ValueError("m must be at least 1")
    OrientedCycle.checked(A, cycle.arrows)
    t = tuple(A.arrow_index(a) for a in cycle.arrows * m)
    return ChainVector(len(t) - 1, {t: 1})


@dataclass
class Certificate:
    cycle: OrientedCycle
    repetitions: int
    degree: int
    xi: ChainVector
    is_cycle: bool
    boundary_status: str  # "not-in-image" | "in-image-with-coefficients"
    preimage: dict[ChainTuple, Scalar] | None = None

    @property
    def hh_lower_bound(self) -> bool:
        return self.is_cycle and self.boundary_status == "not-in-image"

    def as_dict(self, A: Algebra) -> dict:
        out = {
            "cycle": self.cycle.names(A),
            "repetitions": self.repetitions,
            "degree": self.degree,
            "xi": [[A.name(i) for i in t] for t in self.xi.coeffs],
            "is_cycle": self.is_cycle,
            "boundary_status": self.boundary_status,
            "hh_lower_bound": self.hh_lower_bound,
        }
        if self.preimage is not None:
            out["preimage"] = [{"tuple": [A.name(i) for i in t], "coefficient": str(c)}
                               for t, c in sorted(self.preimage.items())]
        return out


def certify_nonvanishing(A: Algebra, cycle: OrientedCycle, m: int,
                         cap: int = DEFAULT_CHAIN_CAP) -> Certificate:
    """Check that xi is a cycle and decide exactly whether it is a boundary.

    When ``hh_lower_bound`` holds, dim HH_{lm-1}(A) >= 1.
    """
    ok, _ = is_m_truncated(OrientedCycle.checked(A, cycle.arrows), 2, A)
    if not ok:
        raise NotTwoTruncated(
            f"cycle {'*'.join(cycle.names(A))} is not 2-truncated in this algebra")
    xi = xi_chain(A, cycle, m)
    d = xi.degree
    is_cycle = chain_boundary(A, xi).is_zero()
    bm = boundary_matrix(A, d + 1, cap=cap)
    row = {t: i for i, t in enumerate(bm.codomain)}
    target = {row[t]: c for t, c in xi.coeffs.items()}
    x = solve_in_image(bm.matrix, target)
    if x is None:
        return Certificate(cycle, m, d, xi, is_cycle, "not-in-image")
    pre = {bm.domain[j]: c for j, c in enumerate(x) if c}
    return Certificate(cycle, m, d, xi, is_cycle, "in-image-with-coefficients", pre)


def truncated_cycle_algebra(l: int, trunc: int, field: FieldDescriptor = QQ) -> AlgebraPresentation:
    """Cyclic quiver on l vertices, arrows x1..xl, all paths of length ``trunc`` zero."""
    if l < 1 or trunc < 2:
        raise ValueError("need l >= 1 and trunc >= 2")
    quiver = Quiver.build(range(1, l + 1),
                          [(f"x{i}", i, i % l + 1) for i in range(1, l + 1)])
    rels = []
    for i in range(l):
        word = tuple((i + k) % l for k in range(trunc))
        rels.append({quiver.word(word): 1})
    return AlgebraPresentation.create(quiver, rels, field)


@dataclass
class SummandComparison:
    l: int
    m: int
    hh_algebra: list[int]
    hh_truncated_cycle: list[int]

    @property
    def holds(self) -> bool:
        return all(a >= b for a, b in zip(self.hh_algebra[1:], self.hh_truncated_cycle[1:]))

    def as_dict(self) -> dict:
        return {"l": self.l, "m": self.m, "hh_algebra": self.hh_algebra,
                "hh_truncated_cycle": self.hh_truncated_cycle, "holds": self.holds}


def hh_compare_summand(A: Algebra, witness: TruncationWitness, Q: int,
                       cap: int = DEFAULT_CHAIN_CAP) -> SummandComparison:
    """Compare dim HH_i(A) with dim HH_i of the truncated cycle algebra, 1 <= i <= Q."""
    if not A.monomial:
        raise NotMonomial("the summand comparison needs a monomial algebra")
    try:
        OrientedCycle.checked(A, witness.cycle.arrows)
        ok, _ = is_m_truncated(witness.cycle, witness.m, A)
    except EndpointMismatch:
        ok = False
    if not ok:
        raise InvalidWitness(f"cycle {'*'.join(witness.cycle.names(A))} is not "
                             f"{witness.m}-truncated in this algebra")
    B = compute_basis(truncated_cycle_algebra(witness.cycle.length, witness.m, A.field))
    return SummandComparison(witness.cycle.length, witness.m,
                             hh_dimensions(A, Q, cap), hh_dimensions(B, Q, cap))
