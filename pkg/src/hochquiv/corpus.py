"""Seeded random monomial algebras and the cross-module property checks run on them."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Callable

from .algebra import Algebra, compute_basis
from .cycles import find_truncated_cycles, is_m_truncated, minimal_two_truncated
from .errors import GenerationExhausted, InfiniteDimensional
from .hochschild import (
    boundary_matrix,
    certify_nonvanishing,
    chain_basis,
    chain_dimension,
    hh0_direct,
    hh_compare_summand,
    hh_dimensions,
)
from .linalg import QQ, FieldDescriptor
from .presentation import AlgebraPresentation, Quiver
from .resolutions import (
    Representation,
    build_successor_graph,
    gldim_monomial,
    pd_simple_cutoff,
    pd_simple_monomial,
    predicted_syzygy_dims,
    projective_cover_and_syzygy,
)


@dataclass(frozen=True)
class CorpusParams:
    max_vertices: int = 4
    max_arrows: int = 6
    max_rel_len: int = 4
    max_rels: int = 6
    max_dim: int = 30
    retries: int = 500


def random_monomial_algebra(seed: int, params: CorpusParams = CorpusParams(),
                            field: FieldDescriptor = QQ) -> AlgebraPresentation:
    """Deterministic in ``seed``; retries until the algebra is finite-dimensional."""
    if min(params.max_vertices, params.max_arrows, params.max_rels) < 1 or params.max_rel_len < 2:
        raise ValueError("corpus parameters must be positive and max_rel_len >= 2")
    rng = random.Random(seed)
    for _ in range(params.retries):
        n = rng.randint(1, params.max_vertices)
        k = rng.randint(min(n, params.max_arrows), params.max_arrows)
        arrows = [(f"a{i + 1}", rng.randint(1, n), rng.randint(1, n)) for i in range(k)]
        quiver = Quiver.build(range(1, n + 1), arrows)
        words = set()
        for _ in range(rng.randint(1, params.max_rels)):
            length = rng.randint(2, params.max_rel_len)
            word = [rng.randrange(k)]
            while len(word) < length:
                outs = quiver.out_arrows(quiver.arrows[word[-1]].target)
                if not outs:
                    break
                word.append(rng.choice(outs).index)
            if len(word) == length:
                words.add(tuple(word))
        P = AlgebraPresentation.create(quiver, [{quiver.word(w): 1} for w in sorted(words)], field)
        try:
            A = compute_basis(P)
        except InfiniteDimensional:
            continue
        if A.dim <= params.max_dim:
            return P
    raise GenerationExhausted(f"no finite-dimensional algebra within {params.retries} attempts")


def corpus(count: int, seed: int = 0, params: CorpusParams = CorpusParams()) -> list[AlgebraPresentation]:
    return [random_monomial_algebra(seed + i, params) for i in range(count)]


def auto_degree(A: Algebra, limit: int, cap: int) -> int:
    """Largest Q <= limit with dim C_{Q+1} <= cap (so HH_Q is computable)."""
    Q = 0
    while Q < limit and chain_dimension(A, Q + 2) <= cap:
        Q += 1
    return Q


def max_relation_length(A: Algebra) -> int:
    return max((p.length for r in A.presentation.relations() for p in r), default=2)


# property checks: each returns a list of violation messages ---------------

def check_boundary_squared(A: Algebra, Q: int) -> list[str]:
    out = []
    prev = None
    for q in range(1, Q + 1):
        dom = chain_basis(A, q)
        cod = chain_basis(A, q - 1)
        cur = boundary_matrix(A, q, dom, cod).matrix
        if prev is not None and not (prev @ cur).is_zero():
            out.append(f"b_{q - 1} b_{q} != 0")
        prev = cur
    return out


def check_hh0(A: Algebra, Q: int) -> list[str]:
    hh = hh_dimensions(A, 0)
    direct = hh0_direct(A)
    return [] if hh[0] == direct else [f"HH_0 {hh[0]} != dim A/[A,A] {direct}"]


def check_finite_gldim_excludes_cycles(A: Algebra, Q: int) -> list[str]:
    g = gldim_monomial(A)
    if g.is_infinite:
        return []
    out = []
    for m in range(2, max_relation_length(A) + 1):
        found = find_truncated_cycles(A, m)
        if found:
            out.append(f"finite gldim {g.value} with a {m}-truncated cycle")
    return out


def check_pd_oracle(A: Algebra, Q: int) -> list[str]:
    graph = build_successor_graph(A)
    cutoff = len(graph.nodes) + 1
    out = []
    for v in range(A.n_vertices):
        exact = pd_simple_monomial(A, v, graph)
        cut = pd_simple_cutoff(A, v, cutoff)
        if exact.is_infinite:
            if cut.exact or cut.value != cutoff + 1:
                out.append(f"vertex {v}: pd infinite but cutoff gives {cut}")
        elif not cut.exact or cut.value != exact.value:
            out.append(f"vertex {v}: pd {exact.value} but cutoff gives {cut}")
    return out


def check_syzygy_law(A: Algebra, Q: int, steps: int = 3) -> list[str]:
    out = []
    for v in range(A.n_vertices):
        predicted = predicted_syzygy_dims(A, v, steps)
        M = Representation.simple(A, v)
        actual = []
        for _ in range(steps):
            _, M = projective_cover_and_syzygy(A, M)
            actual.append(M.total_dim)
        if predicted != actual:
            out.append(f"vertex {v}: predicted syzygy dims {predicted}, actual {actual}")
    return out


def check_happel(A: Algebra, Q: int) -> list[str]:
    g = gldim_monomial(A)
    if g.is_infinite:
        return []
    hh = hh_dimensions(A, Q)
    return [f"gldim {g.value} but HH_{i} = {hh[i]}" for i in range(g.value + 1, Q + 1) if hh[i]]


def check_certificates(A: Algebra, Q: int) -> list[str]:
    cyc = minimal_two_truncated(A)
    if cyc is None:
        return []
    out = []
    if not cyc.aperiodic:
        out.append("minimal 2-truncated cycle is periodic")
    hh = hh_dimensions(A, Q)
    l = cyc.length
    m = 1
    while l * m - 1 <= Q:
        if m % 2 == 1 or l % 2 == 0:
            cert = certify_nonvanishing(A, cyc, m)
            if not cert.hh_lower_bound:
                out.append(f"certificate failed for l={l}, m={m}")
            elif hh[l * m - 1] < 1:
                out.append(f"certificate claims HH_{l * m - 1} != 0 but it is zero")
        m += 1
    ok, _ = is_m_truncated(cyc.power(2), 2, A)
    if not ok:
        out.append("doubled cycle is not 2-truncated")
    return out


def check_summand(A: Algebra, Q: int) -> list[str]:
    for m in range(2, max_relation_length(A) + 1):
        found = find_truncated_cycles(A, m)
        if found:
            cmp = hh_compare_summand(A, found[0], min(Q, 6))
            if not cmp.holds:
                return [f"HH(A) {cmp.hh_algebra} < HH(Lambda({cmp.l},{cmp.m})) "
                        f"{cmp.hh_truncated_cycle}"]
            return []
    return []


CHECKS: dict[str, Callable[[Algebra, int], list[str]]] = {
    "boundary_squared": check_boundary_squared,
    "hh0": check_hh0,
    "finite_gldim_no_cycles": check_finite_gldim_excludes_cycles,
    "pd_oracle": check_pd_oracle,
    "syzygy_law": check_syzygy_law,
    "happel": check_happel,
    "certificates": check_certificates,
    "summand": check_summand,
}


@dataclass
class CorpusReport:
    count: int
    seed: int
    params: CorpusParams
    checked: dict[str, int] = field(default_factory=dict)
    violations: dict[str, list[str]] = field(default_factory=dict)
    witnesses: int = 0

    @property
    def total_violations(self) -> int:
        return sum(len(v) for v in self.violations.values())

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "params": asdict(self.params),
            "algebras_with_truncated_cycles": self.witnesses,
            "checked": self.checked,
            "violations": self.violations,
            "total_violations": self.total_violations,
        }


def check_corpus(count: int = 50, seed: int = 0, params: CorpusParams = CorpusParams(),
                 checks: list[str] | None = None, max_degree: int = 6,
                 cap: int = 20_000) -> CorpusReport:
    names = list(CHECKS) if not checks or checks == ["all"] else checks
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    report = CorpusReport(count, seed, params, {n: 0 for n in names}, {n: [] for n in names})
    for i in range(count):
        P = random_monomial_algebra(seed + i, params)
        A = compute_basis(P)
        Q = auto_degree(A, max_degree, cap)
        if any(find_truncated_cycles(A, m) for m in range(2, max_relation_length(A) + 1)):
            report.witnesses += 1
        for n in names:
            msgs = CHECKS[n](A, Q)
            report.checked[n] += 1
            report.violations[n].extend(f"seed {seed + i}: {msg}" for msg in msgs)
    return report
