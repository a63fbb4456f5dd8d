"""Acceptance criteria, one test each.

Every test prints a single ``[criterion N] PASS|FAIL`` line with its runtime
(visible under ``pytest -v``, or run this file directly as a script).
"""

from __future__ import annotations

import sys
import time
from contextlib import contextmanager

import pytest

from conftest import EXAMPLE_NAMES, load
from hochquiv.algebra import compute_basis
from hochquiv.corpus import (
    auto_degree,
    check_boundary_squared,
    check_finite_gldim_excludes_cycles,
    check_hh0,
    check_pd_oracle,
    max_relation_length,
    random_monomial_algebra,
)
from hochquiv.cycles import OrientedCycle, find_truncated_cycles
from hochquiv.hochschild import (
    certify_nonvanishing,
    hh_compare_summand,
    hh_dimensions,
    truncated_cycle_algebra,
)
from hochquiv.resolutions import gldim_monomial, pd_simple_cutoff
from oracles import brute_from_algebra

CORPUS_SEEDS = range(50)


_capsys = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def _emit(line: str) -> None:
    if _capsys is None:
        print(line)
        return
    with _capsys.disabled():
        print("\n" + line)


@contextmanager
def criterion(number: int, title: str, limit_s: float):
    start = time.perf_counter()
    detail: dict = {}
    try:
        yield detail
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        _emit(f"[criterion {number}] FAIL {title} ({elapsed:.2f}s): {exc!r}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit_s
    extra = "".join(f"; {k}={v}" for k, v in detail.items())
    _emit(f"[criterion {number}] {'PASS' if ok else 'FAIL'} {title} "
          f"({elapsed:.2f}s, limit {limit_s:g}s{extra})")
    assert ok, f"criterion {number} took {elapsed:.2f}s (limit {limit_s}s)"


def _corpus():
    for seed in CORPUS_SEEDS:
        yield seed, compute_basis(random_monomial_algebra(seed))


def test_criterion_1_certificates_on_truncated_cycles():
    with criterion(1, "cycle certificates on Lambda(l,2), l=1..3, lm-1<=9", 60) as d:
        checked = []
        for l in (1, 2, 3):
            A = compute_basis(truncated_cycle_algebra(l, 2))
            hh = hh_dimensions(A, 9)
            cyc = OrientedCycle(tuple(range(l)))
            for m in range(1, 10 // l + 1):
                deg = l * m - 1
                if deg > 9 or not (m % 2 == 1 or l % 2 == 0):
                    continue
                cert = certify_nonvanishing(A, cyc, m)
                assert cert.hh_lower_bound, (l, m)
                assert hh[deg] >= 1, (l, m, hh)
                checked.append((l, m))
        d["cases"] = len(checked)


def test_criterion_2_dual_numbers():
    with criterion(2, "dual numbers HH_0..6", 5):
        A = load("dual")
        hh = hh_dimensions(A, 6)
        assert hh == [2, 1, 1, 1, 1, 1, 1]
        assert hh == brute_from_algebra(A).hh(6)


def test_criterion_3_two_cycle():
    with criterion(3, "Lambda(2,2) HH_0..5", 10):
        A = compute_basis(truncated_cycle_algebra(2, 2))
        hh = hh_dimensions(A, 5)
        assert hh == [2, 1, 1, 1, 1, 1]
        assert hh == brute_from_algebra(A).hh(5)


def test_criterion_4_boundary_squared_and_hh0():
    with criterion(4, "b^2 = 0 and HH_0 = dim A/[A,A] on examples + 50 corpus algebras", 300) as d:
        algebras = [load(n) for n in EXAMPLE_NAMES] + [A for _, A in _corpus()]
        degrees = []
        for A in algebras:
            Q = max(auto_degree(A, 6, 20_000), 2)
            assert check_boundary_squared(A, Q) == []
            assert check_hh0(A, Q) == []
            degrees.append(Q)
        d["algebras"] = len(algebras)
        d["max_Q"] = max(degrees)


def test_criterion_5_infinite_gldim_without_truncated_cycles():
    with criterion(5, "no truncated cycles yet infinite gldim", 5):
        A = load("remark7")
        for m in (2, 3, 4):
            assert find_truncated_cycles(A, m, 8) == []
        g = gldim_monomial(A)
        assert g.is_infinite and [A.name(i) for i in g.witness] == ["a2*a1"]
        r = pd_simple_cutoff(A, 0, 6)
        assert (r.value, r.exact) == (7, False)


def test_criterion_6_finite_gldim_excludes_truncated_cycles():
    with criterion(6, "finite gldim => no m-truncated cycles (50 algebras)", 300) as d:
        finite = 0
        for seed, A in _corpus():
            assert check_finite_gldim_excludes_cycles(A, 0) == [], seed
            finite += not gldim_monomial(A).is_infinite
        d["algebras"] = len(CORPUS_SEEDS)
        d["finite_gldim"] = finite


def test_criterion_7_summand_inequality():
    with criterion(7, "HH_i(A) >= HH_i(Lambda(l,m)), 1<=i<=min(Q,6)", 600) as d:
        checked = 0
        seed = 0
        while checked < 10 or seed < 50:
            A = compute_basis(random_monomial_algebra(seed))
            seed += 1
            Q = min(auto_degree(A, 6, 20_000), 6)
            if Q < 1:
                continue
            for m in range(2, max_relation_length(A) + 1):
                found = find_truncated_cycles(A, m)
                if found:
                    cmp = hh_compare_summand(A, found[0], Q)
                    assert cmp.holds, (seed - 1, cmp)
                    checked += 1
                    break
        assert checked >= 10
        d["algebras_with_witness"] = checked


def test_criterion_8_pd_oracles_agree():
    with criterion(8, "pd cutoff iteration agrees with successor graph (50 algebras)", 300) as d:
        vertices = 0
        for seed, A in _corpus():
            assert check_pd_oracle(A, 0) == [], seed
            vertices += A.n_vertices
        d["vertices"] = vertices


def test_criterion_9_finite_gldim_vanishing():
    with criterion(9, "finite gldim examples have vanishing high HH", 5):
        H = load("hereditary_a2")
        assert gldim_monomial(H).value == 1
        assert hh_dimensions(H, 3) == [2, 0, 0, 0]
        L = load("linear_ab")
        assert gldim_monomial(L).value == 2
        assert hh_dimensions(L, 4)[3:] == [0, 0]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
