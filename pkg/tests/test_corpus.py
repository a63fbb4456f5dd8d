from __future__ import annotations

import pytest

from hochquiv.algebra import compute_basis, validate_presentation
from hochquiv.corpus import (
    CHECKS,
    CorpusParams,
    check_boundary_squared,
    check_corpus,
    random_monomial_algebra,
)
from hochquiv.errors import GenerationExhausted


def test_generator_output_is_valid_and_composable():
    for seed in range(20):
        P = random_monomial_algebra(seed)
        assert validate_presentation(P).ok
        for rel in P.relations():
            (path,) = rel
            assert path.length >= 2


def test_generator_rejects_bad_params():
    with pytest.raises(ValueError):
        random_monomial_algebra(0, CorpusParams(max_rel_len=1))


def test_generator_gives_up():
    # a single loop always gives dim >= 2, so max_dim 1 is unreachable
    with pytest.raises(GenerationExhausted):
        random_monomial_algebra(0, CorpusParams(max_vertices=1, max_arrows=1, max_dim=1, retries=5))


def test_corpus_is_varied():
    dims = {compute_basis(random_monomial_algebra(s)).dim for s in range(30)}
    assert len(dims) > 8


def test_small_corpus_run_reports_all_checks():
    rep = check_corpus(count=5, seed=100)
    assert set(rep.checked) == set(CHECKS)
    assert rep.total_violations == 0
    d = rep.as_dict()
    assert d["count"] == 5 and d["total_violations"] == 0


def test_unknown_check_rejected():
    with pytest.raises(ValueError):
        check_corpus(count=1, checks=["nope"])


def test_boundary_check_detects_a_broken_sign(monkeypatch):
    # the property checks must be able to fail: flip the sign of the wrap-around term
    from hochquiv import hochschild

    original = hochschild.boundary_of_tuple

    def broken(A_, t):
        out = original(A_, t)
        q = len(t) - 1
        sign = -1 if q % 2 else 1
        for k, c in A_.mul_basis(t[q], t[0]).items():
            key = (k,) + t[1:q]
            out[key] = out.get(key, 0) - 2 * sign * c
        return {k: v for k, v in out.items() if v}

    monkeypatch.setattr(hochschild, "boundary_of_tuple", broken)
    assert any(check_boundary_squared(compute_basis(random_monomial_algebra(s)), 4)
               for s in range(10))
