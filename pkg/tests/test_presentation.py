from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE_NAMES, load
from hochquiv.algebra import compute_basis, validate_presentation
from hochquiv.corpus import random_monomial_algebra
from hochquiv.errors import (
    InfiniteDimensional,
    MissingNilbound,
    NilboundViolated,
    NonComposablePath,
    NonParallelRelation,
    NotAdmissible,
    ParseError,
    UnknownArrow,
)
from hochquiv.linalg import FieldDescriptor
from hochquiv.presentation import compose_paths, parse_presentation
from oracles import brute_from_algebra

CUBIC_TWO_CYCLE = """vertices: 1 2
arrow a1: 1 -> 2
arrow a2: 2 -> 1
relation a1*a2*a1
"""


def names(A):
    return [A.name(i) for i in range(A.dim)]


def test_parse_dual_numbers():
    P = parse_presentation("vertices: 1\narrow a: 1 -> 1\nrelation a*a\n")
    assert P.monomial
    assert P.quiver.n == 1 and len(P.quiver.arrows) == 1


def test_parse_cubic_two_cycle_is_monomial():
    assert parse_presentation(CUBIC_TWO_CYCLE).monomial


@pytest.mark.parametrize("text, err", [
    ("vertices: 1 2\narrow a1: 1 -> 2\nrelation a1*a1\n", NonComposablePath),
    ("vertices: 1\narrow a: 1 -> 1\nrelation a*b\n", UnknownArrow),
    ("vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a*b - b*a\n", NonParallelRelation),
    ("vertices: 1 2\narrow a: 1 -> 2\nrelation a - a*a\n", ParseError),
    ("vertices: 1\narrow a: 1 -> 1\narrow b: 1 -> 1\nrelation a - b*b\n", NotAdmissible),
    ("arrow a: 1 -> 1\n", ParseError),
    ("vertices: 1\narrow a: 1 -> 3\n", ParseError),
    ("vertices: 1\nbogus line\n", ParseError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_presentation(text)


def test_parse_error_reports_line_number():
    with pytest.raises(ParseError) as info:
        parse_presentation("vertices: 1\n# comment\narrow a: 1 -> 1\nrelation a*c\n")
    assert info.value.line == 4


def test_compose_paths():
    q = parse_presentation(CUBIC_TWO_CYCLE).quiver
    a1, a2 = q.arrow_path(0), q.arrow_path(1)
    assert compose_paths(q.trivial(0), a1) == a1
    assert compose_paths(a1, a2) == q.word([0, 1])
    assert compose_paths(a1, a1) is None


def test_round_trip_text():
    for name in EXAMPLE_NAMES:
        A = load(name)
        P2 = parse_presentation(A.presentation.to_text())
        assert P2.rational_relations == A.presentation.rational_relations
        assert compute_basis(P2).dim == A.dim


@pytest.mark.parametrize("name, dim, basis", [
    ("dual", 2, ["e1", "a"]),
    ("remark7", 7, ["e1", "e2", "a1", "a2", "a1*a2", "a2*a1", "a2*a1*a2"]),
    ("cycle2", 4, ["e1", "e2", "a", "b"]),
])
def test_basis_examples(name, dim, basis):
    A = load(name)
    assert A.dim == dim and names(A) == basis


def test_normal_forms_cubic_two_cycle():
    A = load("remark7")
    q = A.quiver
    assert A.path_nf(q.parse_path("a1*a2*a1")) == {}
    i = A.index[q.parse_path("a2*a1*a2")]
    assert A.path_nf(q.parse_path("a2*a1*a2")) == {i: 1}
    e1 = A.index[q.trivial(0)]
    assert A.path_nf(q.trivial(0)) == {e1: 1}


def test_multiplication_examples():
    D = load("dual")
    a = D.index[D.quiver.arrow_path(0)]
    assert D.mul_basis(a, a) == {}
    A = load("remark7")
    q = A.quiver
    a1, a2 = A.index[q.arrow_path(0)], A.index[q.arrow_path(1)]
    assert A.mul_basis(a1, a2) == {A.index[q.word([0, 1])]: 1}
    assert A.mul_basis(A.index[q.trivial(1)], a1) == {}


def test_validate_examples():
    assert validate_presentation(load("dual").presentation).nilpotency == 2
    r = validate_presentation(load("remark7").presentation)
    assert (r.dim, r.nilpotency) == (7, 4)
    with pytest.raises(InfiniteDimensional):
        validate_presentation(parse_presentation("vertices: 1\narrow a: 1 -> 1\n"))


def test_general_relations_need_and_check_nilbound():
    text = "vertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nrelation x*y - y*x\nrelation x*x\nrelation y*y\n"
    with pytest.raises(MissingNilbound):
        compute_basis(parse_presentation(text))
    with pytest.raises(NilboundViolated):
        compute_basis(parse_presentation(text + "nilbound: 2\n"))
    A = compute_basis(parse_presentation(text + "nilbound: 3\n"))
    assert A.dim == 4 and A.nilpotency == 3


def test_quantum_plane_relations_hold():
    A = load("quantum_plane")
    q = A.quiver
    x, y = A.index[q.arrow_path(0)], A.index[q.arrow_path(1)]
    xy, yx = A.mul_basis(x, y), A.mul_basis(y, x)
    assert A.dim == 4
    assert xy.keys() == yx.keys() and len(xy) == 1
    (k,) = xy
    assert xy[k] == Fraction(2, 3) * yx[k]


def test_prime_field_override_reduces_coefficients():
    A = load("quantum_plane")
    B = compute_basis(A.presentation.with_field(FieldDescriptor.prime(5)))
    assert B.dim == A.dim
    with pytest.raises(ParseError):
        A.presentation.with_field(FieldDescriptor.prime(3))


def _check_algebra_laws(A, rng):
    n = A.n_vertices
    assert A.dim == n + len(A.radical)
    for i in range(n):
        for j in range(n):
            ei, ej = A.index[A.quiver.trivial(i)], A.index[A.quiver.trivial(j)]
            assert A.mul_basis(ei, ej) == ({ei: 1} if i == j else {})
    for _ in range(60):
        u, v, w = ({rng.randrange(A.dim): 1} for _ in range(3))
        assert A.multiply(A.multiply(u, v), w) == A.multiply(u, A.multiply(v, w))
    for i in A.radical:
        for j in A.radical:
            for k in A.mul_basis(i, j):
                assert A.basis[k].length >= A.basis[i].length + A.basis[j].length or not A.monomial
                assert A.basis[k].length >= 2
    N = A.nilpotency
    assert not _radical_power_nonzero(A, N) and (N == 1 or _radical_power_nonzero(A, N - 1))


def _radical_power_nonzero(A, k):
    current = {i for i in A.radical}
    for _ in range(k - 1):
        current = {t for i in current for j in A.radical for t in A.mul_basis(i, j)}
    return bool(current)


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_algebra_laws_examples(name):
    _check_algebra_laws(load(name), random.Random(0))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_monomial_basis_matches_exhaustive_enumeration(seed):
    A = compute_basis(random_monomial_algebra(seed))
    B = brute_from_algebra(A)
    assert A.dim == B.dim
    words = sorted(tuple(p.arrows) for p in A.basis if p.length)
    assert words == sorted(e[1] for e in B.elements if e[0] == "p")
    _check_algebra_laws(A, random.Random(seed))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_general_pipeline_agrees_with_monomial(seed):
    P = random_monomial_algebra(seed)
    A = compute_basis(P, method="monomial")
    G = compute_basis(P, method="general", nilbound=max(A.nilpotency, 2))
    assert names(A) == names(G)
    for i, j in itertools.product(range(A.dim), repeat=2):
        assert A.mul_basis(i, j) == G.mul_basis(i, j)


def test_random_generator_is_deterministic():
    assert random_monomial_algebra(7).to_text() == random_monomial_algebra(7).to_text()
