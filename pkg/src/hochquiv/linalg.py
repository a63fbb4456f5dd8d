"""Exact linear algebra over the rationals and prime fields.

Scalars over Q are Python ``int`` or ``fractions.Fraction`` (integers are kept
as ``int``); scalars over F_p are ints in ``range(p)``. Nothing here touches
floating point.

Ranks go through the compiled kernels in ``_kernels`` when the extension is
built, and through ``_kernels_py`` otherwise. Set ``HOCHQUIV_PURE_PYTHON=1``
to force the fallback.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence, Union

from .errors import ResourceLimit

if os.environ.get("HOCHQUIV_PURE_PYTHON"):
    from . import _kernels_py as _kernels
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from . import _kernels_py as _kernels

BACKEND: str = _kernels.BACKEND

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str = "rationals"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if not _is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldDescriptor:
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> FieldDescriptor:
        return cls("prime-field", p)

    @classmethod
    def parse(cls, text: str) -> FieldDescriptor:
        """Accepts ``q``/``Q`` and ``fp:<p>`` / ``Fp <p>``."""
        t = text.strip()
        if t.lower() == "q":
            return cls.rationals()
        low = t.lower().replace(":", " ")
        if low.startswith("fp"):
            rest = low[2:].strip()
            if rest.isdigit():
                return cls.prime(int(rest))
        raise ValueError(f"cannot parse field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def coerce(self, x: Scalar) -> Scalar:
        p = self.characteristic
        if type(x) is int:
            return x % p if p else x
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
                return x.numerator * pow(x.denominator, -1, p) % p
            return x % p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x: Scalar) -> Scalar:
        p = self.characteristic
        if p:
            return pow(x, -1, p)
        if isinstance(x, int):
            return 1 if x == 1 else (-1 if x == -1 else Fraction(1, x))
        return self.coerce(1 / x)

    def label(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def __str__(self) -> str:
        return self.label()


QQ = FieldDescriptor.rationals()


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Scalar]
    field: FieldDescriptor = QQ

    def __post_init__(self):
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if not v:
                raise ValueError(f"stored zero at ({r}, {c})")

    @classmethod
    def build(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], Scalar],
              field: FieldDescriptor = QQ) -> SparseMatrix:
        """Like the constructor, but coerces into the field and drops zeros."""
        clean = {}
        for k, v in entries.items():
            v = field.coerce(v)
            if v:
                clean[k] = v
        return cls(rows, cols, clean, field)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Scalar]], field: FieldDescriptor = QQ,
                   cols: int | None = None) -> SparseMatrix:
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        return cls.build(rows, cols,
                         {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row) if v},
                         field)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Scalar]],
                     field: FieldDescriptor = QQ) -> SparseMatrix:
        return cls.build(rows, len(columns),
                         {(r, j): v for j, col in enumerate(columns) for r, v in col.items()},
                         field)

    @classmethod
    def identity(cls, n: int, field: FieldDescriptor = QQ) -> SparseMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)}, field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def row_dicts(self) -> list[dict[int, Scalar]]:
        out: list[dict[int, Scalar]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def col_dicts(self) -> list[dict[int, Scalar]]:
        out: list[dict[int, Scalar]] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()}, self.field)

    def to_dense(self) -> list[list[Scalar]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def matvec(self, x: Sequence[Scalar]) -> list[Scalar]:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        out: list[Scalar] = [0] * self.rows
        for (r, c), v in self.entries.items():
            if x[c]:
                out[r] += v * x[c]
        return [self.field.coerce(y) for y in out]

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        orows = other.row_dicts()
        acc: dict[tuple[int, int], Scalar] = {}
        for (r, k), v in self.entries.items():
            for c, w in orows[k].items():
                acc[r, c] = acc.get((r, c), 0) + v * w
        return SparseMatrix.build(self.rows, other.cols, acc, self.field)


@dataclass
class EchelonForm:
    rank: int
    pivot_columns: list[int]
    reduced_rows: list[dict[int, Scalar]] = field(repr=False)


def _axpy(target: dict, f: Scalar, source: dict, p: int, touched: dict | None, rid: int) -> None:
    """target -= f * source, in place; keeps the column index ``touched`` current."""
    for j, v in source.items():
        w = target.get(j, 0) - f * v
        if p:
            w %= p
        if w:
            if j not in target and touched is not None:
                touched.setdefault(j, set()).add(rid)
            target[j] = w
        elif j in target:
            del target[j]
            if touched is not None:
                touched[j].discard(rid)


def _rref_rows(rows: list[dict[int, Scalar]], ncols: int, F: FieldDescriptor) -> EchelonForm:
    """Gauss-Jordan. Pivot: lowest-index unused row with a nonzero entry in the
    leftmost unresolved column; pivots scaled to 1."""
    p = F.characteristic
    rows = [dict(r) for r in rows]
    col_index: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_index.setdefault(j, set()).add(i)
    remaining = set(range(len(rows)))
    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    for c in range(ncols):
        holders = col_index.get(c)
        if not holders:
            continue
        cand = [r for r in holders if r in remaining]
        if not cand:
            continue
        pr = min(cand)
        prow = rows[pr]
        inv = F.inv(prow[c])
        if inv != 1:
            for j in prow:
                prow[j] = F.coerce(prow[j] * inv)
        for r in list(holders):
            if r == pr:
                continue
            _axpy(rows[r], rows[r][c], prow, p, col_index, r)
        remaining.discard(pr)
        pivot_cols.append(c)
        pivot_rows.append(pr)
    if not p:
        for pr in pivot_rows:
            row = rows[pr]
            for j, v in row.items():
                if isinstance(v, Fraction) and v.denominator == 1:
                    row[j] = v.numerator
    return EchelonForm(len(pivot_cols), pivot_cols, [rows[i] for i in pivot_rows])


def rref(M: SparseMatrix) -> EchelonForm:
    return _rref_rows(M.row_dicts(), M.cols, M.field)


def kernel_basis(M: SparseMatrix) -> list[list[Scalar]]:
    ech = rref(M)
    pivset = set(ech.pivot_columns)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v: list[Scalar] = [0] * M.cols
        v[f] = 1
        for pc, row in zip(ech.pivot_columns, ech.reduced_rows):
            if f in row:
                v[pc] = M.field.coerce(-row[f])
        basis.append(v)
    return basis


def components(M: SparseMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected blocks of the row/column incidence graph, as (rows, cols).

    Zero rows and zero columns belong to no block.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    off = M.rows
    for r, c in M.entries:
        a, b = find(r), find(off + c)
        if a != b:
            parent[a] = b
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for node in list(parent):
        g = groups.setdefault(find(node), ([], []))
        if node < off:
            g[0].append(node)
        else:
            g[1].append(node - off)
    out = []
    for rs, cs in groups.values():
        rs.sort()
        cs.sort()
        out.append((rs, cs))
    out.sort()
    return out


def rank(M: SparseMatrix, deadline: float | None = None) -> int:
    """Rank via block decomposition plus the elimination kernels.

    ``deadline`` is a ``time.monotonic()`` value; exceeding it between blocks
    raises ResourceLimit.
    """
    if not M.entries:
        return 0
    rowd = M.row_dicts()
    p = M.field.characteristic
    total = 0
    for rs, cs in components(M):
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimit("elimination time budget exceeded")
        if len(rs) == 1 or len(cs) == 1:
            total += 1
            continue
        local = {c: i for i, c in enumerate(cs)}
        if p:
            block = [{local[c]: v for c, v in rowd[r].items()} for r in rs]
            total += _kernels.rank_mod_p(block, len(cs), p)
        else:
            block = [_integer_row({local[c]: v for c, v in rowd[r].items()}) for r in rs]
            total += _kernels.rank_integer(block, len(cs))
    return total


def _integer_row(row: dict[int, Scalar]) -> dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        return {j: int(v) for j, v in row.items()}
    return {j: int(v * den) for j, v in row.items()}


def solve_in_image(M: SparseMatrix, v: Sequence[Scalar] | Mapping[int, Scalar]) -> list[Scalar] | None:
    """Exact x with M x = v, or None when v is not in the column span.

    Only the blocks of M that meet the support of v are eliminated.
    """
    F = M.field
    if isinstance(v, Mapping):
        vd = {i: F.coerce(c) for i, c in v.items() if c}
        if any(not 0 <= i < M.rows for i in vd):
            raise ValueError("vector index outside the row range")
        vd = {i: c for i, c in vd.items() if c}
    else:
        if len(v) != M.rows:
            raise ValueError("length(v) must equal rows(M)")
        vd = {i: F.coerce(c) for i, c in enumerate(v) if c}
        vd = {i: c for i, c in vd.items() if c}
    x: list[Scalar] = [0] * M.cols
    if not vd:
        return x
    blocks = components(M)
    row_block = {r: k for k, (rs, _) in enumerate(blocks) for r in rs}
    needed = set()
    for r in vd:
        if r not in row_block:
            return None
        needed.add(row_block[r])
    rowd = M.row_dicts()
    for k in sorted(needed):
        rs, cs = blocks[k]
        cloc = {c: j for j, c in enumerate(cs)}
        aug = len(cs)
        rows = []
        for r in rs:
            row = {cloc[c]: val for c, val in rowd[r].items()}
            if r in vd:
                row[aug] = vd[r]
            rows.append(row)
        ech = _rref_rows(rows, aug + 1, F)
        if ech.pivot_columns and ech.pivot_columns[-1] == aug:
            return None
        for pc, row in zip(ech.pivot_columns, ech.reduced_rows):
            if aug in row:
                x[cs[pc]] = row[aug]
    return x


def vector_from_dict(d: Mapping[int, Scalar], n: int) -> list[Scalar]:
    out: list[Scalar] = [0] * n
    for i, c in d.items():
        out[i] = c
    return out


def span_rank(vectors: Iterable[Mapping[int, Scalar]], dim: int, F: FieldDescriptor) -> int:
    """Rank of a family of sparse vectors of length ``dim``."""
    cols = [dict(v) for v in vectors]
    return rank(SparseMatrix.from_columns(dim, cols, F))
