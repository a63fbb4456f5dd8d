"""Pure-Python rank kernels (fallback for the compiled ``_kernels`` module).

Both functions take a block as a list of sparse rows ``{col: value}`` and
never mutate their input.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def rank_mod_p(rows: list[dict[int, int]], ncols: int, p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        row = {c: v % p for c, v in src.items() if v % p}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in row.items()}
                break
            f = row[c]
            for j, v in prow.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return len(pivots)


def rank_integer(rows: list[dict[int, int]], ncols: int) -> int:
    """Rank over the rationals of an integer matrix, fraction-free."""
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        row = {c: v for c, v in src.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                pivots[c] = _primitive(row)
                break
            pv, f = prow[c], row[c]
            g = gcd(pv, f)
            mp, mf = pv // g, f // g
            new = {}
            for j in row.keys() | prow.keys():
                w = mp * row.get(j, 0) - mf * prow.get(j, 0)
                if w:
                    new[j] = w
            row = _primitive(new) if new else new
    return len(pivots)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}
