# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rank kernels.

Blocks are densified into int64 buffers. Oversized blocks and primes that do
not fit the 64-bit product bound are handed to the pure-Python kernels.

Rank over Q is computed modularly and then certified. For an integer matrix
rank mod p never exceeds the rational rank, and a verified rational kernel of
dimension ncols - r shows the rational rank is at most r. The kernel comes
from the reduced echelon forms modulo several primes, combined by CRT and
rational reconstruction, and is checked exactly with Python integers. Whenever reconstruction or the check fails the
block goes to the exact fraction-free Python kernel.
"""

import math

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

from hochquiv import _kernels_py

BACKEND = "cython"

cdef Py_ssize_t MAX_DENSE_CELLS = 16_000_000
cdef int64_t BOUND = 1 << 31
# the largest primes below 2**31, used for multi-modular certification
CERT_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
               2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
               2147483353, 2147483323, 2147483269, 2147483249)


cdef int64_t _modinv(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _rank_mod_p(int64_t[:, ::1] a, int64_t p) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t rank = 0, r, c, j, piv
    cdef int64_t inv, f, tmp
    for c in range(m):
        if rank == n:
            break
        piv = -1
        for r in range(rank, n):
            if a[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(c, m):
                tmp = a[piv, j]
                a[piv, j] = a[rank, j]
                a[rank, j] = tmp
        inv = _modinv(a[rank, c], p)
        for j in range(c, m):
            a[rank, j] = a[rank, j] * inv % p
        for r in range(rank + 1, n):
            f = a[r, c]
            if f == 0:
                continue
            for j in range(c, m):
                if a[rank, j] != 0:
                    tmp = (a[r, j] - f * a[rank, j]) % p
                    if tmp < 0:
                        tmp += p
                    a[r, j] = tmp
        rank += 1
    return rank


cdef Py_ssize_t _rref_mod_p(int64_t[:, ::1] a, int64_t p, Py_ssize_t[::1] pivots) noexcept nogil:
    """Gauss-Jordan in place; pivots[k] receives the k-th pivot column."""
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t rank = 0, r, c, j, piv
    cdef int64_t inv, f, tmp
    for c in range(m):
        if rank == n:
            break
        piv = -1
        for r in range(rank, n):
            if a[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(c, m):
                tmp = a[piv, j]
                a[piv, j] = a[rank, j]
                a[rank, j] = tmp
        inv = _modinv(a[rank, c], p)
        for j in range(c, m):
            a[rank, j] = a[rank, j] * inv % p
        for r in range(n):
            if r == rank:
                continue
            f = a[r, c]
            if f == 0:
                continue
            for j in range(c, m):
                if a[rank, j] != 0:
                    tmp = (a[r, j] - f * a[rank, j]) % p
                    if tmp < 0:
                        tmp += p
                    a[r, j] = tmp
        pivots[rank] = c
        rank += 1
    return rank


def _reconstruct(u, m):
    """(num, den) with num/den = u mod m and |num|, den <= sqrt(m/2), or None."""
    bound = math.isqrt(m // 2)
    r0, r1, t0, t1 = m, u, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    return (-r1, -t1) if t1 < 0 else (r1, t1)


def _dense(list rows, Py_ssize_t ncols):
    buf = np.zeros((len(rows), ncols), dtype=np.int64)
    cdef int64_t[:, ::1] a = buf
    cdef Py_ssize_t i
    for i, row in enumerate(rows):
        for j, v in row.items():
            a[i, j] = v
    return buf


def rank_mod_p(list rows, Py_ssize_t ncols, p):
    if not rows or ncols == 0:
        return 0
    if p >= BOUND or len(rows) * ncols > MAX_DENSE_CELLS:
        return _kernels_py.rank_mod_p(rows, ncols, p)
    reduced = [{j: v % p for j, v in row.items()} for row in rows]
    cdef int64_t[:, ::1] a = _dense(reduced, ncols)
    cdef int64_t pp = p
    cdef Py_ssize_t r
    with nogil:
        r = _rank_mod_p(a, pp)
    return r


def _transpose(list rows, Py_ssize_t ncols):
    out = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[j][i] = v
    return out


cdef tuple _echelon_mod(list rows, Py_ssize_t ncols, int64_t p):
    cdef Py_ssize_t r
    reduced = [{j: v % p for j, v in row.items()} for row in rows]
    buf = _dense(reduced, ncols)
    cdef int64_t[:, ::1] a = buf
    piv_buf = np.zeros(min(len(rows), ncols), dtype=np.intp)
    cdef Py_ssize_t[::1] pivots = piv_buf
    with nogil:
        r = _rref_mod_p(a, p, pivots)
    return r, [int(c) for c in piv_buf[:r]], buf


cdef bint _kernel_checks(list columns, list pivot_cols, list free, list residues, modulus):
    """Reconstruct each kernel vector and verify M x = 0 exactly."""
    for k, f in enumerate(free):
        entries = []
        den = 1
        for i, u in enumerate(residues[k]):
            if u == 0:
                continue
            frac = _reconstruct((-u) % modulus, modulus)
            if frac is None:
                return False
            entries.append((pivot_cols[i], frac[0], frac[1]))
            den = den * frac[1] // math.gcd(den, frac[1])
        acc = {}
        for row, v in columns[f].items():
            acc[row] = acc.get(row, 0) + den * v
        for c, num, d in entries:
            scale = num * (den // d)
            for row, v in columns[c].items():
                acc[row] = acc.get(row, 0) + scale * v
        for val in acc.values():
            if val:
                return False
    return True


def _certified_rank(list rows, Py_ssize_t ncols):
    """Exact rank over Q of an integer block, or None if certification fails."""
    r, pivot_cols, buf = _echelon_mod(rows, ncols, CERT_PRIMES[0])
    if r == ncols or r == len(rows):
        return r
    columns = _transpose(rows, ncols)
    pset = set(pivot_cols)
    free = [f for f in range(ncols) if f not in pset]
    # residues[k][i] = R[i, free[k]] modulo the product of primes used so far
    residues = [[int(x) for x in buf[:r, f]] for f in free]
    # with modulus > 2 H^2 (H the Hadamard bound) reconstruction cannot miss
    h2 = 1
    for row in rows:
        h2 *= max(1, sum(v * v for v in row.values()))
    enough = 1
    bound = CERT_PRIMES[0]
    while bound <= 2 * h2 and enough < len(CERT_PRIMES):
        enough += 1
        bound *= CERT_PRIMES[enough - 1]
    if bound <= 2 * h2:
        enough = 2  # out of reach: one cheap attempt, then the exact kernel
    modulus = CERT_PRIMES[0]
    used = 1
    while True:
        if used in (1, 2, 4, 8) or used == enough:
            if _kernel_checks(columns, pivot_cols, free, residues, modulus):
                return r
        if used == enough:
            return None
        p = CERT_PRIMES[used]
        used += 1
        r2, piv2, buf2 = _echelon_mod(rows, ncols, p)
        if r2 != r or piv2 != pivot_cols:
            return None  # an unlucky prime; the exact kernel decides
        inv = pow(modulus, -1, p)
        for k, f in enumerate(free):
            res = residues[k]
            for i in range(r):
                u = res[i]
                res[i] = u + modulus * ((int(buf2[i, f]) - u) * inv % p)
        modulus *= p


def rank_integer(list rows, Py_ssize_t ncols):
    if not rows or ncols == 0:
        return 0
    if len(rows) * ncols > MAX_DENSE_CELLS:
        return _kernels_py.rank_integer(rows, ncols)
    if len(rows) < ncols:  # certify through the smaller kernel
        rows, ncols = _transpose(rows, ncols), len(rows)
    r = _certified_rank(rows, ncols)
    if r is None:
        return _kernels_py.rank_integer(rows, ncols)
    return r
