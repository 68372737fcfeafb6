"""Exact sparse linear algebra: ranks over prime fields and the integers.

Matrices are lists of sparse rows (``dict`` column -> nonzero int).  The
sparse phase is a Markowitz-style elimination that picks the sparsest
column and, inside it, the sparsest row.  Over the integers only unit
pivots are taken so no coefficient growth happens; whatever survives is
handed to FLINT as a dense matrix.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

import flint

__all__ = [
    "SparseRows",
    "eliminate",
    "rank_mod_p",
    "rank_integer",
    "invariant_factors",
    "smith_normal_form",
    "determinantal_divisors",
]

SparseRows = list[dict[int, int]]

# dense residues are fed to FLINT in blocks of about this many entries
_CHUNK_CELLS = 4_000_000


def eliminate(rows: Iterable[dict[int, int]], modulus: int = 0) -> tuple[int, SparseRows]:
    """Sparse elimination; returns ``(pivots, residue rows)``.

    With ``modulus = p`` entries are residues mod ``p`` and every nonzero
    entry may pivot.  With ``modulus = 0`` entries are integers and only
    ``+-1`` pivots are used, so the residue has the same invariant factors
    as the input apart from the ``pivots`` removed unit factors.
    """
    live: SparseRows = []
    for r in rows:
        if modulus:
            r = {c: v % modulus for c, v in r.items() if v % modulus}
        else:
            r = {c: v for c, v in r.items() if v}
        if r:
            live.append(r)
    alive = set(range(len(live)))
    cols: dict[int, set[int]] = {}
    for i, r in enumerate(live):
        for c in r:
            cols.setdefault(c, set()).add(i)
    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    pivots = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        members = cols.get(c)
        if not members:
            continue
        if cnt != len(members):
            heapq.heappush(heap, (len(members), c))
            continue
        best = -1
        for i in members:
            v = live[i][c]
            if not modulus and v not in (1, -1):
                continue
            if best < 0 or (len(live[i]), i) < (len(live[best]), best):
                best = i
        if best < 0:
            # no unit pivot yet; revisited if a later step touches this column
            continue
        piv = live[best]
        alive.discard(best)
        for cc in piv:
            cols[cc].discard(best)
        inv = pow(piv[c], -1, modulus) if modulus else piv[c]
        for i in sorted(cols[c]):
            r = live[i]
            f = r[c] * inv
            if modulus:
                f %= modulus
            for cc, v in piv.items():
                nv = r.get(cc, 0) - f * v
                if modulus:
                    nv %= modulus
                if nv:
                    if cc not in r:
                        cols[cc].add(i)
                    r[cc] = nv
                elif cc in r:
                    del r[cc]
                    cols[cc].discard(i)
        del cols[c]
        pivots += 1
        for cc in piv:
            s = cols.get(cc)
            if s:
                heapq.heappush(heap, (len(s), cc))
    residue = [live[i] for i in sorted(alive) if live[i]]
    return pivots, residue


def _dense(rows: SparseRows) -> tuple[list[list[int]], int]:
    used = sorted({c for r in rows for c in r})
    pos = {c: k for k, c in enumerate(used)}
    out = []
    for r in rows:
        row = [0] * len(used)
        for c, v in r.items():
            row[pos[c]] = v
        out.append(row)
    return out, len(used)


def _dense_rank_mod_p(rows: SparseRows, p: int) -> int:
    if not rows:
        return 0
    dense, ncols = _dense(rows)
    chunk = max(1, _CHUNK_CELLS // max(ncols, 1) - ncols)
    echelon: list[list[int]] = []
    for start in range(0, len(dense), chunk):
        block = echelon + dense[start : start + chunk]
        m = flint.nmod_mat(block, p)
        red, rank = m.rref()
        if rank == ncols:
            return rank
        if start + chunk >= len(dense):
            return rank
        entries = [int(x) for x in red.entries()]
        echelon = [entries[k * ncols : (k + 1) * ncols] for k in range(rank)]
    return len(echelon)


def rank_mod_p(rows: Iterable[dict[int, int]], p: int) -> int:
    pivots, residue = eliminate(rows, p)
    return pivots + _dense_rank_mod_p(residue, p)


def rank_integer(rows: Iterable[dict[int, int]]) -> int:
    """Rank over the rationals of an integer matrix."""
    pivots, residue = eliminate(rows, 0)
    if not residue:
        return pivots
    dense, ncols = _dense(residue)
    return pivots + flint.fmpz_mat(dense).rank()


def invariant_factors(rows: Iterable[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    pivots, residue = eliminate(rows, 0)
    factors = [1] * pivots
    if residue:
        dense, ncols = _dense(residue)
        snf = flint.fmpz_mat(dense).snf()
        for k in range(min(len(dense), ncols)):
            v = abs(int(snf[k, k]))
            if v:
                factors.append(v)
    factors.sort()
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise AssertionError(f"invariant factors {factors} are not a divisor chain")
    return factors


def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Dense Smith normal form with transforms.

    Returns ``(factors, U, V)`` with ``U * M * V`` diagonal, its nonzero
    diagonal equal to ``factors`` in divisibility order and ``U``, ``V``
    unimodular.
    """
    a = [[int(v) for v in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, "r") for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), j, "c") for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    factors = [a[k][k] for k in range(t)]
    return factors, u, v


def determinantal_divisors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors via gcds of ``k x k`` minors (slow; for testing only)."""
    import itertools
    import math

    m = len(matrix)
    n = len(matrix[0]) if m else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, _det([[matrix[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def _det(a: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in a]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1
