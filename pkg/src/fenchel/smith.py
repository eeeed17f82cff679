"""Smith normal form over the integers, tracking column operations.

Only the column transform is kept: for a relation matrix ``R`` (rows are
relations among ``n`` generators) we find a unimodular ``V`` with
``U @ R @ V == D`` diagonal.  The group ``Z^n / rowspace(R)`` is then
``⊕ Z/d_j`` and generator ``e_i`` maps to row ``i`` of ``V`` reduced modulo the
``d_j``.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[List[int], Matrix]:
    """Return ``(diagonal, V)``.

    ``diagonal`` has length ``ncols``; entries are nonnegative, each divides
    the next among the nonzero ones, and zeros (free directions) come last.
    ``V`` is the ``ncols x ncols`` unimodular column transform.
    """
    A = [list(map(int, r)) for r in rows]
    for r in A:
        if len(r) != ncols:
            raise ValueError("ragged relation matrix")
    m = len(A)
    V = _identity(ncols)

    def swap_cols(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(src: int, dst: int, q: int) -> None:
        # column dst += q * column src
        if q == 0:
            return
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, ncols):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, ncols):
                a = Ai[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            swap_cols(t, j)

        while True:
            p = A[t][t]
            dirty = False
            for j in range(t + 1, ncols):
                a = A[t][j]
                if a:
                    add_col(t, j, -(a // p))
                    if A[t][j]:
                        dirty = True
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    q = a // p
                    Ai, At = A[i], A[t]
                    for j in range(t, ncols):
                        Ai[j] -= q * At[j]
                    if Ai[t]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole trailing block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, ncols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                At, Ab = A[t], A[bad]
                for j in range(t, ncols):
                    At[j] += Ab[j]
                continue
            # move the new smallest entry of row t / column t into the pivot
            best = (abs(p), t, t)
            for j in range(t + 1, ncols):
                a = A[t][j]
                if a and abs(a) < best[0]:
                    best = (abs(a), t, j)
            for i in range(t + 1, m):
                a = A[i][t]
                if a and abs(a) < best[0]:
                    best = (abs(a), i, t)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                swap_cols(t, j)

        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        t += 1

    diag = [A[i][i] if i < m else 0 for i in range(ncols)]
    return diag, V


def invariant_factors(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[int, List[int]]:
    """Structure of ``Z^ncols / rowspace(rows)`` as ``(free_rank, [d_1 | d_2 | ...])``."""
    diag, _ = smith_normal_form(rows, ncols)
    free = sum(1 for d in diag if d == 0)
    return free, [d for d in diag if d > 1]
