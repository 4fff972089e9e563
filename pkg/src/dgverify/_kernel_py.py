"""Pure-Python row-reduction kernels.

Reference implementations of the exact Gauss-Jordan elimination used by
every solver in the package.  The compiled kernel in ``_kernel_cy`` must
produce bit-identical output; both follow the same fixed pivot rule
(columns left to right, first row at or below the pivot row with a
nonzero entry).
"""

from __future__ import annotations

from fractions import Fraction

KERNEL_NAME = "python"


def rref_q(rows):
    """Reduced row echelon form over Q, in place on a copy.

    rows: list of lists of Fraction.  Returns (rref_rows, pivot_columns).
    """
    m = len(rows)
    if m == 0:
        return [], []
    n = len(rows[0])
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if a[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        row = a[r]
        pv = row[c]
        if pv != 1:
            inv = 1 / pv
            for j in range(c, n):
                if row[j]:
                    row[j] *= inv
        for i in range(m):
            if i == r:
                continue
            f = a[i][c]
            if f:
                ai = a[i]
                for j in range(c, n):
                    if row[j]:
                        ai[j] -= f * row[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rref_fp(rows, p):
    """Reduced row echelon form over F_p (int residues)."""
    m = len(rows)
    if m == 0:
        return [], []
    n = len(rows[0])
    a = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if a[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        row = a[r]
        pv = row[c]
        if pv != 1:
            inv = pow(pv, p - 2, p)
            for j in range(c, n):
                if row[j]:
                    row[j] = (row[j] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = a[i][c]
            if f:
                ai = a[i]
                for j in range(c, n):
                    if row[j]:
                        ai[j] = (ai[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots
