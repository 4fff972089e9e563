# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernels.

Same fixed pivot rule and output as ``_kernel_py``; rationals are carried
as coprime (numerator, denominator) pairs of Python ints with den > 0, so
the arithmetic stays exact at arbitrary precision while the row loops run
at C speed.  F_p rows use C int64 arithmetic (p < 2**31 keeps products in
range).
"""

from fractions import Fraction
from math import gcd

from libc.stdint cimport int64_t

KERNEL_NAME = "cython"


def rref_q(rows):
    """Reduced row echelon form over Q.  rows: list[list[Fraction]]."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return [], []
    cdef Py_ssize_t n = len(rows[0])
    cdef list nums = [None] * m
    cdef list dens = [None] * m
    cdef list rin, rn, rd
    cdef Py_ssize_t i, j, c, r, pr
    for i in range(m):
        rin = list(rows[i])
        rn = [0] * n
        rd = [1] * n
        for j in range(n):
            x = rin[j]
            rn[j] = x.numerator
            rd[j] = x.denominator
        nums[i] = rn
        dens[i] = rd

    cdef list pivots = []
    cdef list prn, prd, ain, aid
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if (<list>nums[i])[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            nums[r], nums[pr] = nums[pr], nums[r]
            dens[r], dens[pr] = dens[pr], dens[r]
        prn = <list>nums[r]
        prd = <list>dens[r]
        pn = prn[c]
        pd = prd[c]
        if pn != pd:
            # scale row by pd/pn
            for j in range(c, n):
                xn = prn[j]
                if xn != 0:
                    num = xn * pd
                    den = prd[j] * pn
                    if den < 0:
                        num = -num
                        den = -den
                    g = gcd(num, den)
                    if g > 1:
                        num //= g
                        den //= g
                    prn[j] = num
                    prd[j] = den
        else:
            prn[c] = 1
            prd[c] = 1
        for i in range(m):
            if i == r:
                continue
            ain = <list>nums[i]
            fn = ain[c]
            if fn == 0:
                continue
            aid = <list>dens[i]
            fd = aid[c]
            for j in range(c, n):
                xn = prn[j]
                if xn == 0:
                    continue
                # a[i][j] -= (fn/fd) * (xn/xd)
                xd = prd[j]
                num = ain[j] * fd * xd - fn * xn * aid[j]
                if num == 0:
                    ain[j] = 0
                    aid[j] = 1
                    continue
                den = aid[j] * fd * xd
                if den < 0:
                    num = -num
                    den = -den
                g = gcd(num, den)
                if g > 1:
                    num //= g
                    den //= g
                ain[j] = num
                aid[j] = den
        pivots.append(c)
        r += 1
        if r == m:
            break

    out = []
    for i in range(m):
        rn = <list>nums[i]
        rd = <list>dens[i]
        orow = [None] * n
        for j in range(n):
            f = Fraction(rn[j], rd[j])
            orow[j] = f
        out.append(orow)
    return out, pivots


cdef int64_t _inv_mod(int64_t a, int64_t p):
    # extended Euclid; a != 0 mod p
    cdef int64_t g = a % p, x = 1, x1 = 0, g1 = p, q, t
    while g1 != 0:
        q = g // g1
        g, g1 = g1, g - q * g1
        x, x1 = x1, x - q * x1
    x %= p
    if x < 0:
        x += p
    return x


def rref_fp(rows, p):
    """Reduced row echelon form over F_p.  rows: list[list[int]]."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return [], []
    cdef Py_ssize_t n = len(rows[0])
    cdef int64_t pp = p
    cdef list a = []
    cdef Py_ssize_t i, j, c, r, pr
    import array
    cdef object arr
    for i in range(m):
        arr = array.array("q", [x % p for x in rows[i]])
        a.append(arr)

    cdef int64_t[:] row, ai
    cdef int64_t pv, inv, f, v
    cdef list pivots = []
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            row = a[i]
            if row[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        row = a[r]
        pv = row[c]
        if pv != 1:
            inv = _inv_mod(pv, pp)
            for j in range(c, n):
                if row[j] != 0:
                    row[j] = (row[j] * inv) % pp
        for i in range(m):
            if i == r:
                continue
            ai = a[i]
            f = ai[c]
            if f != 0:
                for j in range(c, n):
                    v = row[j]
                    if v != 0:
                        ai[j] = (ai[j] - f * v) % pp
                        if ai[j] < 0:
                            ai[j] += pp
        pivots.append(c)
        r += 1
        if r == m:
            break
    return [list(ar) for ar in a], pivots
