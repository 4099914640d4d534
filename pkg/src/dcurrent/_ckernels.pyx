# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``.

``rref`` here clears denominators and eliminates over Python integers
(fraction-free, with row content removal), converting back to Fractions only
at the end.  Results are identical to the pure version since RREF is unique.
"""
from fractions import Fraction
from math import gcd, lcm


def mul_terms(dict terms, rule):
    cdef dict out = {}
    cdef tuple key, entry
    cdef object mono, qp, c, v
    for key, c in terms.items():
        mono = key[0]
        qp = key[1]
        for entry in rule(mono):
            nk = (entry[0], qp + entry[1])
            v = out.get(nk)
            if v is None:
                out[nk] = c * entry[2]
            else:
                out[nk] = v + c * entry[2]
    return {k: v for k, v in out.items() if v}


def add_scaled(dict out, dict terms, factor, qshift):
    cdef tuple key
    for key, c in terms.items():
        nk = (key[0], key[1] + qshift)
        v = out.get(nk, 0) + c * factor
        if v:
            out[nk] = v
        else:
            out.pop(nk, None)
    return out


cdef list _int_row(row):
    cdef object den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    out = [int(Fraction(x) * den) for x in row]
    g = 0
    for x in out:
        g = gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return out


def rref(rows, Py_ssize_t ncols):
    cdef list m = [_int_row(row_in) for row_in in rows]
    cdef list pivots = []
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list row, mi
    for c in range(ncols):
        p = -1
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p < 0:
            continue
        m[r], m[p] = m[p], m[r]
        row = m[r]
        pv = row[c]
        for i in range(nrows):
            if i == r:
                continue
            mi = m[i]
            f = mi[c]
            if not f:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            new = [a * mi[j] - b * row[j] for j in range(ncols)]
            g = 0
            for x in new:
                g = gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                new = [x // g for x in new]
            m[i] = new
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = []
    for i in range(r):
        row = m[i]
        pv = row[pivots[i]]
        out.append([Fraction(x, pv) for x in row])
    return out, pivots


def matmul(a, b):
    if not a:
        return []
    cdef Py_ssize_t inner = len(b)
    cdef Py_ssize_t ncols = len(b[0]) if b else 0
    cdef Py_ssize_t k, j
    cdef list out = [], acc, bk
    for row in a:
        acc = [Fraction(0)] * ncols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(ncols):
                    y = bk[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out
