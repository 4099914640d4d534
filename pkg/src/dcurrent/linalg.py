"""Dense exact linear algebra over Q (lists of Fraction rows)."""
from __future__ import annotations

from fractions import Fraction

from . import kernels

F0, F1 = Fraction(0), Fraction(1)


def zeros(r, c):
    return [[F0] * c for _ in range(r)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = F1
    return out


def matmul(a, b):
    return kernels.matmul(a, b)


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), F0) for row in a]


def vecmat(v, a):
    """Row vector times matrix."""
    n = len(a[0]) if a else 0
    out = [F0] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def add(a, b, cb=1):
    return [[x + cb * y for x, y in zip(r, s)] for r, s in zip(a, b)]


def scale(a, c):
    return [[x * c for x in r] for r in a]


def commutator(a, b):
    return add(matmul(a, b), matmul(b, a), -1)


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def is_zero(a):
    return all(not x for r in a for x in r)


def kron(a, b):
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                for l in range(cb):
                    y = b[k][l]
                    if y:
                        out[i * rb + k][j * cb + l] = x * y
    return out


def rref(rows, ncols=None):
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [], []
    return kernels.rref(rows, ncols)


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def row_basis(rows, ncols):
    """RREF basis of the row span."""
    return rref(rows, ncols)[0]


def nullspace(a, ncols=None):
    """Basis of {x : a x = 0} (column vectors as lists)."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    red, piv = rref(a, ncols) if a else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [F0] * ncols
        v[f] = F1
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(r) + [y] for r, y in zip(a, b)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [F0] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def in_span(basis_rows, v, ncols):
    return rank(list(basis_rows) + [v], ncols) == rank(list(basis_rows), ncols) if basis_rows else not any(v)


def coordinates(rref_rows, pivots, v):
    """Coordinates of v in an RREF row basis, or None if v is outside the span."""
    coords = [v[p] for p in pivots]
    recon = [F0] * len(v)
    for c, row in zip(coords, rref_rows):
        if c:
            for j, x in enumerate(row):
                if x:
                    recon[j] += c * x
    return coords if recon == list(v) else None


def interpolate(xs, ys):
    """Coefficients (low to high) of the polynomial of degree < len(xs) through the points."""
    n = len(xs)
    # Newton divided differences, then expand
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [F0] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [F0] * n
        for k in range(n - 1):
            nxt[k + 1] += poly[k]
        for k in range(n):
            nxt[k] -= xs[i] * poly[k]
        nxt[0] += coef[i]
        poly = nxt
    while poly and not poly[-1]:
        poly.pop()
    return poly


def poly_eval(coeffs, x):
    acc = F0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def char_poly(a):
    """Characteristic polynomial det(xI - a), coefficients low to high (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [F0] * (n + 1)
    coeffs[n] = F1
    m = zeros(n, n)
    for k in range(1, n + 1):
        m = matmul(a, m)
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = matmul(a, m)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), F0) / k
    return coeffs
