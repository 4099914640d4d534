"""Pure-Python hot kernels.  ``_ckernels.pyx`` implements the same functions."""
from fractions import Fraction


def mul_terms(terms, rule):
    """Right-multiply a flat term dict by one generator.

    ``terms`` maps (monomial, q_power) -> int and ``rule(monomial)`` returns
    the normal form of monomial*generator as (monomial, q_shift, int) triples.
    """
    out = {}
    get = out.get
    for key, c in terms.items():
        mono, qp = key
        for mono2, dq, k in rule(mono):
            nk = (mono2, qp + dq)
            out[nk] = get(nk, 0) + c * k
    return {k: v for k, v in out.items() if v}


def add_scaled(out, terms, factor, qshift):
    """out += factor * Q^qshift * terms (in place, zeros dropped)."""
    for (mono, qp), c in terms.items():
        nk = (mono, qp + qshift)
        v = out.get(nk, 0) + c * factor
        if v:
            out[nk] = v
        else:
            out.pop(nk, None)
    return out


def rref(rows, ncols):
    """Reduced row echelon form of a list of Fraction rows.

    Returns (nonzero rows, pivot columns).
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / Fraction(m[r][c])
        row = [x * inv for x in m[r]]
        m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [a - f * b for a, b in zip(mi, row)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * ncols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(ncols):
                    y = bk[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out
