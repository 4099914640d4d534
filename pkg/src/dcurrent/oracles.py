"""Slow reference computations used to cross-check repmod.

``radical_by_raising_words`` finds the radical of a highest weight module
without the fixed-point iteration.  Since U = U^- U^0 U^+, a weight vector w
generates a submodule missing v0 exactly when every word in the X+
generators carrying w to the top weight kills it.  The words are enumerated
one by one, weight space by weight space.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .repmod import WeightModule, _top_index, closure, simple_root

F0, F1 = Fraction(0), Fraction(1)


def _root_decomposition(spec, diff):
    """Nonnegative integer coefficients of diff in the simple roots, or None."""
    m = spec.m
    roots = [simple_root(spec, i) for i in range(1, m)]
    # solve sum c_i alpha_i = diff
    A = linalg.transpose([list(r) for r in roots])
    sol = linalg.solve(A, list(diff))
    if sol is None or any(c.denominator != 1 or c < 0 for c in sol):
        return None
    return [int(c) for c in sol]


def raising_words(M: WeightModule, counts):
    """All X+ words (tuples of tags) using simple root i exactly counts[i-1] times."""
    letters = []
    for i, c in enumerate(counts, 1):
        letters.extend([i] * c)
    seen = set()
    for order in itertools.permutations(letters):
        if order in seen:
            continue
        seen.add(order)
        for degs in itertools.product(range(M.T + 1), repeat=len(order)):
            yield tuple(("X+", i, t) for i, t in zip(order, degs))


def radical_by_raising_words(M: WeightModule, v0=None):
    """RREF rows of the radical, from exhaustive raising words."""
    top = _top_index(M, v0)
    lam = M.weights[top]
    rows = []
    for w, idx in M.weight_table().items():
        if w == lam:
            continue
        counts = _root_decomposition(M.spec, tuple(a - b for a, b in zip(lam, w)))
        if counts is None:
            # nothing raises this weight to the top, so all of it lies in the radical
            funcs = []
        else:
            funcs = []
            for word in raising_words(M, counts):
                # top coordinate of word . e_k for every k in this weight space
                phi = [F0] * M.dim
                phi[top] = F1
                for tag in word:
                    phi = linalg.vecmat(phi, M.gens[tag])
                    if not any(phi):
                        break
                else:
                    funcs.append([phi[k] for k in idx])
        funcs = [f for f in funcs if any(f)]
        ker = linalg.nullspace(funcs, len(idx)) if funcs else linalg.identity(len(idx))
        for v in ker:
            full = [F0] * M.dim
            for k, x in zip(idx, v):
                full[k] = x
            rows.append(full)
    return linalg.rref(rows, M.dim)[0] if rows else []


def is_invariant(M: WeightModule, rows):
    if not rows:
        return True
    span = closure(M, rows, M.tags())
    return span.dim == len(rows)


def common_eigenspaces(M: WeightModule):
    """Maximal subspaces on which every generator acts by a scalar.

    Any 1-dimensional submodule lies in one of them; when all of them are
    lines, these are exactly the 1-dimensional submodules.
    """
    from .scalars import MonicPolynomial, NotFullyFactorable, rational_roots

    spaces = [linalg.identity(M.dim)]
    for tag in M.tags():
        a = M.gens[tag]
        nxt = []
        for S in spaces:
            # eigenvalues of a can be read off from a on S only if S is stable,
            # so use the eigenvalues of a itself
            cp = linalg.char_poly(a)
            try:
                lams = rational_roots(MonicPolynomial(tuple(cp[:-1])))
            except NotFullyFactorable as exc:
                lams = list(exc.roots)
            for lam in sorted(set(lams)):
                shifted = [[a[r][c] - (lam if r == c else 0) for c in range(M.dim)] for r in range(M.dim)]
                # S cap ker(a - lam): solve shifted * (sum_k x_k S_k) = 0
                cols = [linalg.matvec(shifted, s) for s in S]
                ns = linalg.nullspace(linalg.transpose(cols), len(S)) if cols else []
                vecs = [[sum((x * S[k][n] for k, x in enumerate(v) if x), F0) for n in range(M.dim)] for v in ns]
                if vecs:
                    nxt.append(linalg.rref(vecs, M.dim)[0])
        spaces = nxt
    return spaces
