"""Finite-dimensional modules over sl_m^<Q>[x] and gl_m^<Q>[x].

A module is a set of exact matrices, one per generator X+_{i,t}, X-_{i,t}
and J_{i,t} (sl) or I_{j,t} (gl) with t <= T, acting on column vectors.  The
basis always consists of weight vectors, so the weight grading is a list with
one weight per basis vector.

Building blocks are exterior powers of the natural gl_m module pulled back
along an evaluation map, and the 1-dimensional modules.  Tensor products,
cyclic submodules and the radical of a highest weight module give everything
else.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .liealg import AlgebraSpec, RelationReport, cartan, eval_side, relation_instances
from .pbw import JAY, XMINUS, XPLUS, UEAElement, default_engine
from .scalars import (
    MonicPolynomial,
    NotFullyFactorable,
    as_rational,
    format_rational,
    parse_rational,
    rational_roots,
)

F0, F1 = Fraction(0), Fraction(1)


class RecipeError(ValueError):
    """A recipe or building block violates its parameter constraints."""


class ClosureError(RuntimeError):
    """A cyclic closure is not stable under the next generator degree."""


class PreconditionError(ValueError):
    pass


class NoHighestVector(LookupError):
    pass


# ---------------------------------------------------------------------------
# classical gl_m modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassicalModule:
    """A gl_m module given by e_i, f_i (1 <= i < m) and K_j (1 <= j <= m)."""

    m: int
    e: tuple
    f: tuple
    K: tuple
    weights: tuple  # epsilon coordinates per basis vector
    labels: tuple = ()

    @property
    def dim(self):
        return len(self.weights)


def _wedge_action(subsets, pos, a, b):
    # matrix of E_{ab} on the exterior power with basis ``subsets``
    n = len(subsets)
    out = linalg.zeros(n, n)
    for col, S in enumerate(subsets):
        if b not in S or (a != b and a in S):
            continue
        new = [a if x == b else x for x in S]
        # sign of the sorting permutation
        inv = sum(1 for x, y in itertools.combinations(new, 2) if x > y)
        out[pos[tuple(sorted(new))]][col] = F1 if inv % 2 == 0 else -F1
    return out


def fundamental_module(m, l):
    """L(omega_l) as the l-th exterior power of the natural gl_m module.

    Basis: l-subsets of {1..m} in lexicographic order, so the first basis
    vector e_1 ^ ... ^ e_l is the highest weight vector.
    """
    if not 1 <= l <= m - 1:
        raise RecipeError(f"fundamental weight index {l} outside 1..{m - 1}")
    subsets = list(itertools.combinations(range(1, m + 1), l))
    pos = {S: k for k, S in enumerate(subsets)}
    e = tuple(_wedge_action(subsets, pos, i, i + 1) for i in range(1, m))
    f = tuple(_wedge_action(subsets, pos, i + 1, i) for i in range(1, m))
    K = tuple(_wedge_action(subsets, pos, j, j) for j in range(1, m + 1))
    weights = tuple(tuple(F1 if j in S else F0 for j in range(1, m + 1)) for S in subsets)
    return ClassicalModule(m, e, f, K, weights, tuple(subsets))


# ---------------------------------------------------------------------------
# WeightModule
# ---------------------------------------------------------------------------

def cartan_name(spec):
    return "J" if spec.variant == "sl" else "I"


def cartan_indices(spec):
    return range(1, spec.m) if spec.variant == "sl" else range(1, spec.m + 1)


def generator_tags(spec, T):
    tags = []
    for t in range(T + 1):
        for i in range(1, spec.m):
            tags.append(("X+", i, t))
            tags.append(("X-", i, t))
        for j in cartan_indices(spec):
            tags.append((cartan_name(spec), j, t))
    return tags


def simple_root(spec, i):
    """alpha_i in the coordinates used for weights."""
    if spec.variant == "sl":
        return tuple(Fraction(cartan(j, i)) for j in range(1, spec.m))
    return tuple(F1 if j == i else (-F1 if j == i + 1 else F0) for j in range(1, spec.m + 1))


def height(spec, w):
    # a linear functional taking the value 1 on every simple root
    m = spec.m
    if spec.variant == "sl":
        return sum((x * Fraction(j * (m - j), 2) for j, x in enumerate(w, 1)), F0)
    return sum((x * (m - j) for j, x in enumerate(w, 1)), F0)


def grade_key(spec, w):
    return (-height(spec, w), tuple(-x for x in w))


@dataclass
class WeightModule:
    spec: AlgebraSpec
    T: int
    gens: dict               # tag -> dense matrix
    weights: list            # one weight tuple per basis vector
    v0: list | None = None   # highest weight vector, if known
    ev_factors: int = 0      # number of evaluation factors it was built from
    info: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.weights)

    def mat(self, tag):
        """Matrix of a generator tag; in gl, J_{i,t} is I_{i,t} - I_{i+1,t}."""
        if tag[0] == "J" and self.spec.variant == "gl":
            return linalg.add(self.gens[("I", tag[1], tag[2])], self.gens[("I", tag[1] + 1, tag[2])], -1)
        return self.gens[tag]

    def tags(self, tmax=None):
        return generator_tags(self.spec, self.T if tmax is None else tmax)

    def weight_table(self):
        table = {}
        for k, w in enumerate(self.weights):
            table.setdefault(w, []).append(k)
        return dict(sorted(table.items(), key=lambda kv: grade_key(self.spec, kv[0])))

    def to_json(self):
        fr = format_rational
        return {
            "spec": self.spec.to_json(),
            "T": self.T,
            "dimension": self.dim,
            "generators": [
                {"tag": list(tag), "matrix": [[fr(x) for x in row] for row in self.gens[tag]]}
                for tag in self.tags()
            ],
            "weights": [[fr(x) for x in w] for w in self.weights],
            "weight_table": [
                {"weight": [fr(x) for x in w], "multiplicity": len(idx), "basis": idx}
                for w, idx in self.weight_table().items()
            ],
            "highest_vector": None if self.v0 is None else [fr(x) for x in self.v0],
            "ev_factors": self.ev_factors,
            "info": dict(sorted(self.info.items())),
        }

    @classmethod
    def from_json(cls, d):
        pr = parse_rational
        gens = {
            tuple(g["tag"]): [[pr(x) for x in row] for row in g["matrix"]] for g in d["generators"]
        }
        v0 = d.get("highest_vector")
        return cls(
            AlgebraSpec.from_json(d["spec"]),
            d["T"],
            gens,
            [tuple(pr(x) for x in w) for w in d["weights"]],
            None if v0 is None else [pr(x) for x in v0],
            d.get("ev_factors", 0),
            dict(d.get("info", {})),
        )


def _check_spec_T(spec, T):
    if T < 0:
        raise RecipeError("degree bound T must be nonnegative")


def evaluation_twist(cm: ClassicalModule, gamma, spec: AlgebraSpec, T):
    """Pull a classical module back along ev_gamma.

    X+_{i,t} -> (1 - Q_i gamma) gamma^t e_i, X-_{i,t} -> gamma^t f_i,
    I_{j,t} -> gamma^t K_j and J_{i,t} -> gamma^t (K_i - K_{i+1}).
    """
    _check_spec_T(spec, T)
    if cm.m != spec.m:
        raise RecipeError(f"module is for gl_{cm.m}, algebra is rank {spec.m}")
    g = as_rational(gamma)
    gens = {}
    for t in range(T + 1):
        gt = g ** t
        for i in range(1, spec.m):
            gens[("X+", i, t)] = linalg.scale(cm.e[i - 1], (1 - spec.q(i) * g) * gt)
            gens[("X-", i, t)] = linalg.scale(cm.f[i - 1], gt)
        if spec.variant == "sl":
            for i in range(1, spec.m):
                gens[("J", i, t)] = linalg.scale(linalg.add(cm.K[i - 1], cm.K[i], -1), gt)
        else:
            for j in range(1, spec.m + 1):
                gens[("I", j, t)] = linalg.scale(cm.K[j - 1], gt)
    if spec.variant == "sl":
        weights = [tuple(w[i] - w[i + 1] for i in range(spec.m - 1)) for w in cm.weights]
    else:
        weights = [tuple(w) for w in cm.weights]
    v0 = [F1] + [F0] * (cm.dim - 1)
    return WeightModule(spec, T, gens, weights, v0, 1)


def _one_dim(spec, T, cartan_values):
    # cartan_values(j, t) -> scalar
    gens = {}
    for t in range(T + 1):
        for i in range(1, spec.m):
            gens[("X+", i, t)] = [[F0]]
            gens[("X-", i, t)] = [[F0]]
        for j in cartan_indices(spec):
            gens[(cartan_name(spec), j, t)] = [[as_rational(cartan_values(j, t))]]
    weight = tuple(gens[(cartan_name(spec), j, 0)][0][0] for j in cartan_indices(spec))
    return WeightModule(spec, T, gens, [weight], [F1], 0)


def _check_beta(spec, beta):
    beta = tuple(as_rational(b) for b in beta)
    if len(beta) != spec.m - 1:
        raise RecipeError(f"need {spec.m - 1} beta entries, got {len(beta)}")
    for i, b in enumerate(beta, 1):
        if b and not spec.q(i):
            raise RecipeError(f"beta_{i} = {b} but Q_{i} = 0 forces beta_{i} = 0")
    return beta


def _beta_value(spec, beta, i, t):
    q = spec.q(i)
    return beta[i - 1] / q ** t if q else F0


def one_dim_sl(spec: AlgebraSpec, beta, T):
    """L^beta: X acts by 0, J_{i,t} by Q_i^{-t} beta_i."""
    if spec.variant != "sl":
        raise RecipeError("one_dim_sl needs an sl algebra")
    _check_spec_T(spec, T)
    beta = _check_beta(spec, beta)
    return _one_dim(spec, T, lambda i, t: _beta_value(spec, beta, i, t))


def one_dim_gl_b(spec: AlgebraSpec, beta, T):
    """The gl lift of L^beta with I_{m,t} = 0."""
    if spec.variant != "gl":
        raise RecipeError("one_dim_gl_b needs a gl algebra")
    _check_spec_T(spec, T)
    beta = _check_beta(spec, beta)
    return _one_dim(
        spec, T, lambda j, t: sum((_beta_value(spec, beta, k, t) for k in range(j, spec.m)), F0)
    )


def one_dim_gl_h(spec: AlgebraSpec, h, T):
    """Every I_{j,t} acts by h_t; trivial on the sl part."""
    if spec.variant != "gl":
        raise RecipeError("one_dim_gl_h needs a gl algebra")
    _check_spec_T(spec, T)
    h = [as_rational(x) for x in h]
    if len(h) < T + 1:
        raise RecipeError(f"h prefix of length {len(h)} cannot cover degrees up to {T}")
    return _one_dim(spec, T, lambda j, t: h[t])


def regrade(M: WeightModule) -> WeightModule:
    """Reorder the basis by weight (highest first), stable within a weight."""
    order = sorted(range(M.dim), key=lambda k: (grade_key(M.spec, M.weights[k]), k))
    if order == list(range(M.dim)):
        return M
    gens = {tag: [[a[r][c] for c in order] for r in order] for tag, a in M.gens.items()}
    v0 = None if M.v0 is None else [M.v0[k] for k in order]
    return WeightModule(M.spec, M.T, gens, [M.weights[k] for k in order], v0, M.ev_factors, dict(M.info))


def tensor(A: WeightModule, B: WeightModule) -> WeightModule:
    """x.(v (x) w) = xv (x) w + v (x) xw."""
    if A.spec != B.spec:
        raise RecipeError("tensor factors live over different algebras")
    if A.T != B.T:
        raise RecipeError(f"tensor factors have different degree bounds {A.T} and {B.T}")
    ia, ib = linalg.identity(A.dim), linalg.identity(B.dim)
    gens = {
        tag: linalg.add(linalg.kron(A.gens[tag], ib), linalg.kron(ia, B.gens[tag])) for tag in A.gens
    }
    weights = [tuple(x + y for x, y in zip(wa, wb)) for wa in A.weights for wb in B.weights]
    v0 = None
    if A.v0 is not None and B.v0 is not None:
        v0 = [x * y for x in A.v0 for y in B.v0]
    return WeightModule(A.spec, A.T, gens, weights, v0, A.ev_factors + B.ev_factors)


def tensor_all(mods):
    out = mods[0]
    for M in mods[1:]:
        out = tensor(out, M)
    return regrade(out)


# ---------------------------------------------------------------------------
# subspaces, submodules, quotients
# ---------------------------------------------------------------------------

def weight_of_vector(M: WeightModule, v):
    ws = {M.weights[k] for k, x in enumerate(v) if x}
    if len(ws) != 1:
        raise PreconditionError("vector is zero or not a weight vector")
    return ws.pop()


class _GradedSpan:
    """A subspace kept as one RREF basis per weight."""

    def __init__(self, M):
        self.M = M
        self.rows = {}

    def add(self, v):
        """Add v (a weight vector); True if the span grew."""
        if not any(v):
            return False
        w = weight_of_vector(self.M, v)
        cur = self.rows.get(w, [])
        red, piv = linalg.rref(cur + [list(v)], self.M.dim)
        if len(piv) == len(cur):
            return False
        self.rows[w] = red
        return True

    def contains(self, v):
        if not any(v):
            return True
        w = weight_of_vector(self.M, v)
        cur = self.rows.get(w, [])
        return bool(cur) and linalg.rank(cur + [list(v)], self.M.dim) == len(cur)

    def basis(self):
        out = []
        for w in sorted(self.rows, key=lambda w: grade_key(self.M.spec, w)):
            out.extend(self.rows[w])
        return out

    @property
    def dim(self):
        return sum(len(r) for r in self.rows.values())


def closure(M: WeightModule, vectors, tags):
    """Smallest subspace containing the weight vectors and stable under ``tags``."""
    span = _GradedSpan(M)
    queue = []
    for v in vectors:
        if span.add(v):
            queue.append(list(v))
    mats = [M.mat(tag) for tag in tags]
    while queue:
        v = queue.pop(0)
        for a in mats:
            w = linalg.matvec(a, v)
            if span.add(w):
                queue.append(w)
    return span


def _split(M: WeightModule, sub_rows):
    """Complete ``sub_rows`` (graded) by coordinate vectors and return the change of basis.

    Returns (P rows, weights, inverse of P^T, s) where the first s rows span the subspace.
    """
    by_w = {}
    for r in sub_rows:
        by_w.setdefault(weight_of_vector(M, r), []).append(r)
    s_rows, s_w = [], []
    for w in M.weight_table():
        rows = by_w.get(w, [])
        red = linalg.rref(rows, M.dim)[0] if rows else []
        s_rows.extend(red)
        s_w.extend([w] * len(red))
    c_rows, c_w = [], []
    for w, idx in M.weight_table().items():
        rows = by_w.get(w, [])
        piv = set(linalg.rref(rows, M.dim)[1]) if rows else set()
        for k in idx:
            if k not in piv:
                e = [F0] * M.dim
                e[k] = F1
                c_rows.append(e)
                c_w.append(w)
    P = s_rows + c_rows
    weights = s_w + c_w
    A = linalg.transpose(P)
    n = M.dim
    aug = [list(A[r]) + [F1 if c == r else F0 for c in range(n)] for r in range(n)]
    red, piv = linalg.rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise PreconditionError("subspace completion is not a basis")
    Ainv = [row[n:] for row in red]
    return P, weights, A, Ainv, len(s_rows)


def _coords(Ainv, v):
    return linalg.matvec(Ainv, v)


def subquotient(M: WeightModule, sub_rows, check=True):
    """(submodule, quotient) for an invariant subspace spanned by weight vectors."""
    P, weights, A, Ainv, s = _split(M, sub_rows)
    n = M.dim
    sub_g, quo_g = {}, {}
    for tag, g in M.gens.items():
        C = linalg.matmul(Ainv, linalg.matmul(g, A))
        if check and any(C[r][c] for r in range(s, n) for c in range(s)):
            raise PreconditionError(f"subspace is not stable under {tag}")
        sub_g[tag] = [row[:s] for row in C[:s]]
        quo_g[tag] = [row[s:] for row in C[s:]]
    sub = WeightModule(M.spec, M.T, sub_g, weights[:s], None, M.ev_factors)
    quo = WeightModule(M.spec, M.T, quo_g, weights[s:], None, M.ev_factors)
    if M.v0 is not None:
        c = _coords(Ainv, M.v0)
        if not any(c[s:]):
            sub.v0 = c[:s]
        else:
            quo.v0 = c[s:]
    return sub, quo


def closure_bound(M: WeightModule):
    # On a product of K evaluation factors X_{i,t} acts by sum_k c_k gamma_k^t X^(k),
    # and the sequences gamma_k^t with t >= K are combinations of t < K (Vandermonde).
    # The 1-dimensional factors only add scalars to the Cartan part.
    return max(M.ev_factors, 1)


def cyclic_submodule(M: WeightModule, v):
    """U.v, computed with generators of degree < K and checked at degree K."""
    K = closure_bound(M)
    if K > M.T:
        raise PreconditionError(f"module truncated at T={M.T} but closure needs degree {K}")
    span = closure(M, [list(v)], M.tags(K - 1))
    rows = span.basis()
    for tag in generator_tags(M.spec, K):
        if tag[-1] < K:
            continue
        a = M.mat(tag)
        for r in rows:
            if not span.contains(linalg.matvec(a, r)):
                raise ClosureError(f"closure not stable under {tag}")
    src = WeightModule(M.spec, M.T, M.gens, M.weights, list(v), M.ev_factors)
    sub, _ = subquotient(src, rows)
    return sub


def _top_index(M: WeightModule, v0=None):
    v0 = M.v0 if v0 is None else v0
    if v0 is None:
        raise PreconditionError("module has no distinguished highest vector")
    w = weight_of_vector(M, v0)
    idx = M.weight_table()[w]
    if len(idx) != 1:
        raise PreconditionError(f"weight space of v0 has dimension {len(idx)}, expected 1")
    return idx[0]


def maximal_submodule(M: WeightModule, v0=None):
    """The largest invariant subspace avoiding v0 (rows of an RREF basis).

    Iterates K_{i+1} = K_i cap (g^{-1} K_i) from K_0 = ker(v0^*) by
    tracking annihilators: ann K_{i+1} = ann K_i + sum_g ann(K_i) g.
    """
    top = _top_index(M, v0)
    phi = [F0] * M.dim
    phi[top] = F1
    mats = [M.gens[tag] for tag in M.tags()]
    red, piv = linalg.rref([phi], M.dim)
    frontier = [phi]
    while frontier:
        nxt = []
        for f in frontier:
            for a in mats:
                g = linalg.vecmat(f, a)
                if not any(g):
                    continue
                cand, cpiv = linalg.rref(red + [g], M.dim)
                if len(cpiv) > len(piv):
                    red, piv = cand, cpiv
                    nxt.append(g)
        frontier = nxt
    null = linalg.nullspace(red, M.dim)
    return linalg.rref(null, M.dim)[0] if null else []


def radical_split(M: WeightModule):
    """(radical submodule, simple quotient) of a highest weight module."""
    rad = maximal_submodule(M)
    return subquotient(M, rad)


def is_simple(M: WeightModule):
    return not maximal_submodule(M)


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleRecipe:
    """Ordered tensor factors.

    Each factor is ("fundamental", l, gamma), ("one_dim_sl", beta),
    ("one_dim_gl_b", beta) or ("one_dim_gl_h", h).
    """

    spec: AlgebraSpec
    factors: tuple

    def ev_count(self):
        return sum(1 for f in self.factors if f[0] == "fundamental")

    def default_T(self):
        # one degree per tensor factor, capped by a finite h prefix
        T = max(len(self.factors), 1)
        for f in self.factors:
            if f[0] == "one_dim_gl_h":
                T = min(T, len(f[1]) - 1)
        return T

    def to_json(self):
        fr = format_rational
        out = []
        for f in self.factors:
            if f[0] == "fundamental":
                out.append({"kind": f[0], "l": f[1], "gamma": fr(f[2])})
            else:
                out.append({"kind": f[0], "values": [fr(x) for x in f[1]]})
        return {"spec": self.spec.to_json(), "factors": out}

    @classmethod
    def from_json(cls, d):
        factors = []
        for f in d["factors"]:
            if f["kind"] == "fundamental":
                factors.append(("fundamental", int(f["l"]), parse_rational(f["gamma"])))
            else:
                factors.append((f["kind"], tuple(parse_rational(x) for x in f["values"])))
        return cls(AlgebraSpec.from_json(d["spec"]), tuple(factors))


def validate_recipe(r: ModuleRecipe):
    spec = r.spec
    for f in r.factors:
        kind = f[0]
        if kind == "fundamental":
            if not 1 <= f[1] <= spec.m - 1:
                raise RecipeError(f"fundamental index {f[1]} outside 1..{spec.m - 1}")
            as_rational(f[2])
        elif kind == "one_dim_sl":
            if spec.variant != "sl":
                raise RecipeError("one_dim_sl factor in a gl recipe")
            _check_beta(spec, f[1])
        elif kind == "one_dim_gl_b":
            if spec.variant != "gl":
                raise RecipeError("one_dim_gl_b factor in an sl recipe")
            _check_beta(spec, f[1])
        elif kind == "one_dim_gl_h":
            if spec.variant != "gl":
                raise RecipeError("one_dim_gl_h factor in an sl recipe")
            if not f[1]:
                raise RecipeError("empty h prefix")
        else:
            raise RecipeError(f"unknown factor kind {kind!r}")


def build_factor(spec, f, T):
    kind = f[0]
    if kind == "fundamental":
        return evaluation_twist(fundamental_module(spec.m, f[1]), f[2], spec, T)
    if kind == "one_dim_sl":
        return one_dim_sl(spec, f[1], T)
    if kind == "one_dim_gl_b":
        return one_dim_gl_b(spec, f[1], T)
    return one_dim_gl_h(spec, f[1], T)


def ambient_module(r: ModuleRecipe, T=None):
    validate_recipe(r)
    T = r.default_T() if T is None else T
    if T < r.ev_count():
        raise RecipeError(f"degree bound {T} below the {r.ev_count()} evaluation factors")
    mods = [build_factor(r.spec, f, T) for f in r.factors]
    if not mods:
        mods = [_one_dim(r.spec, T, lambda j, t: F0)]
    return tensor_all(mods)


@dataclass
class BuildStages:
    ambient: WeightModule
    cyclic: WeightModule
    radical: list   # RREF rows inside the cyclic module
    simple: WeightModule


def build_stages(r: ModuleRecipe, T=None) -> BuildStages:
    """Tensor the factors, cut down to U.v and divide out the radical."""
    N = ambient_module(r, T)
    cyc = cyclic_submodule(N, N.v0)
    rad = maximal_submodule(cyc)
    _, simple = subquotient(cyc, rad)
    simple.info = {"ambient_dim": N.dim, "cyclic_dim": cyc.dim, "radical_dim": len(rad)}
    return BuildStages(N, cyc, rad, simple)


def simple_from_recipe(r: ModuleRecipe, T=None):
    return build_stages(r, T).simple


# ---------------------------------------------------------------------------
# highest weights
# ---------------------------------------------------------------------------

def _eigen_rows(a_rows, ncols, a):
    """Split span(a_rows) into eigenspaces of ``a`` with rational eigenvalue."""
    red, piv = linalg.rref(a_rows, ncols)
    k = len(red)
    cols = []
    for r in red:
        c = linalg.coordinates(red, piv, linalg.matvec(a, r))
        if c is None:
            raise PreconditionError("subspace is not stable under a Cartan generator")
        cols.append(c)
    B = linalg.transpose(cols)  # B[i][j]: coefficient of basis i in a(basis j)
    cp = linalg.char_poly(B)
    poly = MonicPolynomial(tuple(cp[:-1]))
    try:
        roots = rational_roots(poly)
    except NotFullyFactorable as exc:
        roots = list(exc.roots)
    out = []
    for lam in sorted(set(roots)):
        shifted = [[B[i][j] - (lam if i == j else 0) for j in range(k)] for i in range(k)]
        ns = linalg.nullspace(shifted, k)
        vecs = [[sum((c * red[i][n] for i, c in enumerate(v) if c), F0) for n in range(ncols)] for v in ns]
        if vecs:
            out.append((lam, vecs))
    return out


def highest_weight_of(M: WeightModule):
    """(u, v): v is killed by every X+ and a common eigenvector of the Cartan part.

    u maps (i, t) to the eigenvalue of J_{i,t} (sl) or I_{i,t} (gl).
    Weights are scanned from the top, so on a highest weight module v spans
    the top weight space.
    """
    plus = [M.gens[tag] for tag in M.tags() if tag[0] == "X+"]
    ctags = [tag for tag in M.tags() if tag[0] == cartan_name(M.spec)]
    for w, idx in M.weight_table().items():
        # X+ kernel inside this weight space
        sub = [[a[r][c] for c in idx] for a in plus for r in range(M.dim)]
        ker = linalg.nullspace(sub, len(idx)) if sub else linalg.identity(len(idx))
        if not ker:
            continue
        rows = []
        for v in ker:
            full = [F0] * M.dim
            for c, x in zip(idx, v):
                full[c] = x
            rows.append(full)
        for tag in ctags:
            split = _eigen_rows(rows, M.dim, M.gens[tag])
            if not split:
                rows = []
                break
            rows = split[0][1]
        if not rows:
            continue
        v = rows[0]
        u = {}
        k = next(n for n, x in enumerate(v) if x)
        for tag in ctags:
            img = linalg.matvec(M.gens[tag], v)
            u[(tag[1], tag[2])] = img[k] / v[k]
        return u, v
    raise NoHighestVector("no common X+ kernel vector with rational Cartan eigenvalues")


def lowering_depth(M: WeightModule, v, i=1):
    """Largest n with (X-_{i,0})^n v != 0."""
    a = M.gens[("X-", i, 0)]
    n, cur = 0, list(v)
    while True:
        cur = linalg.matvec(a, cur)
        if not any(cur):
            return n
        n += 1
        if n > M.dim:
            raise PreconditionError("X-_0 is not nilpotent on v")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_module_relations(M: WeightModule, T=None) -> RelationReport:
    """Every defining relation with generator degrees <= T as a matrix identity."""
    T = M.T if T is None else T
    rep = RelationReport()
    zero = linalg.zeros(M.dim, M.dim)
    for rel in relation_instances(M.spec.m, M.spec.variant, M.spec.Q, T):
        side = lambda s: eval_side(s, M.mat, linalg.commutator, zero, linalg.add, linalg.scale)
        rep.record(rel.family, rel.label, side(rel.lhs) == side(rel.rhs))
    return rep


def check_weight_grading(M: WeightModule):
    """Labels of generators violating the weight grading (empty when fine)."""
    bad = []
    cn = cartan_name(M.spec)
    for tag, a in M.gens.items():
        if tag[0] == cn:
            shift = None
        else:
            alpha = simple_root(M.spec, tag[1])
            shift = alpha if tag[0] == "X+" else tuple(-x for x in alpha)
        for r in range(M.dim):
            for c in range(M.dim):
                if not a[r][c]:
                    continue
                if shift is None:
                    ok = M.weights[r] == M.weights[c]
                    if ok and tag[2] == 0:
                        ok = r == c and a[r][c] == M.weights[c][tag[1] - 1]
                else:
                    ok = M.weights[r] == tuple(x + y for x, y in zip(M.weights[c], shift))
                if not ok:
                    bad.append(tag)
                    break
            else:
                continue
            break
    return bad


def restrict_to_sl(M: WeightModule) -> WeightModule:
    """Restriction along Upsilon: J_{i,t} acts as I_{i,t} - I_{i+1,t}."""
    if M.spec.variant != "gl":
        raise PreconditionError("restriction starts from a gl module")
    spec = M.spec.with_variant("sl")
    gens = {}
    for tag in generator_tags(spec, M.T):
        gens[tag] = M.mat(tag)
    weights = [tuple(w[i] - w[i + 1] for i in range(spec.m - 1)) for w in M.weights]
    out = WeightModule(spec, M.T, gens, weights, None if M.v0 is None else list(M.v0), M.ev_factors)
    return regrade(out)


_KIND_TAG = {XMINUS: "X-", JAY: "J", XPLUS: "X+"}


def act(e: UEAElement, M: WeightModule, v):
    """Apply a rank-1 PBW element to v (Q is taken from the module's algebra)."""
    if M.spec.m != 2:
        raise PreconditionError("PBW elements act on rank-1 modules")
    Q = M.spec.q(1)
    out = [F0] * M.dim
    for (mono, qp), c in e.terms.items():
        coeff = Fraction(c, e.den) * (Q ** qp if qp else F1)
        if not coeff:
            continue
        cur = list(v)
        word = [(XMINUS, t) for t in mono[0]] + [(JAY, t) for t in mono[1]] + [(XPLUS, t) for t in mono[2]]
        for kind, t in reversed(word):
            tag = (_KIND_TAG[kind], 1, t)
            if tag not in M.gens:
                raise PreconditionError(f"module truncated below degree {t}")
            cur = linalg.matvec(M.gens[tag], cur)
            if not any(cur):
                break
        else:
            out = [x + coeff * y for x, y in zip(out, cur)]
    return out


def _j1(x, eng):
    # J^<1>_x = J_x - Q J_{x+1}
    return UEAElement.gen(JAY, x, eng) - UEAElement.gen(JAY, x + 1, eng).shift_q(1)


def _j1_block(k, base, s, eng):
    # sum_w C(k,w) (-Q)^w J^<1>_{base + k s + w}
    out = UEAElement.zero(eng)
    for w in range(k + 1):
        out = out + _j1(base + k * s + w, eng).shift_q(w, comb(k, w) * (-1) ** w)
    return out


def check_truncation_identity(M: WeightModule, v, n, s, t):
    """Both sides of the J^<1> truncation identity on a primitive vector v.

    The hypotheses (v killed by X+, a J-eigenvector, and exactly n steps of
    X-_0 before vanishing) are verified first.
    """
    from .identities import jay_power

    if M.spec.m != 2 or M.spec.variant != "sl":
        raise PreconditionError("the truncation identity is a rank-1 sl statement")
    for tag in M.tags():
        img = linalg.matvec(M.gens[tag], v)
        if tag[0] == "X+" and any(img):
            raise PreconditionError(f"{tag} does not kill v")
        if tag[0] == "J" and linalg.rank([list(v), img], M.dim) > 1:
            raise PreconditionError(f"v is not an eigenvector of {tag}")
    if lowering_depth(M, v) != n:
        raise PreconditionError(f"X-_0 depth of v is {lowering_depth(M, v)}, not {n}")
    eng = default_engine()
    lhs = act(_j1_block(n, t, s, eng), M, v)
    rhs = [F0] * M.dim
    for k in range(n):
        jp = act(jay_power(s, n - k, eng), M, v)
        term = act(_j1_block(k, t, s, eng), M, jp)
        sign = (-1) ** (n - k + 1)
        rhs = [x + sign * y for x, y in zip(rhs, term)]
    return lhs == rhs
