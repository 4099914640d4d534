"""The rank-m deformed current algebras sl_m^<Q>[x] and gl_m^<Q>[x] as
structure-constant tables.

Basis elements are tagged tuples

    ("E", i, j, t)   i != j, the nested bracket of simple root vectors
    ("J", i, t)      sl only, 1 <= i <= m-1
    ("I", j, t)      gl only, 1 <= j <= m

Brackets are computed by evaluation separation: the image of a basis element
under ev_gamma is a scalar function of gamma times a fixed matrix of gl_m, so
evaluating a bracket at enough sample points and dividing out the known
scalar factor recovers its coordinates exactly.  The results are then
certified by the defining relations and the Jacobi identity.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .scalars import as_rational, format_rational, parse_rational

F0, F1 = Fraction(0), Fraction(1)


class InternalConsistency(RuntimeError):
    """The sampled bracket is not a combination of basis images (signals a bug)."""


class DegreeOverflow(LookupError):
    def __init__(self, needed):
        self.needed = needed
        super().__init__(f"bracket needs basis elements of degree up to {needed}; raise the degree bound")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    m: int
    variant: str = "sl"
    Q: tuple = ()
    N: int = 2

    def __post_init__(self):
        if self.m < 2:
            raise SpecError("m must be at least 2")
        if self.variant not in ("sl", "gl"):
            raise SpecError(f"variant must be 'sl' or 'gl', got {self.variant!r}")
        Q = tuple(as_rational(q) for q in (self.Q or (0,) * (self.m - 1)))
        if len(Q) != self.m - 1:
            raise SpecError(f"need {self.m - 1} deformation parameters, got {len(Q)}")
        object.__setattr__(self, "Q", Q)
        if self.N < 0:
            raise SpecError("degree bound must be nonnegative")

    def q(self, i):
        """Q_i with 1-based i."""
        return self.Q[i - 1]

    def with_variant(self, variant):
        return AlgebraSpec(self.m, variant, self.Q, self.N)

    def to_json(self):
        return {"m": self.m, "variant": self.variant, "Q": [format_rational(q) for q in self.Q], "N": self.N}

    @classmethod
    def from_json(cls, d):
        return cls(d["m"], d["variant"], tuple(parse_rational(q) for q in d["Q"]), d["N"])


# ---------------------------------------------------------------------------
# basis elements and Lie elements
# ---------------------------------------------------------------------------

def degree(b):
    return b[-1]


def basis(spec: AlgebraSpec, N=None):
    """All basis elements of degree <= N, in a fixed order."""
    N = spec.N if N is None else N
    m = spec.m
    out = []
    for t in range(N + 1):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if i != j:
                    out.append(("E", i, j, t))
        if spec.variant == "sl":
            out.extend(("J", i, t) for i in range(1, m))
        else:
            out.extend(("I", j, t) for j in range(1, m + 1))
    return out


def basis_key(b):
    return (b[-1], b[0], b[1:-1])


def format_basis(b):
    if b[0] == "E":
        return f"E({b[1]},{b[2]};{b[3]})"
    return f"{b[0]}({b[1]};{b[2]})"


class LieElement:
    """Finite Q-linear combination of basis elements."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for b, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                self.terms[b] = c

    @classmethod
    def basis(cls, b):
        return cls({b: F1})

    def __add__(self, other):
        out = dict(self.terms)
        for b, c in other.terms.items():
            v = out.get(b, F0) + c
            if v:
                out[b] = v
            else:
                out.pop(b, None)
        e = LieElement()
        e.terms = out
        return e

    def __neg__(self):
        e = LieElement()
        e.terms = {b: -c for b, c in self.terms.items()}
        return e

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rational(c)
        e = LieElement()
        e.terms = {b: v * c for b, v in self.terms.items()} if c else {}
        return e

    __rmul__ = lambda self, c: self.scale(c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, LieElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def max_degree(self):
        return max((degree(b) for b in self.terms), default=-1)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for b in sorted(self.terms, key=basis_key):
            c = self.terms[b]
            s = "-" if c < 0 else "+"
            mag = abs(c)
            body = format_basis(b) if mag == 1 else f"{mag}*{format_basis(b)}"
            parts.append((s, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    __repr__ = __str__

    def to_json(self):
        return [[list(b), format_rational(c)] for b, c in sorted(self.terms.items(), key=lambda it: basis_key(it[0]))]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(b): parse_rational(c) for b, c in data})


def gen_element(spec: AlgebraSpec, tag):
    """A generator tag ("X+", i, t) / ("X-", i, t) / ("J", i, t) / ("I", j, t) as a LieElement.

    In gl, J_{i,t} means I_{i,t} - I_{i+1,t}.
    """
    kind = tag[0]
    if kind == "X+":
        return LieElement.basis(("E", tag[1], tag[1] + 1, tag[2]))
    if kind == "X-":
        return LieElement.basis(("E", tag[1] + 1, tag[1], tag[2]))
    if kind == "J":
        if spec.variant == "sl":
            return LieElement.basis(("J", tag[1], tag[2]))
        return LieElement({("I", tag[1], tag[2]): 1, ("I", tag[1] + 1, tag[2]): -1})
    if kind == "I":
        if spec.variant != "gl":
            raise SpecError("I generators exist only in gl")
        return LieElement.basis(("I", tag[1], tag[2]))
    raise SpecError(f"unknown generator tag {tag!r}")


# ---------------------------------------------------------------------------
# evaluation images
# ---------------------------------------------------------------------------

def scalar_factor(spec, b, gamma):
    """The scalar function of gamma multiplying the fixed matrix of ``b``."""
    t = degree(b)
    c = gamma ** t
    if b[0] == "E" and b[1] < b[2]:
        for k in range(b[1], b[2]):
            c *= 1 - spec.q(k) * gamma
    return c


def unit_image(spec, b):
    """The fixed gl_m matrix (sparse {(r, c): value}, 0-based) attached to ``b``."""
    if b[0] == "E":
        return {(b[1] - 1, b[2] - 1): F1}
    if b[0] == "J":
        return {(b[1] - 1, b[1] - 1): F1, (b[1], b[1]): -F1}
    return {(b[1] - 1, b[1] - 1): F1}


def eval_sparse(spec, elem, gamma):
    gamma = as_rational(gamma)
    if not isinstance(elem, LieElement):
        elem = LieElement.basis(elem)
    out = {}
    for b, c in elem.terms.items():
        f = c * scalar_factor(spec, b, gamma)
        if not f:
            continue
        for pos, v in unit_image(spec, b).items():
            nv = out.get(pos, F0) + f * v
            if nv:
                out[pos] = nv
            else:
                out.pop(pos, None)
    return out


def eval_image(b, gamma, spec: AlgebraSpec):
    """Dense m x m image of a basis element (or LieElement) under ev_gamma."""
    m = spec.m
    mat = linalg.zeros(m, m)
    for (r, c), v in eval_sparse(spec, b, gamma).items():
        mat[r][c] = v
    return mat


def sparse_commutator(a, b):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if j == k:
                out[(i, l)] = out.get((i, l), F0) + x * y
            if l == i:
                out[(k, j)] = out.get((k, j), F0) - x * y
    return {p: v for p, v in out.items() if v}


def sample_points(spec, count):
    """gamma = 1, 2, 3, ... skipping every Q_i^{-1}."""
    bad = {1 / q for q in spec.Q if q}
    out, g = [], 1
    while len(out) < count:
        if Fraction(g) not in bad:
            out.append(Fraction(g))
        g += 1
    return out


# ---------------------------------------------------------------------------
# structure constants by evaluation separation
# ---------------------------------------------------------------------------

def _direction_factor(spec, i, j, gamma):
    c = F1
    if i < j:
        for k in range(i, j):
            c *= 1 - spec.q(k) * gamma
    return c


def separate(spec: AlgebraSpec, samples, bound, target):
    """Recover a LieElement from a sampled image.

    ``samples(gamma)`` returns the sparse image at gamma; the true image has
    polynomial entries of degree <= ``bound``.  Coordinates are interpolated
    from ``target`` + 1 points, growing ``target`` until an exact residual
    check on ``bound + m`` points passes.
    """
    m = spec.m
    max_target = bound
    while True:
        # enough points to certify: c*P has degree <= (m-1)+target, f has degree <= bound
        ncheck = max(bound, (m - 1) + target) + 1
        pts = sample_points(spec, max(ncheck, target + 1))
        imgs = [samples(g) for g in pts]
        positions = set()
        for img in imgs:
            positions.update(img)
        terms = {}
        ok = True
        diag_vals = [[img.get((r, r), F0) for r in range(m)] for img in imgs]
        for (r, c) in sorted(p for p in positions if p[0] != p[1]):
            i, j = r + 1, c + 1
            ys = [img.get((r, c), F0) / _direction_factor(spec, i, j, g) for img, g in zip(imgs, pts)]
            P = linalg.interpolate(pts[: target + 1], ys[: target + 1])
            if len(P) > target + 1 or any(linalg.poly_eval(P, g) != y for g, y in zip(pts, ys)):
                ok = False
                break
            for t, v in enumerate(P):
                if v:
                    terms[("E", i, j, t)] = v
        if ok:
            if spec.variant == "sl":
                for img_d in diag_vals:
                    if sum(img_d, F0) != 0:
                        raise InternalConsistency("sl bracket with nonzero trace")
                for k in range(1, m):
                    ys = [sum(d[:k], F0) for d in diag_vals]
                    P = linalg.interpolate(pts[: target + 1], ys[: target + 1])
                    if any(linalg.poly_eval(P, g) != y for g, y in zip(pts, ys)):
                        ok = False
                        break
                    for t, v in enumerate(P):
                        if v:
                            terms[("J", k, t)] = v
            else:
                for k in range(1, m + 1):
                    ys = [d[k - 1] for d in diag_vals]
                    P = linalg.interpolate(pts[: target + 1], ys[: target + 1])
                    if any(linalg.poly_eval(P, g) != y for g, y in zip(pts, ys)):
                        ok = False
                        break
                    for t, v in enumerate(P):
                        if v:
                            terms[("I", k, t)] = v
        if ok:
            return LieElement(terms)
        if target >= max_target:
            raise InternalConsistency(f"no consistent coordinates up to degree {max_target}")
        target += 1


def bracket_by_evaluation(spec, a, b):
    """[a, b] for basis elements a, b via evaluation separation."""
    ia, ib = unit_image(spec, a), unit_image(spec, b)

    def samples(g):
        sa, sb = scalar_factor(spec, a, g), scalar_factor(spec, b, g)
        return {p: v * sa * sb for p, v in sparse_commutator(ia, ib).items()}

    s, t = degree(a), degree(b)
    return separate(spec, samples, s + t + 2 * (spec.m - 1), min(s + t + 1, s + t + 2 * (spec.m - 1)))


class StructureTable:
    """Brackets of basis elements, filled for degrees <= spec.N at construction.

    When not frozen, pairs beyond the bound are computed on demand (needed by
    Jacobi and by nested relation instances); a frozen table raises
    :class:`DegreeOverflow` instead.
    """

    def __init__(self, spec: AlgebraSpec, entries=None, frozen=False, workers=None):
        self.spec = spec
        self.frozen = False
        self.entries = {}
        if entries is None:
            elems = basis(spec)
            pairs = list(itertools.product(elems, elems))
            if workers and workers > 1:
                from concurrent.futures import ProcessPoolExecutor

                with ProcessPoolExecutor(workers) as ex:
                    vals = list(ex.map(_bracket_job, [(spec, a, b) for a, b in pairs], chunksize=64))
                self.entries.update(zip(pairs, vals))
            else:
                for a, b in pairs:
                    self.entries[(a, b)] = bracket_by_evaluation(spec, a, b)
        else:
            self.entries = dict(entries)
        self.frozen = frozen

    def bracket_basis(self, a, b):
        hit = self.entries.get((a, b))
        if hit is not None:
            return hit
        if self.frozen:
            raise DegreeOverflow(max(degree(a), degree(b)))
        val = bracket_by_evaluation(self.spec, a, b)
        self.entries[(a, b)] = val
        return val

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        out = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                for c, v in self.bracket_basis(a, b).terms.items():
                    out[c] = out.get(c, F0) + ca * cb * v
        return LieElement(out)

    def freeze(self):
        self.frozen = True
        return self

    def to_json(self):
        N = self.spec.N
        items = [
            {"a": list(a), "b": list(b), "value": v.to_json()}
            for (a, b), v in sorted(self.entries.items(), key=lambda kv: (basis_key(kv[0][0]), basis_key(kv[0][1])))
            if degree(a) <= N and degree(b) <= N
        ]
        return {"spec": self.spec.to_json(), "entries": items}

    @classmethod
    def from_json(cls, d, frozen=True):
        spec = AlgebraSpec.from_json(d["spec"])
        entries = {(tuple(e["a"]), tuple(e["b"])): LieElement.from_json(e["value"]) for e in d["entries"]}
        return cls(spec, entries, frozen)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _bracket_job(args):
    spec, a, b = args
    return bracket_by_evaluation(spec, a, b)


def structure_constants(spec: AlgebraSpec, workers=None) -> StructureTable:
    return StructureTable(spec, workers=workers)


def bracket(a, b, table: StructureTable):
    return table.bracket(a, b)


# ---------------------------------------------------------------------------
# defining relations as expression trees
# ---------------------------------------------------------------------------

def cartan(i, j):
    """a_{ij} of sl_m."""
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


def cartan_gl(j, i):
    """a'_{ji}: K_j against e_i."""
    if j == i:
        return 1
    if j == i + 1:
        return -1
    return 0


@dataclass
class Relation:
    family: str
    label: str
    lhs: list  # [(coeff, tree)], tree = generator tag or ("br", tree, tree)
    rhs: list

    def max_gen_degree(self):
        def walk(tree):
            if tree[0] == "br":
                return max(walk(tree[1]), walk(tree[2]))
            return tree[-1]

        return max((walk(t) for _, t in self.lhs + self.rhs), default=0)


def br(a, b):
    return ("br", a, b)


def relation_instances(m, variant, Q, T):
    """Every instance of the defining relations whose generators have degree <= T."""
    Q = tuple(as_rational(q) for q in Q)
    rng = range(T + 1)
    idx = range(1, m)
    rels = []

    def add(fam, label, lhs, rhs):
        r = Relation(fam, label, lhs, rhs)
        if r.max_gen_degree() <= T:
            rels.append(r)

    cart_name = "J" if variant == "sl" else "I"
    cart_idx = idx if variant == "sl" else range(1, m + 1)
    p1 = "L1" if variant == "sl" else "L'1"
    p2 = "L2" if variant == "sl" else "L'2"
    p3 = "L3" if variant == "sl" else "L'3"
    coef = cartan if variant == "sl" else cartan_gl
    for i, j in itertools.product(cart_idx, cart_idx):
        for s, t in itertools.product(rng, rng):
            add(p1, f"i={i},j={j},s={s},t={t}", [(1, br((cart_name, i, s), (cart_name, j, t)))], [])
    for j, i in itertools.product(cart_idx, idx):
        a = coef(j, i)
        for s, t in itertools.product(rng, rng):
            for sign in "+-":
                rhs = [(a if sign == "+" else -a, ("X" + sign, i, s + t))] if a else []
                add(p2, f"j={j},i={i},s={s},t={t},{sign}", [(1, br((cart_name, j, s), ("X" + sign, i, t)))], rhs)
    for i, j in itertools.product(idx, idx):
        for s, t in itertools.product(rng, rng):
            rhs = []
            if i == j:
                rhs = [(1, ("J", i, s + t))]
                if Q[i - 1]:
                    rhs.append((-Q[i - 1], ("J", i, s + t + 1)))
            add(p3, f"i={i},j={j},t={t},s={s}", [(1, br(("X+", i, t), ("X-", j, s)))], rhs)
    for i, j in itertools.product(idx, idx):
        if abs(i - j) == 1:
            continue
        for s, t in itertools.product(rng, rng):
            for sign in "+-":
                add("L4", f"i={i},j={j},t={t},s={s},{sign}", [(1, br(("X" + sign, i, t), ("X" + sign, j, s)))], [])
    for i, j in itertools.product(idx, idx):
        if abs(i - j) != 1:
            continue
        for s, t in itertools.product(rng, rng):
            for sign in "+-":
                X = "X" + sign
                add(
                    "L5",
                    f"i={i},j={j},t={t},s={s},{sign}",
                    [(1, br((X, i, t + 1), (X, j, s)))],
                    [(1, br((X, i, t), (X, j, s + 1)))],
                )
        for s, t, u in itertools.product(rng, rng, rng):
            for sign in "+-":
                X = "X" + sign
                add("L6", f"i={i},j={j},s={s},t={t},u={u},{sign}", [(1, br((X, i, s), br((X, i, t), (X, j, u))))], [])
    return rels


def eval_tree(tree, leaf, bracket_fn):
    if tree[0] == "br":
        return bracket_fn(eval_tree(tree[1], leaf, bracket_fn), eval_tree(tree[2], leaf, bracket_fn))
    return leaf(tree)


def eval_side(side, leaf, bracket_fn, zero, add, scale):
    out = zero
    for c, tree in side:
        out = add(out, scale(eval_tree(tree, leaf, bracket_fn), as_rational(c)))
    return out


@dataclass
class RelationReport:
    families: dict = field(default_factory=dict)  # family -> [passed, total]
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def record(self, fam, label, passed):
        st = self.families.setdefault(fam, [0, 0])
        st[1] += 1
        if passed:
            st[0] += 1
        else:
            self.failures.append((fam, label))

    def to_json(self):
        return {
            "families": {k: {"passed": v[0], "total": v[1]} for k, v in sorted(self.families.items())},
            "failures": [list(f) for f in self.failures],
            "ok": self.ok,
        }


def check_relations(table: StructureTable, spec: AlgebraSpec = None, T=None) -> RelationReport:
    spec = spec or table.spec
    T = spec.N if T is None else T
    rep = RelationReport()
    leaf = lambda tag: gen_element(spec, tag)
    for rel in relation_instances(spec.m, spec.variant, spec.Q, T):
        side = lambda s: eval_side(s, leaf, table.bracket, LieElement(), lambda a, b: a + b, lambda a, c: a.scale(c))
        rep.record(rel.family, rel.label, side(rel.lhs) == side(rel.rhs))
    return rep


def check_antisymmetry(table: StructureTable, N=None):
    N = table.spec.N if N is None else N
    els = basis(table.spec, N)
    bad = []
    for a, b in itertools.product(els, els):
        if table.bracket_basis(a, b) != -table.bracket_basis(b, a):
            bad.append((a, b))
    return bad


def check_jacobi(table: StructureTable, N=None, triples=None):
    """Jacobi on all unordered basis triples of degree <= N (or the given triples)."""
    N = table.spec.N if N is None else N
    els = basis(table.spec, N)
    if triples is None:
        triples = itertools.combinations(els, 3)
    bad = []
    B = table.bracket
    E = LieElement.basis
    for a, b, c in triples:
        a, b, c = E(a), E(b), E(c)
        tot = B(a, B(b, c)) + B(b, B(c, a)) + B(c, B(a, b))
        if not tot.is_zero():
            bad.append((a, b, c))
    return bad


def check_eval_homomorphism(table: StructureTable, gammas=(0, 1, -1, 2, Fraction(1, 2)), N=None):
    """ev_gamma([a, b]) == [ev_gamma(a), ev_gamma(b)] for all basis pairs."""
    spec = table.spec
    N = spec.N if N is None else N
    els = basis(spec, N)
    bad = []
    for g in gammas:
        g = as_rational(g)
        for a, b in itertools.product(els, els):
            lhs = eval_sparse(spec, table.bracket_basis(a, b), g)
            rhs = sparse_commutator(eval_sparse(spec, a, g), eval_sparse(spec, b, g))
            if lhs != rhs:
                bad.append((g, a, b))
    return bad


# ---------------------------------------------------------------------------
# Upsilon: sl -> gl
# ---------------------------------------------------------------------------

def upsilon(e: LieElement) -> LieElement:
    out = {}
    for b, c in e.terms.items():
        if b[0] == "J":
            for k, s in ((b[1], 1), (b[1] + 1, -1)):
                key = ("I", k, b[2])
                out[key] = out.get(key, F0) + s * c
        elif b[0] == "E":
            out[b] = out.get(b, F0) + c
        else:
            raise SpecError("upsilon takes sl elements")
    return LieElement(out)


def check_upsilon(sl_table: StructureTable, gl_table: StructureTable, N=None):
    """Homomorphism on all basis pairs and injectivity on the degree-N span."""
    N = sl_table.spec.N if N is None else N
    els = basis(sl_table.spec, N)
    hom_bad = []
    for a, b in itertools.product(els, els):
        lhs = gl_table.bracket(upsilon(LieElement.basis(a)), upsilon(LieElement.basis(b)))
        rhs = upsilon(sl_table.bracket_basis(a, b))
        if lhs != rhs:
            hom_bad.append((a, b))
    gl_els = basis(gl_table.spec, N)
    pos = {b: k for k, b in enumerate(gl_els)}
    rows = []
    for a in els:
        row = [F0] * len(gl_els)
        for b, c in upsilon(LieElement.basis(a)).terms.items():
            row[pos[b]] = c
        rows.append(row)
    injective = linalg.rank(rows, len(gl_els)) == len(els)
    return hom_bad, injective


# ---------------------------------------------------------------------------
# Phi: gl_m^<Q>[x] -> g_Qhat(m)
# ---------------------------------------------------------------------------

@dataclass
class PhiData:
    composition: tuple
    Qhat: tuple
    Q: tuple
    zeta: dict       # (i, k) -> index
    zeta_inv: dict   # index -> (i, k)
    boundary: dict   # gl index i -> k when zeta^{-1}(i) = (m_k, k), k <= r-1

    def forward(self, tag):
        """Phi on a gl generator tag: list of (coeff, g_Qhat tag)."""
        kind, i, t = tag
        if kind == "X+":
            k = self.boundary.get(i)
            c = F1 if k is None else -1 / self.Qhat[k - 1]
            return [(c, ("X+", self.zeta_inv[i], t))]
        if kind == "X-":
            return [(F1, ("X-", self.zeta_inv[i], t))]
        if kind == "I":
            return [(F1, ("I", self.zeta_inv[i], t))]
        raise SpecError(tag)

    def inverse(self, tag):
        """Phi^{-1} on a g_Qhat generator tag: list of (coeff, gl tag)."""
        kind, (i, k), t = tag
        if kind == "X+":
            c = -self.Qhat[k - 1] if i == self.composition[k - 1] else F1
            return [(c, ("X+", self.zeta[(i, k)], t))]
        if kind == "X-":
            return [(F1, ("X-", self.zeta[(i, k)], t))]
        if kind == "I":
            return [(F1, ("I", self.zeta[(i, k)], t))]
        raise SpecError(tag)


def phi_data(composition, Qhat) -> PhiData:
    comp = tuple(int(x) for x in composition)
    Qhat = tuple(as_rational(q) for q in Qhat)
    r = len(comp)
    if any(x <= 0 for x in comp):
        raise SpecError("composition entries must be positive")
    if len(Qhat) != r - 1:
        raise SpecError(f"need {r - 1} parameters Qhat, got {len(Qhat)}")
    if any(q == 0 for q in Qhat):
        raise SpecError("every Qhat_k must be nonzero")
    zeta, zinv = {}, {}
    for k in range(1, r + 1):
        for i in range(1, comp[k - 1] + 1):
            idx = sum(comp[: k - 1]) + i
            zeta[(i, k)] = idx
            zinv[idx] = (i, k)
    m = sum(comp)
    boundary = {}
    Q = []
    for i in range(1, m):
        ik = zinv[i]
        k = ik[1]
        if k <= r - 1 and ik[0] == comp[k - 1]:
            boundary[i] = k
            Q.append(1 / Qhat[k - 1])
        else:
            Q.append(F0)
    return PhiData(comp, Qhat, tuple(Q), zeta, zinv, boundary)


def g_qhat_relations(pd: PhiData, T):
    """Defining relations of g_Qhat(m) in (i,k)-labels, degrees <= T."""
    comp = pd.composition
    r = len(comp)
    gamma = sorted(pd.zeta, key=lambda ik: pd.zeta[ik])
    gamma_p = [ik for ik in gamma if ik != (comp[-1], r)]
    m = len(gamma)
    rng = range(T + 1)
    rels = []

    def shift(ik, j):
        idx = pd.zeta[ik] + j
        return pd.zeta_inv.get(idx) if 1 <= idx <= m else None

    def Jt(ik, t):
        return [(1, ("I", ik, t)), (-1, ("I", shift(ik, 1), t))]

    def add(fam, label, lhs, rhs):
        rel = Relation(fam, label, lhs, rhs)
        if rel.max_gen_degree() <= T:
            rels.append(rel)

    for a, b in itertools.product(gamma, gamma):
        for s, t in itertools.product(rng, rng):
            add("g1", f"{a},{b},{s},{t}", [(1, br(("I", a, s), ("I", b, t)))], [])
    for jl, ik in itertools.product(gamma, gamma_p):
        a = cartan_gl(pd.zeta[jl], pd.zeta[ik])
        for s, t in itertools.product(rng, rng):
            for sign in "+-":
                rhs = [(a if sign == "+" else -a, ("X" + sign, ik, s + t))] if a else []
                add("g2", f"{jl},{ik},{s},{t},{sign}", [(1, br(("I", jl, s), ("X" + sign, ik, t)))], rhs)
    for ik, jl in itertools.product(gamma_p, gamma_p):
        for s, t in itertools.product(rng, rng):
            rhs = []
            if ik == jl:
                i, k = ik
                if i != comp[k - 1]:
                    rhs = Jt(ik, s + t)
                else:
                    rhs = [(-pd.Qhat[k - 1] * c, g) for c, g in Jt(ik, s + t)] + Jt(ik, s + t + 1)
            add("g3", f"{ik},{jl},{t},{s}", [(1, br(("X+", ik, t), ("X-", jl, s)))], rhs)
    for ik, jl in itertools.product(gamma_p, gamma_p):
        adjacent = jl in (shift(ik, 1), shift(ik, -1))
        for s, t in itertools.product(rng, rng):
            for sign in "+-":
                X = "X" + sign
                if not adjacent:
                    add("g4", f"{ik},{jl},{t},{s},{sign}", [(1, br((X, ik, t), (X, jl, s)))], [])
                else:
                    add(
                        "g5",
                        f"{ik},{jl},{t},{s},{sign}",
                        [(1, br((X, ik, t + 1), (X, jl, s)))],
                        [(1, br((X, ik, t), (X, jl, s + 1)))],
                    )
        if adjacent:
            for s, t, u in itertools.product(rng, rng, rng):
                for sign in "+-":
                    X = "X" + sign
                    add("g6", f"{ik},{jl},{s},{t},{u},{sign}", [(1, br((X, ik, s), br((X, ik, t), (X, jl, u))))], [])
    return rels


def phi_isomorphism(composition, Qhat, N=1):
    """Build Phi and check it: round trip on generators and the g_Qhat(m)
    relations on Phi^{-1}-images inside the gl^<Q> table."""
    pd = phi_data(composition, Qhat)
    m = sum(pd.composition)
    spec = AlgebraSpec(m, "gl", pd.Q, N)
    table = structure_constants(spec)
    report = RelationReport()
    for i in range(1, m):
        for t in range(N + 1):
            for kind in ("X+", "X-"):
                tag = (kind, i, t)
                back = []
                for c, g in pd.forward(tag):
                    back += [(c * c2, g2) for c2, g2 in pd.inverse(g)]
                report.record("roundtrip", str(tag), back == [(F1, tag)])
    for j in range(1, m + 1):
        for t in range(N + 1):
            tag = ("I", j, t)
            back = [(c * c2, g2) for c, g in pd.forward(tag) for c2, g2 in pd.inverse(g)]
            report.record("roundtrip", str(tag), back == [(F1, tag)])

    def leaf(tag):
        out = LieElement()
        for c, g in pd.inverse(tag):
            out = out + gen_element(spec, g).scale(c)
        return out

    for rel in g_qhat_relations(pd, N):
        side = lambda s: eval_side(s, leaf, table.bracket, LieElement(), lambda a, b: a + b, lambda a, c: a.scale(c))
        report.record(rel.family, rel.label, side(rel.lhs) == side(rel.rhs))
    return pd, report


# ---------------------------------------------------------------------------
# Q = 0 oracle
# ---------------------------------------------------------------------------

def classical_bracket(spec: AlgebraSpec, a, b) -> LieElement:
    """[a, b] in gl_m[x] / sl_m[x] from [E_ab x^s, E_cd x^t] = d_bc E_ad x^(s+t) - d_da E_cb x^(s+t)."""
    def expand(el):
        # basis element -> list of (coeff, (row, col), degree) in matrix units
        if el[0] == "E":
            return [(F1, (el[1], el[2]), el[3])]
        if el[0] == "J":
            return [(F1, (el[1], el[1]), el[2]), (-F1, (el[1] + 1, el[1] + 1), el[2])]
        return [(F1, (el[1], el[1]), el[2])]

    acc = {}
    for ca, (p, q), s in expand(a):
        for cb, (r, u), t in expand(b):
            if q == r:
                acc[(p, u, s + t)] = acc.get((p, u, s + t), F0) + ca * cb
            if u == p:
                acc[(r, q, s + t)] = acc.get((r, q, s + t), F0) - ca * cb
    out = {}
    diag = {}
    for (p, u, d), c in acc.items():
        if not c:
            continue
        if p != u:
            out[("E", p, u, d)] = c
        else:
            diag.setdefault(d, [F0] * (spec.m + 1))[p] += c
    for d, vals in diag.items():
        if spec.variant == "gl":
            for j in range(1, spec.m + 1):
                if vals[j]:
                    out[("I", j, d)] = vals[j]
        else:
            run = F0
            for k in range(1, spec.m):
                run += vals[k]
                if run:
                    out[("J", k, d)] = run
    return LieElement(out)
