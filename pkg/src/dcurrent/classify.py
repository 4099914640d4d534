"""Classification data (phi, beta, h) and the highest weights they label.

A datum has one monic polynomial and one scalar per simple root, plus a
finite h prefix for gl.  Roots of phi_i equal to 1/Q_i carry no new
information: they are absorbed into beta_i by :func:`canonicalize`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .liealg import AlgebraSpec, InternalConsistency
from .repmod import ModuleRecipe, WeightModule, highest_weight_of, lowering_depth
from .scalars import MonicPolynomial, as_rational, format_rational, monic_from_roots, parse_rational, rational_roots
from .symfun import SymInstance, power_sum, solve_power_sum_system

F0, F1 = Fraction(0), Fraction(1)


class InvalidDatum(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class ClassificationDatum:
    phi: tuple            # MonicPolynomial per simple root
    beta: tuple           # Fraction per simple root
    h: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        object.__setattr__(self, "beta", tuple(as_rational(b) for b in self.beta))
        if self.h is not None:
            object.__setattr__(self, "h", tuple(as_rational(x) for x in self.h))

    @property
    def rank(self):
        return len(self.phi)

    def h_prefix(self, T):
        """Same datum with h cut to degrees <= T (what a module truncated at T can see)."""
        if self.h is None:
            return self
        return ClassificationDatum(self.phi, self.beta, self.h[: T + 1])

    def to_json(self):
        return {
            "phi": [p.to_json() for p in self.phi],
            "beta": [format_rational(b) for b in self.beta],
            "h": None if self.h is None else [format_rational(x) for x in self.h],
        }

    @classmethod
    def from_json(cls, d):
        phi = []
        for p in d["phi"]:
            if isinstance(p, list):
                # a bare list is read as the root multiset
                phi.append(monic_from_roots(parse_rational(r) for r in p))
            else:
                phi.append(MonicPolynomial.from_json(p))
        h = d.get("h")
        return cls(
            tuple(phi),
            tuple(parse_rational(b) for b in d["beta"]),
            None if h is None else tuple(parse_rational(x) for x in h),
        )


@dataclass(frozen=True)
class HighestWeight:
    variant: str
    m: int
    T: int
    u: dict  # (i, t) -> Fraction

    def row(self, i):
        return [self.u[(i, t)] for t in range(self.T + 1)]

    def truncate(self, T):
        return HighestWeight(self.variant, self.m, T, {k: v for k, v in self.u.items() if k[1] <= T})

    def to_json(self):
        rows = range(1, self.m) if self.variant == "sl" else range(1, self.m + 1)
        return {
            "variant": self.variant,
            "m": self.m,
            "T": self.T,
            "u": {str(i): [format_rational(x) for x in self.row(i)] for i in rows},
        }


def _q(Q, i):
    return as_rational(Q[i - 1])


def validate(d: ClassificationDatum, Q, variant=None, roots=True):
    """Violations of the datum constraints (an empty list means valid).

    With ``roots=False`` the excluded root 1/Q_i is tolerated; such data still
    define a module and canonicalize to a valid datum.
    """
    out = []
    m1 = len(Q)
    if len(d.phi) != m1 or len(d.beta) != m1:
        out.append(f"expected {m1} polynomials and beta entries, got {len(d.phi)} and {len(d.beta)}")
        return out
    for i, (p, b) in enumerate(zip(d.phi, d.beta), 1):
        q = _q(Q, i)
        if roots and q and p.evaluate(1 / q) == 0:
            out.append(f"phi_{i} = {p} has the excluded root 1/Q_{i} = {format_rational(1 / q)}")
        if b and not q:
            out.append(f"beta_{i} = {format_rational(b)} but Q_{i} = 0")
    if variant == "gl" and not d.h:
        out.append("gl datum needs an h prefix")
    if variant == "sl" and d.h is not None:
        out.append("sl datum carries an h prefix")
    return out


def _strip_root(p: MonicPolynomial, r):
    """(p / (x - r)^k, k) with k the multiplicity of r."""
    coeffs, k = list(p.coefficients), 0
    while coeffs:
        # synthetic division by (x - r)
        full = coeffs + [F1]
        q, acc = [F0] * len(coeffs), F0
        for j in range(len(coeffs), 0, -1):
            acc = acc * r + full[j]
            q[j - 1] = acc
        if acc * r + full[0] != 0:
            break
        coeffs, k = q[:-1], k + 1
    roots = None
    if p.roots is not None:
        roots = list(p.roots)
        for _ in range(k):
            roots.remove(r)
    return MonicPolynomial(tuple(coeffs), None if roots is None else tuple(roots)), k


def canonicalize(d: ClassificationDatum, Q) -> ClassificationDatum:
    """Move every root 1/Q_i of phi_i into beta_i (one unit per occurrence)."""
    phi, beta = [], []
    for i, (p, b) in enumerate(zip(d.phi, d.beta), 1):
        q = _q(Q, i)
        if q:
            p, k = _strip_root(p, 1 / q)
            b = b + k
        phi.append(p)
        beta.append(b)
    return ClassificationDatum(tuple(phi), tuple(beta), d.h)


def _sl_rows(d: ClassificationDatum, Q, T):
    u = {}
    for i, (p, b) in enumerate(zip(d.phi, d.beta), 1):
        q = _q(Q, i)
        inst = SymInstance(rational_roots(p))
        u[(i, 0)] = p.degree + b
        for t in range(1, T + 1):
            u[(i, t)] = power_sum(inst, t) + (b / q ** t if q else F0)
    return u


def hw_from_datum_sl(d: ClassificationDatum, Q, T) -> HighestWeight:
    bad = validate(d, Q, "sl")
    if bad:
        raise InvalidDatum(bad)
    return HighestWeight("sl", len(Q) + 1, T, _sl_rows(d, Q, T))


def hw_from_datum_gl(d: ClassificationDatum, Q, T) -> HighestWeight:
    bad = validate(d, Q, "gl")
    if bad:
        raise InvalidDatum(bad)
    if len(d.h) < T + 1:
        raise InvalidDatum([f"h prefix of length {len(d.h)} does not reach degree {T}"])
    m = len(Q) + 1
    base = _sl_rows(d, Q, T)
    u = {}
    for t in range(T + 1):
        u[(m, t)] = d.h[t]
        for j in range(m - 1, 0, -1):
            u[(j, t)] = u[(j + 1, t)] + base[(j, t)]
    return HighestWeight("gl", m, T, u)


def hw_from_datum(d: ClassificationDatum, spec: AlgebraSpec, T):
    fn = hw_from_datum_sl if spec.variant == "sl" else hw_from_datum_gl
    return fn(d, spec.Q, T)


def recipe_from_datum(d: ClassificationDatum, spec: AlgebraSpec) -> ModuleRecipe:
    """Evaluation factors L(omega_l)^{ev_gamma} for every root, then the 1-dimensional ones.

    Non-canonical data are accepted; the module is the same as for the
    canonicalized datum.
    """
    bad = validate(d, spec.Q, spec.variant, roots=False)
    if bad:
        raise InvalidDatum(bad)
    factors = []
    for l, p in enumerate(d.phi, 1):
        for g in rational_roots(p):
            factors.append(("fundamental", l, g))
    if spec.variant == "sl":
        factors.append(("one_dim_sl", d.beta))
    else:
        factors.append(("one_dim_gl_b", d.beta))
        factors.append(("one_dim_gl_h", d.h))
    return ModuleRecipe(spec, tuple(factors))


def _extract_row(M: WeightModule, v, i, row):
    """(phi_i, beta_i) from the eigenvalues ``row`` of J_{i,t} on v."""
    n = lowering_depth(M, v, i)
    q = M.spec.q(i)
    if q:
        b = row[0] - n
    else:
        b = F0
        if row[0] != n:
            raise InternalConsistency(f"J_{i},0 eigenvalue {row[0]} differs from X- depth {n} at Q_{i} = 0")
    if n > len(row) - 1:
        raise InternalConsistency(f"degree bound {len(row) - 1} too small to recover {n} roots")
    resid = [row[t] - (b / q ** t if q else F0) for t in range(1, len(row))]
    if n == 0:
        poly, roots = MonicPolynomial((), ()), ()
    else:
        sol = solve_power_sum_system(resid[:n])
        if sol.roots is None:
            # re-raise the factorization failure with its own exception type
            rational_roots(sol.polynomial)
        poly, roots = sol.polynomial, sol.roots
    inst = SymInstance(roots)
    for t in range(n + 1, len(row)):
        if power_sum(inst, t) != resid[t - 1]:
            raise InternalConsistency(f"J_{i},{t} eigenvalue is not a power sum of the recovered roots")
    return poly, b


def extract_datum(M: WeightModule, hw=None) -> ClassificationDatum:
    """Recover the canonical datum of a simple module from its highest weight."""
    u, v = hw if hw is not None else highest_weight_of(M)
    spec = M.spec
    m, T = spec.m, M.T
    phi, beta = [], []
    for i in range(1, m):
        if spec.variant == "sl":
            row = [u[(i, t)] for t in range(T + 1)]
        else:
            row = [u[(i, t)] - u[(i + 1, t)] for t in range(T + 1)]
        p, b = _extract_row(M, v, i, row)
        phi.append(p)
        beta.append(b)
    h = None
    if spec.variant == "gl":
        h = tuple(u[(m, t)] for t in range(T + 1))
    return canonicalize(ClassificationDatum(tuple(phi), tuple(beta), h), spec.Q)


def extract_datum_rank1(M: WeightModule) -> ClassificationDatum:
    if M.spec.m != 2 or M.spec.variant != "sl":
        raise ValueError("rank-1 extraction needs an sl_2 module")
    return extract_datum(M)


def extract_datum_rankm(M: WeightModule) -> ClassificationDatum:
    return extract_datum(M)


def highest_weight_record(M: WeightModule) -> HighestWeight:
    u, _ = highest_weight_of(M)
    return HighestWeight(M.spec.variant, M.spec.m, M.T, u)


def same_datum(a: ClassificationDatum, b: ClassificationDatum):
    """Equality of data up to how phi is stored (roots attached or not)."""
    return (
        tuple(p.coefficients for p in a.phi) == tuple(p.coefficients for p in b.phi)
        and a.beta == b.beta
        and a.h == b.h
    )


def distinct_truncations(data, spec: AlgebraSpec, T):
    """Pairs of data whose highest weights agree up to degree T (should be empty)."""
    seen = {}
    clashes = []
    for d in data:
        hw = hw_from_datum(d, spec, T)
        key = tuple(sorted(hw.u.items()))
        if key in seen and not same_datum(seen[key], d):
            clashes.append((seen[key], d))
        seen.setdefault(key, d)
    return clashes


def weight_difference_rows(gl_hw: HighestWeight):
    """u~_{i,t} - u~_{i+1,t} for i < m."""
    return {
        (i, t): gl_hw.u[(i, t)] - gl_hw.u[(i + 1, t)]
        for i in range(1, gl_hw.m)
        for t in range(gl_hw.T + 1)
    }


__all__ = [
    "ClassificationDatum",
    "HighestWeight",
    "InvalidDatum",
    "canonicalize",
    "distinct_truncations",
    "extract_datum",
    "extract_datum_rank1",
    "extract_datum_rankm",
    "highest_weight_record",
    "hw_from_datum",
    "hw_from_datum_gl",
    "hw_from_datum_sl",
    "recipe_from_datum",
    "same_datum",
    "validate",
    "weight_difference_rows",
]

