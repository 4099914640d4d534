"""Derived elements of U(sl_2^<Q>[x]) and a checker for the commutation identities
they satisfy.

Every derived element is built from its definition (products and sums of
generators); none of the identities below is used to construct anything, so
each check compares two independently normalized expressions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .pbw import JAY, XMINUS, XPLUS, UEAElement, commutator, default_engine
from .symfun import binomial_convolution_holds

SIGNS = {"+": XPLUS, "-": XMINUS, XPLUS: XPLUS, XMINUS: XMINUS}


def _kind(sign):
    try:
        return SIGNS[sign]
    except KeyError:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}") from None


def partitions(n, largest=None):
    """Partitions of n as weakly decreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _neg_q_power(e: UEAElement, w: int, coeff: int = 1) -> UEAElement:
    # coeff * (-Q)^w * e
    return e.shift_q(w, coeff * (-1) ** w)


@lru_cache(maxsize=None)
def divided_power(sign, t, b, engine=None):
    """X_t^{±(b)} = (X_t^±)^b / b!, and 0 for b < 0."""
    eng = engine or default_engine()
    if b < 0:
        return UEAElement.zero(eng)
    g = UEAElement.gen(_kind(sign), t, eng)
    return (g ** b).scale(Fraction(1, factorial(b)))


@lru_cache(maxsize=None)
def shifted_block(sign, t, p, h, engine=None):
    """X_t^{±((p);h)} = sum_w C(p,w) (-Q)^w X_{t+ph+w}; equal to 1 for p = 0.

    ``t`` may be negative as long as t + p*h >= 0.
    """
    eng = engine or default_engine()
    if p == 0:
        return UEAElement.one(eng)
    out = UEAElement.zero(eng)
    for w in range(p + 1):
        out = out + _neg_q_power(UEAElement.gen(_kind(sign), t + p * h + w, eng), w, comb(p, w))
    return out


@lru_cache(maxsize=None)
def jay_block(z, s, engine=None):
    """sum_w C(z,w) (-Q)^w J_{zs+w}."""
    eng = engine or default_engine()
    out = UEAElement.zero(eng)
    for w in range(z + 1):
        out = out + _neg_q_power(UEAElement.gen(JAY, z * s + w, eng), w, comb(z, w))
    return out


@lru_cache(maxsize=None)
def jay_power(s, p, engine=None):
    """J_s^{<p>} from its recursive definition (J_s^{<0>} = 1)."""
    eng = engine or default_engine()
    if p == 0:
        return UEAElement.one(eng)
    out = UEAElement.zero(eng)
    for z in range(1, p + 1):
        term = jay_block(z, s, eng) * jay_power(s, p - z, eng)
        out = out + term if z % 2 == 1 else out - term
    return out.scale(Fraction(1, p))


@lru_cache(maxsize=None)
def partition_block(sign, t, lam, h, engine=None):
    """X_t^{±(λ;h)} = prod_j (X_t^{±((j);h)})^{m_j} / m_j!."""
    eng = engine or default_engine()
    lam = tuple(lam)
    out = UEAElement.one(eng)
    for j in sorted(set(lam)):
        mj = lam.count(j)
        out = out * (shifted_block(sign, t, j, h, eng) ** mj).scale(Fraction(1, factorial(mj)))
    return out


@lru_cache(maxsize=None)
def mixed_block(sign, t, b, p, k, h, engine=None):
    """X_t^{±(b;p|k;h)} = sum over λ ⊢ k of X_t^{±(λ;h)} X_t^{±(b-p-ℓ(λ))}."""
    eng = engine or default_engine()
    out = UEAElement.zero(eng)
    for lam in partitions(k):
        rest = divided_power(sign, t, b - p - len(lam), eng)
        if rest:
            out = out + partition_block(sign, t, lam, h, eng) * rest
    return out


def clear_caches():
    for f in (divided_power, shifted_block, jay_block, jay_power, partition_block, mixed_block):
        f.cache_clear()


# ---------------------------------------------------------------------------
# identities: name -> (lhs, rhs) builders
# ---------------------------------------------------------------------------

def _one(eng):
    return UEAElement.one(eng)


def _cJsp_cXt(sign, s, t, p, eng):
    x = UEAElement.gen(_kind(sign), t, eng)
    lhs = commutator(jay_power(s, p, eng), x)
    rhs = UEAElement.zero(eng)
    for z in range(1, p + 1):
        c = (-1) ** (z + 1) * (z + 1)
        if sign == "+":
            rhs = rhs + (jay_power(s, p - z, eng) * shifted_block("+", t, z, s, eng)).scale(c)
        else:
            rhs = rhs - (shifted_block("-", t, z, s, eng) * jay_power(s, p - z, eng)).scale(c)
    return lhs, rhs


def id_cJsp_cXt_plus(s, t, p, engine=None):
    return _cJsp_cXt("+", s, t, p, engine or default_engine())


def id_cJsp_cXt_minus(s, t, p, engine=None):
    return _cJsp_cXt("-", s, t, p, engine or default_engine())


def id_cXt_cXs_ph(s, t, h, p, engine=None):
    eng = engine or default_engine()
    lhs = commutator(UEAElement.gen(XPLUS, t, eng), shifted_block("-", s, p, h, eng))
    rhs = UEAElement.zero(eng)
    for w in range(p + 1):
        rhs = rhs + _neg_q_power(jay_power(s + t + p * h + w, 1, eng), w, comb(p, w))
    return lhs, rhs


def _cJs1_cXtph(sign, s, t, h, p, eng):
    lhs = commutator(jay_power(s, 1, eng), shifted_block(sign, t, p, h, eng))
    rhs = shifted_block(sign, s + t - h, p + 1, h, eng).scale(2 if sign == "+" else -2)
    return lhs, rhs


def id_cJs1_cXtph_plus(s, t, h, p, engine=None):
    return _cJs1_cXtph("+", s, t, h, p, engine or default_engine())


def id_cJs1_cXtph_minus(s, t, h, p, engine=None):
    return _cJs1_cXtph("-", s, t, h, p, engine or default_engine())


def id_cXt_cXsc(s, t, c, engine=None):
    eng = engine or default_engine()
    lhs = commutator(UEAElement.gen(XPLUS, t, eng), divided_power("-", s, c, eng))
    rhs = divided_power("-", s, c - 1, eng) * jay_power(s + t, 1, eng) - divided_power(
        "-", s, c - 2, eng
    ) * shifted_block("-", s, 1, s + t, eng)
    return lhs, rhs


def id_cXtbpkh_i(sign, t, h, b, p, k, engine=None):
    # needs b - p < 0
    eng = engine or default_engine()
    return mixed_block(sign, t, b, p, k, h, eng), UEAElement.zero(eng)


def id_cXtbpkh_ii(sign, t, h, b, p, k, engine=None):
    # k in {0, 1}
    eng = engine or default_engine()
    lhs = mixed_block(sign, t, b, p, k, h, eng)
    if k == 0:
        rhs = divided_power(sign, t, b - p, eng)
    else:
        rhs = shifted_block(sign, t, 1, h, eng) * divided_power(sign, t, b - p - 1, eng)
    return lhs, rhs


def id_cXtbpkh_iii(sign, t, h, b, k, engine=None):
    eng = engine or default_engine()
    return mixed_block(sign, t, b, b, k, h, eng), (_one(eng) if k == 0 else UEAElement.zero(eng))


def id_cXtbpkh_iv(sign, t, h, b, p, k, engine=None):
    eng = engine or default_engine()
    return mixed_block(sign, t, b, p, k, h, eng), mixed_block(sign, t, b - 1, p - 1, k, h, eng)


def id_cXtbpkh_v(sign, t, h, b, p, k, engine=None):
    eng = engine or default_engine()
    lhs = mixed_block(sign, t, b, p, k, h, eng)
    rhs = UEAElement.zero(eng)
    for z in range(1, k + 1):
        rhs = rhs + (shifted_block(sign, t, z, h, eng) * mixed_block(sign, t, b - 1, p, k - z, h, eng)).scale(z)
    return lhs, rhs.scale(Fraction(1, k))


def id_cXtbpkh_vi(sign, t, h, b, p, k, engine=None):
    eng = engine or default_engine()
    lhs = mixed_block(sign, t, b, p, k, h, eng).scale(b - p + k)
    rhs = UEAElement.gen(_kind(sign), t, eng) * mixed_block(sign, t, b - 1, p, k, h, eng)
    for z in range(1, k + 1):
        rhs = rhs + (shifted_block(sign, t, z, h, eng) * mixed_block(sign, t, b - 1, p, k - z, h, eng)).scale(z + 1)
    return lhs, rhs


def id_cXt_cXs_cpks(s, t, c, p, k, engine=None):
    eng = engine or default_engine()
    h = s + t
    lhs = commutator(UEAElement.gen(XPLUS, t, eng), mixed_block("-", s, c, p, k, h, eng))
    rhs = UEAElement.zero(eng)
    for z in range(k + 1):
        left = mixed_block("-", s, c, p + 1, z, h, eng)
        if not left:
            continue
        for w in range(k - z + 1):
            rhs = rhs + _neg_q_power(left * jay_power((k - z + 1) * h + w, 1, eng), w, comb(k - z, w))
    rhs = rhs - mixed_block("-", s, c, p + 1, k + 1, h, eng).scale(k + 1)
    return lhs, rhs


def id_comm_rel(s, t, b, c, engine=None):
    eng = engine or default_engine()
    h = s + t
    lhs = commutator(divided_power("+", t, b, eng), divided_power("-", s, c, eng))
    rhs = UEAElement.zero(eng)
    for p in range(1, min(b, c) + 1):
        for k in range(p + 1):
            left = mixed_block("-", s, c, p, k, h, eng)
            if not left:
                continue
            for l in range(p - k + 1):
                right = mixed_block("+", t, b, p, l, h, eng)
                if not right:
                    continue
                term = left * jay_power(h, p - k - l, eng) * right
                rhs = rhs + term if (k + l) % 2 == 0 else rhs - term
    return lhs, rhs


def id_jay_power_2(s, engine=None):
    """J_s^{<2>} against its closed form in J_s, J_{s+1}, J_{2s}, J_{2s+1}, J_{2s+2}."""
    eng = engine or default_engine()
    J = lambda i: UEAElement.gen(JAY, i, eng)
    rhs = (
        (J(s) * J(s) - J(2 * s))
        + _neg_q_power(J(s) * J(s + 1) - J(2 * s + 1), 1, 2)
        + _neg_q_power(J(s + 1) * J(s + 1) - J(2 * s + 2), 2)
    ).scale(Fraction(1, 2))
    return jay_power(s, 2, eng), rhs


def closed_form_jay_power_3(s, engine=None):
    """A closed-form guess for J_s^{<3>}, kept for comparison only.

    It disagrees with the recursive definition already at Q = 0 (where the
    recursion gives the Newton form J^3/6 - J_s J_2s/2 + J_3s/3), so it is not
    part of the suite.
    """
    eng = engine or default_engine()
    J = lambda i: UEAElement.gen(JAY, i, eng)
    a, b = J(s), J(s + 1)
    rhs = (
        (a * a * a - (a * J(2 * s)).scale(2) + J(3 * s))
        + _neg_q_power(a * a * b - a * J(2 * s + 1) - b * J(2 * s) + J(3 * s + 1), 1, 3)
        + _neg_q_power(
            (a * b * b).scale(3) - (a * J(2 * s + 2)).scale(2) - (b * J(2 * s + 1)).scale(4) + J(3 * s + 2).scale(3),
            2,
        )
        + _neg_q_power(b * b * b - (b * J(2 * s + 2)).scale(2) + J(3 * s + 3), 3)
    ).scale(Fraction(1, 3))
    return jay_power(s, 3, eng), rhs


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    func: object
    params: tuple
    description: str
    scalar: bool = False  # binomial identity: returns a bool, no elements


IDENTITIES = {
    spec.name: spec
    for spec in [
        IdentitySpec("cJsp_cXt+", id_cJsp_cXt_plus, ("s", "t", "p"), "[J_s^<p>, X+_t]"),
        IdentitySpec("cJsp_cXt-", id_cJsp_cXt_minus, ("s", "t", "p"), "[J_s^<p>, X-_t]"),
        IdentitySpec("cXt_cXs_ph", id_cXt_cXs_ph, ("s", "t", "h", "p"), "[X+_t, X-_s^((p);h)]"),
        IdentitySpec("cJs1_cXtph+", id_cJs1_cXtph_plus, ("s", "t", "h", "p"), "[J_s^<1>, X+_t^((p);h)]"),
        IdentitySpec("cJs1_cXtph-", id_cJs1_cXtph_minus, ("s", "t", "h", "p"), "[J_s^<1>, X-_t^((p);h)]"),
        IdentitySpec("cXt_cXsc", id_cXt_cXsc, ("s", "t", "c"), "[X+_t, X-_s^(c)]"),
        IdentitySpec("cXtbpkh_i", id_cXtbpkh_i, ("sign", "t", "h", "b", "p", "k"), "b<p gives 0"),
        IdentitySpec("cXtbpkh_ii", id_cXtbpkh_ii, ("sign", "t", "h", "b", "p", "k"), "k=0,1 closed forms"),
        IdentitySpec("cXtbpkh_iii", id_cXtbpkh_iii, ("sign", "t", "h", "b", "k"), "p=b"),
        IdentitySpec("cXtbpkh_iv", id_cXtbpkh_iv, ("sign", "t", "h", "b", "p", "k"), "shift (b,p) down"),
        IdentitySpec("cXtbpkh_v", id_cXtbpkh_v, ("sign", "t", "h", "b", "p", "k"), "recursion in k"),
        IdentitySpec("cXtbpkh_vi", id_cXtbpkh_vi, ("sign", "t", "h", "b", "p", "k"), "recursion in b"),
        IdentitySpec("cXt_cXs_cpks", id_cXt_cXs_cpks, ("s", "t", "c", "p", "k"), "[X+_t, X-_s^(c;p|k;s+t)]"),
        IdentitySpec("comm_rel", id_comm_rel, ("s", "t", "b", "c"), "[X+_t^(b), X-_s^(c)]"),
        IdentitySpec("jay_power_2", id_jay_power_2, ("s",), "J_s^<2> expansion"),
        IdentitySpec("binomial_convolution", binomial_convolution_holds, ("z", "k", "w"), "binomial sum", True),
    ]
}


@dataclass
class IdentityResult:
    name: str
    params: dict
    holds: bool
    difference: UEAElement | None = None


def verify_identity(name, params, engine=None) -> IdentityResult:
    spec = IDENTITIES[name]
    args = [params[p] for p in spec.params]
    if spec.scalar:
        return IdentityResult(name, dict(params), bool(spec.func(*args)))
    lhs, rhs = spec.func(*args, engine=engine)
    diff = lhs - rhs
    return IdentityResult(name, dict(params), diff.is_zero(), None if diff.is_zero() else diff)


@dataclass
class GridConfig:
    st_max: int = 2      # s, t, h range 0..st_max
    bc_max: int = 4      # b, c range 1..bc_max
    part_max: int = 4    # partitions of size <= part_max
    p_max: int = 4       # p for the J^<p> and ((p);h) families
    z_max: int = 8       # binomial convolution range
    names: tuple | None = None

    def to_json(self):
        return {k: v if not isinstance(v, tuple) else list(v) for k, v in self.__dict__.items()}


def grid(cfg: GridConfig):
    """All (name, params) instances of the suite for a configuration."""
    S = range(cfg.st_max + 1)
    K = range(cfg.part_max + 1)
    out = []
    add = lambda n, **kw: out.append((n, kw))
    for s, t in itertools.product(S, S):
        for p in range(cfg.p_max + 1):
            add("cJsp_cXt+", s=s, t=t, p=p)
            add("cJsp_cXt-", s=s, t=t, p=p)
        for h in S:
            for p in range(1, cfg.p_max + 1):
                add("cXt_cXs_ph", s=s, t=t, h=h, p=p)
                add("cJs1_cXtph+", s=s, t=t, h=h, p=p)
                add("cJs1_cXtph-", s=s, t=t, h=h, p=p)
        for c in range(cfg.bc_max + 1):
            add("cXt_cXsc", s=s, t=t, c=c)
            for p in range(c + 1):
                for k in range(cfg.part_max):  # the right side uses partitions of k+1
                    add("cXt_cXs_cpks", s=s, t=t, c=c, p=p, k=k)
        for b in range(1, cfg.bc_max + 1):
            for c in range(1, cfg.bc_max + 1):
                add("comm_rel", s=s, t=t, b=b, c=c)
    for sign in "+-":
        for t, h in itertools.product(S, S):
            for b in range(cfg.bc_max + 1):
                for k in K:
                    add("cXtbpkh_iii", sign=sign, t=t, h=h, b=b, k=k)
                    add("cXtbpkh_i", sign=sign, t=t, h=h, b=b, p=b + 1, k=k)
                    for p in range(b + 1):
                        if k <= 1:
                            add("cXtbpkh_ii", sign=sign, t=t, h=h, b=b, p=p, k=k)
                        if b > 0 and p > 0:
                            add("cXtbpkh_iv", sign=sign, t=t, h=h, b=b, p=p, k=k)
                        if b > 0 and k > 0:
                            add("cXtbpkh_v", sign=sign, t=t, h=h, b=b, p=p, k=k)
                        if b > 0:
                            add("cXtbpkh_vi", sign=sign, t=t, h=h, b=b, p=p, k=k)
    for s in S:
        add("jay_power_2", s=s)
    for z in range(cfg.z_max + 1):
        for k in range(z + 1):
            for w in range(z + 1):
                add("binomial_convolution", z=z, k=k, w=w)
    if cfg.names:
        out = [(n, p) for n, p in out if n in cfg.names]
    return out


def run_suite(cfg: GridConfig | None = None, engine=None):
    """Verify every instance of the grid; returns {name: [IdentityResult, ...]}."""
    cfg = cfg or GridConfig()
    results = {}
    for name, params in grid(cfg):
        results.setdefault(name, []).append(verify_identity(name, params, engine))
    return results
