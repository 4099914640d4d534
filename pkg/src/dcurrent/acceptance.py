"""The acceptance suite: seven end-to-end checks with JSON-friendly reports.

Each ``criterion_k`` returns a :class:`CriterionResult`; ``run_all`` runs them
in order.  Randomized choices go through one seeded ``random.Random`` per
criterion, and the seed is echoed in the report.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import classify as C
from . import identities, liealg, oracles, repmod, symfun
from .scalars import format_rational, monic_from_roots

F0, F1 = Fraction(0), Fraction(1)

DEFAULT_SEED = 20240917
ORACLE_DIM_LIMIT = 16


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        return f"criterion {self.number} [{'PASS' if self.passed else 'FAIL'}] {self.title}"

    def to_json(self):
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "detail": self.detail,
        }


def _timed(fn):
    def run(*a, **kw):
        t0 = time.perf_counter()
        res = fn(*a, **kw)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# ---------------------------------------------------------------------------
# 1. rank-1 identity suite
# ---------------------------------------------------------------------------

@_timed
def criterion_1(cfg=None):
    """Every rank-1 enveloping-algebra identity over the parameter grid."""
    cfg = cfg or identities.GridConfig()
    results = identities.run_suite(cfg)
    fams = {}
    failures = []
    for name, rs in sorted(results.items()):
        ok = sum(r.holds for r in rs)
        fams[name] = {"passed": ok, "total": len(rs)}
        failures.extend({"identity": name, "params": r.params} for r in rs if not r.holds)
    return CriterionResult(
        1, "rank-1 identity suite", not failures,
        {"grid": cfg.to_json(), "families": fams, "failures": failures[:20],
         "instances": sum(v["total"] for v in fams.values())},
    )


# ---------------------------------------------------------------------------
# 2. structure constants
# ---------------------------------------------------------------------------

Q_POOL = (F0, F1, Fraction(1, 2), Fraction(-2, 3))


def _q_vectors(m, rng):
    vecs = [tuple([F0] * (m - 1))]
    while len(vecs) < 2:
        v = tuple(rng.choice(Q_POOL) for _ in range(m - 1))
        if any(v):
            vecs.append(v)
    return vecs


def check_table(spec, jacobi=True):
    table = liealg.structure_constants(spec)
    rel = liealg.check_relations(table, spec)
    out = {
        "relations": rel.to_json()["families"],
        "relation_failures": len(rel.failures),
        "antisymmetry_failures": len(liealg.check_antisymmetry(table)),
    }
    if jacobi:
        out["jacobi_failures"] = len(liealg.check_jacobi(table))
    if not any(spec.Q):
        els = liealg.basis(spec)
        bad = 0
        for a, b in itertools.product(els, els):
            if table.bracket_basis(a, b) != liealg.classical_bracket(spec, a, b):
                bad += 1
        out["classical_mismatches"] = bad
    out["ok"] = not (
        out["relation_failures"] or out["antisymmetry_failures"]
        or out.get("jacobi_failures") or out.get("classical_mismatches")
    )
    return out


@_timed
def criterion_2(seed=DEFAULT_SEED, ms=(2, 3, 4), N=3, variants=("sl", "gl")):
    """Structure tables: relations, antisymmetry, Jacobi, and the Q = 0 oracle."""
    rng = random.Random(seed)
    runs = []
    for m in ms:
        for Q in _q_vectors(m, rng):
            for variant in variants:
                spec = liealg.AlgebraSpec(m, variant, Q, N)
                res = check_table(spec)
                res.update({"m": m, "variant": variant, "Q": [format_rational(q) for q in Q]})
                runs.append(res)
    return CriterionResult(2, "structure-constant suite", all(r["ok"] for r in runs),
                           {"seed": seed, "N": N, "runs": runs})


# ---------------------------------------------------------------------------
# shared module checks
# ---------------------------------------------------------------------------

def _oracle_check(mods, record):
    """maximal_submodule against the raising-word oracle on every module of small dimension."""
    for label, M in mods:
        if M.dim > ORACLE_DIM_LIMIT or M.v0 is None:
            continue
        a = repmod.maximal_submodule(M)
        b = oracles.radical_by_raising_words(M)
        record["oracle_checked"] += 1
        if a != b or not oracles.is_invariant(M, b):
            record["oracle_mismatches"].append(label)


def rank1_data(Qs=(F0, F1, Fraction(1, 3)), pool=(-1, 0, 1, 2), max_deg=3, betas=(F0, F1, Fraction(-1, 2))):
    out = []
    for Q in Qs:
        for n in range(max_deg + 1):
            for roots in itertools.combinations_with_replacement(pool, n):
                for b in (betas if Q else (F0,)):
                    out.append((Q, roots, b))
    return out


def _label(*parts):
    return " ".join(str(p) for p in parts)


# ---------------------------------------------------------------------------
# 3. rank-1 classification
# ---------------------------------------------------------------------------

def rank1_modules(data=None):
    """(label, datum, spec, stages) for the rank-1 family."""
    for Q, roots, b in data or rank1_data():
        spec = liealg.AlgebraSpec(2, "sl", (Q,), 3)
        d = C.ClassificationDatum((monic_from_roots(roots),), (b,))
        stages = repmod.build_stages(C.recipe_from_datum(d, spec))
        yield _label("Q=" + format_rational(Q), "roots=" + ",".join(map(str, roots)), "beta=" + format_rational(b)), d, spec, stages


def raw_hw_rank1(Q, roots, b, T):
    """The closed-form weight straight from a (possibly non-canonical) datum."""
    inst = symfun.SymInstance(tuple(Fraction(r) for r in roots))
    u = {(1, 0): len(roots) + b}
    for t in range(1, T + 1):
        u[(1, t)] = symfun.power_sum(inst, t) + (b / Q ** t if Q else F0)
    return u


@_timed
def criterion_3(data=None):
    """Rank-1 modules: dimension, highest weight, round trip, injectivity."""
    data = data or rank1_data()
    rec = {"modules": 0, "hw_mismatches": [], "roundtrip_failures": [], "relation_failures": [],
           "oracle_checked": 0, "oracle_mismatches": [], "dims": {}}
    seen = {}
    clashes = []
    for (label, d, spec, st), (Q, roots, b) in zip(rank1_modules(data), data):
        S = st.simple
        rec["modules"] += 1
        rec["dims"][label] = S.dim
        u, v = repmod.highest_weight_of(S)
        canon = C.canonicalize(d, spec.Q)
        if u != raw_hw_rank1(Q, roots, b, S.T) or u != C.hw_from_datum(canon, spec, S.T).u:
            rec["hw_mismatches"].append(label)
        if not C.same_datum(C.extract_datum(S, (u, v)), canon):
            rec["roundtrip_failures"].append(label)
        if not repmod.check_module_relations(S).ok or repmod.check_weight_grading(S):
            rec["relation_failures"].append(label)
        _oracle_check([(label + " cyclic", st.cyclic), (label + " simple", S)], rec)
        key = tuple(tuple(p.coefficients) for p in canon.phi) + (canon.beta, Q)
        wkey = (Q, tuple(sorted(u.items())))
        if wkey in seen and seen[wkey] != key:
            clashes.append([seen[wkey], key])
        seen.setdefault(wkey, key)
    rec["weight_clashes"] = len(clashes)
    # injectivity of the closed form at t <= total degree + 1, over canonical data only
    formula_clashes = 0
    for Q in sorted({q for q, _, _ in data}):
        spec = liealg.AlgebraSpec(2, "sl", (Q,), 3)
        canon = []
        for q, roots, b in data:
            if q != Q:
                continue
            c = C.canonicalize(C.ClassificationDatum((monic_from_roots(roots),), (b,)), (Q,))
            if all(not C.same_datum(c, x) for x in canon):
                canon.append(c)
        formula_clashes += len(C.distinct_truncations(canon, spec, 4))
    rec["formula_clashes"] = formula_clashes
    ok = not (rec["hw_mismatches"] or rec["roundtrip_failures"] or rec["relation_failures"]
              or clashes or formula_clashes or rec["oracle_mismatches"])
    return CriterionResult(3, "rank-1 classification", ok, rec)


# ---------------------------------------------------------------------------
# 4. the non-simple evaluation module
# ---------------------------------------------------------------------------

def split_point_modules(T=3):
    spec = liealg.AlgebraSpec(2, "sl", (F1,), 3)
    M = repmod.evaluation_twist(repmod.fundamental_module(2, 1), F1, spec, T)
    return spec, M


@_timed
def criterion_4(T=3):
    """Q = 1, gamma = 1: one proper submodule, L^{-1} inside, L^1 on top."""
    spec, M = split_point_modules(T)
    d = {}
    spaces = oracles.common_eigenspaces(M)
    d["invariant_lines"] = len(spaces)
    d["all_lines"] = all(len(s) == 1 for s in spaces)
    rad = repmod.maximal_submodule(M)
    d["radical_dim"] = len(rad)
    v1 = [F0, F1]
    d["cyclic_v1_dim"] = repmod.cyclic_submodule(M, v1).dim
    sub, quo = repmod.subquotient(M, rad)
    d["submodule_is_L-1"] = sub.gens == repmod.one_dim_sl(spec, (-1,), T).gens
    d["quotient_is_L1"] = quo.gens == repmod.one_dim_sl(spec, (1,), T).gens
    d["xplus_zero"] = all(not any(any(r) for r in M.gens[t]) for t in M.gens if t[0] == "X+")
    d["line_is_radical"] = len(spaces) == 1 and spaces[0] == rad
    quo.v0 = quo.v0 or [F1]
    ex = C.extract_datum(quo)
    d["quotient_datum"] = ex.to_json()
    d["quotient_datum_is_(1,1)"] = ex.phi[0].degree == 0 and ex.beta == (F1,)
    d["relations"] = repmod.check_module_relations(M).ok
    ok = (
        d["invariant_lines"] == 1 and d["all_lines"] and d["radical_dim"] == 1 and d["cyclic_v1_dim"] == 1
        and d["submodule_is_L-1"] and d["quotient_is_L1"] and d["xplus_zero"] and d["line_is_radical"]
        and d["quotient_datum_is_(1,1)"] and d["relations"]
    )
    return CriterionResult(4, "non-simple evaluation module at Q=1, gamma=1", ok, d)


# ---------------------------------------------------------------------------
# 5. rank m and gl
# ---------------------------------------------------------------------------

RANKM_ROOTS = (None, -1, 0, 2)
RANKM_BETAS = (F0, Fraction(1, 2), F1)


def rankm_data(seed=DEFAULT_SEED, m=3, qcount=3):
    rng = random.Random(seed)
    Qs = [tuple([F0] * (m - 1))]
    while len(Qs) < qcount:
        v = tuple(rng.choice(Q_POOL) for _ in range(m - 1))
        if v not in Qs:
            Qs.append(v)
    h = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(4))
    out = []
    for Q in Qs:
        for roots in itertools.product(RANKM_ROOTS, repeat=m - 1):
            betas = itertools.product(*[(RANKM_BETAS if q else (F0,)) for q in Q])
            for beta in betas:
                # one nonzero beta pattern per root choice keeps the family small
                if sum(1 for b in beta if b) > 1:
                    continue
                phi = tuple(monic_from_roots(() if r is None else (r,)) for r in roots)
                out.append((Q, C.ClassificationDatum(phi, beta, h)))
    return out, h


@_timed
def criterion_5(seed=DEFAULT_SEED, m=3, relations_every=4):
    """gl_3 modules from data with deg phi_i <= 1, their sl restrictions, and fundamentals."""
    data, h = rankm_data(seed, m)
    rec = {"seed": seed, "h": [format_rational(x) for x in h], "modules": 0, "hw_mismatches": [],
           "h_row_mismatches": [], "restriction_not_simple": [], "z1_mismatches": [],
           "roundtrip_failures": [], "relation_failures": [], "relations_checked": 0,
           "oracle_checked": 0, "oracle_mismatches": []}
    for k, (Q, d) in enumerate(data):
        spec = liealg.AlgebraSpec(m, "gl", Q, 3)
        st = repmod.build_stages(C.recipe_from_datum(d, spec))
        S = st.simple
        label = _label("Q=" + ",".join(map(format_rational, Q)), [str(p) for p in d.phi],
                       "beta=" + ",".join(map(format_rational, d.beta)))
        rec["modules"] += 1
        u, v = repmod.highest_weight_of(S)
        canon = C.canonicalize(d, Q)
        want = C.hw_from_datum_gl(canon, Q, S.T)
        if u != want.u:
            rec["hw_mismatches"].append(label)
        if [u[(m, t)] for t in range(S.T + 1)] != list(h[: S.T + 1]):
            rec["h_row_mismatches"].append(label)
        if not C.same_datum(C.extract_datum(S, (u, v)), canon.h_prefix(S.T)):
            rec["roundtrip_failures"].append(label)
        R = repmod.restrict_to_sl(S)
        if not repmod.is_simple(R):
            rec["restriction_not_simple"].append(label)
        ur, _ = repmod.highest_weight_of(R)
        sl_want = C.hw_from_datum_sl(C.ClassificationDatum(canon.phi, canon.beta), Q, S.T).u
        if ur != sl_want or ur != C.weight_difference_rows(want):
            rec["z1_mismatches"].append(label)
        if k % relations_every == 0:
            rec["relations_checked"] += 1
            if not (repmod.check_module_relations(S).ok and repmod.check_module_relations(R).ok):
                rec["relation_failures"].append(label)
        _oracle_check([(label + " cyclic", st.cyclic), (label + " simple", S), (label + " restricted", R)], rec)
    fund = {}
    for mm in (m, m + 1):
        for l in range(1, mm):
            spec = liealg.AlgebraSpec(mm, "gl", tuple([F0] * (mm - 1)), 3)
            hpre = (F0,) * 4
            d = C.ClassificationDatum(
                tuple(monic_from_roots((2,) if i == l else ()) for i in range(1, mm)), (F0,) * (mm - 1), hpre
            )
            S = repmod.simple_from_recipe(C.recipe_from_datum(d, spec))
            fund[f"m={mm},l={l}"] = [S.dim, comb(mm, l), repmod.fundamental_module(mm, l).dim]
    rec["fundamental_dims"] = fund
    fund_ok = all(a == b == c for a, b, c in fund.values())
    ok = fund_ok and not any(
        rec[k] for k in ("hw_mismatches", "h_row_mismatches", "restriction_not_simple", "z1_mismatches",
                         "roundtrip_failures", "relation_failures", "oracle_mismatches")
    )
    return CriterionResult(5, "rank-3 sl and gl classification", ok, rec)


# ---------------------------------------------------------------------------
# 6. symmetric function identities
# ---------------------------------------------------------------------------

def _rand_points(rng, n, weighted=False):
    pts = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n))
    wts = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)) if weighted else None
    return symfun.SymInstance(pts, wts)


@_timed
def criterion_6(seed=DEFAULT_SEED, samples=5):
    """Newton-type identities numerically (n <= 6) and symbolically (n <= 3); power-sum inversion."""
    rng = random.Random(seed)
    fails = []
    count = 0

    def check(tag, inst):
        nonlocal count
        n = inst.n
        tests = [("newton", k, lambda k=k: symfun.check_newton_identity(inst, k)) for k in range(1, n + 1)]
        tests += [("tail", s, lambda s=s: symfun.check_tail_identity(inst, s)) for s in range(n + 1, n + 4)]
        if inst.weights is not None:
            tests.append(("weighted_tail", n, lambda: symfun.check_weighted_tail_identity(inst)))
            tests.append(("generating", n, lambda: symfun.check_generating_identity(inst)))
        for name, k, fn in tests:
            count += 1
            if not fn():
                fails.append([tag, name, n, k])

    for n in range(1, 7):
        for _ in range(samples):
            check("numeric", _rand_points(rng, n, weighted=True))
    for n in range(1, 4):
        check("symbolic", symfun.SymInstance.symbolic(n, weighted=True))
    rt = 0
    rt_fail = []
    for n in range(1, 6):
        for _ in range(samples):
            roots = sorted(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n))
            inst = symfun.SymInstance(tuple(roots))
            sol = symfun.solve_power_sum_system([symfun.power_sum(inst, k) for k in range(1, n + 1)])
            rt += 1
            if sol.roots is None or list(sol.roots) != roots:
                rt_fail.append([format_rational(r) for r in roots])
    return CriterionResult(
        6, "symmetric function identities", not fails and not rt_fail,
        {"seed": seed, "identity_checks": count, "failures": fails, "roundtrips": rt, "roundtrip_failures": rt_fail},
    )


# ---------------------------------------------------------------------------
# 7. oracle agreement
# ---------------------------------------------------------------------------

@_timed
def criterion_7(seed=DEFAULT_SEED, r3=None, r5=None):
    """maximal_submodule against the raising-word oracle on the modules of 3-5."""
    r3 = r3 or criterion_3()
    r5 = r5 or criterion_5(seed)
    spec, M = split_point_modules()
    rec = {"oracle_checked": 0, "oracle_mismatches": []}
    _oracle_check([("split_point", M)], rec)
    checked = r3.detail["oracle_checked"] + r5.detail["oracle_checked"] + rec["oracle_checked"]
    mism = r3.detail["oracle_mismatches"] + r5.detail["oracle_mismatches"] + rec["oracle_mismatches"]
    return CriterionResult(7, "radical vs exhaustive oracle", checked > 0 and not mism,
                           {"modules_checked": checked, "mismatches": mism})


def run_all(seed=DEFAULT_SEED):
    out = [criterion_1(), criterion_2(seed)]
    r3 = criterion_3()
    out.append(r3)
    out.append(criterion_4())
    r5 = criterion_5(seed)
    out.append(r5)
    out.append(criterion_6(seed))
    out.append(criterion_7(seed, r3, r5))
    return out
