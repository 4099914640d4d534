"""PBW normal forms in the enveloping algebra of the rank-1 deformed current algebra.

Generators are X-_t, J_t, X+_t (t >= 0) with

    [J_s, J_t] = 0,  [J_s, X±_t] = ±2 X±_{s+t},
    [X+_t, X-_s] = J_{s+t} - Q J_{s+t+1},  [X±_t, X±_s] = 0.

A monomial is a triple ``(M, J, P)`` of ascending degree tuples (repeats
allowed) standing for the ordered product X-_M * J_J * X+_P.  Elements keep
integer numerators keyed by ``(monomial, power of Q)`` over one common
positive denominator, so the inner loops never touch Fractions.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_right
from collections import namedtuple
from fractions import Fraction

from . import kernels
from .scalars import QPolynomial, as_rational, format_rational, parse_rational

XMINUS, JAY, XPLUS = 0, 1, 2
KIND_NAMES = {XMINUS: "X-", JAY: "J", XPLUS: "X+"}

Generator = namedtuple("Generator", "kind t")

EMPTY = ((), (), ())
DEFAULT_CEILING = 10 ** 6


class TermCeilingExceeded(RuntimeError):
    """An intermediate result exceeded the configured number of terms."""


def _ins(tup, x):
    i = bisect_right(tup, x)
    return tup[:i] + (x,) + tup[i:]


class Engine:
    """Memoized right multiplication of normal-form monomials by generators."""

    def __init__(self, ceiling=DEFAULT_CEILING):
        self.ceiling = ceiling
        self._memo = {}

    def clear(self):
        self._memo.clear()

    def rule(self, mono, kind, t):
        """Normal form of ``mono * gen(kind, t)`` as (monomial, q_shift, int) triples."""
        key = (mono, kind, t)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        M, J, P = mono
        if kind == XPLUS:
            res = (((M, J, _ins(P, t)), 0, 1),)
        elif kind == JAY:
            acc = {((M, _ins(J, t), P), 0): 1}
            # moving J_t left past each X+_a leaves -2 X+_{a+t} in its place
            for i, a in enumerate(P):
                k = ((M, J, _ins(P[:i] + P[i + 1:], a + t)), 0)
                acc[k] = acc.get(k, 0) - 2
            res = tuple((m, q, c) for (m, q), c in acc.items() if c)
        elif P:
            # (..X+_a) X-_t = (..)(X-_t X+_a + J_{a+t} - Q J_{a+t+1})
            base, a = (M, J, P[:-1]), P[-1]
            acc = {}
            for m2, q2, c2 in self.rule(base, XMINUS, t):
                k = ((m2[0], m2[1], _ins(m2[2], a)), q2)
                acc[k] = acc.get(k, 0) + c2
            for m2, q2, c2 in self.rule(base, JAY, a + t):
                k = (m2, q2)
                acc[k] = acc.get(k, 0) + c2
            for m2, q2, c2 in self.rule(base, JAY, a + t + 1):
                k = (m2, q2 + 1)
                acc[k] = acc.get(k, 0) - c2
            res = tuple((m, q, c) for (m, q), c in acc.items() if c)
        elif J:
            # (..J_b) X-_t = (..)(X-_t J_b - 2 X-_{b+t})
            base, b = (M, J[:-1], ()), J[-1]
            acc = {}
            for m2, q2, c2 in self.rule(base, XMINUS, t):
                for m3, q3, c3 in self.rule(m2, JAY, b):
                    k = (m3, q2 + q3)
                    acc[k] = acc.get(k, 0) + c2 * c3
            for m2, q2, c2 in self.rule(base, XMINUS, b + t):
                k = (m2, q2)
                acc[k] = acc.get(k, 0) - 2 * c2
            res = tuple((m, q, c) for (m, q), c in acc.items() if c)
        else:
            res = (((_ins(M, t), J, P), 0, 1),)
        self._memo[key] = res
        return res

    def mul_gen(self, terms, kind, t):
        rule = self.rule
        out = kernels.mul_terms(terms, lambda mono: rule(mono, kind, t))
        if len(out) > self.ceiling:
            raise TermCeilingExceeded(f"{len(out)} terms exceed the ceiling {self.ceiling}")
        return out

    def mul_word(self, terms, mono):
        """terms * (the ordered generator word of ``mono``)."""
        M, J, P = mono
        for t in M:
            terms = self.mul_gen(terms, XMINUS, t)
        for t in J:
            terms = self.mul_gen(terms, JAY, t)
        for t in P:
            terms = self.mul_gen(terms, XPLUS, t)
        return terms


_default_engine = None


def default_engine():
    global _default_engine
    if _default_engine is None:
        _default_engine = Engine()
    return _default_engine


def word_of(mono):
    M, J, P = mono
    return tuple(Generator(XMINUS, t) for t in M) + tuple(Generator(JAY, t) for t in J) + tuple(
        Generator(XPLUS, t) for t in P
    )


class UEAElement:
    """An element of U(sl_2^<Q>[x]) in PBW normal form.

    ``terms`` maps (monomial, power of Q) to an integer numerator, ``den`` is
    the shared positive denominator.  The pair is kept reduced, so equality is
    structural.
    """

    __slots__ = ("terms", "den", "engine")

    def __init__(self, terms=None, den=1, engine=None):
        self.engine = engine or default_engine()
        self.terms = {k: v for k, v in (terms or {}).items() if v}
        self.den = den
        self._reduce()

    @classmethod
    def _raw(cls, terms, den, engine):
        e = cls.__new__(cls)
        e.terms, e.den, e.engine = terms, den, engine
        e._reduce()
        return e

    def _reduce(self):
        if not self.terms:
            self.den = 1
            return
        if self.den < 0:
            self.den = -self.den
            self.terms = {k: -v for k, v in self.terms.items()}
        if self.den == 1:
            return
        g = self.den
        for v in self.terms.values():
            g = math.gcd(g, v)
            if g == 1:
                return
        self.den //= g
        self.terms = {k: v // g for k, v in self.terms.items()}

    # construction ---------------------------------------------------------
    @classmethod
    def one(cls, engine=None):
        return cls({(EMPTY, 0): 1}, 1, engine)

    @classmethod
    def zero(cls, engine=None):
        return cls({}, 1, engine)

    @classmethod
    def gen(cls, kind, t, engine=None):
        if t < 0:
            raise ValueError(f"generator degree must be nonnegative, got {t}")
        mono = [(), (), ()]
        mono[kind] = (t,)
        return cls({(tuple(mono), 0): 1}, 1, engine)

    @classmethod
    def from_coefficients(cls, coeffs, engine=None):
        """Build from {monomial: QPolynomial or rational}."""
        items = {}
        for mono, p in coeffs.items():
            if not isinstance(p, QPolynomial):
                p = QPolynomial.constant(p, 1)
            for (e,), c in p.terms.items():
                items[(mono, e)] = items.get((mono, e), 0) + c
        den = math.lcm(1, *(Fraction(v).denominator for v in items.values()))
        return cls({k: int(Fraction(v) * den) for k, v in items.items()}, den, engine)

    # arithmetic -----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _combine(self, other, sign):
        L = math.lcm(self.den, other.den)
        out = {k: v * (L // self.den) for k, v in self.terms.items()}
        kernels.add_scaled(out, other.terms, sign * (L // other.den), 0)
        return UEAElement._raw(out, L, self.engine)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UEAElement.one(self.engine).scale(other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UEAElement.one(self.engine).scale(other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return UEAElement._raw({k: -v for k, v in self.terms.items()}, self.den, self.engine)

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return UEAElement.zero(self.engine)
        return UEAElement._raw(
            {k: v * c.numerator for k, v in self.terms.items()}, self.den * c.denominator, self.engine
        )

    def mul_qpoly(self, p: QPolynomial):
        """Multiply by a polynomial in Q (central)."""
        if p.nvars != 1:
            raise ValueError("rank-1 coefficients live in Q[Q]")
        den = math.lcm(1, *(c.denominator for c in p.terms.values()))
        out = {}
        for (e,), c in p.terms.items():
            kernels.add_scaled(out, self.terms, int(c * den), e)
        return UEAElement._raw(out, self.den * den, self.engine)

    def shift_q(self, n=1, factor=1):
        """factor * Q^n * self."""
        return UEAElement._raw(
            {(m, q + n): v * factor for (m, q), v in self.terms.items()}, self.den, self.engine
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, QPolynomial):
            return self.mul_qpoly(other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        eng = self.engine
        by_mono = {}
        for (mono, q), c in other.terms.items():
            by_mono.setdefault(mono, []).append((q, c))
        out = {}
        for mono, coeffs in by_mono.items():
            prod = eng.mul_word(self.terms, mono)
            for q, c in coeffs:
                kernels.add_scaled(out, prod, c, q)
            if len(out) > eng.ceiling:
                raise TermCeilingExceeded(f"{len(out)} terms exceed the ceiling {eng.ceiling}")
        return UEAElement._raw(out, self.den * other.den, eng)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, QPolynomial):
            return self.mul_qpoly(other)
        return NotImplemented

    def __pow__(self, n):
        out = UEAElement.one(self.engine)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UEAElement.one(self.engine).scale(other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.den == other.den and self.terms == other.terms

    def __hash__(self):
        return hash((self.den, frozenset(self.terms.items())))

    # views ----------------------------------------------------------------
    def coefficients(self):
        """{monomial: QPolynomial}."""
        out = {}
        for (mono, q), c in self.terms.items():
            out.setdefault(mono, {})[(q,)] = Fraction(c, self.den)
        return {m: QPolynomial(t, 1) for m, t in out.items()}

    def monomials(self):
        return sorted({m for m, _ in self.terms}, key=_mono_sort_key)

    def __len__(self):
        return len({m for m, _ in self.terms})

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"UEAElement({format_element(self)!r})"

    def to_json(self):
        coeffs = self.coefficients()
        return [
            {"monomial": [list(b) for b in m], "coefficient": coeffs[m].to_json()}
            for m in sorted(coeffs, key=_mono_sort_key)
        ]

    @classmethod
    def from_json(cls, data, engine=None):
        coeffs = {
            tuple(tuple(b) for b in item["monomial"]): QPolynomial.from_json(item["coefficient"], 1)
            for item in data
        }
        return cls.from_coefficients(coeffs, engine)


def gen(kind, t, engine=None):
    return UEAElement.gen(kind, t, engine)


def xp(t, engine=None):
    return UEAElement.gen(XPLUS, t, engine)


def xm(t, engine=None):
    return UEAElement.gen(XMINUS, t, engine)


def jay(t, engine=None):
    return UEAElement.gen(JAY, t, engine)


def commutator(a, b):
    return a * b - b * a


def dagger(e: UEAElement) -> UEAElement:
    """Anti-automorphism swapping X+ and X-; on normal forms it swaps the outer blocks."""
    return UEAElement._raw({((m[2], m[1], m[0]), q): c for (m, q), c in e.terms.items()}, e.den, e.engine)


def bracket_gen(a: Generator, b: Generator):
    """[a, b] as a list of (Generator, QPolynomial) pairs."""
    one = QPolynomial.constant(1, 1)
    Q = QPolynomial.var(0, 1)
    if a.kind == b.kind:
        return []
    if a.kind == JAY:
        sign = 2 if b.kind == XPLUS else -2
        return [(Generator(b.kind, a.t + b.t), one.scale(sign))]
    if b.kind == JAY:
        sign = -2 if a.kind == XPLUS else 2
        return [(Generator(a.kind, a.t + b.t), one.scale(sign))]
    s = a.t + b.t
    out = [(Generator(JAY, s), one), (Generator(JAY, s + 1), -Q)]
    if a.kind == XMINUS:
        out = [(g, -c) for g, c in out]
    return out


def bracket_gen_element(a: Generator, b: Generator, engine=None):
    out = UEAElement.zero(engine)
    for g, c in bracket_gen(a, b):
        out = out + UEAElement.gen(g.kind, g.t, engine).mul_qpoly(c)
    return out


# ---------------------------------------------------------------------------
# unnormalized sums of words, and an independent bubble-swap straightener
# ---------------------------------------------------------------------------

class WordSum:
    """A formal Q[Q]-linear combination of generator words (not normalized)."""

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            self._add(tuple(w), c)

    def _add(self, w, c):
        if not isinstance(c, QPolynomial):
            c = QPolynomial.constant(c, 1)
        v = self.terms.get(w)
        v = c if v is None else v + c
        if v:
            self.terms[w] = v
        else:
            self.terms.pop(w, None)

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    @classmethod
    def word(cls, *gens):
        return cls({tuple(gens): 1})

    def __add__(self, other):
        out = WordSum(self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __neg__(self):
        return WordSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QPolynomial)):
            return WordSum({w: c * other for w, c in self.terms.items()})
        out = WordSum()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._add(w1 + w2, c1 * c2)
        return out

    def __pow__(self, n):
        out = WordSum.scalar(1)
        for _ in range(n):
            out = out * self
        return out


def normalize(ws, engine=None) -> UEAElement:
    """PBW normal form of a WordSum (or pass-through for an element)."""
    if isinstance(ws, UEAElement):
        return ws
    engine = engine or default_engine()
    out = UEAElement.zero(engine)
    for w, c in ws.terms.items():
        terms = {(EMPTY, 0): 1}
        for g in w:
            terms = engine.mul_gen(terms, g.kind, g.t)
        out = out + UEAElement._raw(terms, 1, engine).mul_qpoly(c)
    return out


def _gen_key(g):
    return (g.kind, g.t)


def rewrite(ws: WordSum, order="leftmost", seed=None, ceiling=DEFAULT_CEILING, engine=None) -> UEAElement:
    """Straighten by swapping adjacent out-of-order generators one at a time.

    Shares no code with :class:`Engine`; used to check confluence.  ``order``
    is ``"leftmost"`` or ``"random"`` (which disordered pair to swap next).
    """
    rng = random.Random(seed)
    work = dict(ws.terms)
    done = {}
    while work:
        w, c = work.popitem()
        bad = [i for i in range(len(w) - 1) if _gen_key(w[i]) > _gen_key(w[i + 1])]
        if not bad:
            v = done.get(w)
            v = c if v is None else v + c
            if v:
                done[w] = v
            else:
                done.pop(w, None)
            continue
        i = bad[0] if order == "leftmost" else rng.choice(bad)
        a, b = w[i], w[i + 1]
        pieces = [(w[:i] + (b, a) + w[i + 2:], c)]
        for g, k in bracket_gen(a, b):
            pieces.append((w[:i] + (g,) + w[i + 2:], c * k))
        for nw, nc in pieces:
            v = work.get(nw)
            v = nc if v is None else v + nc
            if v:
                work[nw] = v
            else:
                work.pop(nw, None)
        if len(work) + len(done) > ceiling:
            raise TermCeilingExceeded(f"rewriting exceeded {ceiling} terms")
    coeffs = {}
    for w, c in done.items():
        mono = (
            tuple(g.t for g in w if g.kind == XMINUS),
            tuple(g.t for g in w if g.kind == JAY),
            tuple(g.t for g in w if g.kind == XPLUS),
        )
        coeffs[mono] = coeffs[mono] + c if mono in coeffs else c
    return UEAElement.from_coefficients({m: c for m, c in coeffs.items() if c}, engine)


# ---------------------------------------------------------------------------
# printing and parsing
# ---------------------------------------------------------------------------

def _mono_sort_key(mono):
    word = tuple(_gen_key(g) for g in word_of(mono))
    return (-len(word), word)


def format_monomial(mono):
    parts = []
    for kind, block in zip((XMINUS, JAY, XPLUS), mono):
        i = 0
        while i < len(block):
            j = i
            while j < len(block) and block[j] == block[i]:
                j += 1
            name = f"{KIND_NAMES[kind]}({block[i]})"
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
    return "*".join(parts)


def format_element(e: UEAElement) -> str:
    coeffs = e.coefficients()
    if not coeffs:
        return "0"
    pieces = []
    for mono in sorted(coeffs, key=_mono_sort_key):
        c = coeffs[mono]
        body = format_monomial(mono)
        sign = "+"
        if len(c.terms) == 1:
            (exp, v), = c.terms.items()
            if v < 0:
                sign, c = "-", -c
            cs = c.format()
            if not body:
                text = cs
            elif cs == "1":
                text = body
            else:
                text = f"{cs}*{body}"
        else:
            cs = c.format()
            text = f"({cs})*{body}" if body else cs
        pieces.append((sign, text))
    sign, text = pieces[0]
    out = ("-" if sign == "-" else "") + text
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


class ParseError(ValueError):
    def __init__(self, msg, pos):
        self.pos = pos
        super().__init__(f"{msg} at position {pos}")


class _Parser:
    """expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
    factor := ['-'] atom ['^' int] ; atom := int ['/' int] | Q | X+(t) | X-(t) | J(t) | '(' expr ')'"""

    def __init__(self, text):
        self.s = text
        self.i = 0

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self):
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.i)
        self.i += 1

    def integer(self):
        self.ws()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            raise ParseError("expected an integer", self.i)
        v = int(self.s[self.i:j])
        self.i = j
        return v

    def expr(self):
        if self.peek() in "+-":
            neg = self.s[self.i] == "-"
            self.i += 1
            out = self.term()
            if neg:
                out = -out
        else:
            out = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.s[self.i]
            self.i += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.i += 1
            out = out * self.factor()
        return out

    def factor(self):
        if self.peek() == "-":
            self.i += 1
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            base = base ** self.integer()
        return base

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.i += 1
            out = self.expr()
            self.expect(")")
            return out
        if ch.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.i += 1
                pos = self.i
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator", pos)
                return WordSum.scalar(Fraction(num, den))
            return WordSum.scalar(num)
        if ch == "Q":
            self.i += 1
            return WordSum.scalar(QPolynomial.var(0, 1))
        for name, kind in (("X+", XPLUS), ("X-", XMINUS), ("J", JAY)):
            if self.s.startswith(name, self.i):
                self.i += len(name)
                self.expect("(")
                t = self.integer()
                self.expect(")")
                return WordSum.word(Generator(kind, t))
        raise ParseError(f"unexpected {ch!r}" if ch else "unexpected end of input", self.i)


def parse(text: str) -> WordSum:
    p = _Parser(text)
    out = p.expr()
    p.ws()
    if p.i != len(p.s):
        raise ParseError(f"unexpected {p.s[p.i]!r}", p.i)
    return out


def parse_element(text: str, engine=None) -> UEAElement:
    return normalize(parse(text), engine)


__all__ = [
    "Engine", "Generator", "UEAElement", "WordSum", "TermCeilingExceeded", "ParseError",
    "XMINUS", "JAY", "XPLUS", "bracket_gen", "bracket_gen_element", "commutator", "dagger",
    "normalize", "rewrite", "parse", "parse_element", "format_element", "format_monomial",
    "gen", "xp", "xm", "jay", "default_engine", "format_rational", "parse_rational",
]
