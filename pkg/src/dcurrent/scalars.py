"""Exact scalars: rationals, sparse polynomials in the deformation parameters,
and monic polynomials over Q.

Rationals are plain :class:`fractions.Fraction` values.  Everything in this
package keeps them in lowest terms with a positive denominator, which is what
``Fraction`` does on construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

Rational = Fraction


class ArityError(ValueError):
    """Two polynomials over different numbers of indeterminates were combined."""


class NotFullyFactorable(ArithmeticError):
    """A monic polynomial does not split into linear factors over Q.

    ``roots`` holds the rational roots that were found (with multiplicity);
    ``remainder_degree`` is the degree of the factor left over.
    """

    def __init__(self, roots, remainder_degree):
        self.roots = tuple(roots)
        self.remainder_degree = remainder_degree
        super().__init__(
            f"polynomial does not split over Q: irreducible remainder of degree {remainder_degree}"
        )


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return Fraction(x)


def rational_arith(a, b, op: str) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError(f"division of {format_rational(a)} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def format_rational(x) -> str:
    """Serialize as ``num/den`` (denominator always written)."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(int(num), den)
    return Fraction(int(text))


def pretty_rational(x) -> str:
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Multivariate polynomials with rational coefficients
# ---------------------------------------------------------------------------

def _grlex_key(exps):
    return (sum(exps), exps)


class QPolynomial:
    """Sparse polynomial in ``nvars`` commuting indeterminates over Q.

    Terms map exponent tuples to nonzero Fractions.  Instances are treated as
    immutable values.  Printing and serialization list terms in descending
    graded-lex order.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None, nvars: int = 1):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ArityError(f"exponent {e} does not have arity {nvars}")
                if c:
                    clean[tuple(e)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, nvars):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, nvars: int = 1) -> "QPolynomial":
        c = as_rational(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i: int = 0, nvars: int = 1) -> "QPolynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def zero(cls, nvars: int = 1) -> "QPolynomial":
        return cls._raw({}, nvars)

    def _coerce(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            if other.nvars != self.nvars:
                raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial.constant(other, self.nvars)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return QPolynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QPolynomial":
        c = as_rational(c)
        if not c:
            return QPolynomial._raw({}, self.nvars)
        return QPolynomial._raw({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        if self.nvars == 1:
            for (a,), c in self.terms.items():
                for (b,), d in other.terms.items():
                    k = (a + b,)
                    out[k] = out.get(k, 0) + c * d
        else:
            for e, c in self.terms.items():
                for f, d in other.terms.items():
                    k = tuple(x + y for x, y in zip(e, f))
                    out[k] = out.get(k, 0) + c * d
        return QPolynomial._raw({k: v for k, v in out.items() if v}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = QPolynomial.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial.constant(other, self.nvars)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps) -> Fraction:
        if isinstance(exps, int):
            exps = (exps,)
        return self.terms.get(tuple(exps), Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ArityError(f"need {self.nvars} values, got {len(point)}")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda it: _grlex_key(it[0]), reverse=True)

    def to_json(self):
        return [[list(e), format_rational(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data, nvars: int) -> "QPolynomial":
        return cls({tuple(e): parse_rational(c) for e, c in data}, nvars)

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = ["Q"] if self.nvars == 1 else [f"Q{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{pretty_rational(mag)}*{mono}"
            else:
                body = pretty_rational(mag)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"QPolynomial({self.format()!r}, nvars={self.nvars})"


def qpoly_arith(p: QPolynomial, q, op: str) -> QPolynomial:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Monic polynomials in x
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonicPolynomial:
    """x^n + c_{n-1} x^{n-1} + ... + c_0, stored as ``(c_0, ..., c_{n-1})``.

    ``roots``, when present, is the full root multiset in ascending order.
    """

    coefficients: tuple = ()
    roots: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(as_rational(c) for c in self.coefficients))
        if self.roots is not None:
            roots = tuple(sorted(as_rational(r) for r in self.roots))
            object.__setattr__(self, "roots", roots)
            if len(roots) != len(self.coefficients) or _expand_roots(roots) != self.coefficients:
                raise ValueError("root multiset does not reproduce the coefficients")

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    def evaluate(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(1)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def full_coefficients(self):
        """Coefficients from x^0 up to the leading 1."""
        return self.coefficients + (Fraction(1),)

    def factored(self) -> "MonicPolynomial":
        """Same polynomial with its root multiset attached (raises if it doesn't split)."""
        if self.roots is not None:
            return self
        return MonicPolynomial(self.coefficients, tuple(rational_roots(self)))

    def __str__(self):
        parts = []
        n = self.degree
        for k, c in zip(range(n, -1, -1), reversed(self.full_coefficients())):
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{pretty_rational(mag)}*{mono}"
            else:
                body = pretty_rational(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self):
        data = {"coefficients": [format_rational(c) for c in self.coefficients]}
        if self.roots is not None:
            data["roots"] = [format_rational(r) for r in self.roots]
        return data

    @classmethod
    def from_json(cls, data) -> "MonicPolynomial":
        if "roots" in data and "coefficients" not in data:
            return monic_from_roots(parse_rational(r) for r in data["roots"])
        coeffs = [parse_rational(c) for c in data["coefficients"]]
        roots = data.get("roots")
        if roots is not None:
            roots = [parse_rational(r) for r in roots]
        return cls(tuple(coeffs), None if roots is None else tuple(roots))


def _expand_roots(roots) -> tuple:
    # coefficients of prod (x - r), low to high, leading 1 dropped
    poly = [Fraction(1)]
    for r in roots:
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= r * c
        poly = nxt
    return tuple(poly[:-1])


def monic_from_roots(roots: Iterable) -> MonicPolynomial:
    roots = tuple(sorted(as_rational(r) for r in roots))
    return MonicPolynomial(_expand_roots(roots), roots)


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _deflate(coeffs, r):
    # synthetic division of the monic polynomial (low->high, leading 1 implicit) by (x - r)
    full = list(coeffs) + [Fraction(1)]
    n = len(full) - 1
    quotient = [Fraction(0)] * n
    acc = Fraction(0)
    for k in range(n, 0, -1):
        acc = acc * r + full[k]
        quotient[k - 1] = acc
    remainder = acc * r + full[0]
    return quotient[:-1], remainder


def rational_roots(p: MonicPolynomial) -> list:
    """Full rational root multiset of ``p`` (ascending).

    Raises :class:`NotFullyFactorable` when an irreducible factor of degree
    >= 2 (or a factor with no rational root) remains.
    """
    if p.roots is not None:
        return list(p.roots)
    coeffs = list(p.coefficients)
    found = []
    while coeffs and coeffs[0] == 0:
        found.append(Fraction(0))
        coeffs = coeffs[1:]
    while coeffs:
        # integer polynomial with the same roots: clear denominators
        full = coeffs + [Fraction(1)]
        scale = math.lcm(*(c.denominator for c in full))
        ints = [int(c * scale) for c in full]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        lead, const = ints[-1], ints[0]
        root = None
        for num in _divisors(const):
            for den in _divisors(lead):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    q, rem = _deflate(coeffs, cand)
                    if rem == 0:
                        root = cand
                        coeffs = q
                        break
                if root is not None:
                    break
            if root is not None:
                break
        if root is None:
            raise NotFullyFactorable(sorted(found), len(coeffs))
        found.append(root)
    return sorted(found)


def multiset_product(pools: Sequence[Sequence], size: int):
    """All multisets of the given size drawn from one pool (sorted tuples)."""
    seen = set()
    for combo in product(pools, repeat=size):
        key = tuple(sorted(combo))
        if key not in seen:
            seen.add(key)
            yield key
