"""Power sums, elementary symmetric functions and their weighted variants.

Every function here works over any commutative ring whose elements support
``+``, ``-``, ``*`` and integer powers: Fractions for numeric checks, or
:class:`~dcurrent.scalars.QPolynomial` indeterminates for symbolic ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .scalars import MonicPolynomial, NotFullyFactorable, QPolynomial, as_rational, rational_roots


class MissingWeights(ValueError):
    pass


@dataclass(frozen=True)
class SymInstance:
    points: tuple
    weights: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
            if len(self.weights) != len(self.points):
                raise ValueError("weights and points differ in length")

    @property
    def n(self):
        return len(self.points)

    def one(self):
        for x in self.points + (self.weights or ()):
            if isinstance(x, QPolynomial):
                return QPolynomial.constant(1, x.nvars)
        return Fraction(1)

    def zero(self):
        return self.one() * 0

    @classmethod
    def symbolic(cls, n: int, weighted: bool = False) -> "SymInstance":
        """x_1..x_n (and b_1..b_n) as indeterminates of one polynomial ring."""
        nv = 2 * n if weighted else n
        pts = tuple(QPolynomial.var(i, nv) for i in range(n))
        wts = tuple(QPolynomial.var(n + i, nv) for i in range(n)) if weighted else None
        return cls(pts, wts)


def _need_weights(inst):
    if inst.weights is None:
        raise MissingWeights("weighted functions need weights b_1..b_n")


def power_sum(inst: SymInstance, k: int):
    if k < 1:
        raise ValueError("power sums start at k = 1")
    total = inst.zero()
    for x in inst.points:
        total = total + x ** k
    return total


def elementary(inst: SymInstance, k: int):
    """e_k via the product expansion; e_0 = 1 and e_k = 0 for k > n."""
    if k < 0 or k > inst.n:
        return inst.zero()
    e = [inst.one()] + [inst.zero()] * inst.n
    for j, x in enumerate(inst.points, start=1):
        for i in range(j, 0, -1):
            e[i] = e[i] + x * e[i - 1]
    return e[k]


def weighted_power_sum(inst: SymInstance, k: int):
    _need_weights(inst)
    total = inst.zero()
    for x, b in zip(inst.points, inst.weights):
        total = total + b * x ** k
    return total


def weighted_elementary(inst: SymInstance, k: int):
    """e_k^{(b)}: sum over k-subsets of (sum of their weights) * (product of their points).

    Computed alongside e_k by one pass over the points: adding a point x with
    weight b, a subset either skips it or takes it (contributing x to the
    product and b to the weight sum).
    """
    _need_weights(inst)
    if k < 0 or k > inst.n:
        return inst.zero()
    n = inst.n
    e = [inst.one()] + [inst.zero()] * n
    eb = [inst.zero()] * (n + 1)
    for j, (x, b) in enumerate(zip(inst.points, inst.weights), start=1):
        for i in range(j, 0, -1):
            eb[i] = eb[i] + x * (eb[i - 1] + b * e[i - 1])
            e[i] = e[i] + x * e[i - 1]
    return eb[k]


def newton_e_from_p(p_values) -> list:
    """e_1..e_n from p_1..p_n using k e_k = sum_z (-1)^(z-1) p_z e_(k-z)."""
    p = [None] + list(p_values)
    n = len(p) - 1
    if n < 1:
        raise ValueError("need at least one power sum")
    e = [p[1] * 0 + 1]
    for k in range(1, n + 1):
        acc = e[0] * 0
        for z in range(1, k + 1):
            term = p[z] * e[k - z]
            acc = acc + term if z % 2 == 1 else acc - term
        e.append(acc * Fraction(1, k))
    return e[1:]


def check_newton_identity(inst: SymInstance, k: int) -> bool:
    lhs = elementary(inst, k) * k
    rhs = inst.zero()
    for z in range(1, k + 1):
        term = power_sum(inst, z) * elementary(inst, k - z)
        rhs = rhs + term if z % 2 == 1 else rhs - term
    return lhs == rhs


def check_tail_identity(inst: SymInstance, s: int) -> bool:
    """sum_{w=0}^{n-1} (-1)^(n-w+1) p_{s-n+w} e_{n-w} == p_s  (s > n)."""
    n = inst.n
    if s <= n:
        raise ValueError("tail identity needs s > n")
    total = inst.zero()
    for w in range(n):
        term = power_sum(inst, s - n + w) * elementary(inst, n - w)
        total = total + term if (n - w + 1) % 2 == 0 else total - term
    return total == power_sum(inst, s)


def check_weighted_tail_identity(inst: SymInstance) -> bool:
    """sum_{z=0}^{n-1} (-1)^(n-z+1) p^{(b)}_{z+1} e_{n-z} == p^{(b)}_{n+1}."""
    n = inst.n
    total = inst.zero()
    for z in range(n):
        term = weighted_power_sum(inst, z + 1) * elementary(inst, n - z)
        total = total + term if (n - z + 1) % 2 == 0 else total - term
    return total == weighted_power_sum(inst, n + 1)


def check_generating_identity(inst: SymInstance) -> bool:
    """Coefficientwise form of P^{(b)}(t) E(t) = E^{(b)}(t):
    sum_{z=1}^{k} (-1)^(z-1) p^{(b)}_z e_{k-z} == e^{(b)}_k for k = 1..n."""
    for k in range(1, inst.n + 1):
        acc = inst.zero()
        for z in range(1, k + 1):
            term = weighted_power_sum(inst, z) * elementary(inst, k - z)
            acc = acc + term if z % 2 == 1 else acc - term
        if acc != weighted_elementary(inst, k):
            return False
    return True


@dataclass(frozen=True)
class PowerSumSolution:
    polynomial: MonicPolynomial
    roots: tuple | None
    remainder_degree: int = 0


def solve_power_sum_system(u) -> PowerSumSolution:
    """The monic polynomial whose roots x_1..x_n have p_k = u_k for k = 1..n.

    Roots are attached when the polynomial splits over Q; otherwise ``roots``
    is None and ``remainder_degree`` records the unsplit part.
    """
    u = [as_rational(v) for v in u]
    n = len(u)
    e = newton_e_from_p(u)
    # x^n - e_1 x^(n-1) + ... + (-1)^n e_n, stored low to high
    coeffs = tuple((-1) ** (n - i) * e[n - i - 1] for i in range(n))
    poly = MonicPolynomial(coeffs)
    try:
        roots = tuple(rational_roots(poly))
    except NotFullyFactorable as exc:
        return PowerSumSolution(poly, None, exc.remainder_degree)
    return PowerSumSolution(MonicPolynomial(coeffs, roots), roots)


def binomial_convolution_holds(zp: int, k: int, wp: int) -> bool:
    """sum_{l=max(0, w'-(z'-k))}^{min(k, w')} C(z'-k, w'-l) C(k, l) == C(z', w')."""
    lo, hi = max(0, wp - (zp - k)), min(k, wp)
    total = sum(comb(zp - k, wp - l) * comb(k, l) for l in range(lo, hi + 1))
    return total == comb(zp, wp)
