"""Exact power-series and symmetric-function engine for genera.

A genus is generated by a one-variable series Q with Q(0) = 1: take
formal roots x_1, ..., splitting the total Chern class, and expand
prod_i Q(x_i) into symmetric functions.  We compute log Q, write
sum_i log Q(x_i) in the power-sum classes s_j, exponentiate in a
weight-truncated polynomial ring, and convert to Chern classes with
Newton's identities.  All coefficients are Fractions; series carry an
explicit truncation order and refuse mixed-order arithmetic.

Weights are complex degrees: c_i and s_i have weight i, and the
Pontryagin symbol p_j has weight 2j, so the real-degree-4k piece of a
genus is the weight-2k homogeneous component in c or s and the
weight-k component in the p indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional

from .graph_algebra import degree_bound

Monomial = tuple[int, ...]


class SeriesError(Exception):
    pass


class BadConstantTerm(SeriesError):
    pass


class OrderMismatch(SeriesError):
    pass


class DegreeMismatch(Exception):
    pass


class MissingMonomial(Exception):
    pass


def default_order() -> int:
    return 2 * degree_bound() + 2


class CharPowerSeries:
    """One-variable series truncated after x^order, exact coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > order + 1:
            raise SeriesError(f"{len(cs)} coefficients exceed order {order}")
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    def __getitem__(self, j: int) -> Fraction:
        if j < 0:
            return Fraction(0)
        if j > self.order:
            raise SeriesError(f"coefficient {j} beyond truncation order {self.order}")
        return self.coeffs[j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, CharPowerSeries)
                and self.order == other.order and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"CharPowerSeries({list(self.coeffs)}, order={self.order})"

    def _match(self, other: "CharPowerSeries"):
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order} differ")

    def __add__(self, other: "CharPowerSeries") -> "CharPowerSeries":
        self._match(other)
        return CharPowerSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "CharPowerSeries") -> "CharPowerSeries":
        self._match(other)
        return CharPowerSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other) -> "CharPowerSeries":
        if not isinstance(other, CharPowerSeries):
            q = Fraction(other)
            return CharPowerSeries([c * q for c in self.coeffs], self.order)
        self._match(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return CharPowerSeries(out, self.order)

    __rmul__ = __mul__

    def inverse(self) -> "CharPowerSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise BadConstantTerm("inverse needs a nonzero constant term")
        inv = [1 / c0] + [Fraction(0)] * self.order
        for j in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, j + 1):
                acc += self.coeffs[i] * inv[j - i]
            inv[j] = -acc / c0
        return CharPowerSeries(inv, self.order)

    def log(self) -> "CharPowerSeries":
        if self.coeffs[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        u = CharPowerSeries([0] + list(self.coeffs[1:]), self.order)
        out = CharPowerSeries([0], self.order)
        term = CharPowerSeries([1], self.order)
        for m in range(1, self.order + 1):
            term = term * u
            out = out + term * Fraction((-1) ** (m + 1), m)
        return out

    def exp(self) -> "CharPowerSeries":
        if self.coeffs[0]:
            raise BadConstantTerm("exp needs constant term 0")
        out = CharPowerSeries([1], self.order)
        term = CharPowerSeries([1], self.order)
        fact = 1
        for m in range(1, self.order + 1):
            term = term * self
            fact *= m
            out = out + term * Fraction(1, fact)
        return out

    def sqrt(self) -> "CharPowerSeries":
        if self.coeffs[0] != 1:
            raise BadConstantTerm("sqrt needs constant term 1")
        return (self.log() * Fraction(1, 2)).exp()

    def compose_scale(self, factor) -> "CharPowerSeries":
        """Substitute x -> factor*x."""
        q = Fraction(factor)
        return CharPowerSeries(
            [c * q ** j for j, c in enumerate(self.coeffs)], self.order)

    def is_even(self) -> bool:
        return all(not c for j, c in enumerate(self.coeffs) if j % 2)


def sinh_over_x(order: int) -> CharPowerSeries:
    """sinh(x)/x = sum x^{2m}/(2m+1)!."""
    coeffs = [Fraction(0)] * (order + 1)
    fact = 1  # (2m+1)!
    for m in range(0, order // 2 + 1):
        if m:
            fact *= (2 * m) * (2 * m + 1)
        coeffs[2 * m] = Fraction(1, fact)
    return CharPowerSeries(coeffs, order)


def sinh_half_over_half(order: int) -> CharPowerSeries:
    """sinh(x/2)/(x/2) = 1 + x^2/24 + x^4/1920 + ..."""
    return sinh_over_x(order).compose_scale(Fraction(1, 2))


def ahat_series(order: Optional[int] = None) -> CharPowerSeries:
    """(x/2)/sinh(x/2)."""
    if order is None:
        order = default_order()
    return sinh_half_over_half(order).inverse()


def sqrt_ahat_series(order: Optional[int] = None) -> CharPowerSeries:
    """((x/2)/sinh(x/2))^{1/2}."""
    if order is None:
        order = default_order()
    return ahat_series(order).sqrt()


def todd_series(order: Optional[int] = None) -> CharPowerSeries:
    """x/(1 - e^{-x}), via inverting (1-e^{-x})/x = sum (-x)^n/(n+1)!."""
    if order is None:
        order = default_order()
    coeffs = [Fraction((-1) ** n, _factorial(n + 1)) for n in range(order + 1)]
    return CharPowerSeries(coeffs, order).inverse()


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# graded polynomials in c_i / s_i / p_j


class ChernPolynomial:
    """Polynomial in indexed classes; monomial key = ascending index tuple."""

    __slots__ = ("symbol", "terms")

    def __init__(self, symbol: str, terms: Optional[Mapping[Monomial, Fraction]] = None):
        if symbol not in ("c", "s", "p"):
            raise ValueError(f"unknown symbol {symbol!r}")
        self.symbol = symbol
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if not coeff:
                    continue
                mono = tuple(sorted(mono))
                if any(i < 1 for i in mono):
                    raise ValueError(f"bad index in monomial {mono}")
                self.terms[mono] = self.terms.get(mono, Fraction(0)) + coeff
                if not self.terms[mono]:
                    del self.terms[mono]

    @staticmethod
    def zero(symbol: str) -> "ChernPolynomial":
        return ChernPolynomial(symbol)

    @staticmethod
    def one(symbol: str) -> "ChernPolynomial":
        return ChernPolynomial(symbol, {(): Fraction(1)})

    @staticmethod
    def variable(symbol: str, index: int) -> "ChernPolynomial":
        return ChernPolynomial(symbol, {(index,): Fraction(1)})

    def _index_weight(self, i: int) -> int:
        # p_j is the j-th elementary class of squared roots: weight 2j
        return 2 * i if self.symbol == "p" else i

    def weight(self, mono: Monomial) -> int:
        return sum(self._index_weight(i) for i in mono)

    def _match(self, other: "ChernPolynomial"):
        if self.symbol != other.symbol:
            raise ValueError(f"mixed symbols {self.symbol!r} and {other.symbol!r}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, ChernPolynomial)
                and self.symbol == other.symbol and self.terms == other.terms)

    def __hash__(self):
        return hash((self.symbol, frozenset(self.terms.items())))

    def __add__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        self._match(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, Fraction(0)) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        return ChernPolynomial(self.symbol, out)

    def __neg__(self):
        return ChernPolynomial(self.symbol, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "ChernPolynomial":
        if not isinstance(other, ChernPolynomial):
            q = Fraction(other)
            return ChernPolynomial(self.symbol,
                                   {m: c * q for m, c in self.terms.items()})
        self._match(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                new = out.get(mono, Fraction(0)) + c1 * c2
                if new:
                    out[mono] = new
                else:
                    out.pop(mono, None)
        return ChernPolynomial(self.symbol, out)

    __rmul__ = __mul__

    def truncate(self, max_weight: int) -> "ChernPolynomial":
        return ChernPolynomial(self.symbol, {
            m: c for m, c in self.terms.items() if self.weight(m) <= max_weight})

    def homogeneous(self, w: int) -> "ChernPolynomial":
        return ChernPolynomial(self.symbol, {
            m: c for m, c in self.terms.items() if self.weight(m) == w})

    def max_weight(self) -> int:
        return max((self.weight(m) for m in self.terms), default=0)

    def exp_truncated(self, max_weight: int) -> "ChernPolynomial":
        if () in self.terms:
            raise BadConstantTerm("exp needs zero constant term")
        base = self.truncate(max_weight)
        out = ChernPolynomial.one(self.symbol)
        term = ChernPolynomial.one(self.symbol)
        fact = 1
        for m in range(1, max_weight + 1):
            term = (term * base).truncate(max_weight)
            if not term:
                break
            fact *= m
            out = out + term * Fraction(1, fact)
        return out

    def substitute(self, table: Mapping[int, "ChernPolynomial"],
                   symbol: str) -> "ChernPolynomial":
        """Replace each variable index via table; missing index is an error."""
        out = ChernPolynomial.zero(symbol)
        for mono, coeff in self.terms.items():
            part = ChernPolynomial.one(symbol) * coeff
            for i in mono:
                if i not in table:
                    raise MissingMonomial(f"no substitution for index {i}")
                part = part * table[i]
            out = out + part
        return out

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono, coeff in self.items():
            if not mono:
                bits.append(str(coeff))
                continue
            factors = []
            run_start = 0
            for t in range(1, len(mono) + 1):
                if t == len(mono) or mono[t] != mono[run_start]:
                    power = t - run_start
                    name = f"{self.symbol}{mono[run_start]}"
                    factors.append(name if power == 1 else f"{name}^{power}")
                    run_start = t
            bits.append(f"({coeff})" + "*".join(factors))
        return " + ".join(bits)

    def __repr__(self):
        return f"ChernPolynomial({self.render()!r})"


# ---------------------------------------------------------------------------
# Newton's identities


@lru_cache(maxsize=None)
def power_sum_in_chern(j: int, odd_vanish: bool = False) -> ChernPolynomial:
    """s_j as a polynomial in c_1..c_j.

    Newton: s_j = sum_{i<j} (-1)^{i-1} c_i s_{j-i} + (-1)^{j-1} j c_j.
    With odd_vanish, monomials containing an odd index are dropped
    (eigenvalues in opposite pairs kill all odd classes).
    """
    if j < 1:
        raise ValueError("power sums are indexed from 1")
    acc = ChernPolynomial.zero("c")
    for i in range(1, j):
        acc = acc + (Fraction((-1) ** (i - 1))
                     * ChernPolynomial.variable("c", i)
                     * power_sum_in_chern(j - i, False))
    acc = acc + Fraction((-1) ** (j - 1) * j) * ChernPolynomial.variable("c", j)
    if odd_vanish:
        acc = _drop_odd(acc)
    return acc


def _drop_odd(p: ChernPolynomial) -> ChernPolynomial:
    return ChernPolynomial(p.symbol, {
        m: c for m, c in p.terms.items() if all(i % 2 == 0 for i in m)})


@lru_cache(maxsize=None)
def chern_in_power_sums(i: int) -> ChernPolynomial:
    """c_i as a polynomial in s_1..s_i (Newton, inverted):
    c_i = (1/i) sum_{m=1..i} (-1)^{m-1} c_{i-m} s_m."""
    if i == 0:
        return ChernPolynomial.one("s")
    acc = ChernPolynomial.zero("s")
    for m in range(1, i + 1):
        acc = acc + (Fraction((-1) ** (m - 1))
                     * chern_in_power_sums(i - m)
                     * ChernPolynomial.variable("s", m))
    return acc * Fraction(1, i)


def newton_convert(p: ChernPolynomial) -> ChernPolynomial:
    """Swap between the c and s presentations of a symmetric polynomial."""
    if p.symbol == "s":
        top = max((i for m in p.terms for i in m), default=0)
        table = {j: power_sum_in_chern(j) for j in range(1, top + 1)}
        return p.substitute(table, "c")
    if p.symbol == "c":
        top = max((i for m in p.terms for i in m), default=0)
        table = {i: chern_in_power_sums(i) for i in range(1, top + 1)}
        return p.substitute(table, "s")
    raise ValueError("newton_convert handles the c and s symbols")


# ---------------------------------------------------------------------------
# genus polynomials


def log_coefficients(Q: CharPowerSeries) -> list[Fraction]:
    """Coefficients q_1.. of log Q; q_0 dropped."""
    return list(Q.log().coeffs[1:])


def genus_in_power_sums(Q: CharPowerSeries, k: int,
                        odd_vanish: bool = True) -> ChernPolynomial:
    """Weight-2k part of exp(sum_j q_j s_j), kept in the s variables."""
    if Q.coeffs[0] != 1:
        raise BadConstantTerm("a genus series needs constant term 1")
    if Q.order < 2 * k:
        raise OrderMismatch(f"series order {Q.order} below required {2 * k}")
    q = log_coefficients(Q)
    L = ChernPolynomial.zero("s")
    for j in range(1, 2 * k + 1):
        coeff = q[j - 1]
        if not coeff:
            continue
        if odd_vanish and j % 2:
            continue
        L = L + coeff * ChernPolynomial.variable("s", j)
    return L.exp_truncated(2 * k).homogeneous(2 * k)


def genus_polynomial(Q: CharPowerSeries, k: int,
                     odd_vanish: bool = True) -> ChernPolynomial:
    """The real-degree-4k genus polynomial in Chern classes."""
    if Q.coeffs[0] != 1:
        raise BadConstantTerm("a genus series needs constant term 1")
    if Q.order < 2 * k:
        raise OrderMismatch(f"series order {Q.order} below required {2 * k}")
    q = log_coefficients(Q)
    L = ChernPolynomial.zero("c")
    for j in range(1, 2 * k + 1):
        coeff = q[j - 1]
        if not coeff:
            continue
        s_j = power_sum_in_chern(j, odd_vanish)
        if not s_j:
            continue
        L = L + coeff * s_j
    return L.exp_truncated(2 * k).homogeneous(2 * k)


@dataclass(frozen=True)
class Genus:
    name: str
    series: Callable[[int], CharPowerSeries]

    def polynomial(self, k: int, odd_vanish: bool = True) -> ChernPolynomial:
        order = max(default_order(), 2 * k)
        return genus_polynomial(self.series(order), k, odd_vanish)


def builtin_genera() -> dict[str, Genus]:
    return {
        "ahat": Genus("ahat", ahat_series),
        "todd": Genus("todd", todd_series),
        "sqrt_ahat": Genus("sqrt_ahat", sqrt_ahat_series),
    }


# ---------------------------------------------------------------------------
# Pontryagin presentation


@lru_cache(maxsize=None)
def _squared_root_power_sum_in_p(n: int) -> ChernPolynomial:
    """n-th power sum of squared roots in the p_j (Newton, elementary=p)."""
    if n < 1:
        raise ValueError("power sums are indexed from 1")
    acc = ChernPolynomial.zero("p")
    for i in range(1, n):
        acc = acc + (Fraction((-1) ** (i - 1))
                     * ChernPolynomial.variable("p", i)
                     * _squared_root_power_sum_in_p(n - i))
    return acc + Fraction((-1) ** (n - 1) * n) * ChernPolynomial.variable("p", n)


def pontryagin_from_chern(k: int) -> dict[int, ChernPolynomial]:
    """p_j for j <= k as Chern polynomials, odd classes set to zero.

    p_j is the j-th elementary symmetric function of the squared roots,
    recovered from their power sums s_{2n} by Newton's identities.
    """
    table: dict[int, ChernPolynomial] = {}
    ps = {n: power_sum_in_chern(2 * n, odd_vanish=True) for n in range(1, k + 1)}
    e: dict[int, ChernPolynomial] = {0: ChernPolynomial.one("c")}
    for j in range(1, k + 1):
        acc = ChernPolynomial.zero("c")
        for i in range(1, j + 1):
            acc = acc + Fraction((-1) ** (i - 1)) * e[j - i] * ps[i]
        e[j] = acc * Fraction(1, j)
        table[j] = e[j]
    return table


def genus_polynomial_pontryagin(Q: CharPowerSeries, k: int) -> ChernPolynomial:
    """Degree-4k genus polynomial in the p_j, for an even series Q."""
    if Q.coeffs[0] != 1:
        raise BadConstantTerm("a genus series needs constant term 1")
    if not Q.is_even():
        raise SeriesError("the Pontryagin presentation needs an even series")
    if Q.order < 2 * k:
        raise OrderMismatch(f"series order {Q.order} below required {2 * k}")
    q = log_coefficients(Q)
    L = ChernPolynomial.zero("p")
    for n in range(1, k + 1):
        coeff = q[2 * n - 1]
        if not coeff:
            continue
        L = L + coeff * _squared_root_power_sum_in_p(n)
    # weight of p_j is 2j, so degree 4k means weight 2k
    return L.exp_truncated(2 * k).homogeneous(2 * k)


# ---------------------------------------------------------------------------
# evaluation against manifold data


def even_monomials(k: int) -> list[Monomial]:
    """All weight-2k monomials in even-index classes, sorted."""
    out: list[Monomial] = []

    def build(prefix: list[int], small: int, left: int):
        if left == 0:
            out.append(tuple(prefix))
            return
        i = small
        while i <= left:
            build(prefix + [i], i, left - i)
            i += 2
        return

    build([], 2, 2 * k)
    return sorted(out)


class ChernData:
    """Exact values of all degree-4k monomials in even Chern classes."""

    __slots__ = ("k", "values")

    def __init__(self, k: int, values: Mapping[Monomial, Fraction]):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        vals = {tuple(sorted(m)): Fraction(v) for m, v in values.items()}
        needed = even_monomials(k)
        for mono in vals:
            if any(i % 2 for i in mono):
                raise ValueError(f"odd class in monomial {mono}")
            if sum(mono) != 2 * k:
                raise DegreeMismatch(f"monomial {mono} is not of weight {2 * k}")
        for mono in needed:
            if mono not in vals:
                raise MissingMonomial(f"missing value for monomial {mono}")
        self.values = vals

    @staticmethod
    def for_k1(c2) -> "ChernData":
        return ChernData(1, {(2,): Fraction(c2)})

    @staticmethod
    def for_k2(c2_sq, c4) -> "ChernData":
        return ChernData(2, {(2, 2): Fraction(c2_sq), (4,): Fraction(c4)})

    @staticmethod
    def for_k3(c2_cube, c2_c4, c6) -> "ChernData":
        return ChernData(3, {(2, 2, 2): Fraction(c2_cube),
                             (2, 4): Fraction(c2_c4),
                             (6,): Fraction(c6)})

    def euler(self) -> Fraction:
        """Value of the top class c_{2k}."""
        return self.values[(2 * self.k,)]

    def __eq__(self, other):
        return (isinstance(other, ChernData)
                and self.k == other.k and self.values == other.values)

    def __repr__(self):
        return f"ChernData(k={self.k}, {self.values})"


def evaluate(p: ChernPolynomial, data: ChernData) -> Fraction:
    """Pair a degree-4k Chern polynomial with the fundamental class."""
    if p.symbol != "c":
        raise ValueError("evaluation needs the c presentation")
    total = Fraction(0)
    for mono, coeff in p.terms.items():
        if sum(mono) != 2 * data.k:
            raise DegreeMismatch(
                f"monomial {mono} has weight {sum(mono)}, data is degree {2 * data.k}")
        if mono not in data.values:
            raise MissingMonomial(f"no value for monomial {mono}")
        total += coeff * data.values[mono]
    return total
