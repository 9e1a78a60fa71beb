"""Wheels, the wheeled exponential, and leg-gluing operators.

The element treated here is the disjoint-union exponential of
sum_n b_{2n} w_{2n}, where w_{2n} is the 2n-wheel with its planar
orientation and the b coefficients come from the series
(1/2) log(sinh(x/2)/(x/2)).  A term's weight is the total wheel weight
sum n_i (half its leg count), and the truncation at weight k keeps
exactly the terms that can glue onto k lines.

Gluing conventions.  Joining two legs merges their pendant edges into
one edge; the cyclic data at every surviving vertex is preserved, which
fixes all signs.  A join that closes an edge into a circle, or welds an
edge into a self-loop, contributes zero.  The per-wheel factor (-1)
from the analytic weight of a wheel is NOT part of the combinatorial
pairing map: it sits in wheel_char_weight together with the (8 pi^2)^-k
normalization, so pairing and gluing stay purely graphical.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .scalars import PiScalar
from .graph_core import Graph, concat, line, theta, weld_all, wheel
from .graph_algebra import (
    GraphVector, RelationSet, check_bound, ihx_relations, power, product,
    reduce as ihx_reduce, theta_vector, trivalent_part,
)
from .genus import (
    ChernPolynomial, genus_in_power_sums, sinh_half_over_half,
    sqrt_ahat_series, default_order,
)


class WheelingError(Exception):
    pass


class OddLegCount(WheelingError):
    pass


class BadPartition(WheelingError):
    pass


def b_coefficients(n_max: int) -> dict[int, Fraction]:
    """{2n: b_2n for n <= n_max} from (1/2)log(sinh(x/2)/(x/2))."""
    if n_max < 1:
        return {}
    order = 2 * n_max
    series = sinh_half_over_half(order).log() * Fraction(1, 2)
    return {2 * n: series[2 * n] for n in range(1, n_max + 1)}


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _partitions(total: int) -> list[tuple[int, ...]]:
    """Ascending-part partitions of total, sorted."""
    out: list[tuple[int, ...]] = []

    def build(prefix: list[int], smallest: int, left: int):
        if left == 0:
            out.append(tuple(prefix))
            return
        for part in range(smallest, left + 1):
            build(prefix + [part], part, left - part)

    build([], 1, total)
    return sorted(out)


def _partition_coefficient(parts: tuple[int, ...], b: dict[int, Fraction]) -> Fraction:
    coeff = Fraction(1)
    for n in parts:
        coeff *= b[2 * n]
    for _, group in itertools.groupby(parts):
        coeff /= _factorial(len(tuple(group)))
    return coeff


@dataclass(frozen=True)
class OmegaTruncation:
    """Wheeled exponential cut at total wheel weight k."""
    k: int
    vector: GraphVector
    b_table: dict[int, Fraction]
    # (ascending wheel-weight partition, exact coefficient), sorted by
    # (total weight, partition); () is the empty-graph term
    partition_terms: tuple[tuple[tuple[int, ...], Fraction], ...]


def omega(k: int) -> OmegaTruncation:
    check_bound(k)
    b = b_coefficients(max(k, 1))
    vec = GraphVector.unit()
    terms: list[tuple[tuple[int, ...], Fraction]] = [((), Fraction(1))]
    for weight in range(1, k + 1):
        for parts in _partitions(weight):
            coeff = _partition_coefficient(parts, b)
            g = Graph((), ())
            for n in parts:
                g = concat(g, wheel(2 * n))
            vec.add_presentation(g, coeff)
            terms.append((parts, coeff))
    terms.sort(key=lambda t: (sum(t[0]), t[0]))
    return OmegaTruncation(k, vec, b, tuple(terms))


# ---------------------------------------------------------------------------
# leg gluing


def glue_hat(C: GraphVector, G: GraphVector) -> GraphVector:
    """Sum over all ways of joining every leg of C onto a leg of G.

    Bilinear; a basis term with more legs in C than in G is zero; joins
    producing a circle or a self-loop are zero.
    """
    out = GraphVector.zero()
    for cg, cc in C.items():
        c_legs = cg.legs()
        for gg, gc in G.items():
            g_legs = gg.legs()
            if len(c_legs) > len(g_legs):
                continue
            base = concat(cg, gg)
            shift = cg.n
            scale = cc * gc
            for target in itertools.permutations(g_legs, len(c_legs)):
                pairs = [(lc, lg + shift) for lc, lg in zip(c_legs, target)]
                res = weld_all(base, pairs)
                if res is None:
                    continue
                welded, sign = res
                out.add_presentation(welded, scale * sign)
    return out


def _matchings(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, partner in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + tail


def pair_spokes(C: GraphVector) -> GraphVector:
    """Sum over perfect matchings of each term's legs, welding each pair."""
    out = GraphVector.zero()
    for g, coeff in C.items():
        legs = g.legs()
        if len(legs) % 2:
            raise OddLegCount(f"{len(legs)} legs cannot be matched in pairs")
        for matching in _matchings(legs):
            res = weld_all(g, matching)
            if res is None:
                continue
            welded, sign = res
            out.add_presentation(welded, coeff * sign)
    return out


def line_vector() -> GraphVector:
    return GraphVector.from_graph(line())


def line_power(k: int) -> GraphVector:
    """k disjoint lines."""
    g = Graph((), ())
    for _ in range(k):
        g = concat(g, line())
    return GraphVector.from_graph(g)


def wheel_vector(n: int) -> GraphVector:
    return GraphVector.from_graph(wheel(n))


# ---------------------------------------------------------------------------
# the main combinatorial check


@dataclass(frozen=True)
class WheelingReport:
    k: int
    passed: bool
    exact: bool  # difference vanished before any IHX reduction
    residual: GraphVector


def wheeling_check(k: int) -> WheelingReport:
    """Compare the trivalent part of gluing omega into k lines with the
    k-th power of (1/24) theta; for k >= 2 the comparison is modulo IHX."""
    check_bound(k)
    lhs = trivalent_part(glue_hat(omega(k).vector, line_power(k)))
    rhs = power(theta_vector() * Fraction(1, 24), k)
    diff = lhs - rhs
    exact = not diff
    if k <= 1:
        return WheelingReport(k, exact, exact, diff)
    residual = ihx_reduce(diff, ihx_relations(k))
    return WheelingReport(k, not residual, exact, residual)


# ---------------------------------------------------------------------------
# characteristic-number weights of paired wheels


def wheel_char_weight(partition) -> tuple[PiScalar, ChernPolynomial]:
    """Declared analytic weight of the paired union of wheels w_{2k_i}.

    Returns ((-1)^m / ((8 pi^2)^k k!), s_{2k_1} ... s_{2k_m}) for a
    partition (k_1, ..., k_m) of k; the empty partition gives (1, 1).
    """
    parts = tuple(partition)
    for n in parts:
        if not isinstance(n, int) or n < 1:
            raise BadPartition(f"partition parts must be positive integers: {parts}")
    k = sum(parts)
    m = len(parts)
    coeff = PiScalar.of(Fraction((-1) ** m, 8 ** k * _factorial(k)), -k)
    mono = tuple(sorted(2 * n for n in parts))
    return coeff, ChernPolynomial("s", {mono: Fraction(1)})


@dataclass(frozen=True)
class BridgeReport:
    k: int
    lhs: ChernPolynomial  # wheel-sum side, s variables
    rhs: ChernPolynomial  # genus side, s variables
    equal: bool


def bridge_identity(k: int) -> BridgeReport:
    """Wheel coefficients against the even-log-exponential genus side.

    Both sides are stated with the common factor (8 pi^2)^-k / k! of
    wheel_char_weight divided out: the left side sums, over weight-k
    wheel partitions, the wheeled-exponential coefficient times (-1)^m
    times the s monomial; the right side is the weight-2k part of
    exp(-sum b_{2n} s_{2n}).
    """
    check_bound(k)
    om = omega(k)
    scale_back = PiScalar.of(8 ** k * _factorial(k), k)
    lhs = ChernPolynomial.zero("s")
    for parts, coeff in om.partition_terms:
        if sum(parts) != k:
            continue
        w_scalar, w_poly = wheel_char_weight(parts)
        folded = w_scalar * scale_back
        if folded.pi2 != 0:
            raise WheelingError("normalization did not cancel the pi grade")
        lhs = lhs + coeff * Fraction(folded.coef) * w_poly
    order = max(default_order(), 2 * k)
    rhs = genus_in_power_sums(sqrt_ahat_series(order), k)
    return BridgeReport(k, lhs, rhs, lhs == rhs)
