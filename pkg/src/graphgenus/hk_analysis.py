"""Scalar identities for compact irreducible hyperkähler manifolds.

Inputs are exact: degree k (real dimension 4k), the degree-4k Chern
numbers (odd classes vanish), a volume, optionally a measured L^2
curvature norm.  The central identity evaluated here is

    ||R||^(2k) / ((192 pi^2 k)^k vol^(k-1)) = sqrtAhat[M],

together with the derived constants: the coefficient of the k-fold
double-edge graph b = 48^k k! sqrtAhat[M], the sectional constant
c = ||R||^2 / (2k vol), and the closed loop b = k!/(2 pi^2)^k c^k vol.
All arithmetic stays in exact rationals times powers of pi^2; the k-th
root degrades to a guarded float only when no exact root exists.

The identities assume irreducible holonomy; for reducible input the
report carries a note saying they are not asserted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .scalars import PiScalar
from .genus import ChernData, builtin_genera, evaluate


class AnalysisError(Exception):
    pass


class NonpositiveSqrtAhat(AnalysisError):
    pass


class MissingNorm(AnalysisError):
    pass


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@dataclass(frozen=True)
class ManifoldData:
    k: int
    chern: ChernData
    volume: PiScalar
    norm_R_sq: Optional[PiScalar] = None
    irreducible: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.chern.k != self.k:
            raise ValueError(
                f"Chern data is degree {self.chern.k}, manifold has k={self.k}")
        if float(self.volume) <= 0:
            raise ValueError("volume must be positive")


def sqrt_ahat_number(d: ManifoldData) -> Fraction:
    poly = builtin_genera()["sqrt_ahat"].polynomial(d.k)
    return evaluate(poly, d.chern)


def ahat_number(d: ManifoldData) -> Fraction:
    poly = builtin_genera()["ahat"].polynomial(d.k)
    return evaluate(poly, d.chern)


def euler_number(d: ManifoldData) -> Fraction:
    return d.chern.euler()


def curvature_norm(d: ManifoldData) -> PiScalar:
    """||R||^2 = 192 pi^2 k (vol^(k-1) sqrtAhat[M])^(1/k)."""
    s = sqrt_ahat_number(d)
    if s <= 0:
        raise NonpositiveSqrtAhat(
            f"sqrtAhat[M] = {s} is not positive; the norm identity fails")
    radicand = d.volume ** (d.k - 1) * PiScalar.of(s)
    return PiScalar.of(192 * d.k, 1) * radicand.root(d.k)


def b_theta_k(d: ManifoldData) -> Fraction:
    """Coefficient of the k-fold double-edge graph: 48^k k! sqrtAhat[M]."""
    return Fraction(48 ** d.k * _factorial(d.k)) * sqrt_ahat_number(d)


def curvature_norm_via_b(d: ManifoldData) -> PiScalar:
    """Second route: invert b = k!/(4 pi^2 k)^k ||R||^(2k)/vol^(k-1)."""
    b = b_theta_k(d)
    if b <= 0:
        raise NonpositiveSqrtAhat(
            f"b coefficient {b} is not positive; the norm identity fails")
    k = d.k
    radicand = (PiScalar.of(Fraction(b, _factorial(k)) * (4 * k) ** k, k)
                * d.volume ** (k - 1))
    return radicand.root(k)


def c_theta(d: ManifoldData) -> PiScalar:
    """c = ||R||^2 / (2k vol), from the given norm or the computed one."""
    if d.norm_R_sq is not None:
        norm = d.norm_R_sq
    else:
        try:
            norm = curvature_norm(d)
        except NonpositiveSqrtAhat as exc:
            raise MissingNorm(
                "no measured norm was given and none is computable: "
                + str(exc)) from exc
    return norm / (PiScalar.of(2 * d.k) * d.volume)


def b_theta_via_c(d: ManifoldData) -> PiScalar:
    """Closed loop: b = k!/(2 pi^2)^k c^k vol; equals b_theta_k exactly
    whenever the scalars stay exact."""
    c = c_theta(d)
    k = d.k
    return PiScalar.of(_factorial(k)) / PiScalar.of(2 ** k, k) * c ** k * d.volume


# ---------------------------------------------------------------------------
# the report


REPORT_KEYS = ("sqrt_ahat", "ahat", "euler", "b_theta_k", "c_theta", "norm_R_sq")


@dataclass(frozen=True)
class AnalysisReport:
    k: int
    sqrt_ahat: Fraction
    ahat: Fraction
    euler: Fraction
    b_theta_k: Fraction
    c_theta: Optional[PiScalar]
    norm_R_sq: Optional[PiScalar]
    verdicts: tuple[tuple[str, str], ...]
    notes: tuple[str, ...] = field(default=())

    def verdict(self, name: str) -> str:
        for key, value in self.verdicts:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def all_pass(self) -> bool:
        return all(v != "fail" for _, v in self.verdicts)

    def render(self, use_float: bool = False) -> str:
        def scalar(x):
            if x is None:
                return "none"
            if isinstance(x, PiScalar):
                return x.render(use_float)
            return f"{float(x):.12g}" if use_float else str(x)

        lines = [
            f"sqrt_ahat {scalar(self.sqrt_ahat)}",
            f"ahat {scalar(self.ahat)}",
            f"euler {scalar(self.euler)}",
            f"b_theta_k {scalar(self.b_theta_k)}",
            f"c_theta {scalar(self.c_theta)}",
            f"norm_R_sq {scalar(self.norm_R_sq)}",
        ]
        lines += [f"verdicts.{key} {value}" for key, value in self.verdicts]
        lines += [f"note {note}" for note in self.notes]
        return "\n".join(lines)


def validate(d: ManifoldData) -> AnalysisReport:
    """Evaluate every identity and constraint; verdicts, not exceptions."""
    sqrt_a = sqrt_ahat_number(d)
    ahat = ahat_number(d)
    euler = euler_number(d)
    b = b_theta_k(d)

    verdicts: list[tuple[str, str]] = []
    # ChernData admits only even classes, so the vanishing is structural
    verdicts.append(("odd_chern_vanish", "pass"))
    verdicts.append(("ahat_equals_k_plus_1",
                     "pass" if ahat == d.k + 1 else "fail"))
    verdicts.append(("sqrt_ahat_positive", "pass" if sqrt_a > 0 else "fail"))

    norm: Optional[PiScalar] = d.norm_R_sq
    if norm is None and sqrt_a > 0:
        norm = curvature_norm(d)
    c: Optional[PiScalar] = None
    if norm is not None:
        c = norm / (PiScalar.of(2 * d.k) * d.volume)

    if d.k == 2:
        # the two forms of the same constraint, computed independently
        a1_sq = Fraction(d.chern.values[(2, 2)], 144)
        verdicts.append(("a1_squared_below_12",
                         "pass" if a1_sq < 12 else "fail"))
        verdicts.append(("euler_below_3024",
                         "pass" if euler < 3024 else "fail"))
        verdicts.append(("beauville_euler_at_most_324",
                         "info-yes" if euler <= 324 else "info-no"))

    notes: list[str] = []
    if not d.irreducible:
        notes.append("input marked reducible: the identities above assume "
                     "irreducible holonomy and are not asserted here")

    return AnalysisReport(
        k=d.k,
        sqrt_ahat=sqrt_a,
        ahat=ahat,
        euler=euler,
        b_theta_k=b,
        c_theta=c,
        norm_R_sq=norm,
        verdicts=tuple(verdicts),
        notes=tuple(notes),
    )
