"""Weight functions on pair partitions.

A weight assigns to every pair partition V a number built from its chord
statistics: powers of the crossing count, of n - cc, of H = n - h, or of the
singleton count h itself, and products of these.  Parameters given as ints
or fractions are carried through exactly; floats propagate as floats.

The convention 0**0 = 1 is used everywhere (Python's ``**`` already does
this), so e.g. the H-power weight at parameter 0 is the indicator of
non-crossing partitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Optional, Union

from . import pairings
from .pairings import DEFAULT_MAX_N, PairPartition

Number = Union[int, Fraction, float]


def is_exact(value) -> bool:
    """True when a parameter or result participates in exact arithmetic."""
    return isinstance(value, Rational)


def numbers_equal(a, b, rel_tol: float = 1e-12, abs_tol: float = 1e-12) -> bool:
    """Exact equality for rationals, tolerance comparison otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    return math.isclose(a, b, rel_tol=rel_tol, abs_tol=abs_tol)


class WeightSpec:
    """Base class for declarative weights; subclasses define weight_of()."""

    def weight_of(self, n: int, cr: int, h: int, cc: int) -> Number:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant1(WeightSpec):
    """The constant weight 1; its moment sequence is (2n-1)!!."""

    def weight_of(self, n, cr, h, cc):
        return 1


@dataclass(frozen=True)
class CrossingPower(WeightSpec):
    """q ** cr(V)."""

    q: Number

    def weight_of(self, n, cr, h, cc):
        return self.q ** cr


@dataclass(frozen=True)
class ComponentPower(WeightSpec):
    """s ** (n - cc(V))."""

    s: Number

    def weight_of(self, n, cr, h, cc):
        return self.s ** (n - cc)


@dataclass(frozen=True)
class SingletonHPower(WeightSpec):
    """b ** H(V) with H = n - h; at b = 0 the non-crossing indicator."""

    b: Number

    def weight_of(self, n, cr, h, cc):
        return self.b ** (n - h)


@dataclass(frozen=True)
class SingletonCountPower(WeightSpec):
    """beta ** h(V); not normalized at the one-pair partition unless beta = 1."""

    beta: Number

    def weight_of(self, n, cr, h, cc):
        return self.beta ** h


@dataclass(frozen=True)
class Product(WeightSpec):
    """Pointwise product of component weights."""

    factors: tuple[WeightSpec, ...]

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))

    def weight_of(self, n, cr, h, cc):
        out = 1
        for f in self.factors:
            out = out * f.weight_of(n, cr, h, cc)
        return out


def evaluate(spec: WeightSpec, partition: PairPartition) -> Number:
    """Weight of one concrete partition."""
    st = pairings.statistics(partition)
    return spec.weight_of(partition.n, st.cr, st.h, st.cc)


#: Statistic used as the exponent by each single-parameter family.
_FAMILY_STATISTIC: dict[type, str] = {
    CrossingPower: "cr",
    ComponentPower: "n-cc",
    SingletonHPower: "H",
    SingletonCountPower: "h",
}


@dataclass(frozen=True)
class StatisticPolynomial:
    """Distribution of one chord statistic over P2(2n), as exponent -> count.

    Evaluating at a parameter x gives sum_V x**statistic(V) exactly.
    """

    n: int
    coefficients: Mapping[int, int]

    def evaluate(self, param: Number) -> Number:
        return sum(count * param ** k for k, count in sorted(self.coefficients.items()))

    def total(self) -> int:
        return sum(self.coefficients.values())


def statistic_polynomial(
    family: type, n: int, *, max_n: int = DEFAULT_MAX_N
) -> StatisticPolynomial:
    """Exact generating table for one weight family at half-size n."""
    try:
        stat = _FAMILY_STATISTIC[family]
    except KeyError:
        raise ValueError(
            f"family must be one of {sorted(c.__name__ for c in _FAMILY_STATISTIC)}"
        ) from None
    dist = pairings.statistic_distribution(n, max_n=max_n)
    return StatisticPolynomial(n, dist.marginal(stat))


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an exhaustive property check."""

    passed: bool
    cases: int
    counterexample: Optional[PairPartition]
    detail: str

    def __bool__(self) -> bool:
        return self.passed


def _standardize(component: tuple[tuple[int, int], ...]) -> PairPartition:
    # Relabel a component's support to {1..2k} preserving order.
    support = sorted(p for blk in component for p in blk)
    rank = {p: i + 1 for i, p in enumerate(support)}
    return PairPartition.from_pairs((rank[a], rank[b]) for a, b in component)


def check_strong_multiplicativity(
    spec: WeightSpec, nmax: int, *, max_n: int = DEFAULT_MAX_N
) -> CheckReport:
    """Verify the weight factorizes over crossing-graph components.

    For every partition with half-size at most nmax, the weight must equal
    the product of the weights of its components, each relabelled to a
    standalone partition on {1..2k} preserving the order of its support.
    """
    cases = 0
    for n in range(1, nmax + 1):
        for part in pairings.enumerate_pairings(n, max_n=max_n):
            cases += 1
            whole = evaluate(spec, part)
            _, comps = pairings.connected_components(part)
            split = 1
            for comp in comps:
                split = split * evaluate(spec, _standardize(comp))
            if not numbers_equal(whole, split):
                return CheckReport(
                    False,
                    cases,
                    part,
                    f"t(V)={whole} but component product is {split}",
                )
    return CheckReport(True, cases, None, f"factorization holds on {cases} partitions")


def check_traceability(
    statistic: str, nmax: int, *, max_n: int = DEFAULT_MAX_N
) -> CheckReport:
    """Verify a statistic is invariant under cyclic rotation of the ground set."""
    if statistic not in {"cr", "h", "cc", "H"}:
        raise ValueError("statistic must be one of cr, h, cc, H")
    cases = 0
    for n in range(1, nmax + 1):
        for part in pairings.enumerate_pairings(n, max_n=max_n):
            cases += 1
            a = pairings.statistics(part)
            b = pairings.statistics(pairings.rotate(part))
            pair = {
                "cr": (a.cr, b.cr),
                "h": (a.h, b.h),
                "cc": (a.cc, b.cc),
                "H": (a.big_h, b.big_h),
            }[statistic]
            if pair[0] != pair[1]:
                return CheckReport(
                    False, cases, part,
                    f"{statistic} changed from {pair[0]} to {pair[1]} under rotation",
                )
    return CheckReport(True, cases, None, f"{statistic} rotation-invariant on {cases} partitions")
