"""Exhaustive, witness-producing auditors for greedy-approximability classes.

Three quantified properties of a monotone objective f are checked here, each
with exact rational arithmetic:

* weak submodularity ratio: minimum over greedy-chain prefixes X (up to the
  saturation cardinality) and Y disjoint from X of
  (sum of singleton gains) / (joint gain), with 0/0 := 1;
* alpha-augmentability: for every in-scope X and every Y not contained in X,
  some y in Y \\ X has gain at least (f(X+Y) - alpha*f(X)) / |Y|;
* gamma-alpha-augmentability: same shape with numerator
  gamma*f(X+Y) - alpha*f(X), and the witness element drawn from all of Y.

The two augmentability definitions deliberately differ in where the witness
element may come from; ``existential`` exposes that choice so either
convention can be forced in cross-experiments.  "weak" scope restricts X to
the greedy chain under the configured tie policy (the weak classes are
tie-policy-dependent, so reports record the policy); "strong" scope ranges
over every subset.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    GroundSetTooLarge,
    ParameterError,
    SetFunctionOracle,
    TiePolicy,
    ZERO,
    as_fraction,
    format_rational,
    greedy_adaptive,
    indices_of,
    optimum_profile,
    saturation_point,
)

WEAK_GUARD = 20
STRONG_GUARD = 16


@dataclass(frozen=True)
class Witness:
    """A violated instance of an audited inequality; lhs < rhs exactly."""

    x_set: int
    y_set: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class AuditReport:
    member: bool
    gamma: Fraction
    alpha: Fraction
    scope: str
    tie: TiePolicy
    existential: str
    witness: Witness | None
    checked_pairs: int

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def to_json_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "gamma": format_rational(self.gamma),
            "alpha": format_rational(self.alpha),
            "scope": self.scope,
            "tie": self.tie if isinstance(self.tie, str) else list(self.tie),
            "existential": self.existential,
            "checked_pairs": self.checked_pairs,
        }
        if self.witness is not None:
            out["witness"] = {
                "X": list(indices_of(self.witness.x_set)),
                "Y": list(indices_of(self.witness.y_set)),
                "lhs": format_rational(self.witness.lhs),
                "rhs": format_rational(self.witness.rhs),
            }
        return out


def _guard(n: int, scope: str, max_elements: int | None) -> None:
    default = WEAK_GUARD if scope == "weak" else STRONG_GUARD
    limit = default if max_elements is None else max_elements
    if max_elements is not None and max_elements > default:
        warnings.warn(f"overriding {scope}-scope size guard {default} -> {max_elements}")
    if n > limit:
        raise GroundSetTooLarge(f"n={n} exceeds {scope}-scope guard {limit}")


def _chain_prefixes(f: SetFunctionOracle, tie: TiePolicy) -> list[int]:
    trace = greedy_adaptive(f, f.n, tie)
    return list(trace.chain[: saturation_point(trace) + 1])


def _scope_sets(f: SetFunctionOracle, scope: str, tie: TiePolicy) -> list[int]:
    if scope == "weak":
        return _chain_prefixes(f, tie)
    if scope == "strong":
        return list(range(1 << f.n))
    raise ParameterError(f"unknown scope {scope!r}")


def _best_gain_table(f, x_set, n, existential, buffer):
    """buffer[Y] = best gain of a witness candidate for pair (x_set, Y), or None."""
    fx = f.value(x_set)
    gain = [None] * n
    for y in range(n):
        if x_set >> y & 1:
            if existential == "full":
                gain[y] = ZERO  # adding an element of X changes nothing
        else:
            gain[y] = f.value(x_set | (1 << y)) - fx
    buffer[0] = None
    for y_set in range(1, 1 << n):
        low = y_set & -y_set
        g = gain[low.bit_length() - 1]
        prev = buffer[y_set ^ low]
        if prev is None:
            buffer[y_set] = g
        elif g is None or prev >= g:
            buffer[y_set] = prev
        else:
            buffer[y_set] = g
    return fx


def _augmentability_audit(f, gamma, alpha, scope, tie, existential, max_elements):
    if existential not in ("full", "difference"):
        raise ParameterError(f"unknown existential scope {existential!r}")
    n = f.n
    _guard(n, scope, max_elements)
    size = 1 << n
    buffer = [None] * size
    checked = 0
    for x_set in _scope_sets(f, scope, tie):
        fx = _best_gain_table(f, x_set, n, existential, buffer)
        threshold_base = alpha * fx
        for y_set in range(1, size):
            if y_set & ~x_set == 0:
                continue  # Y inside X is vacuous
            checked += 1
            best = buffer[y_set]
            needed = gamma * f.value(x_set | y_set) - threshold_base
            if best * y_set.bit_count() < needed:
                witness = Witness(x_set, y_set, best, needed / y_set.bit_count())
                return AuditReport(
                    False, gamma, alpha, scope, tie, existential, witness, checked
                )
    return AuditReport(True, gamma, alpha, scope, tie, existential, None, checked)


def check_alpha_augmentable(
    f: SetFunctionOracle,
    alpha,
    scope: str = "strong",
    tie: TiePolicy = "low",
    existential: str = "difference",
    max_elements: int | None = None,
) -> AuditReport:
    """Audit alpha-augmentability (witness element from Y \\ X by default)."""
    alpha = as_fraction(alpha)
    if alpha < 1:
        raise ParameterError(f"alpha-augmentability needs alpha >= 1, got {alpha}")
    return _augmentability_audit(f, Fraction(1), alpha, scope, tie, existential, max_elements)


def check_gamma_alpha_augmentable(
    f: SetFunctionOracle,
    gamma,
    alpha,
    scope: str = "weak",
    tie: TiePolicy = "low",
    existential: str = "full",
    max_elements: int | None = None,
) -> AuditReport:
    """Audit gamma-alpha-augmentability (witness element from all of Y by default)."""
    gamma = as_fraction(gamma)
    alpha = as_fraction(alpha)
    if not 0 < gamma <= 1:
        raise ParameterError(f"gamma must lie in (0,1], got {gamma}")
    if alpha < gamma:
        raise ParameterError(f"alpha must be >= gamma, got alpha={alpha}, gamma={gamma}")
    return _augmentability_audit(f, gamma, alpha, scope, tie, existential, max_elements)


@dataclass(frozen=True)
class RatioResult:
    value: Fraction
    x_set: int
    y_set: int
    checked_pairs: int
    tie: TiePolicy


def weak_submodularity_ratio(
    f: SetFunctionOracle, tie: TiePolicy = "low", max_elements: int | None = None
) -> RatioResult:
    """Exact minimum of (sum of singleton gains)/(joint gain) over the greedy chain.

    X ranges over chain prefixes up to saturation, Y over subsets disjoint
    from X.  Pairs with zero joint gain count as 1 when the singleton sum is
    zero too and are excluded (treated as +inf) otherwise.
    """
    n = f.n
    _guard(n, "weak", max_elements)
    size = 1 << n
    sums: list[Fraction | None] = [None] * size
    best = RatioResult(Fraction(1), 0, 0, 0, tie)
    checked = 0
    for x_set in _chain_prefixes(f, tie):
        fx = f.value(x_set)
        gain = [ZERO] * n
        for y in range(n):
            if not x_set >> y & 1:
                gain[y] = f.value(x_set | (1 << y)) - fx
        sums[0] = ZERO
        for y_set in range(1, size):
            if y_set & x_set:
                continue
            low = y_set & -y_set
            sums[y_set] = sums[y_set ^ low] + gain[low.bit_length() - 1]
            checked += 1
            joint = f.value(x_set | y_set) - fx
            if joint == 0:
                continue  # 0/0 counts as 1; positive/0 is +inf, never minimal
            ratio = sums[y_set] / joint
            if ratio < best.value:
                best = RatioResult(ratio, x_set, y_set, 0, tie)
    return RatioResult(best.value, best.x_set, best.y_set, checked, tie)


def min_alpha_for(
    f: SetFunctionOracle,
    gamma,
    scope: str = "weak",
    tie: TiePolicy = "low",
    existential: str = "full",
    max_elements: int | None = None,
) -> Fraction | float:
    """Least alpha >= gamma making the gamma-alpha audit pass, or +inf.

    Computed as the maximum over in-scope pairs with f(X) > 0 of
    (gamma*f(X+Y) - |Y|*best_gain) / f(X); pairs with f(X) = 0 must already
    be satisfied by the best gain, otherwise no finite alpha works.
    """
    gamma = as_fraction(gamma)
    if not 0 < gamma <= 1:
        raise ParameterError(f"gamma must lie in (0,1], got {gamma}")
    n = f.n
    _guard(n, scope, max_elements)
    size = 1 << n
    buffer = [None] * size
    needed = gamma
    for x_set in _scope_sets(f, scope, tie):
        fx = _best_gain_table(f, x_set, n, existential, buffer)
        for y_set in range(1, size):
            if y_set & ~x_set == 0:
                continue
            covered = buffer[y_set] * y_set.bit_count()
            shortfall = gamma * f.value(x_set | y_set) - covered
            if fx == 0:
                if shortfall > 0:
                    return math.inf
                continue
            alpha = shortfall / fx
            if alpha > needed:
                needed = alpha
    return needed


@dataclass(frozen=True)
class BoundRecord:
    k: int
    regime: str
    greedy_value: Fraction
    optimum_value: Fraction
    bound: Fraction
    slack: Fraction

    @property
    def ok(self) -> bool:
        return self.slack >= 0


def certify_greedy_bound(
    f: SetFunctionOracle, gamma, alpha, tie: TiePolicy = "low", max_elements: int = 24
) -> list[BoundRecord]:
    """Per-cardinality certificates of the class guarantee, with exact slack.

    For k up to the saturation cardinality the guarantee is
    (gamma/alpha) * (1 - (1 - alpha/k)**k) * optimum_k, afterwards the plain
    (gamma/alpha) * optimum_k.  Violations simply show up as negative slack;
    whether f actually belongs to the audited class is the caller's business.
    """
    gamma = as_fraction(gamma)
    alpha = as_fraction(alpha)
    n = f.n
    trace = greedy_adaptive(f, n, tie)
    sat = saturation_point(trace)
    profile = optimum_profile(f, max_elements=max_elements)
    records = []
    for k in range(1, n + 1):
        opt = profile[k].best_value
        greedy_value = trace.values[k]
        if k <= sat:
            factor = 1 - (1 - alpha / k) ** k
            bound = gamma / alpha * factor * opt
            regime = "pre-saturation"
        else:
            bound = gamma / alpha * opt
            regime = "post-saturation"
        records.append(BoundRecord(k, regime, greedy_value, opt, bound, greedy_value - bound))
    return records
