"""Closed-form optimal code lengths for complete-S decentralized PICOD(t).

The formulas hold for zero-error decoding with messages long enough to be
split freely.  The vanishing-error formulation (decoding error at most eps,
with a Fano slack that vanishes as the message length grows) gives the same
values, so no error parameter appears here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError, UsageError
from .model import COMPLEMENT, CONSECUTIVE, ProblemInstance

EXACT = "exact_optimum"
LOWER = "lower_bound"


@dataclass(frozen=True)
class LengthBound:
    value: Fraction
    kind: str
    source: str
    centralized: Fraction | None = None
    # set when an exact optimum is not strictly above t (never expected)
    flagged: bool = False

    @property
    def differs_from_centralized(self) -> bool:
        return self.centralized is not None and self.centralized != self.value


def _check_consecutive(m, t, smin, smax):
    if t < 1:
        raise UsageError(f"t must be >= 1, got {t}")
    if not 0 <= smin <= smax <= m - t:
        raise UsageError(f"need 0 <= smin <= smax <= m-t, got smin={smin} smax={smax} m-t={m - t}")
    if smax == 0:
        raise UsageError("S={0} is unsolvable")


def optimal_length_consecutive(m: int, t: int, smin: int, smax: int) -> Fraction:
    _check_consecutive(m, t, smin, smax)
    if smin == smax == m - t:
        n = comb(m, m - t)
        return Fraction(t * n, n - 1)
    return Fraction(min(smax + t, m - smin))


def centralized_length_consecutive(m: int, t: int, smin: int, smax: int) -> Fraction:
    _check_consecutive(m, t, smin, smax)
    return Fraction(min(smax + t, m - smin))


def complement_size(m: int, t: int, smin: int, smax: int) -> int:
    """|S| for S = [0, m-t] minus [smin, smax]."""
    return (m - t + 1) - (smax - smin + 1)


def optimal_length_complement(m: int, t: int, smin: int, smax: int) -> Fraction:
    """Same value in the centralized and decentralized settings."""
    if t < 1:
        raise UsageError(f"t must be >= 1, got {t}")
    if not 0 < smin <= smax < m - t:
        raise UsageError(f"need 0 < smin <= smax < m-t, got smin={smin} smax={smax} m-t={m - t}")
    return Fraction(min(m, complement_size(m, t, smin, smax) + 2 * t - 2))


def fano_lower_bound(m: int, t: int, s: int) -> Fraction:
    """t*n/(n-1) with n = C(m, s): a user's own transmissions never help it."""
    if s != m - t:
        raise UsageError(f"bound applies to s = m-t only, got s={s}, m-t={m - t}")
    n = comb(m, s)
    if n < 2:
        raise DomainError(f"n = C({m},{s}) = {n}; a single-user instance is unsolvable")
    return Fraction(t * n, n - 1)


def decentralized_optimum(instance: ProblemInstance) -> LengthBound:
    """Exact optimum for consecutive and complement-consecutive instances."""
    m, t, lo, hi = instance.m, instance.t, instance.smin, instance.smax
    if instance.kind == CONSECUTIVE:
        value = optimal_length_consecutive(m, t, lo, hi)
        cen = centralized_length_consecutive(m, t, lo, hi)
        source = "consecutive, fractional case" if lo == hi == m - t else "consecutive"
    elif instance.kind == COMPLEMENT:
        value = cen = optimal_length_complement(m, t, lo, hi)
        source = "complement-consecutive"
    else:
        raise UsageError(f"no closed form in scope for S={set(instance.S)} (kind 'other')")
    return LengthBound(value, EXACT, source, centralized=cen, flagged=value <= t)


def lower_bound(instance: ProblemInstance) -> LengthBound:
    """Fano-type bound, available when every user misses exactly t messages."""
    if instance.S != (instance.m - instance.t,):
        raise UsageError("the closed-form lower bound needs S = {m-t}")
    s = instance.m - instance.t
    return LengthBound(fano_lower_bound(instance.m, instance.t, s), LOWER, "fano")
