"""Finite nested evaluation h(a_1 + h(a_2 + ... h(a_n + seed))).

Two engines live here.  :func:`nested_eval` folds an arbitrary non-decreasing
concave outer function over raw coefficients.  :func:`sqrt_nested_scaled`
specializes to square roots with coefficients in the log domain: it rescales
by the largest normalized value so that every scaled coefficient lies in
[0, 1] and every intermediate in [0, phi], which makes the fold immune to
overflow at any representable depth.  Rescaling is sound because the radical
is homogeneous on the normalized scale: multiplying every normalized
coefficient and the seed by C multiplies the value by C.

The comparison helpers (:func:`seed_gap`, :func:`seed_gap_pair`,
:func:`swap_adjacent`) expose the inequalities that drive the error analysis:
swinging the innermost seed moves the value by at most the seed swing,
lowering coefficients amplifies that swing, and sorting two adjacent
coefficients ascending never increases the value.

Everything is pure and reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

__all__ = [
    "OuterFunction",
    "SQRT",
    "ARCTAN",
    "LOG1P",
    "OUTER_FUNCTIONS",
    "Enclosure",
    "nested_eval",
    "sqrt_nested_scaled",
    "seed_gap",
    "seed_gap_pair",
    "swap_adjacent",
]

_NEG_INF = float("-inf")

# Floor for the rescaling maximum; keeps all-zero inputs away from log(0)
# while staying far below any normalized coefficient of interest.
_SCALE_FLOOR_LOG = -512.0 * math.log(2.0)


@dataclass(frozen=True)
class OuterFunction:
    """A non-decreasing concave function h on [0, inf), with its ceiling.

    ``ceiling`` is the supremum of h over [0, inf]; it may be ``math.inf``.
    For arctan it is stored as pi/2 exactly, i.e. with one application of h
    already performed on the infinite argument.  Concavity and monotonicity
    are caller obligations, spot-checked by the randomized property suites.
    """

    eval: Callable[[float], float]
    value_at_zero: float
    ceiling: float
    label: str


SQRT = OuterFunction(math.sqrt, 0.0, math.inf, "sqrt")
ARCTAN = OuterFunction(math.atan, 0.0, math.pi / 2.0, "arctan")
LOG1P = OuterFunction(math.log1p, 0.0, math.inf, "log1p")

OUTER_FUNCTIONS = {f.label: f for f in (SQRT, ARCTAN, LOG1P)}


@dataclass(frozen=True)
class Enclosure:
    """A certified interval [lo, hi] around a limit.

    ``analytic_width_bound`` is the exact-arithmetic bound on hi - lo;
    ``fp_slack`` is the floating-point allowance (outward padding already
    applied to lo/hi, plus evaluation noise) so that
    ``width <= analytic_width_bound + fp_slack`` always holds.
    """

    lo: float
    hi: float
    depth: int
    analytic_width_bound: float
    fp_slack: float = 0.0

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"enclosure needs lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


def nested_eval(h: OuterFunction, terms: Sequence[float], seed: float) -> float:
    """Right-to-left fold v <- h(terms[k] + v) starting from the seed."""
    if seed < 0.0 or not math.isfinite(seed):
        raise ValueError(f"seed must be finite and >= 0, got {seed}")
    value = seed
    for position in range(len(terms) - 1, -1, -1):
        term = terms[position]
        if term < 0.0 or not math.isfinite(term):
            raise ValueError(f"term {term} at position {position + 1} must be finite and >= 0")
        value = h.eval(term + value)
        if not math.isfinite(value):
            raise ValueError(f"non-finite intermediate at position {position + 1}")
    return value


def _log_add(x: float, y: float) -> float:
    # log(exp(x) + exp(y)) without leaving the log domain.
    if x == _NEG_INF:
        return y
    if y == _NEG_INF:
        return x
    if x < y:
        x, y = y, x
    return x + math.log1p(math.exp(y - x))


def sqrt_nested_scaled(log_terms: Sequence[float], seed_norm: float) -> float:
    """sqrt(a_1 + sqrt(a_2 + ... sqrt(a_n + seed_norm ** 2**n))).

    ``log_terms`` holds ln(a_k) for k = 1..n (``-inf`` encodes a zero
    coefficient) and the seed is given on the normalized scale.  The fold
    runs entirely in the log domain: after rescaling by the largest
    normalized value the levels obey ln v <- 0.5 * logaddexp(ln b_k, ln v),
    so neither the huge raw coefficients nor the vanishing deep levels can
    overflow or be flushed to zero.  The 2**k scalings use ``math.ldexp``
    and are exact.
    """
    n = len(log_terms)
    if not seed_norm >= 0.0 or math.isinf(seed_norm):
        raise ValueError(f"seed must be finite and >= 0, got {seed_norm}")
    ln_seed = math.log(seed_norm) if seed_norm > 0.0 else _NEG_INF
    ln_alphas = []
    for k, w in enumerate(log_terms, start=1):
        if math.isnan(w) or w == math.inf:
            raise ValueError(f"log-raw term at index {k} must lie in [-inf, inf), got {w}")
        ln_alphas.append(math.ldexp(w, -k))
    scale_log = max([ln_seed, _SCALE_FLOOR_LOG, *ln_alphas])
    ln_value = math.ldexp(ln_seed - scale_log, n) if ln_seed != _NEG_INF else _NEG_INF
    for k in range(n, 0, -1):
        ln_alpha = ln_alphas[k - 1]
        ln_scaled = math.ldexp(ln_alpha - scale_log, k) if ln_alpha != _NEG_INF else _NEG_INF
        ln_value = 0.5 * _log_add(ln_scaled, ln_value)
    if ln_value == _NEG_INF:
        return 0.0
    return math.exp(scale_log + ln_value)


def seed_gap(log_terms: Sequence[float], upper_seed: float, lower_seed: float) -> float:
    """Value swing from moving the innermost seed between two levels.

    The result is bounded by ``upper_seed - lower_seed``: each square root is
    a contraction of seed differences on the normalized scale.
    """
    if lower_seed < 0.0 or upper_seed < lower_seed:
        raise ValueError(f"need upper_seed >= lower_seed >= 0, got {upper_seed}, {lower_seed}")
    return sqrt_nested_scaled(log_terms, upper_seed) - sqrt_nested_scaled(log_terms, lower_seed)


def seed_gap_pair(
    h: OuterFunction,
    terms_small: Sequence[float],
    terms_large: Sequence[float],
    upper_seed: float,
    lower_seed: float,
) -> tuple[float, float]:
    """Seed swings over two pointwise-ordered coefficient lists.

    With ``terms_small[k] <= terms_large[k]`` everywhere, the swing over the
    small list dominates the swing over the large list: larger coefficients
    damp the influence of the seed.
    """
    if len(terms_small) != len(terms_large):
        raise ValueError("coefficient lists must have equal length")
    for position, (small, large) in enumerate(zip(terms_small, terms_large), start=1):
        if small > large:
            raise ValueError(f"terms_small exceeds terms_large at position {position}")
    if lower_seed < 0.0 or upper_seed < lower_seed:
        raise ValueError(f"need upper_seed >= lower_seed >= 0, got {upper_seed}, {lower_seed}")
    gap_small = nested_eval(h, terms_small, upper_seed) - nested_eval(h, terms_small, lower_seed)
    gap_large = nested_eval(h, terms_large, upper_seed) - nested_eval(h, terms_large, lower_seed)
    return gap_small, gap_large


def _position_exponent_lograw(values: Sequence[float]) -> list[float]:
    out = []
    for position, value in enumerate(values, start=1):
        if value < 0.0 or not math.isfinite(value):
            raise ValueError(f"normalized value {value} at position {position} must be >= 0")
        out.append(math.ldexp(math.log(value), position) if value > 0.0 else _NEG_INF)
    return out


def swap_adjacent(values: Sequence[float], j: int) -> tuple[float, float]:
    """Radical values before and after sorting positions j, j+1 ascending.

    ``values`` are normalized coefficients evaluated with position exponents
    (position p enters as value ** 2**p) and seed 0.  Sorting an adjacent
    pair ascending never increases the value, so ``original >= swapped`` up
    to rounding.
    """
    if not 1 <= j < len(values):
        raise ValueError(f"swap position must satisfy 1 <= j < {len(values)}, got {j}")
    original = sqrt_nested_scaled(_position_exponent_lograw(values), 0.0)
    reordered = list(values)
    reordered[j - 1], reordered[j] = (
        min(values[j - 1], values[j]),
        max(values[j - 1], values[j]),
    )
    swapped = sqrt_nested_scaled(_position_exponent_lograw(reordered), 0.0)
    return original, swapped
