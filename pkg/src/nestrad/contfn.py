"""Continued functions f(A + f(B + f(C + ...))) with iterated-ceiling bounds.

For a non-decreasing concave f with f(0) = 0 and a finite ceiling (the
supremum of f over [0, inf]), truncating after n observed terms
underestimates the limit by at most the n-fold iterate of f starting from
the ceiling: driving the observed terms to zero only amplifies the tail's
influence, and what remains is f applied n times to the largest possible
tail.  For arctan the ceiling is pi/2, so the depth-n error bound is the
(n-1)-fold arctan iterate of pi/2, which decays like sqrt(3 / (2n)).

Functions with f(0) > 0 are rejected: without a fixed point at zero the
one-sided bound above does not collapse, and the two-sided variant is out
of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .kappa import KappaResult
from .nested import Enclosure, OuterFunction, nested_eval

__all__ = ["ContinuedSpec", "cf_eval", "cf_error_bound", "cf_limit", "ITERATION_LIMIT"]

# Error bounds are found by literal iteration of the outer function; this
# caps the walk for tolerances the iterates cannot reach in bounded time.
ITERATION_LIMIT = 10**7


def _require_bounded(h: OuterFunction) -> None:
    if h.value_at_zero != 0.0:
        raise ValueError(
            f"outer function {h.label!r} has value {h.value_at_zero} at 0; "
            "error bounds need a fixed point at zero"
        )
    if not math.isfinite(h.ceiling):
        raise ValueError(f"outer function {h.label!r} needs a finite ceiling")


@dataclass(frozen=True)
class ContinuedSpec:
    """Outer function plus its term stream (materialized up front)."""

    h: OuterFunction
    terms: tuple[float, ...]

    @classmethod
    def make(cls, h: OuterFunction, terms: Iterable[float]) -> "ContinuedSpec":
        return cls(h, tuple(float(t) for t in terms))


def cf_eval(spec: ContinuedSpec, n: int) -> float:
    """Depth-n lower estimate: the fold over the first n terms with seed 0."""
    if not 0 <= n <= len(spec.terms):
        raise ValueError(f"depth {n} exceeds the {len(spec.terms)} available terms")
    return nested_eval(spec.h, spec.terms[:n], 0.0)


def cf_error_bound(h: OuterFunction, n: int) -> float:
    """Worst-case truncation error after observing n terms.

    e_1 is the ceiling (one application already performed on the infinite
    argument); each further level applies h once more.
    """
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    _require_bounded(h)
    if n - 1 > ITERATION_LIMIT:
        raise ValueError(f"depth {n} exceeds the iteration limit {ITERATION_LIMIT}")
    bound = h.ceiling
    for _ in range(n - 1):
        bound = h.eval(bound)
    return bound


def cf_limit(spec: ContinuedSpec, tol: float, depth_cap: int | None = None) -> KappaResult:
    """Enclosure at the shallowest depth whose error bound is within tol.

    Walks the iterated bound down until it passes tol, evaluates the fold
    there, and returns [estimate, estimate + bound].  If the available
    terms, the depth cap, or the iteration limit run out first, the result
    carries ``converged=False`` (callers inspect the flag; the partial
    enclosure is still valid for the truncated stream).
    """
    if not tol > 0.0:
        raise ValueError(f"tolerance must be > 0, got {tol}")
    _require_bounded(spec.h)
    deepest = len(spec.terms) if depth_cap is None else min(depth_cap, len(spec.terms))
    deepest = min(deepest, ITERATION_LIMIT)
    if deepest < 1:
        raise ValueError("no terms available")
    depth = 1
    bound = spec.h.ceiling
    while bound > tol and depth < deepest:
        bound = spec.h.eval(bound)
        depth += 1
    converged = bound <= tol
    estimate = cf_eval(spec, depth)
    fp_slack = 8.0 * depth * math.ulp(max(estimate + bound, 1.0))
    enclosure = Enclosure(estimate, estimate + bound, depth, bound, fp_slack)
    return KappaResult(enclosure, converged, depth)
