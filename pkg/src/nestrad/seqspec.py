"""Coefficient sequences for nested square-root radicals.

A radical sqrt(a_1 + sqrt(a_2 + sqrt(a_3 + ...))) is described by its
coefficients on two scales at once: the raw value a_k and the normalized
value alpha_k = a_k ** (1 / 2**k).  Raw values overflow binary64 at shallow
depth (2 ** 2**11 is already out of range), so ln(a_k) is the storage of
record and anything that needs a_k works in the log domain.  The normalized
scale is the one on which tail suprema, seeds, and convergence caps live.

A :class:`SequenceSpec` is a finite prefix of :class:`Term` plus a tail
model.  The tail model plays two roles: it extends the sequence past the
stored prefix when an evaluation needs deeper coefficients, and it reports
per-depth seed bounds ``(lower_seed, upper_cap)`` used to bracket the tail's
contribution.  The two bounds carry different obligations:

* ``lower_seed`` at depth ``n`` must not exceed the normalized value of the
  whole tail radical from index ``n`` (seeding with it can only shrink the
  result);
* ``upper_cap`` at depth ``n`` must dominate every normalized coefficient
  from index ``n`` onward (capping with it, golden-boosted, can only grow
  the result).

Because a tail's *value* generally exceeds its coefficient supremum, a tight
``lower_seed`` may legitimately be larger than ``upper_cap``; validity of an
enclosure only requires ``lower_seed <= upper_cap * phi ** (2 ** -(n-1))``,
which the evaluation engine checks.

All types here are immutable after construction and every function is pure,
so everything is safe to share across threads.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

__all__ = [
    "SpecError",
    "Term",
    "TailModel",
    "ZeroTail",
    "ConstantNormalizedTail",
    "ConstantRawTail",
    "CapTableTail",
    "OmegaTail",
    "RamanujanTail",
    "SequenceSpec",
    "golden",
    "power_tower",
    "ramanujan",
    "constant_raw",
    "constant_normalized",
    "explicit",
    "make_family",
    "family_term",
    "tail_bounds",
    "parse_spec",
    "render_spec",
    "load_cap_table",
    "RAMANUJAN_SUP_BOUND",
]

_NEG_INF = float("-inf")


class SpecError(ValueError):
    """Malformed sequence-spec document or tail description."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class Term:
    """One radical coefficient, held on the normalized and log-raw scales.

    ``normalized`` is alpha_k = a_k ** (2 ** -k) and ``log_raw`` is ln(a_k),
    with ``-inf`` encoding a_k = 0.  Conversion between the scales multiplies
    by 2 ** k, which is an exact exponent shift in binary64 (``math.ldexp``),
    so the two fields never drift apart by more than the rounding of a single
    ``exp``/``log`` call.
    """

    normalized: float
    log_raw: float
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"term index must be >= 1, got {self.index}")
        if math.isnan(self.normalized) or math.isinf(self.normalized) or self.normalized < 0.0:
            raise ValueError(f"normalized term must be finite and >= 0, got {self.normalized}")
        if math.isnan(self.log_raw) or self.log_raw == math.inf:
            raise ValueError(f"log_raw must lie in [-inf, inf), got {self.log_raw}")
        if (self.normalized == 0.0) != (self.log_raw == _NEG_INF):
            raise ValueError("normalized == 0 exactly when log_raw == -inf")

    @classmethod
    def from_normalized(cls, value: float, index: int) -> "Term":
        value = float(value)
        if value < 0.0:
            raise ValueError(f"negative term {value} at index {index}")
        log_raw = math.ldexp(math.log(value), index) if value > 0.0 else _NEG_INF
        return cls(value, log_raw, index)

    @classmethod
    def from_raw(cls, raw: float, index: int) -> "Term":
        raw = float(raw)
        if raw < 0.0:
            raise ValueError(f"negative term {raw} at index {index}")
        log_raw = math.log(raw) if raw > 0.0 else _NEG_INF
        return cls.from_log_raw(log_raw, index)

    @classmethod
    def from_log_raw(cls, log_raw: float, index: int) -> "Term":
        log_raw = float(log_raw)
        normalized = math.exp(math.ldexp(log_raw, -index)) if log_raw != _NEG_INF else 0.0
        return cls(normalized, log_raw, index)


class TailModel:
    """How a sequence continues past its stored prefix.

    Subclasses provide ``term(k)`` (the coefficient at finite index ``k``, or
    raise if coefficients past the prefix are unknown), ``bounds(n)`` (the
    per-depth seed pair), and ``can_extend()``.
    """

    def term(self, k: int) -> Term:
        raise NotImplementedError

    def terms(self, first: int, last: int) -> list[Term]:
        return [self.term(k) for k in range(first, last + 1)]

    def bounds(self, n: int) -> tuple[float, float]:
        raise NotImplementedError

    def can_extend(self) -> bool:
        return True

    def scaled(self, factor: float) -> "TailModel":
        raise ValueError(f"{type(self).__name__} does not support rescaling")

    def render(self) -> str:
        raise SpecError(f"{type(self).__name__} has no inline text form")


@dataclass(frozen=True)
class ZeroTail(TailModel):
    """The sequence ends: every coefficient past the prefix is zero."""

    def term(self, k: int) -> Term:
        return Term(0.0, _NEG_INF, k)

    def bounds(self, n: int) -> tuple[float, float]:
        return (0.0, 0.0)

    def scaled(self, factor: float) -> "ZeroTail":
        return self

    def render(self) -> str:
        return "zero"


@dataclass(frozen=True)
class ConstantNormalizedTail(TailModel):
    """Constant normalized coefficient: alpha_k = alpha for every tail index.

    The tail supremum is exactly ``alpha``, so both seed bounds equal it.
    """

    alpha: float

    def __post_init__(self):
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"tail alpha must be finite and >= 0, got {self.alpha}")

    def term(self, k: int) -> Term:
        return Term.from_normalized(self.alpha, k)

    def bounds(self, n: int) -> tuple[float, float]:
        return (self.alpha, self.alpha)

    def scaled(self, factor: float) -> "ConstantNormalizedTail":
        return ConstantNormalizedTail(self.alpha * factor)

    def render(self) -> str:
        return f"constant_norm:{self.alpha:.17g}"


@dataclass(frozen=True)
class ConstantRawTail(TailModel):
    """Constant raw coefficient: a_k = raw for every tail index.

    The normalized coefficients raw ** (2 ** -k) drift toward 1, so the seed
    bounds depend on depth:

    * the tail radical from any depth has raw value equal to the fixed point
      x = sqrt(raw + x), i.e. (1 + sqrt(1 + 4 raw)) / 2, which supplies an
      exact ``lower_seed`` of fixed_point ** (2 ** -(n-1));
    * the coefficient supremum from depth n is max(1, raw ** (2 ** -n)).

    Seeding the lower side at the fixed point makes the lower bound of the
    enclosure exact at every depth.
    """

    raw: float

    def __post_init__(self):
        if not (self.raw >= 0.0 and math.isfinite(self.raw)):
            raise ValueError(f"tail raw value must be finite and >= 0, got {self.raw}")

    def term(self, k: int) -> Term:
        return Term.from_raw(self.raw, k)

    def bounds(self, n: int) -> tuple[float, float]:
        if self.raw == 0.0:
            return (0.0, 0.0)
        fixed_point = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * self.raw))
        lower = math.exp(math.ldexp(math.log(fixed_point), 1 - n))
        upper = max(1.0, math.exp(math.ldexp(math.log(self.raw), -n)))
        return (lower, upper)

    def render(self) -> str:
        return f"constant_raw:{self.raw:.17g}"


@dataclass(frozen=True)
class CapTableTail(TailModel):
    """Seed bounds supplied row by row (e.g. from a CSV file).

    The table only certifies bounds; it cannot extend the coefficient
    sequence, so evaluation depth is pinned at ``len(prefix) + 1``.  Rows are
    ``(n, lower_seed, upper_cap)``.  Queries past the last row fall back to
    ``(0, last_upper_cap)``: a cap stays valid for deeper tails, a lower seed
    does not.  Queries before the first row are refused.
    """

    rows: tuple[tuple[int, float, float], ...]

    def __post_init__(self):
        if not self.rows:
            raise SpecError("cap table must contain at least one row")
        seen = set()
        for n, lower, upper in self.rows:
            if n < 1:
                raise SpecError(f"cap table depth must be >= 1, got {n}")
            if n in seen:
                raise SpecError(f"duplicate cap table depth {n}")
            seen.add(n)
            if not (lower >= 0.0 and upper >= 0.0 and math.isfinite(lower) and math.isfinite(upper)):
                raise SpecError(f"cap table bounds at depth {n} must be finite and >= 0")

    def term(self, k: int) -> Term:
        raise SpecError("cap-table tails certify bounds only and cannot supply coefficients")

    def can_extend(self) -> bool:
        return False

    def bounds(self, n: int) -> tuple[float, float]:
        table = {row[0]: (row[1], row[2]) for row in self.rows}
        if n in table:
            return table[n]
        last = max(table)
        if n > last:
            return (0.0, table[last][1])
        raise SpecError(f"cap table does not cover depth {n}")


@dataclass(frozen=True)
class OmegaTail(TailModel):
    """Golden continuation with a transfinite seed.

    Every remaining finite coefficient is 1 and the sequence carries one more
    value ``omega_value`` at the transfinite position: at evaluation depth d
    it enters the innermost radical as omega_value ** (2 ** d).  This is the
    shape of the U function, U(r) = lim of r, sqrt(1 + r**2),
    sqrt(1 + sqrt(1 + r**4)), ...  The coefficient supremum from any depth is
    max(1, omega_value), and seeding with that supremum is also a valid lower
    seed, so both bounds coincide.
    """

    omega_value: float

    def __post_init__(self):
        if not (self.omega_value >= 0.0 and math.isfinite(self.omega_value)):
            raise ValueError(f"omega value must be finite and >= 0, got {self.omega_value}")

    def term(self, k: int) -> Term:
        return Term(1.0, 0.0, k)

    def bounds(self, n: int) -> tuple[float, float]:
        cap = max(1.0, self.omega_value)
        return (cap, cap)

    def render(self) -> str:
        return f"omega:{self.omega_value:.17g}"


def _ramanujan_v(count: int) -> list[float]:
    # v_k = 2**-k * ln(m_k) for the multiplier chain m_1 = 2,
    # m_{k+1} = m_k**2 * (k+2); alpha_k = exp(v_{k-1}).  The increments are
    # exact power-of-two scalings, so the chain is stable at any depth.
    v = [0.0]
    for k in range(1, count + 1):
        v.append(v[k - 1] + math.ldexp(math.log(k + 1), -k))
    return v


# The normalized coefficients increase toward exp(lim v_k); past 300 series
# terms the remainder is below 2**-300, far under binary64 resolution.  The
# (1 + 1e-13) bump keeps the constant an upper bound despite summation
# rounding.
RAMANUJAN_SUP_BOUND = math.exp(_ramanujan_v(300)[-1]) * (1.0 + 1e-13)


@dataclass(frozen=True)
class RamanujanTail(TailModel):
    """Coefficients of sqrt(1 + 2 sqrt(1 + 3 sqrt(1 + ...))) = 3.

    Pushing the multipliers inward gives a_1 = 1 and a_{k+1} = m_k ** 2 with
    m_1 = 2, m_{k+1} = m_k ** 2 * (k + 2).  The normalized coefficients
    increase strictly toward :data:`RAMANUJAN_SUP_BOUND` (about 2.7612), so
    the cap at depth n is the limit bound and the lower seed is the n-th
    coefficient itself.
    """

    def term(self, k: int) -> Term:
        v = _ramanujan_v(max(k - 1, 0))
        return Term.from_log_raw(math.ldexp(v[k - 1], k), k) if k > 1 else Term(1.0, 0.0, 1)

    def terms(self, first: int, last: int) -> list[Term]:
        v = _ramanujan_v(max(last - 1, 0))
        return [
            Term.from_log_raw(math.ldexp(v[k - 1], k), k) if k > 1 else Term(1.0, 0.0, 1)
            for k in range(first, last + 1)
        ]

    def bounds(self, n: int) -> tuple[float, float]:
        return (self.term(n).normalized, RAMANUJAN_SUP_BOUND)


@dataclass(frozen=True)
class SequenceSpec:
    """A coefficient sequence: stored prefix plus tail model."""

    prefix: tuple[Term, ...]
    tail: TailModel
    family_name: str | None = None

    def __post_init__(self):
        for position, term in enumerate(self.prefix, start=1):
            if term.index != position:
                raise ValueError(
                    f"prefix indices must be consecutive from 1; "
                    f"position {position} holds index {term.index}"
                )

    def term(self, k: int) -> Term:
        """Coefficient at finite index k, extending via the tail model."""
        if k < 1:
            raise ValueError(f"index must be >= 1, got {k}")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.tail.term(k)

    def terms_lograw(self, count: int) -> list[float]:
        """ln(a_k) for k = 1..count, extending past the prefix if needed."""
        out = [t.log_raw for t in self.prefix[:count]]
        if count > len(self.prefix):
            out.extend(t.log_raw for t in self.tail.terms(len(self.prefix) + 1, count))
        return out

    def max_depth(self) -> int | None:
        """Deepest usable evaluation depth, or None when unbounded."""
        return None if self.tail.can_extend() else len(self.prefix) + 1

    def tail_bounds(self, n: int) -> tuple[float, float]:
        """Seed bounds at depth n, folding in prefix coefficients >= n."""
        if n < 1:
            raise ValueError(f"depth must be >= 1, got {n}")
        p = len(self.prefix)
        lower, upper = self.tail.bounds(max(n, p + 1))
        for term in self.prefix[n - 1:]:
            # Any single coefficient is a valid lower seed, and the cap must
            # dominate every coefficient from n on.
            lower = max(lower, term.normalized)
            upper = max(upper, term.normalized)
        return (lower, upper)

    def scaled(self, factor: float) -> "SequenceSpec":
        """The spec with every normalized coefficient multiplied by factor."""
        if not (factor > 0.0 and math.isfinite(factor)):
            raise ValueError(f"scale factor must be finite and > 0, got {factor}")
        prefix = tuple(
            Term.from_normalized(t.normalized * factor, t.index) for t in self.prefix
        )
        return SequenceSpec(prefix, self.tail.scaled(factor), None)


def golden() -> SequenceSpec:
    """All-ones radical sqrt(1 + sqrt(1 + ...)), whose value is phi."""
    return SequenceSpec((), ConstantNormalizedTail(1.0), "golden")


def power_tower() -> SequenceSpec:
    """a_k = 2 ** 2**k, i.e. constant normalized coefficient 2; value 2*phi."""
    return SequenceSpec((), ConstantNormalizedTail(2.0), "powertower")


def ramanujan() -> SequenceSpec:
    """sqrt(1 + 2 sqrt(1 + 3 sqrt(1 + ...))) with multipliers pushed inward."""
    return SequenceSpec((), RamanujanTail(), "ramanujan")


def constant_raw(value: float) -> SequenceSpec:
    """a_k = value for every k; converges to the fixed point of sqrt(value + x)."""
    return SequenceSpec((), ConstantRawTail(float(value)), f"constant_raw:{float(value):.17g}")


def constant_normalized(alpha: float) -> SequenceSpec:
    """alpha_k = alpha for every k; converges to alpha * phi."""
    return SequenceSpec(
        (), ConstantNormalizedTail(float(alpha)), f"constant_norm:{float(alpha):.17g}"
    )


def explicit(
    values: Sequence[float], scale: str = "raw", tail: TailModel | None = None
) -> SequenceSpec:
    """Spec from listed coefficients on the given scale (raw/lograw/norm)."""
    builders = {
        "raw": Term.from_raw,
        "lograw": Term.from_log_raw,
        "norm": Term.from_normalized,
    }
    try:
        build = builders[scale]
    except KeyError:
        raise ValueError(f"unknown term scale {scale!r}") from None
    prefix = tuple(build(v, k) for k, v in enumerate(values, start=1))
    return SequenceSpec(prefix, tail if tail is not None else ZeroTail(), None)


_FAMILY_BUILDERS = {
    "golden": golden,
    "powertower": power_tower,
    "ramanujan": ramanujan,
}


def make_family(token: str) -> SequenceSpec:
    """Family from its CLI/grammar token, e.g. ``golden`` or ``constant_raw:6``."""
    name, _, param = token.partition(":")
    name = name.strip().lower()
    if name in _FAMILY_BUILDERS:
        if param:
            raise SpecError(f"family {name!r} takes no parameter")
        return _FAMILY_BUILDERS[name]()
    if name in ("constant_raw", "constant_norm"):
        if not param:
            raise SpecError(f"family {name!r} needs a parameter, e.g. {name}:2")
        try:
            value = float(param)
        except ValueError:
            raise SpecError(f"bad numeric parameter {param!r} for family {name!r}") from None
        if value < 0.0 or not math.isfinite(value):
            raise SpecError(f"family parameter must be finite and >= 0, got {param}")
        return constant_raw(value) if name == "constant_raw" else constant_normalized(value)
    raise SpecError(f"unknown family {token!r}")


def family_term(spec: SequenceSpec, k: int) -> Term:
    """The k-th coefficient of a family spec (prefix or tail-extended)."""
    return spec.term(k)


def tail_bounds(spec: SequenceSpec, n: int) -> tuple[float, float]:
    """Seed bounds ``(lower_seed, upper_cap)`` for spec at depth n."""
    return spec.tail_bounds(n)


def load_cap_table(source: str | Path) -> CapTableTail:
    """Cap table from a CSV file with header ``n,lower_seed,upper_cap``."""
    text = Path(source).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SpecError(f"cap table {source} is empty") from None
    if [h.strip() for h in header] != ["n", "lower_seed", "upper_cap"]:
        raise SpecError(f"cap table {source} must start with header n,lower_seed,upper_cap")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise SpecError(f"cap table {source} line {lineno}: expected 3 columns")
        try:
            rows.append((int(row[0]), float(row[1]), float(row[2])))
        except ValueError:
            raise SpecError(f"cap table {source} line {lineno}: bad number") from None
    return CapTableTail(tuple(rows))


def _parse_number_list(body: str, line: int) -> list[float]:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise SpecError("expected a bracketed list like [1,2,3]", line)
    inner = body[1:-1].strip()
    if not inner:
        return []
    try:
        return [float(cell.strip()) for cell in inner.split(",")]
    except ValueError:
        raise SpecError(f"bad number in list {body!r}", line) from None


def _parse_tail(value: str, line: int, cap_base: Path | None) -> TailModel:
    kind, _, param = value.partition(":")
    kind = kind.strip().lower()
    if kind == "zero":
        return ZeroTail()
    if kind in ("constant_norm", "constant_raw", "omega"):
        try:
            number = float(param)
        except ValueError:
            raise SpecError(f"bad tail parameter {param!r}", line) from None
        if number < 0.0 or not math.isfinite(number):
            raise SpecError(f"tail parameter must be finite and >= 0, got {param}", line)
        if kind == "constant_norm":
            return ConstantNormalizedTail(number)
        if kind == "constant_raw":
            return ConstantRawTail(number)
        return OmegaTail(number)
    if kind == "cap":
        if not param:
            raise SpecError("tail cap needs a file path, e.g. cap:bounds.csv", line)
        path = Path(param)
        if cap_base is not None and not path.is_absolute():
            path = cap_base / path
        try:
            return load_cap_table(path)
        except OSError as exc:
            raise SpecError(f"cannot read cap table {param!r}: {exc}", line) from None
    raise SpecError(f"unknown tail {value!r}", line)


def parse_spec(text: str, cap_base: Path | None = None) -> SequenceSpec:
    """Parse a spec document: one ``key=value`` per line.

    Keys: ``family=<token>`` on its own, or exactly one of ``terms_raw`` /
    ``terms_lograw`` / ``terms_norm`` plus an optional ``tail=...`` (default
    ``zero``).  ``cap_base`` resolves relative cap-table paths.
    """
    family_token: str | None = None
    terms: tuple[str, list[float], int] | None = None
    tail: TailModel | None = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise SpecError(f"expected key=value, got {line!r}", lineno)
        key = key.strip().lower()
        value = value.strip()
        if key == "family":
            if family_token is not None:
                raise SpecError("duplicate family line", lineno)
            family_token = value
        elif key in ("terms_raw", "terms_lograw", "terms_norm"):
            if terms is not None:
                raise SpecError("only one terms_* line is allowed", lineno)
            numbers = _parse_number_list(value, lineno)
            if key != "terms_lograw":
                for number in numbers:
                    if number < 0.0:
                        raise SpecError(f"negative term {number}", lineno)
            terms = (key.removeprefix("terms_"), numbers, lineno)
        elif key == "tail":
            if tail is not None:
                raise SpecError("duplicate tail line", lineno)
            tail = _parse_tail(value, lineno, cap_base)
        else:
            raise SpecError(f"unknown key {key!r}", lineno)

    if family_token is not None:
        if terms is not None or tail is not None:
            raise SpecError("family specs take no terms_* or tail lines")
        return make_family(family_token)
    if terms is None:
        raise SpecError("spec needs either a family line or a terms_* line")
    scale, numbers, lineno = terms
    try:
        return explicit(numbers, scale=scale, tail=tail)
    except ValueError as exc:
        raise SpecError(str(exc), lineno) from None


def render_spec(spec: SequenceSpec) -> str:
    """Text form of a spec; inverse of :func:`parse_spec` for renderable tails."""
    if spec.family_name is not None:
        return f"family={spec.family_name}\n"
    values = ",".join(f"{t.log_raw:.17g}" for t in spec.prefix)
    return f"terms_lograw=[{values}]\ntail={spec.tail.render()}\n"
