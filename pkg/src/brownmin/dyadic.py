"""Exact dyadic evaluation sites and the ordered observation skeleton.

Sites are binary rationals k/2^m in [0, 1], kept in exact integer form so
that midpoints, gap lengths and the smallest gap are computed without any
floating point error.  Floats are a derived view used for function values
and output only.
"""

from __future__ import annotations

import bisect
import numpy as np

DEFAULT_LEVEL_CAP = 1000

_LOG2 = 0.6931471805599453


class DepthExceededError(RuntimeError):
    """Raised when a midpoint would exceed the configured bisection depth."""


class DyadicPoint:
    """A number numerator / 2**level in [0, 1], stored canonically.

    Canonical means the numerator is odd, except for the endpoints 0/2^0
    and 1/2^0.  Construction reduces trailing zero bits automatically.
    """

    __slots__ = ("numerator", "level")

    def __init__(self, numerator: int, level: int):
        if level < 0 or numerator < 0 or numerator > (1 << level):
            raise ValueError(f"not a dyadic point in [0, 1]: {numerator}/2^{level}")
        while numerator & 1 == 0 and level > 0:
            numerator >>= 1
            level -= 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "level", level)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicPoint is immutable")

    def __float__(self) -> float:
        # int true division is correctly rounded, hence exact for level <= 52
        # and monotone at any supported depth
        return self.numerator / (1 << self.level)

    def __repr__(self) -> str:
        return f"DyadicPoint({self.numerator}, {self.level})"

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.level}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DyadicPoint):
            return NotImplemented
        return self.numerator == other.numerator and self.level == other.level

    def __hash__(self) -> int:
        return hash((self.numerator, self.level))

    def __lt__(self, other: "DyadicPoint") -> bool:
        if self.level >= other.level:
            return self.numerator < other.numerator << (self.level - other.level)
        return self.numerator << (other.level - self.level) < other.numerator

    def __le__(self, other: "DyadicPoint") -> bool:
        return self == other or self < other

    def __gt__(self, other: "DyadicPoint") -> bool:
        return other < self

    def __ge__(self, other: "DyadicPoint") -> bool:
        return other <= self


ZERO = DyadicPoint(0, 0)
ONE = DyadicPoint(1, 0)


def _lift(left: DyadicPoint, right: DyadicPoint) -> tuple[int, int, int]:
    """Numerators of both points at their common level."""
    level = max(left.level, right.level)
    return (
        left.numerator << (level - left.level),
        right.numerator << (level - right.level),
        level,
    )


def gap_is_power_of_two(left: DyadicPoint, right: DyadicPoint) -> bool:
    a, b, _ = _lift(left, right)
    d = b - a
    return d > 0 and (d & (d - 1)) == 0


def midpoint(
    left: DyadicPoint, right: DyadicPoint, level_cap: int | None = DEFAULT_LEVEL_CAP
) -> DyadicPoint:
    """Exact midpoint of a dyadic interval whose length is a power of two.

    For an aligned interval [k/2^m, (k+1)/2^m] the result is (2k+1)/2^(m+1).
    Raises ValueError on a malformed interval and DepthExceededError when
    the midpoint would be deeper than ``level_cap``.
    """
    a, b, level = _lift(left, right)
    d = b - a
    if d <= 0:
        raise ValueError(f"midpoint needs left < right, got {left} >= {right}")
    if d & (d - 1):
        raise ValueError(f"gap between {left} and {right} is not a power of two")
    mid = DyadicPoint(a + b, level + 1)
    if level_cap is not None and mid.level > level_cap:
        raise DepthExceededError(
            f"midpoint of ({left}, {right}) needs level {mid.level} > cap {level_cap}"
        )
    return mid


class Skeleton:
    """Ordered sites with observed values, plus cached summary statistics.

    The first site is always 0 with value 0.  The first inserted site must
    be 1; every later site must be the exact midpoint of the gap it lands
    in, so all gaps stay exact powers of two.  The running minimum of the
    values and the smallest gap are maintained incrementally.
    """

    __slots__ = ("_sites", "_values", "_gap_lengths", "_gap_levels", "_count",
                 "_min_value", "_tau_level")

    def __init__(self, capacity: int = 64):
        capacity = max(capacity, 8)
        self._sites: list[DyadicPoint] = [ZERO]
        self._values = np.zeros(capacity)
        self._gap_lengths = np.zeros(capacity)
        self._gap_levels = np.zeros(capacity, dtype=np.int64)
        self._count = 1
        self._min_value = 0.0
        self._tau_level: int | None = None

    @property
    def n(self) -> int:
        """Number of evaluations, not counting the fixed site 0."""
        return self._count - 1

    @property
    def min_value(self) -> float:
        return self._min_value

    @property
    def tau_level(self) -> int:
        """Level k of the smallest gap 1/2^k.  Needs at least one gap."""
        if self._tau_level is None:
            raise ValueError("skeleton has no gaps yet")
        return self._tau_level

    @property
    def tau(self) -> float:
        """Smallest gap between consecutive sites, exact as a float."""
        return 2.0 ** -float(self.tau_level)

    @property
    def sites(self) -> list[DyadicPoint]:
        return list(self._sites)

    @property
    def values(self) -> np.ndarray:
        """View of the observed values in site order; treat as read only."""
        return self._values[: self._count]

    @property
    def gap_lengths(self) -> np.ndarray:
        """View of consecutive gap lengths; treat as read only."""
        return self._gap_lengths[: self._count - 1]

    @property
    def gap_levels(self) -> np.ndarray:
        return self._gap_levels[: self._count - 1]

    def site_floats(self) -> np.ndarray:
        return np.array([float(s) for s in self._sites])

    def items(self) -> list[tuple[DyadicPoint, float]]:
        return [(s, float(v)) for s, v in zip(self._sites, self._values)]

    def __len__(self) -> int:
        return self._count

    def __contains__(self, t: DyadicPoint) -> bool:
        i = bisect.bisect_left(self._sites, t)
        return i < self._count and self._sites[i] == t

    def index_of(self, t: DyadicPoint) -> int | None:
        i = bisect.bisect_left(self._sites, t)
        if i < self._count and self._sites[i] == t:
            return i
        return None

    def value_at(self, t: DyadicPoint) -> float:
        i = self.index_of(t)
        if i is None:
            raise KeyError(f"site {t} not in skeleton")
        return float(self._values[i])

    def _ensure_capacity(self):
        if self._count + 1 <= len(self._values):
            return
        grow = len(self._values) * 2
        self._values = np.concatenate([self._values, np.zeros(grow - len(self._values))])
        self._gap_lengths = np.concatenate(
            [self._gap_lengths, np.zeros(grow - len(self._gap_lengths))]
        )
        self._gap_levels = np.concatenate(
            [self._gap_levels, np.zeros(grow - len(self._gap_levels), dtype=np.int64)]
        )

    def insert(self, t: DyadicPoint, value: float, hint: int | None = None) -> int:
        """Insert a new (site, value) observation and return its index.

        The first insert must be the site 1.  Afterwards ``t`` must be the
        exact midpoint of an existing gap.  ``hint`` is an optional gap
        index (1-based, gap between sites hint-1 and hint) that skips the
        binary search; it is still validated.
        """
        value = float(value)
        self._ensure_capacity()
        if self._count == 1:
            if t != ONE:
                raise ValueError(f"first inserted site must be 1, got {t}")
            self._sites.append(ONE)
            self._values[1] = value
            self._gap_lengths[0] = 1.0
            self._gap_levels[0] = 0
            self._count = 2
            self._min_value = min(self._min_value, value)
            self._tau_level = 0
            return 1

        if hint is not None and 1 <= hint < self._count:
            idx = hint
            if not (self._sites[idx - 1] < t < self._sites[idx]):
                raise ValueError(f"hint {hint} does not bracket {t}")
        else:
            idx = bisect.bisect_left(self._sites, t)
            if idx < self._count and self._sites[idx] == t:
                raise ValueError(f"duplicate site {t}")
            if idx == 0 or idx == self._count:
                raise ValueError(f"site {t} outside the covered interval")

        parent_level = int(self._gap_levels[idx - 1])
        # the only canonical dyadic of level k+1 strictly inside a gap of
        # length 1/2^k is its midpoint
        if t.level != parent_level + 1:
            raise ValueError(
                f"site {t} is not the midpoint of gap ({self._sites[idx-1]}, {self._sites[idx]})"
            )

        n_old = self._count
        self._sites.insert(idx, t)
        self._values[idx + 1 : n_old + 1] = self._values[idx:n_old]
        self._values[idx] = value
        self._gap_lengths[idx : n_old] = self._gap_lengths[idx - 1 : n_old - 1]
        self._gap_levels[idx : n_old] = self._gap_levels[idx - 1 : n_old - 1]
        half = self._gap_lengths[idx - 1] / 2.0
        self._gap_lengths[idx - 1] = half
        self._gap_lengths[idx] = half
        self._gap_levels[idx - 1] = parent_level + 1
        self._gap_levels[idx] = parent_level + 1
        self._count += 1
        if value < self._min_value:
            self._min_value = value
        if parent_level + 1 > self._tau_level:
            self._tau_level = parent_level + 1
        return idx
