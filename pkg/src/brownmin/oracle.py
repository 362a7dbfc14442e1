"""Function evaluation oracles over [0, 1] with f(0) = 0.

A path oracle answers point evaluations at dyadic sites and memoizes them
in a :class:`~brownmin.dyadic.Skeleton`.  The Brownian oracle materialises
a Brownian path lazily: W(1) is drawn unconditionally, every later site is
drawn from the exact bridge law between its already-observed neighbours,
so the conditional law given the skeleton is exact at every step.
"""

from __future__ import annotations

import abc
import bisect
from typing import Callable

import numpy as np

from .bridge import _interior
from .dyadic import ONE, ZERO, DyadicPoint, Skeleton
from .rng import RngStream


class PathOracle(abc.ABC):
    """Evaluation contract: evaluate(t) with memoization, f(0) = 0."""

    skeleton: Skeleton

    @abc.abstractmethod
    def evaluate(self, t: DyadicPoint, hint: int | None = None) -> float:
        """Value at t, consistent with all previous evaluations."""


class BrownianOracle(PathOracle):
    """Lazily bridge-sampled Brownian path.

    The first new site must be t = 1 (drawn as a standard normal); later
    sites must be midpoints of existing gaps and are drawn via the bridge
    interior law.  Re-evaluating a known site never consumes randomness.
    """

    def __init__(self, stream: RngStream, capacity: int = 64):
        self.stream = stream
        self.skeleton = Skeleton(capacity=capacity)

    def evaluate(self, t: DyadicPoint, hint: int | None = None) -> float:
        skel = self.skeleton
        if t == ZERO:
            return 0.0
        if skel.n == 0:
            if t != ONE:
                raise ValueError(
                    f"cannot evaluate {t} before the endpoint 1 has been evaluated"
                )
            value = self.stream.gaussian()
            skel.insert(ONE, value)
            return value
        if hint is None:
            hint = bisect.bisect_left(skel._sites, t)
            if hint < len(skel._sites) and skel._sites[hint] == t:
                return float(skel.values[hint])  # memoized, no new draw
        # interior draw between the bracketing observed sites
        left = skel._sites[hint - 1]
        a = float(skel.values[hint - 1])
        b = float(skel.values[hint])
        T = float(skel.gap_lengths[hint - 1])
        s = _exact_offset(left, t)
        if not 0.0 < s < T:
            raise ValueError(f"site {t} does not lie strictly inside a known gap")
        value = _interior(a, b, T, s, self.stream.gaussian())
        skel.insert(t, value, hint=hint)
        return value


class DeterministicOracle(PathOracle):
    """Closed-form test function with f(0) = 0, evaluated at float(t).

    Evaluation order is unrestricted: asking for a site whose bisection
    ancestors have not been seen yet simply evaluates those ancestors too
    (the function is pure, so the extra evaluations are free), keeping the
    skeleton a valid midpoint refinement.
    """

    def __init__(self, fn: Callable[[float], float], capacity: int = 64):
        if fn(0.0) != 0.0:
            raise ValueError("test function must satisfy f(0) = 0")
        self.fn = fn
        self.skeleton = Skeleton(capacity=capacity)

    def evaluate(self, t: DyadicPoint, hint: int | None = None) -> float:
        skel = self.skeleton
        if t == ZERO:
            return 0.0
        if hint is not None and skel.n > 0 and t not in skel:
            value = float(self.fn(float(t)))
            skel.insert(t, value, hint=hint)
            return value
        return self._ensure(t)

    def _ensure(self, t: DyadicPoint) -> float:
        skel = self.skeleton
        if t == ZERO:
            return 0.0
        existing = skel.index_of(t)
        if existing is not None:
            return float(skel.values[existing])
        if t != ONE:
            # t is the midpoint of its two reduced neighbours at this level
            self._ensure(DyadicPoint(t.numerator - 1, t.level))
            self._ensure(DyadicPoint(t.numerator + 1, t.level))
        value = float(self.fn(float(t)))
        skel.insert(t, value)
        return value


def _exact_offset(left: DyadicPoint, t: DyadicPoint) -> float:
    level = max(left.level, t.level)
    num = (t.numerator << (level - t.level)) - (left.numerator << (level - left.level))
    return num / (1 << level)


def grid_reference_min(oracle: DeterministicOracle, grid_size: int) -> float:
    """Minimum of the oracle's function over the uniform grid {i/grid_size}.

    A brute-force upper bound on the true minimum that converges as the
    grid is refined; used as an independent reference for convergence
    tests.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    grid = np.linspace(0.0, 1.0, grid_size + 1)
    values = np.array([oracle.fn(float(t)) for t in grid])
    return float(values.min())
