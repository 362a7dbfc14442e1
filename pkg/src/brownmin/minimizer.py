"""Adaptive bisection search for the minimum of a path on [0, 1].

After a nonadaptive start (evaluate 1, then 1/2), each step assigns every
gap between consecutive sites a split score

    score_i = gap_i / ((v_{i-1} - m + off) (v_i - m + off)),

where m is the running discrete minimum and off = search_offset(tau) is a
positive offset driven by the smallest gap tau.  The gap with the largest
score (smallest index on ties) is split at its exact midpoint and the new
site is evaluated.  A large score marks a gap likely to hide a value below
m - off, so the search concentrates around the minimum while the shrinking
offset keeps it from stalling elsewhere.

Scores are fully recomputed from scratch each step (O(n) per step, O(n^2)
per run), which is the reference semantics: the running minimum and the
smallest gap enter every score.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .dyadic import DEFAULT_LEVEL_CAP, ONE, ZERO, DyadicPoint, Skeleton, midpoint
from .oracle import PathOracle


def search_offset(x: float, lam: float) -> float:
    """Offset sqrt(lam * x * ln(1/x)) controlling the depth of the search.

    Defined for x in (0, 1] and lam >= 1; zero at x = 1 and decreasing to
    zero as x -> 0.
    """
    if not 0.0 < x <= 1.0:
        raise ValueError(f"offset argument must be in (0, 1], got {x}")
    if lam < 1.0:
        raise ValueError(f"lam must be >= 1, got {lam}")
    return math.sqrt(lam * x * math.log(1.0 / x))


@dataclass(frozen=True)
class MinimizerConfig:
    """Parameters of one search run."""

    lam: float
    max_steps: int
    level_cap: int = DEFAULT_LEVEL_CAP

    def __post_init__(self):
        if self.lam < 1.0:
            raise ValueError(f"lam must be >= 1, got {self.lam}")
        if self.max_steps < 2:
            raise ValueError(f"max_steps must be >= 2, got {self.max_steps}")
        if self.level_cap < 2:
            raise ValueError("level_cap must be >= 2")


class StepTrace(NamedTuple):
    """State summary after the n-th evaluation.

    ``site``/``value`` are the evaluation that produced this state,
    ``split_index`` the 1-based gap that was split to create it, and
    ``rho_max``/``undershoot_max`` the largest split score of this state
    and the corresponding undershoot probability exp(-2/score).
    """

    n: int
    split_index: int
    site: DyadicPoint
    value: float
    m_n: float
    tau_level: int
    rho_max: float
    undershoot_max: float


@dataclass
class MinimizerState:
    """Observation skeleton plus the derived per-gap split scores.

    ``max_scaled_increment`` is the running maximum of
    |v_i - v_{i-1}| / sqrt(gap_i) over every gap created so far, a
    diagnostic for how rough the observed path is.
    """

    skeleton: Skeleton
    scores: np.ndarray
    max_scaled_increment: float

    @property
    def n(self) -> int:
        return self.skeleton.n

    @property
    def m_n(self) -> float:
        return self.skeleton.min_value

    @property
    def tau(self) -> float:
        return self.skeleton.tau


def split_scores(state: MinimizerState, lam: float) -> np.ndarray:
    """Recompute all split scores of the current skeleton from scratch.

    Requires n >= 2 so that the smallest gap is below 1 and the offset is
    strictly positive; every score is then finite and positive.
    """
    skel = state.skeleton
    n = skel.n
    if n < 2:
        raise ValueError("split scores are defined from n = 2 on")
    off = search_offset(skel.tau, lam)
    h = skel.values - (skel.min_value - off)
    return skel.gap_lengths / (h[:-1] * h[1:])


def select_split(scores: np.ndarray) -> int:
    """1-based index of the largest score; smallest index on exact ties."""
    if len(scores) == 0:
        raise ValueError("empty score array")
    return int(np.argmax(scores)) + 1


def undershoot_probabilities(scores: np.ndarray) -> np.ndarray:
    """Per-gap probability exp(-2/score) that the gap hides a value below
    the current minimum minus the search offset."""
    return np.exp(-2.0 / np.asarray(scores, dtype=float))


def _update_increment_stat(state: MinimizerState, idx: int) -> None:
    # the two gaps created by inserting at site index idx
    vals = state.skeleton.values
    root = math.sqrt(state.skeleton.gap_lengths[idx - 1])
    left = abs(vals[idx] - vals[idx - 1]) / root
    right = abs(vals[idx + 1] - vals[idx]) / root
    if left > state.max_scaled_increment:
        state.max_scaled_increment = left
    if right > state.max_scaled_increment:
        state.max_scaled_increment = right


def _trace(state: MinimizerState, split_index: int, site: DyadicPoint,
           value: float) -> StepTrace:
    rho_max = float(state.scores.max())
    return StepTrace(
        n=state.skeleton.n,
        split_index=split_index,
        site=site,
        value=value,
        m_n=state.skeleton.min_value,
        tau_level=state.skeleton.tau_level,
        rho_max=rho_max,
        undershoot_max=math.exp(-2.0 / rho_max),
    )


def init_state(oracle: PathOracle, config: MinimizerConfig) -> tuple[MinimizerState, StepTrace]:
    """Run the nonadaptive start (sites 1 and 1/2) on a fresh oracle.

    Returns the state after two evaluations together with its trace row;
    the bootstrap midpoint 1/2 counts as splitting the single gap [0, 1].
    """
    if oracle.skeleton.n != 0:
        raise ValueError("oracle must be fresh (no evaluations yet)")
    oracle.evaluate(ONE)
    half = midpoint(ZERO, ONE, config.level_cap)
    value = oracle.evaluate(half, hint=1)
    state = MinimizerState(
        skeleton=oracle.skeleton,
        scores=np.empty(0),
        max_scaled_increment=0.0,
    )
    vals = state.skeleton.values
    state.max_scaled_increment = abs(vals[2])  # |f(1) - f(0)| / sqrt(1)
    _update_increment_stat(state, 1)
    state.scores = split_scores(state, config.lam)
    return state, _trace(state, 1, half, value)


def step(state: MinimizerState, oracle: PathOracle, config: MinimizerConfig) -> StepTrace:
    """Split the highest-scoring gap at its midpoint and evaluate there."""
    skel = state.skeleton
    j = select_split(state.scores)
    site = midpoint(skel._sites[j - 1], skel._sites[j], config.level_cap)
    value = oracle.evaluate(site, hint=j)
    _update_increment_stat(state, j)
    state.scores = split_scores(state, config.lam)
    return _trace(state, j, site, value)


def run(oracle: PathOracle, config: MinimizerConfig) -> tuple[MinimizerState, list[StepTrace]]:
    """Run the full search for config.max_steps evaluations (site 0 not
    counted) and return the final state with one trace row per state
    n = 2 .. max_steps."""
    state, first = init_state(oracle, config)
    traces = [first]
    while state.skeleton.n < config.max_steps:
        traces.append(step(state, oracle, config))
    return state, traces


@dataclass(frozen=True)
class ScoreBoundCheck:
    """Both sides of the conditional score bound at one state.

    When the scaled increments of the observed path stay below
    sqrt(lam ln(n) / 4) (``applicable``), the largest split score must not
    exceed 2 / (lam ln(1/tau)); a violation would be an algorithm bug.
    """

    n: int
    max_scaled_increment: float
    increment_bound: float
    rho_max: float
    score_bound: float
    applicable: bool


def check_score_bound(state: MinimizerState, config: MinimizerConfig) -> ScoreBoundCheck:
    """Evaluate the conditional bound on the current state (n >= 2)."""
    n = state.skeleton.n
    if n < 2:
        raise ValueError("score bound check needs n >= 2")
    increment_bound = math.sqrt(config.lam * math.log(n) / 4.0)
    score_bound = 2.0 / (config.lam * math.log(1.0 / state.skeleton.tau))
    rho_max = float(state.scores.max())
    applicable = state.max_scaled_increment <= increment_bound
    if applicable and rho_max > score_bound:
        raise RuntimeError(
            f"score bound violated at n={n}: rho_max={rho_max!r} > {score_bound!r} "
            f"while increments {state.max_scaled_increment!r} <= {increment_bound!r}"
        )
    return ScoreBoundCheck(
        n=n,
        max_scaled_increment=state.max_scaled_increment,
        increment_bound=increment_bound,
        rho_max=rho_max,
        score_bound=score_bound,
        applicable=applicable,
    )


def write_trace_csv(traces: list[StepTrace], path, deltas: np.ndarray | None = None) -> None:
    """Write trace rows as CSV.

    Columns: n, t_exact, t_float, value, M_n, tau_level, rho_max,
    undershoot_max, plus delta_n when ``deltas`` (one value per row) is
    given.  Floats carry 17 significant digits so they round-trip exactly.
    """
    header = ["n", "t_exact", "t_float", "value", "M_n", "tau_level",
              "rho_max", "undershoot_max"]
    if deltas is not None:
        if len(deltas) != len(traces):
            raise ValueError("need one delta per trace row")
        header.append("delta_n")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i, tr in enumerate(traces):
            row = [
                str(tr.n),
                str(tr.site),
                f"{float(tr.site):.17g}",
                f"{tr.value:.17g}",
                f"{tr.m_n:.17g}",
                str(tr.tau_level),
                f"{tr.rho_max:.17g}",
                f"{tr.undershoot_max:.17g}",
            ]
            if deltas is not None:
                row.append(f"{float(deltas[i]):.17g}")
            writer.writerow(row)
