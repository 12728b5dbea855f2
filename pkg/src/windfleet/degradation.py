"""Component degradation modelling and remaining-life prognostics.

Signal model (amplitudes on log scale): the signal of a component of age t is

    L(t) = kappa0 + theta * t + eps,   eps ~ N(0, sigma^2) i.i.d.

with a random drift theta ~ N(mean, variance).  Observing the signal updates
the drift distribution by the conjugate normal rule.  The component fails at
the first period boundary where the signal reaches its failure threshold, so
the survival probability at boundary s is

    P(kappa0 + theta * s + sigma * Z < threshold)

with theta and Z integrated jointly (a single normal convolution).  A running
minimum keeps the curve non-increasing for degenerate parameter corners.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import ndtr

from .errors import IngestionError, InvalidInputError

__all__ = [
    "DegradationParameters",
    "DegradationSignal",
    "ComponentHealth",
    "RemainingLifeDistribution",
    "update_posterior",
    "remaining_life_distribution",
    "dynamic_maintenance_cost",
    "compute_zeta",
    "load_signals_csv",
]


@dataclass(frozen=True)
class DegradationParameters:
    """Fixed coefficients plus the (prior or posterior) drift distribution."""

    deterministic_part: np.ndarray  # [intercept]; reserved room for richer bases
    stochastic_mean: float
    stochastic_variance: float
    noise_std: float

    def __post_init__(self):
        object.__setattr__(
            self, "deterministic_part", np.atleast_1d(np.asarray(self.deterministic_part, dtype=float))
        )
        if not np.all(np.isfinite(self.deterministic_part)):
            raise InvalidInputError("deterministic coefficients must be finite")
        if self.stochastic_variance < 0:
            raise InvalidInputError("drift variance must be >= 0")
        # noise_std = 0 is admitted for deterministic-signal evaluation; the
        # Bayesian update requires it to be positive.
        if self.noise_std < 0:
            raise InvalidInputError("noise std must be >= 0")

    @property
    def intercept(self) -> float:
        return float(self.deterministic_part[0])


@dataclass(frozen=True)
class DegradationSignal:
    """Ordered (time, amplitude) observations of one component's signal."""

    observations: tuple[tuple[int, float], ...]

    def __post_init__(self):
        obs = tuple((int(t), float(a)) for t, a in self.observations)
        object.__setattr__(self, "observations", obs)
        times = [t for t, _ in obs]
        if any(t < 0 for t in times):
            raise InvalidInputError("observation times must be >= 0")
        if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
            raise InvalidInputError("observation times must be strictly increasing")
        if not all(math.isfinite(a) for _, a in obs):
            raise InvalidInputError("amplitudes must be finite")

    def __len__(self) -> int:
        return len(self.observations)

    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.observations], dtype=float)

    def amplitudes(self) -> np.ndarray:
        return np.array([a for _, a in self.observations], dtype=float)


@dataclass(frozen=True)
class ComponentHealth:
    """Current age, drift posterior and threshold of a single component."""

    age: int
    params: DegradationParameters
    failure_threshold: float
    operational: bool = True

    def __post_init__(self):
        if self.age < 0:
            raise InvalidInputError("age must be >= 0")
        if not math.isfinite(self.failure_threshold):
            raise InvalidInputError("failure threshold must be finite")


@dataclass(frozen=True)
class RemainingLifeDistribution:
    """Discrete survival curve: survival[t] = P(remaining life > t), t = 0..H."""

    survival: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.survival, dtype=float)
        object.__setattr__(self, "survival", s)
        if s.ndim != 1 or len(s) < 1:
            raise InvalidInputError("survival must be a nonempty vector")
        if np.any(s < -1e-12) or np.any(s > 1 + 1e-12):
            raise InvalidInputError("survival values must lie in [0, 1]")
        if np.any(np.diff(s) > 1e-12):
            raise InvalidInputError("survival must be non-increasing")

    @property
    def horizon(self) -> int:
        return len(self.survival) - 1

    def __getitem__(self, t: int) -> float:
        return float(self.survival[t])


def update_posterior(prior: DegradationParameters, signal: DegradationSignal) -> DegradationParameters:
    """Conjugate normal update of the drift from observed signal points.

    An empty signal returns the prior unchanged; a zero-variance prior is
    already degenerate and absorbs no data.
    """
    if len(signal) == 0:
        return prior
    if prior.stochastic_variance == 0.0:
        return prior
    if prior.noise_std == 0.0:
        raise InvalidInputError("noise std must be positive to update from observations")
    t = signal.times()
    resid = signal.amplitudes() - prior.intercept
    s2 = prior.noise_std**2
    sxx = float(np.dot(t, t))
    sxy = float(np.dot(t, resid))
    precision = 1.0 / prior.stochastic_variance + sxx / s2
    post_var = 1.0 / precision
    post_mean = post_var * (prior.stochastic_mean / prior.stochastic_variance + sxy / s2)
    return replace(prior, stochastic_mean=post_mean, stochastic_variance=post_var)


def remaining_life_distribution(health: ComponentHealth, horizon: int) -> RemainingLifeDistribution:
    """Survival curve over period offsets 0..horizon from the current age.

    A non-operational component yields the all-zero curve (failed now).
    """
    if horizon < 1:
        raise InvalidInputError("horizon must be >= 1")
    if not health.operational:
        return RemainingLifeDistribution(np.zeros(horizon + 1))
    p = health.params
    s_abs = health.age + np.arange(horizon + 1, dtype=float)
    mean_sig = p.intercept + p.stochastic_mean * s_abs
    var_sig = p.stochastic_variance * s_abs**2 + p.noise_std**2
    gap = health.failure_threshold - mean_sig
    sd = np.sqrt(var_sig)
    raw = np.empty_like(sd)
    pos = sd > 0.0
    raw[pos] = ndtr(gap[pos] / sd[pos])
    raw[~pos] = (gap[~pos] > 0.0).astype(float)
    raw = np.clip(raw, 0.0, 1.0)
    return RemainingLifeDistribution(np.minimum.accumulate(raw))


def dynamic_maintenance_cost(
    rld: RemainingLifeDistribution, c_p: float, c_f: float, t_o: int, t: int
) -> float:
    """Expected per-period cost rate of maintaining at period offset t.

    Rate = (c_p * P(life > t) + c_f * P(life <= t)) / (int_0^t P(life > z) dz + t_o)
    with the integral taken by the trapezoid rule on the unit period grid,
    matching the grid of the decision model.
    """
    if t < 1:
        raise InvalidInputError("t must be >= 1")
    if not (c_f >= c_p >= 0.0):
        raise InvalidInputError("need c_f >= c_p >= 0")
    if t > rld.horizon:
        raise InvalidInputError(f"t={t} beyond survival horizon {rld.horizon}")
    s = rld.survival
    integral = float(np.trapezoid(s[: t + 1]))
    denom = integral + t_o
    if denom <= 0.0:
        raise InvalidInputError("zero expected-life denominator (t_o = 0 and survival identically 0)")
    surv_t = float(s[t])
    return (c_p * surv_t + c_f * (1.0 - surv_t)) / denom


def compute_zeta(rld: RemainingLifeDistribution, reliability_floor: float) -> int:
    """Smallest t with survival[t] < floor; horizon+1 when never crossed."""
    if not (0.0 < reliability_floor < 1.0):
        raise InvalidInputError("reliability floor must be in (0, 1)")
    below = rld.survival < reliability_floor
    if not below.any():
        return rld.horizon + 1
    return int(np.argmax(below))


def load_signals_csv(path) -> dict[str, DegradationSignal]:
    """Read degradation signals from CSV with header component_id,time,amplitude."""
    per_component: dict[str, list[tuple[int, float]]] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["component_id", "time", "amplitude"]:
            raise IngestionError("expected header component_id,time,amplitude", line_no=1)
        for line_no, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise IngestionError(f"expected 3 fields, got {len(row)}", line_no=line_no)
            cid, t_raw, a_raw = (f.strip() for f in row)
            try:
                t = int(t_raw)
                a = float(a_raw)
            except ValueError as exc:
                raise IngestionError(f"unparseable row: {exc}", line_no=line_no) from None
            if t < 0:
                raise IngestionError("time must be a non-negative integer", line_no=line_no)
            if not math.isfinite(a):
                raise IngestionError("amplitude must be finite", line_no=line_no)
            bucket = per_component.setdefault(cid, [])
            if bucket and t <= bucket[-1][0]:
                raise IngestionError(f"times not strictly increasing for component {cid}", line_no=line_no)
            bucket.append((t, a))
    return {cid: DegradationSignal(tuple(obs)) for cid, obs in per_component.items()}
