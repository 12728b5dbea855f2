"""Turbine failure risk from component survival curves.

A turbine fails when the first of its components fails (competing risk), so
with independent components its survival is the product of component
survivals, each frozen at its maintenance time (a maintained component is
good as new and does not refail within the horizon).

For the decision model, only the *set* of components maintained before a
period matters, so per period there are 2^K maintenance scenarios.  Each
scenario maps to the conditional probability that the turbine fails during
(t, t+1] given survival to t:

    phi_t = 1 - prod_{k unmaintained} s_k(t+1) / s_k(t)

with phi := 1 whenever some unmaintained component already has s_k(t) = 0.
These values are precomputed once per planning epoch into a table.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .degradation import ComponentHealth, RemainingLifeDistribution
from .errors import InvalidInputError

__all__ = [
    "MaintenanceScenario",
    "ScenarioFailureTable",
    "TurbineRiskProfile",
    "enumerate_scenarios",
    "turbine_survival",
    "scenario_failure_probability",
    "build_failure_table",
]

MAX_COMPONENTS = 16  # 2^16 scenarios is the guard against table blow-up


@dataclass(frozen=True)
class MaintenanceScenario:
    """One subset of components marked as maintained before a period."""

    scenario_id: int  # bitmask; bit k set <=> component k maintained
    maintained_set: frozenset[int]
    unmaintained_set: frozenset[int]


@dataclass(frozen=True)
class TurbineRiskProfile:
    """Per-component survival curves and health states for one turbine."""

    component_rlds: tuple[RemainingLifeDistribution, ...]
    component_health: tuple[ComponentHealth, ...]

    def __post_init__(self):
        object.__setattr__(self, "component_rlds", tuple(self.component_rlds))
        object.__setattr__(self, "component_health", tuple(self.component_health))
        if not self.component_rlds:
            raise InvalidInputError("profile needs at least one component")
        if len(self.component_rlds) != len(self.component_health):
            raise InvalidInputError("rld and health lists must have equal length")

    @property
    def n_components(self) -> int:
        return len(self.component_rlds)

    @property
    def horizon(self) -> int:
        return min(r.horizon for r in self.component_rlds)


@dataclass
class ScenarioFailureTable:
    """phi[(location, turbine, period, scenario mask)] for t = 1..horizon."""

    phi: dict[tuple[str, int, int, int], float]
    n_components: dict[tuple[str, int], int]
    horizon: int

    def value(self, location: str, turbine: int, t: int, mask: int) -> float:
        return self.phi[(location, turbine, t, mask)]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["location", "turbine", "period", "scenario_mask", "phi"])
            for key in sorted(self.phi):
                l, i, t, mask = key
                writer.writerow([l, i, t, mask, repr(self.phi[key])])


def enumerate_scenarios(n_components: int) -> list[MaintenanceScenario]:
    """All 2^n maintained/unmaintained splits, ordered by bitmask."""
    if not (1 <= n_components <= MAX_COMPONENTS):
        raise InvalidInputError(f"n_components must be in [1, {MAX_COMPONENTS}]")
    everything = range(n_components)
    out = []
    for mask in range(1 << n_components):
        maintained = frozenset(k for k in everything if mask >> k & 1)
        out.append(
            MaintenanceScenario(
                scenario_id=mask,
                maintained_set=maintained,
                unmaintained_set=frozenset(everything) - maintained,
            )
        )
    return out


def turbine_survival(profile: TurbineRiskProfile, maintenance_times) -> np.ndarray:
    """P(turbine survives past t) for t = 0..horizon under fixed maintenance times.

    maintenance_times holds one entry per component: a period index in
    [1, horizon] or None for "never".  A maintained component contributes its
    survival frozen at the maintenance time.
    """
    if len(maintenance_times) != profile.n_components:
        raise InvalidInputError("need one maintenance time per component")
    horizon = profile.horizon
    t_grid = np.arange(horizon + 1)
    out = np.ones(horizon + 1)
    for rld, chi in zip(profile.component_rlds, maintenance_times):
        if chi is None:
            idx = t_grid
        else:
            chi = int(chi)
            if not (1 <= chi <= horizon):
                raise InvalidInputError("maintenance time must be in [1, horizon] or None")
            idx = np.minimum(t_grid, chi)
        out = out * rld.survival[idx]
    return out


def _hazard_complement(rld: RemainingLifeDistribution, t: int) -> float:
    """s(t+1)/s(t) with the already-failed guard (0 when s(t) = 0)."""
    s_t = rld.survival[t]
    if s_t <= 0.0:
        return 0.0
    return float(rld.survival[t + 1] / s_t)


def scenario_failure_probability(
    profile: TurbineRiskProfile, t: int, scenario: MaintenanceScenario
) -> float:
    """Conditional turbine failure probability in (t, t+1] under a scenario.

    Maintained components contribute no hazard; unmaintained components must
    have survived to t and contribute their one-step conditional survival.
    """
    if not (0 <= t < profile.horizon):
        raise InvalidInputError(f"t={t} outside table horizon")
    prod = 1.0
    for k in sorted(scenario.unmaintained_set):
        prod *= _hazard_complement(profile.component_rlds[k], t)
    return 1.0 - prod


def build_failure_table(
    fleet_profiles: dict[tuple[str, int], TurbineRiskProfile], horizon: int
) -> ScenarioFailureTable:
    """Populate phi for every (location, turbine, period 1..horizon, scenario).

    Component survival curves must extend at least one period past the table
    horizon because phi at t looks ahead to t+1.
    """
    if horizon < 1:
        raise InvalidInputError("horizon must be >= 1")
    phi: dict[tuple[str, int, int, int], float] = {}
    n_components: dict[tuple[str, int], int] = {}
    for (loc, turbine) in sorted(fleet_profiles):
        profile = fleet_profiles[(loc, turbine)]
        k = profile.n_components
        if k > MAX_COMPONENTS:
            raise InvalidInputError(f"turbine ({loc},{turbine}) exceeds {MAX_COMPONENTS} components")
        if profile.horizon < horizon + 1:
            raise InvalidInputError(
                f"profile for ({loc},{turbine}) must cover horizon+1={horizon + 1} periods"
            )
        n_components[(loc, turbine)] = k
        # one-step conditional survival per component and period, 0/0-guarded
        ratios = np.empty((k, horizon))
        for comp in range(k):
            s = profile.component_rlds[comp].survival
            with np.errstate(divide="ignore", invalid="ignore"):
                r = np.where(s[1 : horizon + 1] > 0.0, s[2 : horizon + 2] / s[1 : horizon + 1], 0.0)
            ratios[comp] = r
        for mask in range(1 << k):
            unmaintained = [comp for comp in range(k) if not mask >> comp & 1]
            if unmaintained:
                col = 1.0 - np.prod(ratios[unmaintained, :], axis=0)
            else:
                col = np.zeros(horizon)
            for t in range(1, horizon + 1):
                phi[(loc, turbine, t, mask)] = float(col[t - 1])
    table = ScenarioFailureTable(phi=phi, n_components=n_components, horizon=horizon)
    _check_table(table)
    return table


def _check_table(table: ScenarioFailureTable) -> None:
    for key, value in table.phi.items():
        if not (-1e-12 <= value <= 1 + 1e-12):
            raise InvalidInputError(f"phi out of [0,1] at {key}: {value}")
    for (loc, turbine), k in table.n_components.items():
        full = (1 << k) - 1
        for t in range(1, table.horizon + 1):
            if table.phi[(loc, turbine, t, full)] > table.phi[(loc, turbine, t, 0)] + 1e-12:
                raise InvalidInputError(f"all-maintained phi exceeds none-maintained at ({loc},{turbine},{t})")
