"""Condition-based opportunistic maintenance scheduling for wind-farm fleets.

Submodules:
    degradation  component signal models, Bayes updates, remaining-life curves
    risk         competing-risk turbine failure tables over maintenance scenarios
    milp         solver-agnostic LP/MIP representation, simplex + B&B kernel
    fleet_model  the fleet-wide maintenance/operations MILP and benchmark policies
    benders      two-stage decomposition with optimality/feasibility/integer cuts
    simulator    rolling-horizon experiment framework and metrics
    config       fleet configuration dataclasses and YAML I/O
    cli          command-line entry points
"""

__version__ = "0.1.0"
