"""Numerical laboratory for Schrodinger map flows into the sphere and the
hyperbolic plane, with discrete Sobolev-norm monitors and an epsilon-
parabolic regularization."""

import os as _os

# SCHROFLOW_THREADS caps kernel-library parallelism; must land before numpy
# is imported anywhere in the process.  1 selects fully deterministic mode.
_threads = _os.environ.get("SCHROFLOW_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)

from .errors import (  # noqa: E402
    BlowUp,
    ExcludedEndpoint,
    MidpointDiverged,
    NonProjectable,
    ParameterImbalance,
    ResolutionExceeded,
    SchroflowError,
    UsageError,
)
from .targets import HYPERBOLIC_PLANE, SPHERE, TargetManifold, make_target  # noqa: E402
from .grids import DomainGrid, make_grid  # noqa: E402
from .fields import (  # noqa: E402
    Field,
    bump,
    constant_field,
    constraint_drift,
    covariant_derivative,
    energy,
    great_circle,
    magnon,
    random_smooth,
    schrodinger_velocity,
    sup_gradient,
    tension,
)
from .norms import (  # noqa: E402
    NormReport,
    h_norm,
    interpolation_ratio,
    measure,
    norm_equivalence_check,
    validate_interpolation_parameters,
    w_norm,
)
from .flow import (  # noqa: E402
    FlowConfig,
    ProbeReport,
    SweepResult,
    Trajectory,
    epsilon_sweep,
    l2_difference,
    run,
    singularity_probe,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "BlowUp", "DomainGrid", "ExcludedEndpoint", "Field", "FlowConfig",
    "HYPERBOLIC_PLANE", "MidpointDiverged", "NonProjectable", "NormReport",
    "ParameterImbalance", "ProbeReport", "ResolutionExceeded",
    "SchroflowError", "SPHERE", "SweepResult", "TargetManifold",
    "Trajectory", "UsageError", "bump", "constant_field", "constraint_drift",
    "covariant_derivative", "energy", "epsilon_sweep", "great_circle",
    "h_norm", "interpolation_ratio", "l2_difference", "magnon", "make_grid",
    "make_target", "measure", "norm_equivalence_check", "random_smooth",
    "run", "schrodinger_velocity", "singularity_probe", "step",
    "sup_gradient", "tension", "validate_interpolation_parameters", "w_norm",
]
