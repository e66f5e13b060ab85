"""Successive generalized quantum measurements and their entropy bounds.

Library layout:

- :mod:`sequam.linalg` -- dense Hermitian kernel (eigensystems, square
  roots, tensor products, partial traces).
- :mod:`sequam.quantum` -- states, POVMs, outcome statistics.
- :mod:`sequam.instruments` -- Kraus instruments, the Lueders construction,
  and unitary-dilation measuring processes.
- :mod:`sequam.successive` -- merging two measurements into one overall
  observable and extracting its marginals.
- :mod:`sequam.uncertainty` -- entropies, device uncertainty, and every
  state-independent lower bound, plus the aggregated :class:`BoundReport`.
- :mod:`sequam.qubit_models` -- closed-form spin-1/2 family used as an
  independent oracle for the generic pipeline.
- :mod:`sequam.figures` / :mod:`sequam.verification` -- sweep tables and
  the randomized inequality suite.
- :mod:`sequam.service` / :mod:`sequam.cli` -- FastAPI service and the
  thin-client command line.
"""

__version__ = "0.1.0"

from .errors import DimensionMismatch, InvariantViolation, PayloadError, PovmValidationError
from .instruments import (
    Instrument,
    MeasuringProcess,
    adjoint_apply,
    apply,
    from_measuring_process,
    induced_povm,
    luders,
    make_instrument,
    make_measuring_process,
    verify_compatibility,
)
from .linalg import (
    SpectralDecomposition,
    hermitian_eig,
    operator_norm,
    partial_trace_probe,
    positive_sqrt,
    tensor,
)
from .quantum import (
    Povm,
    ProbabilityDistribution,
    is_sharp,
    maximally_mixed_state,
    outcome_distribution,
    random_mixed_state,
    random_pure_state,
    validate_povm,
    validate_state,
)
from .successive import (
    MarginalPair,
    OverallObservable,
    joint_distribution,
    marginals,
    overall_observable,
)
from .uncertainty import (
    BoundReport,
    binary_entropy,
    bound_D1,
    bound_D2,
    device_uncertainty,
    full_report,
    h,
    incompatibility_mu,
    luders_joint_bound,
    min_device_uncertainty,
    shannon_entropy,
    srinivas_bound,
    unsharpness_operator,
)

__all__ = [
    "__version__",
    "DimensionMismatch",
    "InvariantViolation",
    "PayloadError",
    "PovmValidationError",
    "Instrument",
    "MeasuringProcess",
    "adjoint_apply",
    "apply",
    "from_measuring_process",
    "induced_povm",
    "luders",
    "make_instrument",
    "make_measuring_process",
    "verify_compatibility",
    "SpectralDecomposition",
    "hermitian_eig",
    "operator_norm",
    "partial_trace_probe",
    "positive_sqrt",
    "tensor",
    "Povm",
    "ProbabilityDistribution",
    "is_sharp",
    "maximally_mixed_state",
    "outcome_distribution",
    "random_mixed_state",
    "random_pure_state",
    "validate_povm",
    "validate_state",
    "MarginalPair",
    "OverallObservable",
    "joint_distribution",
    "marginals",
    "overall_observable",
    "BoundReport",
    "binary_entropy",
    "bound_D1",
    "bound_D2",
    "device_uncertainty",
    "full_report",
    "h",
    "incompatibility_mu",
    "luders_joint_bound",
    "min_device_uncertainty",
    "shannon_entropy",
    "srinivas_bound",
    "unsharpness_operator",
]
