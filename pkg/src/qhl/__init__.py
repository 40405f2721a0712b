"""Quantum logic and consistent-histories reasoning on finite-dimensional projectors."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CapacityError,
    InconsistentFamilyError,
    NonCommutingError,
    QHLError,
    ShapeError,
    UnboundAtomError,
    ValidationError,
)
from .formula import ParseError, classical_eval, parse, quantum_eval, render, truth_table  # noqa: E402
from .framework import (  # noqa: E402
    Argument,
    Framework,
    Invalid,
    Meaningless,
    Valid,
    assess,
    build_framework,
    consistency_audit,
    contains,
)
from .histories import (  # noqa: E402
    HistoryFamily,
    chain_operator,
    decoherence_functional,
    is_consistent,
    probabilities,
)
from .numeric import get_tolerance, set_tolerance, tolerance  # noqa: E402
from .subspace import (  # noqa: E402
    Projector,
    SpinAxis,
    commutator_norm,
    common_eigenstate_exists,
    commutes,
    complement,
    join,
    leq,
    meet,
    projector_from_state,
    purify,
    spin_projector,
)
