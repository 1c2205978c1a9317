"""Predimension calculus, sparse-graph orientations and finite Hrushovski
constructions for 2-sparse graphs."""

__version__ = "0.1.0"

from .builder import (
    GenericApproximation,
    amalgamate,
    build_generic_approximation,
    enumerate_C_F,
    realize_extension,
    verify_chain,
)
from .control import (
    CertifiedInterval,
    Comparison,
    ControlFunction,
    compare_delta_F,
    eval_bounds,
    inverse_bound,
    reference_F,
    validate_control_function,
)
from .encoding import (
    Gadget,
    VerificationReport,
    build_gadget,
    closure_traps_labels,
    decode,
    detect_labels,
    verify_gadget,
)
from .errors import (
    CapExceeded,
    GraphError,
    HrushovskiError,
    OrientationError,
    ParseError,
    PreconditionError,
    SearchBudgetExceeded,
    UndecidableComparison,
    UnknownVertexError,
)
from .graph import (
    Graph,
    Orientation,
    SparsityWitness,
    induced_subgraph,
    predimension,
    relative_predimension,
)
from .orientation import check_orientation, enumerate_k_orientations, find_k_orientation, is_k_sparse
from .predim import (
    AmalgamSpec,
    ClosureCertificate,
    d_closure,
    free_amalgam,
    in_C_F,
    in_C_gt0,
    is_d_closed,
    submodularity_defect,
)
from .symmetry import are_isomorphic, automorphisms, canonical_form
