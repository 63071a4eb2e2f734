"""Computations in Lipschitz-free spaces over finite metric spaces."""
from .extension import (
    ExtensionError,
    ExtensionProblem,
    coincidence_set,
    extension_range,
    forced_pairs,
    forced_set,
    interpolate_extension,
    lower_extension,
    mcshane_lower,
    mcshane_upper,
    upper_extension,
)
from .extremal import check_face_alignment, face_support_bound, is_extreme_molecule, splitting_witness
from .free import (
    Coupling,
    DeLeeuwMeasure,
    FreeElement,
    LipschitzFunction,
    Measure,
    combination_to_element,
    jordan_split,
    lip_norm,
    mass,
    molecule,
    pair,
    phi,
    split_overlap,
)
from .metric import FiniteMetricSpace, MetricError, SegmentSet, ValidationReport, validate
from .monotonicity import (
    MonotonicityCertificate,
    check_monotone_bruteforce,
    check_monotone_lp,
    is_optimal_representation,
    verify_certificate,
)
from .transport import (
    TransportError,
    TransportSolution,
    coupling_to_deleeuw,
    decompose,
    free_norm,
    line_norm,
    optimal_coupling,
    wasserstein1,
)

__version__ = "0.1.0"
