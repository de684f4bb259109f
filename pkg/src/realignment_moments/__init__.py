"""Entanglement detection from moments of the bordered realignment matrix."""

from .criteria import (
    CRITERIA,
    ENTANGLED,
    INCONCLUSIVE,
    CriterionReport,
    ccnr,
    evaluate,
    ppt,
    run_all,
    shi_bound,
    sun_bound,
    theorem1,
    theorem2,
    zhang_corrected,
)
from .explorer import Axis, SweepGrid, ThresholdResult, bisect_threshold, sweep
from .moments import (
    HankelReport,
    MomentSequence,
    hankel_B,
    hankel_H,
    hankel_report,
    min_eigenvalue,
    moments,
    schatten_norm,
    singular_values,
    substitute_bound,
)
from .realignment import (
    BorderedRealignment,
    bordered_realignment,
    omega,
    partial_transpose,
    realign,
    separable_bound,
    vectorize,
)
from .states import (
    DensityMatrix,
    InvalidStateError,
    StateFamily,
    bell_noise_state,
    flip_operator,
    isotropic_b_state,
    load_state,
    partial_trace,
    random_density_matrix,
    random_separable_state,
    save_state,
    state_from_dict,
    state_to_dict,
    tensor_product,
    werner_state,
)

__version__ = "0.1.0"
