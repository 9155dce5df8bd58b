"""Entanglement and distillability dynamics of two qutrits under dephasing."""

from .analysis import (
    Regime,
    RegimeReport,
    SweepRecord,
    bound_window,
    classify_regime,
    find_crossing,
    sweep,
)
from .channel import (
    DampingProfile,
    DecoherenceParams,
    Mode,
    Scenario,
    apply_channel,
    damping_matrix_map,
    damping_profile,
    generalized_local_kraus,
    kraus_operators,
)
from .measures import (
    BlockReport,
    CcnrResult,
    ccnr,
    is_ppt,
    negativity,
    partial_transpose,
    realign,
    two_qubit_blocks,
)
from .oracle import (
    ClosedFormSpectrum,
    crossing_time_closed_form,
    horodecki_pt_eigenvalues,
    isotropic_pt_eigenvalues,
    negativity_closed_form,
    rotated_pt_eigenvalues,
)
from .states import (
    DensityMatrix,
    Family,
    horodecki_state,
    isotropic_state,
    max_entangled,
    rotated_state,
)

__version__ = "0.1.0"
