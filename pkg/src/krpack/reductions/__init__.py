from .edk import (
    ClauseClique,
    EdkReduction,
    canonicalize_packing,
    edk_assignment_to_packing,
    edk_packing_to_assignment,
    is_canonical,
    reduce_max2sat3_to_edk4,
    reduce_max2sat3_to_edk5,
)
from .vdkr import (
    ReductionError,
    VdkrReduction,
    reduce_mis_to_vdkr,
    vdkr_map_is_to_packing,
    vdkr_map_packing_to_is,
)
from .lreduction import CONSTANTS, LReductionReport, sample_packings, verify_l_reduction
from .bundle import SCHEMA, read_bundle, sidecar, write_bundle
