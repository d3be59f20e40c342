"""Difference-cycle decompositions of cross polytope and simplex 2-skeleta."""

from .complex import (
    Complex,
    SurfaceReport,
    TypeTag,
    classify_surface,
    connected_components,
    edge_degree_profile,
    euler_characteristic,
    from_cycles,
    is_isomorphic,
    orientable,
    vertex_link,
)
from .cycles import (
    DifferenceCycle,
    SignedCycleChain,
    apply_multiplier,
    boundary_chain,
    enumerate_cycles,
    expand,
    is_multiplier,
    new_cycle,
    orbit_length,
)
from .decomp import (
    Decomposition,
    Part,
    decompose_beta,
    decompose_simplex,
    moebius_family,
    predict_type,
    skel2_size_beta,
    verify,
)

__version__ = "0.1.0"
