"""Exact integer workbench for exceptional collections and helices on
del Pezzo surfaces, and for the mutation web of their CY3 quiver algebras."""

from .errors import (
    DomainError,
    HelixwebError,
    InputError,
    InvariantBreach,
    MutationError,
    StructureError,
)
from .exceptional import (
    BlockStructure,
    Collection,
    ExcObject,
    HomProfile,
    dual_collection,
    dual_objects,
    hom_profile,
    is_block,
    is_numerically_full,
    is_pure,
    is_strong,
    left_mutate,
    line_object,
    make_object,
    mutate_through,
    right_mutate,
    sigma,
    sigma_inverse,
    tau,
    tau_inverse,
)
from .helices import (
    Helix,
    HeightFunction,
    Levelling,
    build_height_function,
    enumerate_height_functions,
    equal_up_to_reindex,
    is_geometric,
    is_strong_helix,
    is_tilting_at_level,
    p_relatedness,
    reindex,
    reorder_collection,
    rho,
    sigma_helix,
    sigma_helix_inverse,
    tilt,
)
from .lattice import ChernClass, SlopeOrder, Surface
from .quivers import (
    BMatrix,
    Quiver,
    cross_check_tilt,
    fz_mutate,
    helix_quiver,
    rolled_b_matrix,
    rolled_quiver,
    thread_quiver,
    tilted_simple_classes,
)
from .seeds import SEED_NAMES, seed_blocks, seed_helix

__version__ = "0.1.0"
