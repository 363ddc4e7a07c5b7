"""The Hopf monoid of sets of paths and cycles.

Three independent antipode computations, tubings and the graph associahedra
of paths and cycles, noncrossing partitions, and the group of pairs of power
series that models the characters.
"""

from .errors import *  # noqa: F401,F403
from .graphs import (
    CYCLE,
    EMPTY,
    PATH,
    Component,
    LabeledGraph,
    contract,
    cycle_graph,
    disjoint_union,
    induced_subgraph,
    iso_class,
    parse_graph,
    path_graph,
    relabel,
    restrict,
)
from .hopf import UNIT, LinearCombination, antipode_by_components, antipode_mm, coproduct
from .noncrossing import (
    NCPartition,
    PointedNCPartition,
    adjacent_closure,
    adjacent_closure_pointed,
    antipode_nc,
    antipode_pnc,
    catalan,
    catalan_coefficient,
    enumerate_nc,
    enumerate_pnc,
)
from .polytope import (
    FaceFactorization,
    PolytopeModel,
    build_polytope,
    cyclic_factor_coordinates,
    f_vector,
    face_factorization,
    face_of_tubing,
    faces,
)
from .series import (
    Character,
    TruncatedPair,
    TruncatedSeries,
    bell_ordinary,
    character_eval,
    compose,
    convolve,
    group_inv,
    group_mul,
    inverse_direct,
    invert_pair_via_cyclo_faces,
    invert_pair_via_pnc,
    invert_via_assoc_faces,
    invert_via_nc,
    restrict_to_Cbar,
)
from .tubings import (
    Tubing,
    antipode_tubings,
    count_decompositions,
    count_interval_partitions,
    decompose_tubing,
    enumerate_tubes,
    enumerate_tubings,
    is_tubing,
    make_tubing,
)

__version__ = "0.1.0"
