"""wlbind: matrix-form WL refinement, binding graphs, and a refereed GI lab."""

__version__ = "0.1.0"

from .graphs import (
    BLANK,
    EDGE,
    LabeledGraph,
    Partition,
    Permutation,
    SimpleGraph,
    apply_permutation,
    disjoint_union,
    is_connected,
)
from .codecs import (
    AdjlistError,
    Graph6Error,
    emit_adjlist,
    encode_graph6,
    parse_adjlist,
    parse_graph6,
)
from .wl import (
    CANONICALIZATION,
    SignatureMatrix,
    StabilizationTrace,
    StableGraph,
    block_partition,
    cell_partition,
    certify_stable,
    diamond,
    embeds,
    equivalent,
    evs,
    individualize,
    is_equatable,
    is_stable,
    recognize_vertices,
    restrict_to_cells,
    similar,
    stabilize,
)
from .binding import (
    BASIC,
    BINDING,
    MIXED,
    BindingGraph,
    bind,
    binding_vertex,
    classify_cells,
    extend_automorphism,
    phi_graph,
)
from .oracle import (
    BudgetExceeded,
    automorphism_group,
    find_isomorphism,
    orbit_partition,
)
from .decider import GiVerdict, decide_iso, shared_basic_cells
