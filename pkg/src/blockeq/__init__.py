"""Block-graph structural analysis and equitable coloring toolkit."""

from .graph import (
    BlockDecomposition,
    BlockGraph,
    CliqueStarStatus,
    LevelAssignment,
    clique_levels,
    clique_star_status,
    decompose,
    delete_closed_neighborhood,
    delete_vertices,
    from_edge_list,
    is_clique_star,
)
from .invariants import (
    AlphaMinResult,
    DcResult,
    ParamReport,
    alpha,
    alpha_min,
    alpha_with,
    bounds_report,
    counting_lower_bound,
    dc_exact,
    is_ais,
    is_v_ais,
)
from .characterization import (
    CharCertificate,
    OpDescriptor,
    OpKind,
    StarExtension,
    apply_operation,
    find_decomposition,
    generate_with_alphamin,
    verify_certificate,
)
from .gls import (
    BinPackingInstance,
    Coloring,
    ComponentKind,
    CountMatrix,
    GlsGraph,
    alternating_components,
    build_gls,
    color_nplus2,
    color_uniform,
    equitably_k1_colorable_uniform,
    realize_flower,
)
from .oracle import (
    SpectrumReport,
    bin_packing_decide,
    brute_alpha,
    brute_alpha_with,
    brute_dc,
    canonical_form,
    check_coloring,
    enumerate_block_graphs,
    exact_chi_eq,
    exact_equitable_colorable,
    spectrum,
)

__version__ = "0.1.0"
