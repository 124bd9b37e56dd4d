"""orbnet: a deterministic laboratory for orbital networks on Z_n."""

__version__ = "0.1.0"

from .errors import (
    BudgetError,
    DomainError,
    MapSyntaxError,
    OrbnetError,
    PrecisionError,
    UndefinedMetricError,
)
from .modring import (
    Affine,
    Exponential,
    FactorizationSummary,
    FloorPower,
    Henon,
    MapSpec,
    Permutation,
    Quadratic,
    apply_map,
    factor_summary,
    map_table,
    multiplicative_order,
    parse_map_spec,
    parse_maps,
    seeded_permutation,
    spec_text,
    squaring_fixed_points,
)
from .graph import (
    DigraphView,
    OrbitalGraph,
    Provenance,
    build_orbital_graph,
    digraph_view,
    graph_from_tables,
    induced_subgraph,
    maps_are_invertible,
    realize_as_orbital,
)
from .metrics import (
    CliqueVector,
    StatsRecord,
    betti,
    characteristic_path_length,
    clique_vector,
    clustering,
    compute_stats,
    curvature,
    curvature_sum,
    degree_stats,
    diameter,
    euler_characteristic,
    inductive_dimension,
    length_cluster,
    nsw_estimate,
    triangle_count,
    two_coloring,
)
from .baselines import (
    BarabasiAlbert,
    BaselineSpec,
    ErdosRenyi,
    RandomPermutations,
    WattsStrogatz,
    generate_baseline,
    parse_baseline_spec,
)
from .experiments import (
    ComponentMatrix,
    LccResult,
    SweepResult,
    alpha_sweep,
    average_degree_sweep,
    check_bipartite_proposition,
    check_symmetry_proposition,
    clustering_decay_sweep,
    collatz_connectivity,
    component_matrix,
    connectivity_probability,
    connectivity_sweep,
    find_isomorphism,
    lcc_expectation,
    metrics_series,
    minimal_diameter,
    minimal_diameter_sweep,
    squaring_structure,
    subset_component_count,
)
from .formats import (
    export_dot,
    load_edge_list,
    load_edge_list_report,
    read_sweep_csv,
    save_edge_list,
    stats_json_payload,
    stats_to_json,
    write_stats_json,
    write_sweep_csv,
)
