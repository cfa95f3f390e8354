//! Incidence, adjacency, cliques and distances on the plane model, the two
//! lemmas behind the collineation theorem, adjacency preservers, and the
//! map `ξ`.

mod adjacency;
mod incidence;
mod lemmas;
mod preserver;
mod remark;
mod theorem1;

pub use adjacency::{
    adjacency_classes, adjacent, alpha_index, companion_y, expected_classes, expected_cliques, is_projective_plane,
    AdjacencyGraph,
};
pub use incidence::{expected_row, incidence_counts, incidence_table, incident, IncidenceTable};
pub use lemmas::{scan_budget, scan_lines, scan_size, scan_solids, NoDualityCertificate, Verdict};
pub use preserver::{fixes_types, induced_vertex_map, verify_preserver, y_vertices, CliqueSystem, PreserverRecipe};
pub use remark::{delta_j, from_j_trace, j_trace, xi_map, xi_permutation, xi_witnesses, XiReport};
pub use theorem1::{
    check_map, decompose_semilinear, exhaustive_block_maps, extract_sigma, homothety_matrix, induced_map,
    negative_controls, random_non_block, theorem1_check, theorem1_sweep, trial_rng, ControlSummary, Decomposition,
    SweepSummary, Theorem1Report,
};
