//! Permutations, transitive pairs (labeled bicolored maps), their orbits under
//! relabelling of all non-root edges, and bicolored graphs with embedding counts.

mod census;
mod graph;
mod perm;

pub use census::{canonical_orbit_rep, census_json, orbit_census, orbits_have_full_size, Orbit, MAX_N};
pub use graph::{
    all_graphs, count_embeddings, count_embeddings_naive, graph_of_pair, normalize,
    normalized_embeddings, BicoloredGraph, EmbeddingMemo,
};
pub use perm::{enumerate_transitive_pairs, is_transitive_pair, transitive_partners, Perm};
