//! Network measures over the institution graphs.
//!
//! Centralities run on the binarized, loop-free view of a graph; flow and
//! hub rankings read the weighted citation graph directly.

mod centrality;
mod distance;
mod flow;
mod productivity;
mod view;

use thiserror::Error;

pub use centrality::{
    betweenness_all, betweenness_scores, category_centrality_summary, local_clustering,
    node_metrics, pagerank, CategoryCentrality, CategoryCentralitySummary, NodeMetrics,
    NodeMetricsTable, PageRank, PageRankParams,
};
pub use distance::{
    collaboration_strength, distance_profile, BinStats, CategoryFilter, DistanceProfile,
};
pub use flow::{
    giant_connected_component, knowledge_flow, top_knowledge_hubs, weighted_in_degree, FlowScore,
};
pub use productivity::{category_matrix, productivity_table, CategoryRow, CategoryTable};
pub use view::SimpleView;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("institution `{0}` has no papers")]
    ZeroProductivity(String),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("no collaborating pair has coordinates at both ends")]
    NoLocatedPairs,
    #[error("invalid category filter `{0}`")]
    InvalidFilter(String),
    #[error(transparent)]
    Geo(#[from] crate::geo::GeoError),
}
