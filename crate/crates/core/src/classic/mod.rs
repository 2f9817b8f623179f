//! Classical constructive results used by the pipeline.

mod dirac;
mod hakimi;
mod konig;
mod matching;
mod pathcover;
mod vizing;

pub use dirac::{dirac_hamiltonian, is_hamiltonian_cycle};
pub use hakimi::{hakimi_feasible, hakimi_realize};
pub use konig::konig_color;
pub use matching::{
    bipartite_perfect_matching, is_perfect_matching, max_bipartite_matching, perfect_matching_bipartite_star,
    perfect_matching_dense, perfect_matching_dense_on,
};
pub use pathcover::{audit_path_cover, build_path_cover, path_cover_matching, path_cover_star, PathCover};
pub use vizing::{misra_gries, near_star_color, star_multigraph_color};

use crate::graph::{EdgeId, Vertex};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InfeasibleReason {
    OddSum,
    DominantDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicError {
    #[error("degree sequence not realizable: {0:?}")]
    Infeasible(InfeasibleReason),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no perfect matching")]
    NoPerfectMatching,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("path cover failed: {0}")]
    CoverFailed(String),
    #[error("center {0} has fewer than two neighbours outside the pairs")]
    TooFewCenterNeighbors(Vertex),
    #[error("not a star-multigraph")]
    NotStarMultigraph,
    #[error("not a near star-multigraph")]
    NotNearStar,
    #[error("recoloring could not place edge {0}")]
    Stuck(EdgeId),
}
