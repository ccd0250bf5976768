//! Candidate edges for triangulations below a dilation bound.

mod brute;
mod postprocess;
mod search;
mod sector;

pub use brute::brute_force_candidates;
pub use postprocess::{
    crossing_pairs, excludes, lower_bounds, min_detour_ratio, postprocess, threshold, threshold_at_least,
    CandidateGraph, LowerBounds,
};
pub use search::{enumerate_candidates, passes_through_point, Candidates, EnumerationConfig, EnumerationStats};
pub use sector::{dead_sector, ArcSet, DeadSector};
