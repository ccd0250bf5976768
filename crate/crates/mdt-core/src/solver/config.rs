use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::dilation::SamplingConfig;
use crate::enumeration::EnumerationConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Improve the best triangulation one SAT solution at a time.
    Inc,
    /// Bisect between lower and upper bound, then finish incrementally.
    Bin,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Gap below which the bisection hands over to the incremental phase.
    pub sigma: f64,
    pub improve_initial: bool,
    /// Rounds of shortcut insertion when improving the initial solution.
    pub improve_rounds: usize,
    pub time_limit: Option<Duration>,
    pub sampling: SamplingConfig,
    pub enumeration: EnumerationConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::Bin,
            sigma: 0.005,
            improve_initial: true,
            improve_rounds: 64,
            time_limit: None,
            sampling: SamplingConfig::default(),
            enumeration: EnumerationConfig::default(),
        }
    }
}
