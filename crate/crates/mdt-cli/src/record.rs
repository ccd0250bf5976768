//! Serialized solve results.

use std::num::ParseFloatError;

use mdt_core::dilation::Decided;
use mdt_core::exact::Interval;
use mdt_core::solver::{Algorithm, Solution, Status};
use serde::{Deserialize, Serialize};

/// Interval endpoints as shortest round-trip decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalInterval {
    pub lo: String,
    pub hi: String,
}

impl DecimalInterval {
    pub fn to_interval(&self) -> Result<Interval, ParseFloatError> {
        Ok(Interval::new(self.lo.parse()?, self.hi.parse()?))
    }
}

impl From<Interval> for DecimalInterval {
    fn from(x: Interval) -> Self {
        DecimalInterval {
            lo: format!("{:?}", x.lo()),
            hi: format!("{:?}", x.hi()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s: usize,
    pub t: usize,
    pub path: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordStats {
    pub iterations: u64,
    pub sat_calls: u64,
    pub full_dilations: u64,
    pub sampled_rounds: u64,
    pub clauses: u64,
    pub probes: u64,
    pub candidates: usize,
    pub certain_initial: usize,
    pub delaunay_dilation: Option<DecimalInterval>,
    pub initial_dilation: Option<DecimalInterval>,
    pub wall_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub instance: String,
    pub n: usize,
    pub algorithm: Algorithm,
    pub status: Status,
    pub dilation: DecimalInterval,
    pub decided: Decided,
    pub witness: Witness,
    pub lower_bound: DecimalInterval,
    pub edges: Vec<[usize; 2]>,
    pub stats: RecordStats,
}

impl SolutionRecord {
    pub fn new(instance: &str, n: usize, algorithm: Algorithm, sol: &Solution) -> Self {
        let st = &sol.stats;
        SolutionRecord {
            instance: instance.to_string(),
            n,
            algorithm,
            status: sol.status,
            dilation: sol.dilation.value.interval().into(),
            decided: sol.dilation.decided,
            witness: Witness {
                s: sol.dilation.s,
                t: sol.dilation.t,
                path: sol.dilation.path.clone(),
            },
            lower_bound: sol.lower_bound.into(),
            edges: sol.triangulation.edges().iter().map(|e| [e.u(), e.v()]).collect(),
            stats: RecordStats {
                iterations: st.iterations,
                sat_calls: st.sat_calls,
                full_dilations: st.full_dilations,
                sampled_rounds: st.sampled_rounds,
                clauses: st.clauses,
                probes: st.probes,
                candidates: st.candidates,
                certain_initial: st.certain_initial,
                delaunay_dilation: st.delaunay_dilation.map(Into::into),
                initial_dilation: st.initial_dilation.map(Into::into),
                wall_secs: st.wall_time.as_secs_f64(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
