//! Front end for the exact MDT solver: instance formats, result records and
//! the benchmark harness behind the `mdt` binary.

pub mod bench;
pub mod instance;
pub mod record;

use mdt_core::ngon::{certify, NgonCertificate};
use mdt_core::solver::{solve, SolverConfig, SolverError, Status};
use thiserror::Error;

pub use instance::{Instance, InstanceError, SourceFormat};
pub use record::SolutionRecord;

/// Exit code for a solve that proved optimality.
pub const EXIT_OPTIMAL: i32 = 0;
/// Exit code for rejected input or a failed solve.
pub const EXIT_REJECTED: i32 = 1;
/// Exit code when the time limit stopped the search with a gap left.
pub const EXIT_BOUNDED_GAP: i32 = 2;

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Optimal => EXIT_OPTIMAL,
        Status::BoundedGap => EXIT_BOUNDED_GAP,
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("the {0}-gon was not solved to optimality")]
    NotOptimal(usize),
}

pub fn run(inst: &Instance, config: &SolverConfig) -> Result<SolutionRecord, RunError> {
    let sol = solve(&inst.points, config)?;
    Ok(SolutionRecord::new(
        &inst.name,
        inst.points.len(),
        config.algorithm,
        &sol,
    ))
}

/// Solves the rounded n-gon and certifies bounds for the exact one.
pub fn certify_ngon(n: usize, config: &SolverConfig) -> Result<(SolutionRecord, NgonCertificate), RunError> {
    let inst = Instance::ngon(n)?;
    let sol = solve(&inst.points, config)?;
    if sol.status != Status::Optimal {
        return Err(RunError::NotOptimal(n));
    }
    let cert = certify(n, sol.dilation.value.interval());
    Ok((SolutionRecord::new(&inst.name, n, config.algorithm, &sol), cert))
}

/// `key: value` lines describing a certificate.
pub fn certificate_text(c: &NgonCertificate) -> String {
    format!(
        "n: {}\nsolver_lo: {:?}\nsolver_hi: {:?}\nepsilon: {:e}\ndelta: {:e}\nmin_distance: {:?}\ncertified_lower: {:?}\ncertified_upper: {:?}\n",
        c.n,
        c.solver_bound.lo(),
        c.solver_bound.hi(),
        c.epsilon,
        c.delta,
        c.min_distance,
        c.lower,
        c.upper
    )
}
