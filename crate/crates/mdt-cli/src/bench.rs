//! Batch solving with a delimiter-separated result table.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use mdt_core::solver::{solve, SolverConfig, Status};
use serde::{Deserialize, Serialize};

use crate::instance::{parse_path, Instance, InstanceError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    /// Lower end of the dilation enclosure, empty on failure.
    pub rho: Option<f64>,
    pub rho_hi: Option<f64>,
    pub status: Option<Status>,
    pub full_dilations: u64,
    pub sampled_rounds: u64,
    pub seconds: f64,
    pub error: Option<String>,
}

/// Instance files of `dir` in name order. Hidden files are skipped.
pub fn instance_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
        .collect();
    files.sort();
    Ok(files)
}

pub fn bench_one(inst: Result<Instance, (String, InstanceError)>, config: &SolverConfig) -> BenchRow {
    let start = Instant::now();
    let failed = |name: String, n: usize, e: String| BenchRow {
        instance: name,
        n,
        rho: None,
        rho_hi: None,
        status: None,
        full_dilations: 0,
        sampled_rounds: 0,
        seconds: start.elapsed().as_secs_f64(),
        error: Some(e),
    };
    let inst = match inst {
        Ok(i) => i,
        Err((name, e)) => return failed(name, 0, e.to_string()),
    };
    match solve(&inst.points, config) {
        Ok(sol) => {
            let v = sol.dilation.value.interval();
            BenchRow {
                instance: inst.name,
                n: inst.points.len(),
                rho: Some(v.lo()),
                rho_hi: Some(v.hi()),
                status: Some(sol.status),
                full_dilations: sol.stats.full_dilations,
                sampled_rounds: sol.stats.sampled_rounds,
                seconds: start.elapsed().as_secs_f64(),
                error: None,
            }
        }
        Err(e) => failed(inst.name, inst.points.len(), e.to_string()),
    }
}

/// Solves every instance in `dir`; failures are recorded and the run goes on.
pub fn bench_dir(dir: &Path, config: &SolverConfig) -> std::io::Result<Vec<BenchRow>> {
    Ok(instance_files(dir)?
        .iter()
        .map(|p| {
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            bench_one(parse_path(p).map_err(|e| (name, e)), config)
        })
        .collect())
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl std::io::Read) -> csv::Result<Vec<BenchRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// One line per instance plus totals, for humans.
pub fn summary(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    for r in rows {
        match (&r.error, r.rho) {
            (Some(e), _) => out.push_str(&format!("{:<16} {:>6}  error: {e}\n", r.instance, r.n)),
            (None, Some(rho)) => out.push_str(&format!(
                "{:<16} {:>6}  rho {:.5}  {:?}  full {:>5}  sampled {:>6}  {:.2}s\n",
                r.instance,
                r.n,
                rho,
                r.status.unwrap_or(Status::BoundedGap),
                r.full_dilations,
                r.sampled_rounds,
                r.seconds
            )),
            (None, None) => {}
        }
    }
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    let secs: f64 = rows.iter().map(|r| r.seconds).sum();
    out.push_str(&format!(
        "{} instances, {} failed, {:.2}s total\n",
        rows.len(),
        failed,
        secs
    ));
    out
}
