//! Exact MDT solvers.

mod config;
mod initial;

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{Algorithm, SolverConfig};
pub use initial::{initial_solution, InitialSolution};

use crate::dilation::{exact_dilation, sample_violations, separate, Dilation, SeparationError};
use crate::enumeration::{enumerate_candidates, lower_bounds, postprocess, threshold_at_least, LowerBounds};
use crate::exact::{ExactValue, Interval};
use crate::geom::{
    constrained_delaunay, debug_check, triangulation_edge_count, validate_points, Edge, GeomError, Point, Triangulation,
};
use crate::sat::{EdgeModel, ProbeId, SatError};
use crate::supergraph::{EdgeStatus, Supergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    /// No triangulation with smaller dilation exists.
    Optimal,
    /// Stopped early; the optimum lies between the lower bound and the dilation.
    BoundedGap,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub iterations: u64,
    pub sat_calls: u64,
    pub full_dilations: u64,
    /// Rounds in which sampling found violations and no full computation was needed.
    pub sampled_rounds: u64,
    pub sampling_calls: u64,
    pub clauses: u64,
    pub probes: u64,
    pub candidates: usize,
    pub certain_initial: usize,
    pub eliminated: usize,
    pub initial_attempts: usize,
    pub delaunay_dilation: Option<Interval>,
    pub initial_dilation: Option<Interval>,
    pub bounds: Option<LowerBounds>,
    pub wall_time: Duration,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub triangulation: Triangulation,
    pub dilation: Dilation,
    /// Certified lower bound on the optimal dilation.
    pub lower_bound: Interval,
    pub status: Status,
    pub stats: SolverStats,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
}

/// Computes a minimum dilation triangulation of `points`.
pub fn solve(points: &[Point], config: &SolverConfig) -> Result<Solution, SolverError> {
    let start = Instant::now();
    validate_points(points)?;
    let deadline = config.time_limit.map(|d| start + d);
    let mut stats = SolverStats::default();
    let init = initial_solution(points, config.improve_initial, config.improve_rounds)?;
    stats.initial_attempts = init.attempts;
    stats.delaunay_dilation = Some(init.delaunay_dilation.value.interval());
    stats.initial_dilation = Some(init.dilation.value.interval());

    let finish = |t: Triangulation, d: Dilation, lb: Interval, status, mut stats: SolverStats| {
        stats.wall_time = start.elapsed();
        debug_check(&t, points);
        Ok(Solution {
            triangulation: t,
            dilation: d,
            lower_bound: lb,
            status,
            stats,
        })
    };

    let rho0 = init.dilation.value.interval();
    if init.dilation.value.is_one() {
        return finish(init.triangulation, init.dilation, Interval::ONE, Status::Optimal, stats);
    }
    let cands = enumerate_candidates(points, rho0.hi(), &config.enumeration)?;
    let graph = postprocess(points, cands.edges, rho0.hi());
    let bounds = lower_bounds(points, &graph);
    let lb = bounds.combined(rho0);
    stats.bounds = Some(bounds);
    stats.candidates = graph.len();
    stats.certain_initial = graph.certain_count();
    stats.eliminated = graph.eliminated;
    if lb >= rho0.hi() {
        return finish(init.triangulation, init.dilation, rho0, Status::Optimal, stats);
    }

    let mut run = Run {
        points,
        config,
        deadline,
        sg: Supergraph::new(graph),
        model: None,
        best_t: init.triangulation,
        best: init.dilation,
        lb,
        stats,
        g: triangulation_edge_count(points),
    };
    let outcome = run.execute()?;
    let Run {
        best_t,
        best,
        lb,
        mut stats,
        model,
        ..
    } = run;
    if let Some(m) = &model {
        stats.sat_calls = m.solves();
    }
    let lower = match outcome {
        Status::Optimal => best.value.interval(),
        Status::BoundedGap => Interval::new(lb.min(best.value.interval().lo()), lb.min(best.value.interval().lo())),
    };
    finish(best_t, best, lower, outcome, stats)
}

struct Run<'a> {
    points: &'a [Point],
    config: &'a SolverConfig,
    deadline: Option<Instant>,
    sg: Supergraph,
    model: Option<EdgeModel>,
    best_t: Triangulation,
    best: Dilation,
    lb: f64,
    stats: SolverStats,
    g: usize,
}

/// What a SAT solution turned out to be.
struct Candidate {
    tri: Triangulation,
    in_tri: Vec<bool>,
}

impl<'a> Run<'a> {
    fn timed_out(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn model(&mut self) -> &mut EdgeModel {
        self.model.as_mut().expect("model built")
    }

    fn execute(&mut self) -> Result<Status, SolverError> {
        if self.cut_permanent(&self.best.value.clone()) {
            return Ok(Status::Optimal);
        }
        self.model = Some(EdgeModel::new(&self.sg));
        if self.config.algorithm == Algorithm::Bin {
            if let Some(s) = self.bisect()? {
                return Ok(s);
            }
            self.incremental(true)
        } else {
            self.incremental(false)
        }
    }

    /// Threshold cut at a new best dilation. Returns true on an edge conflict.
    fn cut_permanent(&mut self, value: &ExactValue) -> bool {
        match self.sg.apply_threshold_cut(self.points, value) {
            Ok(cut) => {
                if let Some(m) = self.model.as_mut() {
                    for e in cut {
                        m.forbid(e);
                    }
                }
                false
            }
            Err(_) => true,
        }
    }

    /// Turns selected supergraph edges into a triangulation, completing the
    /// selection if it is not maximal among all segments.
    fn realize(&self, selected: &[usize]) -> Result<Candidate, SolverError> {
        let edges: Vec<Edge> = selected.iter().map(|&e| self.sg.edge(e)).collect();
        let tri = if edges.len() == self.g {
            Triangulation::from_edges(edges)
        } else {
            constrained_delaunay(self.points, &edges)?
        };
        debug_check(&tri, self.points);
        let mut in_tri = vec![false; self.sg.len()];
        for e in tri.edges() {
            if let Some(k) = self.sg.index_of(*e) {
                in_tri[k] = true;
            }
        }
        Ok(Candidate { tri, in_tri })
    }

    fn allowed(&self, extra_forbidden: &[bool]) -> Vec<bool> {
        (0..self.sg.len())
            .map(|e| self.sg.status(e) != EdgeStatus::Impossible && !extra_forbidden.get(e).copied().unwrap_or(false))
            .collect()
    }

    fn separation(
        &self,
        c: &Candidate,
        allowed: &[bool],
        s: usize,
        t: usize,
        bound: &ExactValue,
    ) -> Result<Vec<usize>, SolverError> {
        Ok(separate(self.points, self.sg.edges(), allowed, &c.in_tri, s, t, bound)?)
    }

    fn improve(&mut self, tri: Triangulation, d: Dilation) -> bool {
        self.best_t = tri;
        self.best = d;
        let v = self.best.value.clone();
        self.cut_permanent(&v)
    }

    /// IncMDT, optionally sampling for violations before each full dilation.
    fn incremental(&mut self, sampling: bool) -> Result<Status, SolverError> {
        loop {
            if self.timed_out() {
                return Ok(Status::BoundedGap);
            }
            let Some(sel) = self.model().solve(None)? else {
                return Ok(Status::Optimal);
            };
            self.stats.iterations += 1;
            let c = self.realize(&sel)?;
            let allowed = self.allowed(&[]);
            if sampling {
                self.stats.sampling_calls += 1;
                let bound = self.best.value.clone();
                let found = sample_violations(self.points, c.tri.edges(), &bound, self.config.sampling);
                if !found.is_empty() {
                    self.stats.sampled_rounds += 1;
                    for v in found {
                        let clause = self.separation(&c, &allowed, v.s, v.t, &bound)?;
                        self.stats.clauses += 1;
                        self.model().require_any(&clause);
                    }
                    continue;
                }
            }
            self.stats.full_dilations += 1;
            let d = exact_dilation(self.points, c.tri.edges()).expect("triangulations are connected");
            let (s, t) = (d.s, d.t);
            if d.value.cmp_exact(&self.best.value) == Ordering::Less && self.improve(c.tri.clone(), d) {
                return Ok(Status::Optimal);
            }
            let bound = self.best.value.clone();
            let allowed = self.allowed(&[]);
            let clause = self.separation(&c, &allowed, s, t, &bound)?;
            self.stats.clauses += 1;
            self.model().require_any(&clause);
        }
    }

    /// Bisection phase. Returns a final status if it already settles the
    /// instance, or `None` to continue incrementally.
    fn bisect(&mut self) -> Result<Option<Status>, SolverError> {
        loop {
            let ub = self.best.value.interval();
            if ub.hi() - self.lb < self.config.sigma {
                return Ok(None);
            }
            if self.timed_out() {
                return Ok(Some(Status::BoundedGap));
            }
            let mid = 0.5 * (self.lb + ub.lo());
            if !(mid > self.lb && mid < ub.lo()) {
                return Ok(None);
            }
            let bound = ExactValue::from_f64(mid);
            self.stats.probes += 1;
            match self.probe(&bound)? {
                ProbeOutcome::Below => {}
                ProbeOutcome::NoneBelow => self.lb = mid,
                ProbeOutcome::Conflict => return Ok(Some(Status::Optimal)),
                ProbeOutcome::TimedOut => return Ok(Some(Status::BoundedGap)),
            }
        }
    }

    fn probe(&mut self, bound: &ExactValue) -> Result<ProbeOutcome, SolverError> {
        let probe: ProbeId = self.model().begin_probe();
        let mut forbidden = vec![false; self.sg.len()];
        for (e, slot) in forbidden.iter_mut().enumerate() {
            if self.sg.status(e) == EdgeStatus::Impossible || self.sg.threshold(e).hi() < bound.interval().lo() {
                continue;
            }
            let edge = self.sg.edge(e);
            let crossers = self.sg.crossings(e).iter().map(|&f| self.sg.edge(f as usize));
            if threshold_at_least(self.points, edge, crossers, bound) {
                *slot = true;
            }
        }
        for (e, _) in forbidden.iter().enumerate().filter(|(_, &f)| f) {
            self.model().stage_forbid(probe, e);
        }
        loop {
            if self.timed_out() {
                self.model().discard(probe);
                return Ok(ProbeOutcome::TimedOut);
            }
            let Some(sel) = self.model().solve(Some(probe))? else {
                self.model().discard(probe);
                return Ok(ProbeOutcome::NoneBelow);
            };
            self.stats.iterations += 1;
            let c = self.realize(&sel)?;
            let allowed = self.allowed(&forbidden);
            self.stats.sampling_calls += 1;
            let found = sample_violations(self.points, c.tri.edges(), bound, self.config.sampling);
            if !found.is_empty() {
                self.stats.sampled_rounds += 1;
                for v in found {
                    let clause = self.separation(&c, &allowed, v.s, v.t, bound)?;
                    self.stats.clauses += 1;
                    self.model().stage_require_any(probe, &clause);
                }
                continue;
            }
            self.stats.full_dilations += 1;
            let d = exact_dilation(self.points, c.tri.edges()).expect("triangulations are connected");
            let below = d.value.cmp_exact(bound) == Ordering::Less;
            let (s, t) = (d.s, d.t);
            if d.value.cmp_exact(&self.best.value) == Ordering::Less {
                if below {
                    self.model().commit(probe);
                }
                if self.improve(c.tri.clone(), d) {
                    if !below {
                        self.model().discard(probe);
                    }
                    return Ok(ProbeOutcome::Conflict);
                }
            }
            if below {
                return Ok(ProbeOutcome::Below);
            }
            let clause = self.separation(&c, &allowed, s, t, bound)?;
            self.stats.clauses += 1;
            self.model().stage_require_any(probe, &clause);
        }
    }
}

enum ProbeOutcome {
    Below,
    NoneBelow,
    Conflict,
    TimedOut,
}
