//! SAT formulation over candidate edges.

mod model;

use std::fmt;

use thiserror::Error;

pub use model::{EdgeModel, ProbeId};

/// A literal in DIMACS convention: variable `|x|`, negated if `x < 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    pub fn pos(var: u32) -> Lit {
        assert!(var > 0 && var <= i32::MAX as u32, "variable out of range");
        Lit(var as i32)
    }

    pub fn neg(var: u32) -> Lit {
        Lit(-Lit::pos(var).0)
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn dimacs(self) -> i32 {
        self.0
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum SatError {
    #[error("SAT backend failed: {0}")]
    Backend(String),
}

/// Incremental SAT backend.
pub trait SatEngine {
    /// Ensures variables `1..=n` exist.
    fn reserve_vars(&mut self, n: u32);
    fn add_clause(&mut self, lits: &[Lit]);
    /// Solves under the given assumptions.
    fn solve(&mut self, assumptions: &[Lit]) -> Result<bool, SatError>;
    /// Value of `var` in the last model.
    fn value(&self, var: u32) -> bool;
}

/// Backend built on the CaDiCaL CDCL solver.
#[derive(Default)]
pub struct CadicalEngine {
    solver: cadical::Solver,
    model: Vec<bool>,
    vars: u32,
}

impl SatEngine for CadicalEngine {
    fn reserve_vars(&mut self, n: u32) {
        self.vars = self.vars.max(n);
    }

    fn add_clause(&mut self, lits: &[Lit]) {
        for l in lits {
            self.vars = self.vars.max(l.var());
        }
        self.solver.add_clause(lits.iter().map(|l| l.0));
    }

    fn solve(&mut self, assumptions: &[Lit]) -> Result<bool, SatError> {
        let sat = self
            .solver
            .solve_with(assumptions.iter().map(|l| l.0))
            .ok_or_else(|| SatError::Backend("solver was interrupted".into()))?;
        self.model.clear();
        if sat {
            self.model = (0..=self.vars as i32)
                .map(|v| v > 0 && self.solver.value(v) == Some(true))
                .collect();
        }
        Ok(sat)
    }

    fn value(&self, var: u32) -> bool {
        self.model.get(var as usize).copied().unwrap_or(false)
    }
}

/// Writes clauses in DIMACS CNF format.
pub fn write_dimacs(vars: u32, clauses: &[Vec<Lit>]) -> String {
    let mut out = format!("p cnf {} {}\n", vars, clauses.len());
    for c in clauses {
        for l in c {
            out.push_str(&l.dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
