//! The edge model: one variable per candidate edge.

use super::{write_dimacs, CadicalEngine, Lit, SatEngine, SatError};
use crate::supergraph::{EdgeStatus, Supergraph};

/// Handle for a group of clauses that hold only under one dilation bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProbeId(u32);

/// SAT model whose solutions are the triangulations made of non-impossible
/// candidate edges.
///
/// Edge `e` of the supergraph is variable `e + 1`. Clauses that depend on a
/// tentative bound are staged behind a selector variable and become
/// permanent on [`EdgeModel::commit`] or inert on [`EdgeModel::discard`].
pub struct EdgeModel<E: SatEngine = CadicalEngine> {
    engine: E,
    edges: u32,
    next_var: u32,
    permanent: Vec<Vec<Lit>>,
    staged: Vec<(ProbeId, Vec<Lit>)>,
    unsat: bool,
    solves: u64,
}

impl EdgeModel<CadicalEngine> {
    pub fn new(graph: &Supergraph) -> Self {
        Self::with_engine(graph, CadicalEngine::default())
    }
}

impl<E: SatEngine> EdgeModel<E> {
    pub fn with_engine(graph: &Supergraph, engine: E) -> Self {
        let m = graph.len() as u32;
        let mut model = EdgeModel {
            engine,
            edges: m,
            next_var: m + 1,
            permanent: Vec::new(),
            staged: Vec::new(),
            unsat: false,
            solves: 0,
        };
        model.engine.reserve_vars(m);
        for e in 0..graph.len() {
            let x = Lit::pos(e as u32 + 1);
            let mut maximal = vec![x];
            for &f in graph.crossings(e) {
                let y = Lit::pos(f + 1);
                if (f as usize) > e {
                    model.add_permanent(vec![!x, !y]);
                }
                maximal.push(y);
            }
            model.add_permanent(maximal);
            match graph.status(e) {
                EdgeStatus::Certain => model.add_permanent(vec![x]),
                EdgeStatus::Impossible => model.add_permanent(vec![!x]),
                EdgeStatus::Possible => {}
            }
        }
        model
    }

    pub fn edge_var(&self, e: usize) -> u32 {
        e as u32 + 1
    }

    fn add_permanent(&mut self, clause: Vec<Lit>) {
        if clause.is_empty() {
            self.unsat = true;
        }
        self.engine.add_clause(&clause);
        self.permanent.push(clause);
    }

    /// Requires at least one of `edges`; an empty list makes the model unsatisfiable.
    pub fn require_any(&mut self, edges: &[usize]) {
        let c = edges.iter().map(|&e| Lit::pos(self.edge_var(e))).collect();
        self.add_permanent(c);
    }

    pub fn forbid(&mut self, e: usize) {
        let c = vec![Lit::neg(self.edge_var(e))];
        self.add_permanent(c);
    }

    pub fn begin_probe(&mut self) -> ProbeId {
        let id = ProbeId(self.next_var);
        self.next_var += 1;
        self.engine.reserve_vars(id.0);
        id
    }

    /// `require_any` that only holds while `probe` is active.
    pub fn stage_require_any(&mut self, probe: ProbeId, edges: &[usize]) {
        let mut c: Vec<Lit> = edges.iter().map(|&e| Lit::pos(self.edge_var(e))).collect();
        self.staged.push((probe, c.clone()));
        c.push(Lit::neg(probe.0));
        self.engine.add_clause(&c);
    }

    pub fn stage_forbid(&mut self, probe: ProbeId, e: usize) {
        let c = vec![Lit::neg(self.edge_var(e))];
        self.staged.push((probe, c));
        self.engine.add_clause(&[Lit::neg(self.edge_var(e)), Lit::neg(probe.0)]);
    }

    /// Makes the clauses of `probe` permanent.
    pub fn commit(&mut self, probe: ProbeId) {
        self.engine.add_clause(&[Lit::pos(probe.0)]);
        let (mine, rest): (Vec<_>, Vec<_>) = self.staged.drain(..).partition(|(p, _)| *p == probe);
        self.staged = rest;
        for (_, c) in mine {
            if c.is_empty() {
                self.unsat = true;
            }
            self.permanent.push(c);
        }
    }

    /// Drops the clauses of `probe`.
    pub fn discard(&mut self, probe: ProbeId) {
        self.engine.add_clause(&[Lit::neg(probe.0)]);
        self.staged.retain(|(p, _)| *p != probe);
    }

    /// Solves with the clauses of `probe` active. Returns the chosen edge
    /// indices, or `None` if unsatisfiable.
    pub fn solve(&mut self, probe: Option<ProbeId>) -> Result<Option<Vec<usize>>, SatError> {
        if self.unsat {
            return Ok(None);
        }
        self.solves += 1;
        let assumptions: Vec<Lit> = probe.map(|p| Lit::pos(p.0)).into_iter().collect();
        if !self.engine.solve(&assumptions)? {
            return Ok(None);
        }
        Ok(Some(
            (0..self.edges as usize)
                .filter(|&e| self.engine.value(self.edge_var(e)))
                .collect(),
        ))
    }

    pub fn solves(&self) -> u64 {
        self.solves
    }

    pub fn clause_count(&self) -> usize {
        self.permanent.len()
    }

    /// The permanent clauses over the edge variables in DIMACS form.
    pub fn to_dimacs(&self) -> String {
        write_dimacs(self.edges, &self.permanent)
    }
}
