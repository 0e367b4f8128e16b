//! Backtracking 0/1 search over rays with unit propagation.
//!
//! Rays are decided in order of descending orthogonality degree (ties by index), trying 1
//! before 0. Propagation: a ray set to 1 forces 0 on all its orthogonal neighbours, and a
//! basis whose other members are all 0 forces its last member to 1.

use alloc::vec;
use alloc::vec::Vec;

use super::rays::ContextSystem;
use super::{SearchCertificate, SearchOutcome, Valuation};

const UNSET: i8 = -1;

/// One branching decision: ray index and the value tried.
pub type Decision = (usize, u8);

struct BudgetExceeded;

pub struct RaySearch<'a> {
    ctx: &'a ContextSystem,
    order: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
    bases_of: Vec<Vec<usize>>,
    values: Vec<i8>,
    trail: Vec<usize>,
    queue: Vec<(usize, i8)>,
    nodes: u64,
    propagations: u64,
    budget: Option<u64>,
}

impl<'a> RaySearch<'a> {
    pub fn new(ctx: &'a ContextSystem) -> Self {
        let neighbors = ctx.neighbors();
        let mut order: Vec<usize> = (0..ctx.num_rays).collect();
        order.sort_by_key(|&i| (core::cmp::Reverse(neighbors[i].len()), i));
        RaySearch {
            ctx,
            order,
            neighbors,
            bases_of: ctx.bases_of(),
            values: vec![UNSET; ctx.num_rays],
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            propagations: 0,
            budget: None,
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn propagations(&self) -> u64 {
        self.propagations
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let r = self.trail.pop().unwrap();
            self.values[r] = UNSET;
        }
    }

    /// Sets `ray := value` and propagates; `false` on conflict (state then needs undoing).
    fn assign(&mut self, ray: usize, value: i8) -> bool {
        self.queue.clear();
        self.queue.push((ray, value));
        while let Some((r, v)) = self.queue.pop() {
            match self.values[r] {
                UNSET => {}
                cur if cur == v => continue,
                _ => return false,
            }
            self.values[r] = v;
            self.trail.push(r);
            self.propagations += 1;
            if v == 1 {
                for k in 0..self.neighbors[r].len() {
                    let n = self.neighbors[r][k];
                    match self.values[n] {
                        1 => return false,
                        UNSET => self.queue.push((n, 0)),
                        _ => {}
                    }
                }
            }
            for k in 0..self.bases_of[r].len() {
                let b = &self.ctx.bases[self.bases_of[r][k]];
                let mut ones = 0;
                let mut open = None;
                let mut open_count = 0;
                for &m in b {
                    match self.values[m] {
                        1 => ones += 1,
                        UNSET => {
                            open = Some(m);
                            open_count += 1;
                        }
                        _ => {}
                    }
                }
                if ones > 1 || (ones == 0 && open_count == 0) {
                    return false;
                }
                if ones == 0 && open_count == 1 {
                    self.queue.push((open.unwrap(), 1));
                }
            }
        }
        true
    }

    fn next_unassigned(&self) -> Option<usize> {
        self.order.iter().copied().find(|&r| self.values[r] == UNSET)
    }

    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(BudgetExceeded),
            _ => Ok(()),
        }
    }

    fn dfs(&mut self) -> Result<bool, BudgetExceeded> {
        let Some(r) = self.next_unassigned() else {
            return Ok(true);
        };
        for v in [1i8, 0] {
            self.tick()?;
            let mark = self.trail.len();
            if self.assign(r, v) && self.dfs()? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }

    /// Replays a decision prefix from the root; `false` if it leads to a conflict.
    fn replay(&mut self, prefix: &[Decision]) -> bool {
        self.undo_to(0);
        for &(r, v) in prefix {
            if self.next_unassigned() != Some(r) || !self.assign(r, v as i8) {
                return false;
            }
        }
        true
    }

    fn certificate(&self, outcome: SearchOutcome) -> SearchCertificate {
        SearchCertificate {
            outcome,
            nodes: self.nodes,
            propagations: self.propagations,
            elapsed: None,
            approximate_counts: false,
        }
    }

    fn current_valuation(&self) -> Valuation {
        Valuation::new(self.values.iter().map(|&v| if v == 1 { 1.0 } else { 0.0 }).collect())
    }

    /// Runs the complete search from the root.
    pub fn solve(&mut self) -> SearchCertificate {
        self.solve_from(&[])
    }

    /// Searches the subtree below `prefix`, a list of decisions as produced by
    /// [`RaySearch::frontier`].
    pub fn solve_from(&mut self, prefix: &[Decision]) -> SearchCertificate {
        if !self.replay(prefix) {
            return self.certificate(SearchOutcome::Exhausted);
        }
        let outcome = match self.dfs() {
            Ok(true) => SearchOutcome::Found { valuation: self.current_valuation() },
            Ok(false) => SearchOutcome::Exhausted,
            Err(BudgetExceeded) => SearchOutcome::Budget { budget: self.budget.unwrap_or(0) },
        };
        self.certificate(outcome)
    }

    /// Consistent decision prefixes of length `depth` (or shorter when a leaf is reached
    /// first), in the order the sequential search visits them. Searching them in this
    /// order reproduces the sequential result. Work done here is counted in
    /// [`nodes`](Self::nodes).
    pub fn frontier(&mut self, depth: usize) -> Vec<Vec<Decision>> {
        let mut out = Vec::new();
        self.undo_to(0);
        self.collect_frontier(depth, &mut Vec::new(), &mut out);
        self.undo_to(0);
        out
    }

    fn collect_frontier(&mut self, depth: usize, path: &mut Vec<Decision>, out: &mut Vec<Vec<Decision>>) {
        let next = self.next_unassigned();
        if depth == 0 || next.is_none() {
            out.push(path.clone());
            return;
        }
        let r = next.unwrap();
        for v in [1u8, 0] {
            let mark = self.trail.len();
            self.nodes += 1;
            if self.assign(r, v as i8) {
                path.push((r, v));
                self.collect_frontier(depth - 1, path, out);
                path.pop();
            }
            self.undo_to(mark);
        }
    }
}

/// Complete search without a node budget.
pub fn find_valuation(ctx: &ContextSystem) -> SearchCertificate {
    RaySearch::new(ctx).solve()
}

pub fn find_valuation_with_budget(ctx: &ContextSystem, budget: Option<u64>) -> SearchCertificate {
    RaySearch::new(ctx).with_budget(budget).solve()
}
