//! Valuation search for arbitrary finite observable sets.
//!
//! Each observable is a variable whose domain is its set of distinct eigenvalues. Every
//! maximal clique of the commutation graph contributes a table constraint: the tuple of
//! values must be a joint-spectrum point of the clique. Constraints on sub-cliques are
//! implied by those on the maximal cliques. The search maintains generalized arc
//! consistency on the tables and branches on the open observable of highest degree.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{SearchCertificate, SearchOutcome, Valuation, DEFAULT_GENERAL_BUDGET};
use crate::error::Error;
use crate::graph::Graph;
use crate::joint::joint_spectrum;
use crate::operator::{commutes, distinct_spectrum, Observable};
use crate::scalar::Scalar;
use crate::{Result, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralOptions {
    pub tol: f64,
    /// `None` searches without a node limit.
    pub budget: Option<u64>,
}

impl Default for GeneralOptions {
    fn default() -> Self {
        GeneralOptions { tol: DEFAULT_TOL, budget: Some(DEFAULT_GENERAL_BUDGET) }
    }
}

/// The constraint network extracted from an observable set.
#[derive(Clone, Debug)]
pub struct GeneralProblem {
    /// Distinct spectrum points of each observable, ascending.
    pub domains: Vec<Vec<f64>>,
    pub commutation: Graph,
    pub cliques: Vec<Vec<usize>>,
    /// For each clique, the joint-spectrum points as tuples of domain indices.
    pub tables: Vec<Vec<Vec<u8>>>,
}

impl GeneralProblem {
    pub fn build<S: Scalar>(obs: &[Observable<S>], tol: f64) -> Result<Self> {
        if let Some(first) = obs.first() {
            if let Some(o) = obs.iter().find(|o| o.dim() != first.dim()) {
                return Err(Error::DimensionMismatch { expected: first.dim(), found: o.dim() });
            }
        }
        let domains = obs.iter().map(|o| distinct_spectrum(o, tol)).collect::<Result<Vec<_>>>()?;
        if let Some(big) = domains.iter().position(|d| d.len() > 64) {
            return Err(Error::InvalidArgument(format!("observable {big} has more than 64 distinct eigenvalues")));
        }
        let mut pairs = Vec::new();
        for i in 0..obs.len() {
            for j in i + 1..obs.len() {
                if commutes(&obs[i], &obs[j], tol)? {
                    pairs.push((i, j));
                }
            }
        }
        let mut commutation = Graph::new(obs.len());
        for (i, j) in pairs {
            commutation.add_edge(i, j);
        }
        let cliques = commutation.maximal_cliques();
        let mut tables = Vec::with_capacity(cliques.len());
        for clique in &cliques {
            let members: Vec<Observable<S>> = clique.iter().map(|&i| obs[i].clone()).collect();
            let js = joint_spectrum(&members, tol)?;
            let mut table = Vec::with_capacity(js.points.len());
            for p in &js.points {
                let tuple = clique
                    .iter()
                    .zip(&p.values)
                    .map(|(&var, &val)| nearest_index(&domains[var], val, tol))
                    .collect::<Option<Vec<u8>>>()
                    .ok_or_else(|| Error::InvalidArgument(format!("joint-spectrum point {:?} outside member spectra", p.values)))?;
                table.push(tuple);
            }
            tables.push(table);
        }
        Ok(GeneralProblem { domains, commutation, cliques, tables })
    }

    pub fn solve(&self, budget: Option<u64>) -> SearchCertificate {
        let mut s = Csp::new(self, budget);
        let outcome = match s.run() {
            Ok(Some(assign)) => SearchOutcome::Found {
                valuation: Valuation::new(assign.iter().enumerate().map(|(v, &k)| self.domains[v][k]).collect()),
            },
            Ok(None) => SearchOutcome::Exhausted,
            Err(()) => SearchOutcome::Budget { budget: budget.unwrap_or(0) },
        };
        SearchCertificate { outcome, nodes: s.nodes, propagations: s.revisions, elapsed: None, approximate_counts: false }
    }
}

fn nearest_index(domain: &[f64], value: f64, tol: f64) -> Option<u8> {
    let (k, d) = domain
        .iter()
        .enumerate()
        .map(|(k, &x)| (k, (x - value).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))?;
    // Joint-spectrum values come from restricted eigenproblems and may drift from
    // the standalone spectrum by more than the clustering tolerance.
    (d <= tol.max(1e-7)).then_some(k as u8)
}

struct Csp<'a> {
    p: &'a GeneralProblem,
    cliques_of: Vec<Vec<usize>>,
    order: Vec<usize>,
    domains: Vec<u64>,
    nodes: u64,
    revisions: u64,
    budget: Option<u64>,
}

impl<'a> Csp<'a> {
    fn new(p: &'a GeneralProblem, budget: Option<u64>) -> Self {
        let n = p.domains.len();
        let mut cliques_of = vec![Vec::new(); n];
        for (c, members) in p.cliques.iter().enumerate() {
            for &v in members {
                cliques_of[v].push(c);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(p.commutation.degree(v)), v));
        let domains = p.domains.iter().map(|d| if d.len() == 64 { u64::MAX } else { (1u64 << d.len()) - 1 }).collect();
        Csp { p, cliques_of, order, domains, nodes: 0, revisions: 0, budget }
    }

    /// Revises every clique in the queue until fixpoint; `false` on a wipe-out.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; self.p.cliques.len()];
        for &c in &queue {
            queued[c] = true;
        }
        while let Some(c) = queue.pop() {
            queued[c] = false;
            self.revisions += 1;
            let members = &self.p.cliques[c];
            let mut support = vec![0u64; members.len()];
            for tuple in &self.p.tables[c] {
                if members.iter().zip(tuple).all(|(&v, &k)| self.domains[v] & (1 << k) != 0) {
                    for (s, &k) in support.iter_mut().zip(tuple) {
                        *s |= 1 << k;
                    }
                }
            }
            for (&v, &s) in members.iter().zip(&support) {
                let new = self.domains[v] & s;
                if new == 0 {
                    return false;
                }
                if new != self.domains[v] {
                    self.domains[v] = new;
                    for &c2 in &self.cliques_of[v] {
                        if c2 != c && !queued[c2] {
                            queued[c2] = true;
                            queue.push(c2);
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self) -> core::result::Result<Option<Vec<usize>>, ()> {
        if !self.propagate((0..self.p.cliques.len()).collect()) {
            return Ok(None);
        }
        self.dfs()
    }

    fn dfs(&mut self) -> core::result::Result<Option<Vec<usize>>, ()> {
        let open = self.order.iter().copied().find(|&v| self.domains[v].count_ones() > 1);
        let Some(var) = open else {
            return Ok(Some(self.domains.iter().map(|d| d.trailing_zeros() as usize).collect()));
        };
        let dom = self.domains[var];
        for k in 0..64 {
            if dom & (1 << k) == 0 {
                continue;
            }
            self.nodes += 1;
            if matches!(self.budget, Some(b) if self.nodes > b) {
                return Err(());
            }
            let saved = self.domains.clone();
            self.domains[var] = 1 << k;
            if self.propagate(self.cliques_of[var].clone()) {
                if let Some(found) = self.dfs()? {
                    return Ok(Some(found));
                }
            }
            self.domains = saved;
        }
        Ok(None)
    }
}

/// Searches for a valuation of `obs`. Outcomes: a valuation, a complete search without
/// one, or an exhausted node budget.
pub fn find_valuation_general<S: Scalar>(obs: &[Observable<S>], opts: GeneralOptions) -> Result<SearchCertificate> {
    Ok(GeneralProblem::build(obs, opts.tol)?.solve(opts.budget))
}
