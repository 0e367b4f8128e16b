//! Independent check of ray-set colorability with an off-the-shelf SAT solver.
//!
//! The clauses come from [`encode_rays`]; nothing here shares code with the backtracking
//! search.

use nogo_core::valuation::{encode_rays, Cnf, ContextSystem, Valuation};
use varisat::{ExtendFormula, Lit, Solver};

#[derive(Clone, Debug, PartialEq)]
pub enum SatOutcome {
    Satisfiable(Valuation),
    Unsatisfiable,
}

impl SatOutcome {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, SatOutcome::Satisfiable(_))
    }
}

pub fn solve_cnf(cnf: &Cnf) -> SatOutcome {
    let mut solver = Solver::new();
    for clause in &cnf.clauses {
        let lits: Vec<Lit> = clause.iter().map(|&l| Lit::from_dimacs(l as isize)).collect();
        solver.add_clause(&lits);
    }
    let sat = solver.solve().expect("in-memory solver does not fail");
    if !sat {
        return SatOutcome::Unsatisfiable;
    }
    // Variables absent from every clause are left false.
    let mut truth = vec![false; cnf.num_vars];
    for lit in solver.model().unwrap_or_default() {
        let i = lit.var().index();
        if i < truth.len() {
            truth[i] = lit.is_positive();
        }
    }
    SatOutcome::Satisfiable(cnf.decode(&truth))
}

pub fn sat_colorability(ctx: &ContextSystem) -> SatOutcome {
    solve_cnf(&encode_rays(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_unsat() {
        let ctx = ContextSystem { dim: 2, num_rays: 3, pairs: vec![(0, 1), (0, 2), (1, 2)], bases: vec![vec![0, 1], vec![0, 2], vec![1, 2]] };
        assert_eq!(sat_colorability(&ctx), SatOutcome::Unsatisfiable);
    }

    #[test]
    fn single_basis_sat() {
        let ctx = ContextSystem { dim: 3, num_rays: 4, pairs: vec![(0, 1), (0, 2), (1, 2)], bases: vec![vec![0, 1, 2]] };
        let SatOutcome::Satisfiable(v) = sat_colorability(&ctx) else { panic!("expected a model") };
        assert_eq!(v.values.len(), 4);
        assert!(encode_rays(&ctx).satisfied_by(&v));
    }
}
