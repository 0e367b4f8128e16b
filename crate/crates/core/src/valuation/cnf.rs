//! CNF encoding of ray-set valuations, for checking search results with a SAT solver.
//!
//! Variable `i + 1` is true iff ray `i` takes the value 1. Each orthogonal pair gives
//! `¬a ∨ ¬b`; each complete basis gives the clause "at least one member is 1" (at most
//! one follows from the pair clauses, which cover every pair inside a basis).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::rays::ContextSystem;
use super::Valuation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    /// DIMACS-style literals: `k` for variable `k`, `-k` for its negation.
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for lit in c {
                let _ = write!(s, "{lit} ");
            }
            s.push_str("0\n");
        }
        s
    }

    /// Reads a valuation off a model given as the set of true variables.
    pub fn decode(&self, true_vars: &[bool]) -> Valuation {
        Valuation::new((0..self.num_vars).map(|i| if true_vars.get(i).copied().unwrap_or(false) { 1.0 } else { 0.0 }).collect())
    }

    /// `true` if the 0/1 valuation satisfies every clause.
    pub fn satisfied_by(&self, v: &Valuation) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let val = v.values[(lit.unsigned_abs() - 1) as usize] == 1.0;
                if lit > 0 {
                    val
                } else {
                    !val
                }
            })
        })
    }
}

pub fn encode_rays(ctx: &ContextSystem) -> Cnf {
    let lit = |i: usize| (i + 1) as i32;
    let mut clauses: Vec<Vec<i32>> = ctx.pairs.iter().map(|&(a, b)| alloc::vec![-lit(a), -lit(b)]).collect();
    clauses.extend(ctx.bases.iter().map(|b| b.iter().map(|&i| lit(i)).collect()));
    Cnf { num_vars: ctx.num_rays, clauses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn basis_encoding() {
        let ctx = ContextSystem { dim: 2, num_rays: 2, pairs: vec![(0, 1)], bases: vec![vec![0, 1]] };
        let cnf = encode_rays(&ctx);
        assert_eq!(cnf.clauses, vec![vec![-1, -2], vec![1, 2]]);
        assert_eq!(cnf.to_dimacs(), "p cnf 2 2\n-1 -2 0\n1 2 0\n");
        assert!(cnf.satisfied_by(&Valuation::new(vec![0.0, 1.0])));
        assert!(!cnf.satisfied_by(&Valuation::new(vec![1.0, 1.0])));
        assert!(!cnf.satisfied_by(&Valuation::new(vec![0.0, 0.0])));
    }
}
