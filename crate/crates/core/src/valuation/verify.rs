//! Certificate checkers.
//!
//! These recompute every constraint from the raw inputs and share no code with the
//! searches: orthogonality and commutation are re-tested directly, contexts are
//! enumerated by plain recursive extension, and joint-spectrum membership of a tuple
//! `(v_1, …, v_k)` is decided by whether `Σ (A_i − v_i I)²` is singular.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::rays::RaySet;
use super::Valuation;
use crate::eigen::eigh;
use crate::error::Error;
use crate::matrix::CMatrix;
use crate::operator::Observable;
use crate::scalar::Scalar;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum FailedConstraint {
    NotInSpectrum { index: usize, value: f64 },
    OrthogonalPair { a: usize, b: usize },
    Basis { members: Vec<usize>, ones: usize },
    JointSpectrum { members: Vec<usize>, values: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "verdict", rename_all = "snake_case"))]
pub enum Verdict {
    Accepted,
    Rejected { failed: FailedConstraint },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn failed(&self) -> Option<&FailedConstraint> {
        match self {
            Verdict::Rejected { failed } => Some(failed),
            Verdict::Accepted => None,
        }
    }
}

fn reject(failed: FailedConstraint) -> Result<Verdict> {
    Ok(Verdict::Rejected { failed })
}

/// Checks a 0/1 valuation of a ray set: no orthogonal pair of 1s and exactly one 1 in
/// every complete orthogonal basis.
pub fn verify_ray_valuation<S: Scalar>(rs: &RaySet<S>, v: &Valuation, tol: f64) -> Result<Verdict> {
    let n = rs.len();
    if v.len() != n {
        return Err(Error::MissingAssignment { expected: n, found: v.len() });
    }
    for (i, &x) in v.values.iter().enumerate() {
        if x != 0.0 && x != 1.0 {
            return reject(FailedConstraint::NotInSpectrum { index: i, value: x });
        }
    }
    let rays = rs.rays();
    let orth: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && rays[i].is_orthogonal(&rays[j], tol)).collect())
        .collect();
    for (i, row) in orth.iter().enumerate() {
        for (j, &o) in row.iter().enumerate().skip(i + 1) {
            if o && v.values[i] == 1.0 && v.values[j] == 1.0 {
                return reject(FailedConstraint::OrthogonalPair { a: i, b: j });
            }
        }
    }
    let mut failure = None;
    extend_orthogonal(&orth, rs.dim(), &mut Vec::new(), 0, &mut |basis| {
        let ones = basis.iter().filter(|&&i| v.values[i] == 1.0).count();
        if ones != 1 && failure.is_none() {
            failure = Some(FailedConstraint::Basis { members: basis.to_vec(), ones });
        }
    });
    match failure {
        Some(f) => reject(f),
        None => Ok(Verdict::Accepted),
    }
}

fn extend_orthogonal(orth: &[Vec<bool>], size: usize, cur: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if cur.len() == size {
        visit(cur);
        return;
    }
    for k in start..orth.len() {
        if cur.iter().all(|&i| orth[i][k]) {
            cur.push(k);
            extend_orthogonal(orth, size, cur, k + 1, visit);
            cur.pop();
        }
    }
}

/// Checks a valuation of a general observable set: spectrum membership and joint-spectrum
/// membership on every maximal pairwise-commuting subset.
pub fn verify_general_valuation<S: Scalar>(obs: &[Observable<S>], v: &Valuation, tol: f64) -> Result<Verdict> {
    let n = obs.len();
    if v.len() != n {
        return Err(Error::MissingAssignment { expected: n, found: v.len() });
    }
    let mats: Vec<CMatrix> = obs.iter().map(|o| o.matrix().to_c64()).collect();
    for (i, m) in mats.iter().enumerate() {
        if !has_joint_eigenvector(&[m], &[v.values[i]], tol)? {
            return reject(FailedConstraint::NotInSpectrum { index: i, value: v.values[i] });
        }
    }
    let mut comm = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = if S::EXACT {
                obs[i].matrix().commutator(obs[j].matrix())?.is_zero(0.0)
            } else {
                let c = mats[i].mul(&mats[j])?.sub(&mats[j].mul(&mats[i])?)?;
                c.frobenius() <= tol * (1.0 + mats[i].frobenius() * mats[j].frobenius())
            };
            comm[i][j] = c;
            comm[j][i] = c;
        }
    }
    let mut subsets = Vec::new();
    maximal_commuting(&comm, &mut Vec::new(), 0, &mut subsets);
    for members in subsets {
        if members.len() < 2 {
            continue;
        }
        let ms: Vec<&CMatrix> = members.iter().map(|&i| &mats[i]).collect();
        let vals: Vec<f64> = members.iter().map(|&i| v.values[i]).collect();
        if !has_joint_eigenvector(&ms, &vals, tol)? {
            return reject(FailedConstraint::JointSpectrum { members, values: vals });
        }
    }
    Ok(Verdict::Accepted)
}

fn maximal_commuting(comm: &[Vec<bool>], cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    let n = comm.len();
    let mut extended = false;
    for k in start..n {
        if cur.iter().all(|&i| comm[i][k]) {
            extended = true;
            cur.push(k);
            maximal_commuting(comm, cur, k + 1, out);
            cur.pop();
        }
    }
    if !extended && !cur.is_empty() {
        // No later index extends `cur`; it is maximal unless an earlier one does.
        let maximal = (0..n).all(|k| cur.contains(&k) || !cur.iter().all(|&i| comm[i][k]));
        if maximal {
            out.push(cur.clone());
        }
    }
}

/// `true` iff the matrices share an eigenvector with the given eigenvalues, decided by the
/// smallest eigenvalue of `Σ (A_i − v_i I)²`.
fn has_joint_eigenvector(mats: &[&CMatrix], values: &[f64], tol: f64) -> Result<bool> {
    let dim = mats[0].rows();
    let mut sum = CMatrix::zeros(dim, dim);
    for (m, &x) in mats.iter().zip(values) {
        let shifted = m.sub(&CMatrix::identity(dim).scale(&Complex64::new(x, 0.0)))?;
        sum = sum.add(&shifted.mul(&shifted)?)?;
    }
    let eig = eigh(&sum)?;
    Ok(eig.values[0] <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::Ray;
    use crate::scalar::Exact;
    use crate::DEFAULT_TOL;

    fn e(dim: usize, k: usize) -> Ray<Exact> {
        let mut c = vec![Exact::zero(); dim];
        c[k] = Exact::one();
        Ray::new(c).unwrap()
    }

    fn std3() -> RaySet<Exact> {
        RaySet::new(3, vec![e(3, 0), e(3, 1), e(3, 2)], "std", "", 0.0).unwrap()
    }

    #[test]
    fn accepts_one_hot_basis() {
        let v = Valuation::new(vec![1.0, 0.0, 0.0]);
        assert!(verify_ray_valuation(&std3(), &v, DEFAULT_TOL).unwrap().is_accepted());
    }

    #[test]
    fn rejects_orthogonal_ones() {
        let v = Valuation::new(vec![1.0, 1.0, 0.0]);
        let verdict = verify_ray_valuation(&std3(), &v, DEFAULT_TOL).unwrap();
        assert_eq!(verdict.failed(), Some(&FailedConstraint::OrthogonalPair { a: 0, b: 1 }));
    }

    #[test]
    fn rejects_empty_basis() {
        let verdict = verify_ray_valuation(&std3(), &Valuation::zeros(3), DEFAULT_TOL).unwrap();
        assert_eq!(verdict.failed(), Some(&FailedConstraint::Basis { members: vec![0, 1, 2], ones: 0 }));
    }

    #[test]
    fn constant_zero_without_complete_basis() {
        let rs = RaySet::new(3, vec![e(3, 0), e(3, 1)], "two", "", 0.0).unwrap();
        assert!(verify_ray_valuation(&rs, &Valuation::zeros(2), DEFAULT_TOL).unwrap().is_accepted());
    }

    #[test]
    fn missing_assignment_is_error() {
        assert_eq!(
            verify_ray_valuation(&std3(), &Valuation::zeros(2), DEFAULT_TOL).unwrap_err(),
            Error::MissingAssignment { expected: 3, found: 2 }
        );
    }

    #[test]
    fn general_rejects_off_spectrum_and_joint() {
        let a = Observable::diagonal(&[Exact::from_i64(1), Exact::from_i64(-1), Exact::zero()]);
        let a2 = Observable::new(a.matrix().mul(a.matrix()).unwrap(), 0.0).unwrap();
        let obs = [a, a2];
        let bad = verify_general_valuation(&obs, &Valuation::new(vec![0.5, 1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(bad.failed(), Some(&FailedConstraint::NotInSpectrum { index: 0, value: 0.5 }));
        let bad = verify_general_valuation(&obs, &Valuation::new(vec![-1.0, 0.0]), DEFAULT_TOL).unwrap();
        assert!(matches!(bad.failed(), Some(FailedConstraint::JointSpectrum { .. })));
        let ok = verify_general_valuation(&obs, &Valuation::new(vec![-1.0, 1.0]), DEFAULT_TOL).unwrap();
        assert!(ok.is_accepted());
    }
}
