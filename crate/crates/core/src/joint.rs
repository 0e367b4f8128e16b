//! Joint spectra of commuting Hermitian families.
//!
//! Only the finite-dimensional, simultaneously diagonalizable case is handled: the joint
//! spectrum is the set of eigenvalue tuples carried by a common eigenbasis. It is found by
//! recursive eigenspace refinement: diagonalize the first operator, restrict the next one
//! to each eigenspace, and recurse. Points come out ordered by eigenvalue, first
//! coordinate first.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::eigen::eigh;
use crate::error::Error;
use crate::matrix::CMatrix;
use crate::operator::{commutes, Observable};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::Result;

/// One point of a joint spectrum with an orthonormal basis of its joint eigenspace.
#[derive(Clone, Debug)]
pub struct JointPoint {
    pub values: Vec<f64>,
    /// `dim × multiplicity`, orthonormal columns.
    pub eigenspace: CMatrix,
}

impl JointPoint {
    pub fn multiplicity(&self) -> usize {
        self.eigenspace.cols()
    }
}

#[derive(Clone, Debug)]
pub struct JointSpectrumSet {
    pub arity: usize,
    pub points: Vec<JointPoint>,
    /// Tolerance used for clustering and deduplication.
    pub tol: f64,
}

impl JointSpectrumSet {
    pub fn tuples(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.values.clone()).collect()
    }

    /// `true` if `tuple` matches some point coordinatewise within `tol`.
    pub fn contains(&self, tuple: &[f64], tol: f64) -> bool {
        self.points
            .iter()
            .any(|p| p.values.len() == tuple.len() && p.values.iter().zip(tuple).all(|(a, b)| (a - b).abs() <= tol))
    }

    /// Largest `‖A_i − Σ_p λ_i(p) Q_p‖_F` over the family, where `Q_p` projects onto the
    /// joint eigenspace of point `p`.
    pub fn reconstruction_error<S: Scalar>(&self, ops: &[Observable<S>]) -> Result<f64> {
        let mut worst = 0.0f64;
        for (i, op) in ops.iter().enumerate() {
            let a = op.matrix().to_c64();
            let mut r = CMatrix::zeros(a.rows(), a.cols());
            for p in &self.points {
                let q = p.eigenspace.mul(&p.eigenspace.adjoint())?;
                r = r.add(&q.scale(&Complex64::new(p.values[i], 0.0)))?;
            }
            worst = worst.max(r.sub(&a)?.frobenius());
        }
        Ok(worst)
    }
}

/// Returns the first non-commuting pair, if any.
pub fn first_non_commuting<S: Scalar>(ops: &[Observable<S>], tol: f64) -> Result<Option<(usize, usize)>> {
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !commutes(&ops[i], &ops[j], tol)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn joint_spectrum<S: Scalar>(ops: &[Observable<S>], tol: f64) -> Result<JointSpectrumSet> {
    let first = ops.first().ok_or_else(|| Error::InvalidArgument("empty operator family".into()))?;
    let dim = first.dim();
    if let Some(op) = ops.iter().find(|o| o.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: op.dim() });
    }
    if let Some((i, j)) = first_non_commuting(ops, tol)? {
        return Err(Error::NonCommuting(i, j));
    }
    let mats: Vec<CMatrix> = ops.iter().map(|o| o.matrix().to_c64()).collect();
    let mut points = Vec::new();
    refine(&mats, CMatrix::identity(dim), Vec::new(), tol, &mut points)?;

    // Distinct branches differ by more than `tol` in some coordinate already; merging
    // guards against clusters that straddle the tolerance.
    let mut merged: Vec<JointPoint> = Vec::new();
    for p in points {
        match merged
            .iter_mut()
            .find(|q| q.values.iter().zip(&p.values).all(|(a, b)| (a - b).abs() <= tol))
        {
            Some(q) => {
                let mut cols = Vec::new();
                for c in 0..q.eigenspace.cols() {
                    cols.push(q.eigenspace.column(c));
                }
                for c in 0..p.eigenspace.cols() {
                    cols.push(p.eigenspace.column(c));
                }
                q.eigenspace = columns_to_matrix(dim, &cols);
            }
            None => merged.push(p),
        }
    }
    Ok(JointSpectrumSet { arity: ops.len(), points: merged, tol })
}

fn columns_to_matrix(dim: usize, cols: &[Vec<Complex64>]) -> CMatrix {
    let mut m = CMatrix::zeros(dim, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    m
}

fn refine(
    ops: &[CMatrix],
    basis: CMatrix,
    prefix: Vec<f64>,
    tol: f64,
    out: &mut Vec<JointPoint>,
) -> Result<()> {
    let Some((head, rest)) = ops.split_first() else {
        out.push(JointPoint { values: prefix, eigenspace: basis });
        return Ok(());
    };
    let restricted = basis.adjoint().mul(head)?.mul(&basis)?;
    let eig = eigh(&restricted)?;
    for (value, idx) in eig.clusters(tol) {
        let mut sub = CMatrix::zeros(eig.vectors.rows(), idx.len());
        for (c, &k) in idx.iter().enumerate() {
            for r in 0..eig.vectors.rows() {
                sub[(r, c)] = eig.vectors[(r, k)];
            }
        }
        let next = basis.mul(&sub)?;
        let mut p = prefix.clone();
        p.push(value);
        refine(rest, next, p, tol, out)?;
    }
    Ok(())
}

/// Both sides of the vanishing criterion for a commuting family.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VanishingReport {
    /// `‖f(A_1, …, A_n)‖_F ≤ tol`.
    pub lhs_zero: bool,
    /// `|f(p)| ≤ tol` for every joint-spectrum point `p`.
    pub rhs_zero: bool,
    pub operator_norm: f64,
    pub max_on_spectrum: f64,
    pub tol: f64,
}

impl VanishingReport {
    pub fn agree(&self) -> bool {
        self.lhs_zero == self.rhs_zero
    }
}

/// Evaluates `f` on the operators and on their joint spectrum. For commuting families
/// the two flags agree.
pub fn check_vanishing<S: Scalar>(f: &Polynomial, ops: &[Observable<S>], tol: f64) -> Result<VanishingReport> {
    if f.nvars != ops.len() {
        return Err(Error::DimensionMismatch { expected: f.nvars, found: ops.len() });
    }
    let js = joint_spectrum(ops, tol)?;
    let mats: Vec<CMatrix> = ops.iter().map(|o| o.matrix().to_c64()).collect();
    let operator_norm = f.eval_matrices(&mats)?.frobenius();
    let mut max_on_spectrum = 0.0f64;
    for p in &js.points {
        max_on_spectrum = max_on_spectrum.max(f.eval(&p.values)?.abs());
    }
    Ok(VanishingReport {
        lhs_zero: operator_norm <= tol,
        rhs_zero: max_on_spectrum <= tol,
        operator_norm,
        max_on_spectrum,
        tol,
    })
}
