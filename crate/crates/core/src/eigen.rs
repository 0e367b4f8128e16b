//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal unitary and
//! then applies the real symmetric Jacobi rotation, so the combined transform is unitary
//! and the iterates stay Hermitian.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::{CMatrix, Matrix};
use crate::Result;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in nondecreasing order and the matching orthonormal eigenvectors as the
/// columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// `‖A − U diag(λ) U*‖_F`.
    pub fn reconstruction_error(&self, a: &CMatrix) -> f64 {
        let n = self.values.len();
        let diag: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let d = Matrix::from_diagonal(&diag);
        let r = self.vectors.mul(&d).and_then(|m| m.mul(&self.vectors.adjoint()));
        match r.and_then(|r| r.sub(a)) {
            Ok(diff) if a.rows() == n => diff.frobenius(),
            _ => f64::INFINITY,
        }
    }

    /// `‖U*U − I‖_F`.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.values.len();
        self.vectors
            .adjoint()
            .mul(&self.vectors)
            .and_then(|m| m.sub(&CMatrix::identity(n)))
            .map(|m| m.frobenius())
            .unwrap_or(f64::INFINITY)
    }

    /// Eigenvalues grouped into clusters whose consecutive gaps are at most `tol`.
    /// Each cluster reports its mean value and the column indices it spans.
    pub fn clusters(&self, tol: f64) -> Vec<(f64, Vec<usize>)> {
        let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
        for (k, &v) in self.values.iter().enumerate() {
            match out.last_mut() {
                Some((_, idx)) if v - self.values[*idx.last().unwrap()] <= tol => idx.push(k),
                _ => out.push((v, alloc::vec![k])),
            }
        }
        for (mean, idx) in out.iter_mut() {
            *mean = idx.iter().map(|&k| self.values[k]).sum::<f64>() / idx.len() as f64;
        }
        out
    }
}

/// Diagonalizes a Hermitian matrix. The input is assumed Hermitian; only the upper
/// triangle's consistency with the lower is relied on through the rotations.
pub fn eigh(a: &CMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if libm::sqrt(off) <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_finite() {
        let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
        sgn / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    } else {
        0.0
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let ph = phase.conj();
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = ph * (-s);
    let uqq = ph * c;

    let n = m.rows();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * upp + mkq * uqp;
        m[(k, q)] = mkp * upq + mkq * uqq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = upp.conj() * mpk + uqp.conj() * mqk;
        m[(q, k)] = upq.conj() * mpk + uqq.conj() * mqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}
