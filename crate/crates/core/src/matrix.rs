//! Dense row-major matrices over a [`Scalar`] field.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type CMatrix = Matrix<Complex64>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_diagonal(diag: &[S]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// `v w*` for column vectors `v`, `w`.
    pub fn outer(v: &[S], w: &[S]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                m[(i, j)] = vi.mul(&wj.conj());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_c64(&self) -> CMatrix {
        self.map(|s| s.to_c64())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_tol(0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.mul(&other[(k, j)]);
                    m[(i, j)] = m[(i, j)].add(&t);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(S::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect())
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a.mul(&other[(k, l)]);
                    }
                }
            }
        }
        m
    }

    /// Pads a square matrix with zeros to `dim × dim`, keeping it in the top-left block.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        if dim < self.rows || dim < self.cols {
            return Err(Error::EmbedShrinks { from: self.rows.max(self.cols), to: dim });
        }
        let mut m = Self::zeros(dim, dim);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        Ok(m)
    }

    /// `true` when every entry is zero (exactly for exact scalars).
    pub fn is_zero(&self, tol: f64) -> bool {
        if S::EXACT {
            self.data.iter().all(|a| a.is_zero_tol(0.0))
        } else {
            self.frobenius() <= tol
        }
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|a| a.to_c64().norm_sqr()).sum::<f64>())
    }

    /// Largest entrywise deviation from Hermiticity, `0.0` when exactly Hermitian.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = self[(i, j)].sub(&self[(j, i)].conj());
                if S::EXACT {
                    if !d.is_zero_tol(0.0) {
                        worst = worst.max(d.to_c64().norm().max(f64::MIN_POSITIVE));
                    }
                } else {
                    worst = worst.max(d.to_c64().norm());
                }
            }
        }
        worst
    }
}

impl<S> core::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> core::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// `Σ conj(u_i) v_i`.
pub fn inner<S: Scalar>(u: &[S], v: &[S]) -> S {
    u.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc.add(&a.conj().mul(b)))
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// The Pauli matrices `σ_x`, `σ_y`, `σ_z`.
pub fn pauli() -> [CMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix { rows: 2, cols: 2, data: vec![z, one, one, z] },
        Matrix { rows: 2, cols: 2, data: vec![z, -i, i, z] },
        Matrix { rows: 2, cols: 2, data: vec![one, z, z, -one] },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn pauli_commutator() {
        let [x, y, z] = pauli();
        let c = x.commutator(&z).unwrap();
        let expected = y.scale(&Complex64::new(0.0, -2.0));
        assert!(c.sub(&expected).unwrap().frobenius() < 1e-15);
    }

    #[test]
    fn kron_with_identity_keeps_trace_scaled() {
        let p = Matrix::<Exact>::outer(&[Exact::one(), Exact::zero()], &[Exact::one(), Exact::zero()]);
        let k = p.kron(&Matrix::identity(3));
        assert_eq!(k.rows(), 6);
        assert_eq!(k.trace(), Exact::from_i64(3));
        assert_eq!(k.mul(&k).unwrap(), k);
    }

    #[test]
    fn embed_pads_with_zeros() {
        let i2 = Matrix::<Exact>::identity(2);
        let e = i2.embed(3).unwrap();
        assert_eq!(
            e,
            Matrix::from_diagonal(&[Exact::one(), Exact::one(), Exact::zero()])
        );
        assert!(i2.embed(1).is_err());
    }

    #[test]
    fn hermitian_deviation_exact() {
        let mut m = Matrix::<Exact>::identity(2);
        assert_eq!(m.hermitian_deviation(), 0.0);
        m[(0, 1)] = Exact::sqrt2();
        assert!(m.hermitian_deviation() > 0.0);
    }
}
