//! Observables, rays and density matrices.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::eigen::{eigh, HermitianEigen};
use crate::error::Error;
use crate::matrix::{inner, CMatrix, Matrix};
use crate::scalar::Scalar;
use crate::{Result, DEFAULT_TOL};

/// A Hermitian operator on a `dim`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> Observable<S> {
    /// Checks Hermiticity exactly for exact scalars and within `tol` otherwise.
    pub fn new(matrix: Matrix<S>, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        let dev = matrix.hermitian_deviation();
        if (S::EXACT && dev > 0.0) || dev > tol {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(Observable { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Observable { matrix: Matrix::identity(dim) }
    }

    pub fn diagonal(values: &[S]) -> Self {
        Observable { matrix: Matrix::from_diagonal(values) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn to_c64(&self) -> Observable<Complex64> {
        Observable { matrix: self.matrix.to_c64() }
    }

    pub fn embed(&self, dim: usize) -> Result<Self> {
        Ok(Observable { matrix: self.matrix.embed(dim)? })
    }

    /// `self ⊗ I_k`.
    pub fn tensor_identity(&self, k: usize) -> Self {
        Observable { matrix: self.matrix.kron(&Matrix::identity(k)) }
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        eigh(&self.matrix.to_c64())
    }
}

/// Whether `A` and `B` commute.
///
/// Exact scalars require `AB − BA` to vanish exactly. Floats accept
/// `‖AB − BA‖_F ≤ tol·(1 + ‖A‖_F‖B‖_F)`.
pub fn commutes<S: Scalar>(a: &Observable<S>, b: &Observable<S>, tol: f64) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let c = a.matrix.commutator(&b.matrix)?;
    if S::EXACT {
        Ok(c.is_zero(0.0))
    } else {
        Ok(c.frobenius() <= tol * (1.0 + a.matrix.frobenius() * b.matrix.frobenius()))
    }
}

/// Eigenvalues of `A` in nondecreasing order, repeated by multiplicity.
pub fn spectrum<S: Scalar>(a: &Observable<S>) -> Result<Vec<f64>> {
    Ok(a.eigen()?.values)
}

/// Distinct spectrum points: eigenvalues clustered with gap `tol`.
pub fn distinct_spectrum<S: Scalar>(a: &Observable<S>, tol: f64) -> Result<Vec<f64>> {
    Ok(a.eigen()?.clusters(tol).into_iter().map(|(v, _)| v).collect())
}

/// A one-dimensional subspace, stored as any nonzero spanning vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Ray<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Ray<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(|c| c.is_zero_tol(0.0)) {
            return Err(Error::ZeroRay);
        }
        Ok(Ray { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn inner(&self, other: &Self) -> S {
        inner(&self.coords, &other.coords)
    }

    pub fn norm_sqr(&self) -> S {
        self.inner(self)
    }

    /// Exact for exact scalars; otherwise `|⟨u,v⟩| ≤ tol·‖u‖‖v‖`.
    pub fn is_orthogonal(&self, other: &Self, tol: f64) -> bool {
        let ip = self.inner(other);
        if S::EXACT {
            ip.is_zero_tol(0.0)
        } else {
            let n = libm::sqrt(self.norm_sqr().to_c64().re * other.norm_sqr().to_c64().re);
            ip.to_c64().norm() <= tol * n
        }
    }

    /// Proportionality by a nonzero scalar, tested through equality in Cauchy–Schwarz:
    /// `|⟨u,v⟩|² = ⟨u,u⟩⟨v,v⟩`.
    pub fn is_equivalent(&self, other: &Self, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let ip = self.inner(other);
        let lhs = ip.norm_sqr();
        let rhs = self.norm_sqr().mul(&other.norm_sqr());
        if S::EXACT {
            lhs == rhs
        } else {
            (rhs.to_c64().re - lhs.to_c64().re) <= tol * rhs.to_c64().re
        }
    }

    /// `P = v v* / ⟨v,v⟩`.
    pub fn projection(&self) -> Matrix<S> {
        let inv = self.norm_sqr().inv().expect("ray is nonzero");
        Matrix::outer(&self.coords, &self.coords).scale(&inv)
    }

    pub fn projector(&self) -> Observable<S> {
        Observable { matrix: self.projection() }
    }

    pub fn embed(&self, dim: usize) -> Result<Self> {
        if dim < self.dim() {
            return Err(Error::EmbedShrinks { from: self.dim(), to: dim });
        }
        let mut coords = self.coords.clone();
        coords.resize(dim, S::zero());
        Ok(Ray { coords })
    }

    /// Applies a coordinate map: coordinate `i` of `self` lands at `positions[i]` in a
    /// vector of dimension `dim`.
    pub fn place(&self, positions: &[usize], dim: usize) -> Result<Self> {
        if positions.len() != self.dim() || positions.iter().any(|&p| p >= dim) {
            return Err(Error::InvalidArgument(format!("bad coordinate placement {positions:?} into dim {dim}")));
        }
        let mut coords = alloc::vec![S::zero(); dim];
        for (c, &p) in self.coords.iter().zip(positions) {
            coords[p] = c.clone();
        }
        Ray::new(coords)
    }

    pub fn to_c64(&self) -> Ray<Complex64> {
        Ray { coords: self.coords.iter().map(|c| c.to_c64()).collect() }
    }

    /// Unit vector in the same direction (floating point).
    pub fn unit_c64(&self) -> Vec<Complex64> {
        let v: Vec<Complex64> = self.coords.iter().map(|c| c.to_c64()).collect();
        let n = crate::matrix::vec_norm(&v);
        v.into_iter().map(|z| z / n).collect()
    }
}

impl Ray<Complex64> {
    pub fn transform(&self, u: &CMatrix) -> Result<Self> {
        Ray::new(u.mul_vec(&self.coords)?)
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut coords = alloc::vec![Complex64::new(0.0, 0.0); dim];
        coords[k] = Complex64::new(1.0, 0.0);
        Ray { coords }
    }
}

/// A positive semidefinite, unit-trace Hermitian matrix (floating point).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity(format!("{}x{} is not square", matrix.rows(), matrix.cols())));
        }
        let dev = matrix.hermitian_deviation();
        if dev > tol {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let eig = eigh(&matrix)?;
        if let Some(&min) = eig.values.first() {
            if min < -tol {
                return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(DensityMatrix { matrix })
    }

    /// `|ψ⟩⟨ψ|` for the normalized ray.
    pub fn pure<S: Scalar>(ray: &Ray<S>) -> Self {
        DensityMatrix { matrix: ray.to_c64().projection() }
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix { matrix: CMatrix::identity(dim).scale(&Complex64::new(1.0 / dim as f64, 0.0)) }
    }

    /// `Σ w_k ρ_k`; the weights must be a probability vector.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidDensity("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            m = m.add(&rho.matrix.scale(&Complex64::new(*w, 0.0)))?;
        }
        DensityMatrix::new(m, DEFAULT_TOL)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `Tr(ρ E)`, real part.
    pub fn expectation(&self, e: &CMatrix) -> Result<f64> {
        if e.rows() != self.dim() || e.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: e.rows() });
        }
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix[(i, j)] * e[(j, i)];
            }
        }
        Ok(acc.re)
    }

    /// `ρ ⊕ 0`.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        Ok(DensityMatrix { matrix: self.matrix.embed(dim)? })
    }

    pub fn distance(&self, other: &DensityMatrix) -> Result<f64> {
        Ok(self.matrix.sub(&other.matrix)?.frobenius())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;
    use crate::random::{haar_vector, random_hermitian};
    use crate::scalar::Exact;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn obs(m: CMatrix) -> Observable<Complex64> {
        Observable::new(m, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn commutes_examples() {
        let [x, _, z] = pauli().map(obs);
        assert!(commutes(&x, &x, DEFAULT_TOL).unwrap());
        assert!(!commutes(&x, &z, DEFAULT_TOL).unwrap());
        let a = Observable::diagonal(&[c(1.0), c(2.0), c(3.0)]);
        let b = Observable::diagonal(&[c(4.0), c(5.0), c(6.0)]);
        assert!(commutes(&a, &b, DEFAULT_TOL).unwrap());
        assert!(matches!(commutes(&a, &x, DEFAULT_TOL), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = CMatrix::from_row_major(2, 2, alloc::vec![c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!(matches!(Observable::new(m, DEFAULT_TOL), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn spectrum_examples() {
        let r = Ray::new(alloc::vec![c(1.0), c(1.0), c(0.0)]).unwrap();
        let s = spectrum(&r.projector()).unwrap();
        assert!(s[0].abs() < 1e-14 && s[1].abs() < 1e-14 && (s[2] - 1.0).abs() < 1e-14);
        let s = spectrum(&Observable::<Complex64>::identity(3)).unwrap();
        assert_eq!(s, alloc::vec![1.0, 1.0, 1.0]);
        let s = spectrum(&Observable::diagonal(&[c(3.0), c(1.0)])).unwrap();
        assert_eq!(s, alloc::vec![1.0, 3.0]);
    }

    #[test]
    fn exact_projection_is_idempotent() {
        let r = Ray::new(alloc::vec![Exact::one(), Exact::sqrt2(), Exact::zero()]).unwrap();
        let p = r.projection();
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(p.adjoint(), p);
        assert_eq!(p.trace(), Exact::one());
    }

    #[test]
    fn exact_orthogonality_has_no_tolerance() {
        let u = Ray::new(alloc::vec![Exact::one(), Exact::sqrt2(), Exact::zero()]).unwrap();
        let v = Ray::new(alloc::vec![Exact::sqrt2(), Exact::from_i64(-1), Exact::from_i64(5)]).unwrap();
        assert!(u.is_orthogonal(&v, 0.0));
        let w = Ray::new(alloc::vec![Exact::sqrt2(), Exact::from_i64(-1), Exact::one()]).unwrap();
        assert!(u.is_orthogonal(&w, 0.0));
        let x = Ray::new(alloc::vec![Exact::from_i64(1), Exact::from_i64(-1), Exact::one()]).unwrap();
        assert!(!u.is_orthogonal(&x, 1.0));
    }

    #[test]
    fn equivalence_up_to_phase() {
        let u = Ray::new(alloc::vec![c(1.0), Complex64::new(0.0, 2.0)]).unwrap();
        let v = Ray::new(alloc::vec![Complex64::new(0.0, 3.0), c(-6.0)]).unwrap();
        assert!(u.is_equivalent(&v, DEFAULT_TOL));
        let w = Ray::new(alloc::vec![c(1.0), c(2.0)]).unwrap();
        assert!(!u.is_equivalent(&w, DEFAULT_TOL));
        assert!(matches!(Ray::<Exact>::new(alloc::vec![Exact::zero()]), Err(Error::ZeroRay)));
    }

    #[test]
    fn embed_examples() {
        let r = Ray::new(alloc::vec![c(1.0), c(0.0)]).unwrap().embed(3).unwrap();
        assert_eq!(r.coords(), &[c(1.0), c(0.0), c(0.0)]);
        let i2 = Observable::<Exact>::identity(2).embed(3).unwrap();
        assert_eq!(i2, Observable::diagonal(&[Exact::one(), Exact::one(), Exact::zero()]));
        assert!(matches!(r.embed(2), Err(Error::EmbedShrinks { .. })));
    }

    #[test]
    fn embedding_preserves_born_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            // random mixed state: normalized (H^2)
            let h = random_hermitian(2, &mut rng);
            let h2 = h.mul(&h).unwrap();
            let tr = h2.trace().re;
            let rho = DensityMatrix::new(h2.scale(&c(1.0 / tr)), DEFAULT_TOL).unwrap();
            let e = Ray::new(haar_vector(2, &mut rng)).unwrap();
            let before = rho.expectation(&e.projection()).unwrap();
            let after = rho.embed(3).unwrap().expectation(&e.embed(3).unwrap().projection()).unwrap();
            assert!((before - after).abs() <= 1e-12);
        }
    }

    #[test]
    fn embedding_preserves_commutation() {
        let [x, y, z] = pauli().map(obs);
        for (a, b) in [(&x, &y), (&x, &x), (&z, &y)] {
            assert_eq!(
                commutes(a, b, DEFAULT_TOL).unwrap(),
                commutes(&a.embed(4).unwrap(), &b.embed(4).unwrap(), DEFAULT_TOL).unwrap()
            );
        }
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(CMatrix::identity(2), DEFAULT_TOL).is_err());
        let neg = CMatrix::from_diagonal(&[c(1.5), c(-0.5)]);
        assert!(DensityMatrix::new(neg, DEFAULT_TOL).is_err());
        let ok = DensityMatrix::maximally_mixed(3);
        assert!(DensityMatrix::new(ok.matrix().clone(), DEFAULT_TOL).is_ok());
    }
}
