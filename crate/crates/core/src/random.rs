//! Random test objects drawn from rotation-invariant distributions.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::{inner, vec_norm, CMatrix};

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// A unit vector distributed uniformly on the complex sphere.
pub fn haar_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
        let n = vec_norm(&v);
        if n > 1e-6 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// A Haar-random orthonormal basis, returned as a list of columns.
pub fn haar_basis<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
        for b in &basis {
            let c = inner(b, &v);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let n = vec_norm(&v);
        if n > 1e-6 {
            basis.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    basis
}

pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let basis = haar_basis(dim, rng);
    let mut u = CMatrix::zeros(dim, dim);
    for (j, col) in basis.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// `(G + G*) / 2` for a complex Gaussian matrix `G`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(StandardNormal.sample(rng), 0.0);
        for j in i + 1..dim {
            let z = gaussian_c64(rng) * core::f64::consts::FRAC_1_SQRT_2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// A point uniformly distributed on the unit 2-sphere.
pub fn unit_vector3<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [StandardNormal.sample(rng), StandardNormal.sample(rng), StandardNormal.sample(rng)];
        let n = libm::sqrt(v.iter().map(|x| x * x).sum());
        if n > 1e-6 {
            return v.map(|x| x / n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for dim in 1..6 {
            let u = haar_unitary(dim, &mut rng);
            let e = u.adjoint().mul(&u).unwrap().sub(&CMatrix::identity(dim)).unwrap();
            assert!(e.frobenius() < 1e-12);
        }
    }

    #[test]
    fn random_hermitian_is_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(random_hermitian(4, &mut rng).hermitian_deviation(), 0.0);
    }
}
