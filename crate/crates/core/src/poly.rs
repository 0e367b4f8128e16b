//! Real polynomials in several commuting variables.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::CMatrix;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Monomial {
    pub coeff: f64,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Polynomial {
    pub nvars: usize,
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(nvars: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(coeff, exponents)| {
                if exponents.len() != nvars {
                    Err(Error::DimensionMismatch { expected: nvars, found: exponents.len() })
                } else {
                    Ok(Monomial { coeff, exponents })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { nvars, terms })
    }

    /// `Σ c_k x^k` from coefficients in increasing degree.
    pub fn univariate(coeffs: &[f64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, &coeff)| Monomial { coeff, exponents: vec![k as u32] })
            .collect();
        Polynomial { nvars: 1, terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exponents.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|t| t.coeff * t.exponents.iter().zip(point).map(|(&e, &x)| libm::pow(x, e as f64)).product::<f64>())
            .sum())
    }

    /// `f(A_1, …, A_n)`; meaningful only for commuting arguments, where the product
    /// order does not matter.
    pub fn eval_matrices(&self, ops: &[CMatrix]) -> Result<CMatrix> {
        if ops.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: ops.len() });
        }
        let dim = ops.first().map(|m| m.rows()).unwrap_or(0);
        let mut acc = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            let mut m = CMatrix::identity(dim);
            for (op, &e) in ops.iter().zip(&t.exponents) {
                for _ in 0..e {
                    m = m.mul(op)?;
                }
            }
            acc = acc.add(&m.scale(&Complex64::new(t.coeff, 0.0)))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;

    #[test]
    fn univariate_eval() {
        let f = Polynomial::univariate(&[0.0, -1.0, 1.0]);
        assert_eq!(f.eval(&[3.0]).unwrap(), 6.0);
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn matrix_eval_on_pauli() {
        let [x, _, _] = pauli();
        let f = Polynomial::univariate(&[-1.0, 0.0, 1.0]);
        assert!(f.eval_matrices(&[x]).unwrap().frobenius() < 1e-15);
    }

    #[test]
    fn arity_checked() {
        assert!(Polynomial::new(2, vec![(1.0, vec![1])]).is_err());
        let f = Polynomial::new(2, vec![(1.0, vec![1, 1])]).unwrap();
        assert!(f.eval(&[1.0]).is_err());
    }
}
