use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::Graph;
use crate::operator::Ray;
use crate::scalar::Scalar;
use crate::Result;

/// A finite list of pairwise inequivalent rays of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct RaySet<S> {
    dim: usize,
    rays: Vec<Ray<S>>,
    pub name: String,
    pub provenance: String,
}

impl<S: Scalar> RaySet<S> {
    pub fn new(dim: usize, rays: Vec<Ray<S>>, name: impl Into<String>, provenance: impl Into<String>, tol: f64) -> Result<Self> {
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i].is_equivalent(&rays[j], tol) {
                    return Err(Error::DuplicateRay(i, j));
                }
            }
        }
        Ok(RaySet { dim, rays, name: name.into(), provenance: provenance.into() })
    }

    /// Builds a set from rays that may repeat, keeping the first representative of each
    /// equivalence class.
    pub fn dedup(dim: usize, rays: Vec<Ray<S>>, name: impl Into<String>, provenance: impl Into<String>, tol: f64) -> Result<Self> {
        let mut kept: Vec<Ray<S>> = Vec::new();
        for r in rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
            }
            if !kept.iter().any(|k| k.is_equivalent(&r, tol)) {
                kept.push(r);
            }
        }
        Ok(RaySet { dim, rays: kept, name: name.into(), provenance: provenance.into() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray<S>] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        RaySet {
            dim: self.dim,
            rays: indices.iter().map(|&i| self.rays[i].clone()).collect(),
            name: self.name.clone(),
            provenance: self.provenance.clone(),
        }
    }

    /// `true` if some ray of `self` is equivalent to `ray`.
    pub fn contains(&self, ray: &Ray<S>, tol: f64) -> bool {
        self.rays.iter().any(|r| r.is_equivalent(ray, tol))
    }
}

/// Orthogonality structure of a ray set: orthogonal pairs and complete bases.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ContextSystem {
    pub dim: usize,
    pub num_rays: usize,
    /// Orthogonal pairs `(i, j)` with `i < j`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Sorted index sets of `dim` mutually orthogonal rays, sorted.
    pub bases: Vec<Vec<usize>>,
}

impl ContextSystem {
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.num_rays);
        for &(i, j) in &self.pairs {
            g.add_edge(i, j);
        }
        g
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut n = alloc::vec![Vec::new(); self.num_rays];
        for &(i, j) in &self.pairs {
            n[i].push(j);
            n[j].push(i);
        }
        n
    }

    pub fn bases_of(&self) -> Vec<Vec<usize>> {
        let mut b = alloc::vec![Vec::new(); self.num_rays];
        for (k, basis) in self.bases.iter().enumerate() {
            for &i in basis {
                b[i].push(k);
            }
        }
        b
    }
}

/// Orthogonal pairs and maximal orthogonal cliques of size `dim` (complete bases).
/// Orthogonality is exact for exact scalars and uses `|⟨u,v⟩| ≤ tol‖u‖‖v‖` for floats.
pub fn build_contexts<S: Scalar>(rs: &RaySet<S>, tol: f64) -> ContextSystem {
    let rays = rs.rays();
    let g = Graph::from_predicate(rays.len(), |i, j| rays[i].is_orthogonal(&rays[j], tol));
    let bases = g.maximal_cliques().into_iter().filter(|c| c.len() == rs.dim()).collect();
    ContextSystem { dim: rs.dim(), num_rays: rays.len(), pairs: g.edges(), bases }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use crate::DEFAULT_TOL;
    use alloc::vec;

    fn e(dim: usize, k: usize) -> Ray<Exact> {
        let mut c = vec![Exact::zero(); dim];
        c[k] = Exact::one();
        Ray::new(c).unwrap()
    }

    #[test]
    fn standard_basis_contexts() {
        let rs = RaySet::new(3, vec![e(3, 0), e(3, 1), e(3, 2)], "std", "", 0.0).unwrap();
        let ctx = build_contexts(&rs, DEFAULT_TOL);
        assert_eq!(ctx.pairs.len(), 3);
        assert_eq!(ctx.bases, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn incomplete_context() {
        let rs = RaySet::new(3, vec![e(3, 0), e(3, 1)], "two", "", 0.0).unwrap();
        let ctx = build_contexts(&rs, DEFAULT_TOL);
        assert_eq!(ctx.pairs, vec![(0, 1)]);
        assert!(ctx.bases.is_empty());
    }

    #[test]
    fn duplicates_rejected() {
        let twice = Ray::new(vec![Exact::from_i64(2), Exact::zero(), Exact::zero()]).unwrap();
        assert_eq!(
            RaySet::new(3, vec![e(3, 0), e(3, 1), twice.clone()], "dup", "", 0.0).unwrap_err(),
            Error::DuplicateRay(0, 2)
        );
        let rs = RaySet::dedup(3, vec![e(3, 0), twice], "d", "", 0.0).unwrap();
        assert_eq!(rs.len(), 1);
        assert!(RaySet::new(2, vec![e(3, 0)], "bad", "", 0.0).is_err());
    }
}
