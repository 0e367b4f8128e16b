//! Moving results between dimensions.
//!
//! Downward: a candidate expectation representation on `C^{d'}` restricts to `C^d` by
//! reading its tables at embedded objects (`ρ ↦ ρ ⊕ 0`, `|v⟩ ↦ |v, 0⟩`). The trace
//! `Tr(ρE)` is unchanged by the embedding, so every table identity carries over.
//!
//! Upward: an uncolorable ray set in dimension `d` yields one in `d' > d`. Copies of the
//! set are placed on coordinate windows (blocks of `d` coordinates covering all of
//! `0..d'`), and the standard basis of `C^{d'}` is added. In a valuation exactly one
//! `e_k` is 1; a window containing `k` then has every complementary `e_j` at 0, and each
//! basis of its copy, completed by those `e_j`, forces a valuation of the copy — which
//! cannot exist. The construction is always verified by the solver before it is returned;
//! if verification ever fails, cyclically shifted windows are appended and the set is
//! re-verified.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::expectation::{CandidateRepresentation, EffectEntry, StateEntry};
use crate::operator::{DensityMatrix, Observable, Ray};
use crate::scalar::Scalar;
use crate::valuation::{build_contexts, find_valuation_general, find_valuation_with_budget, GeneralOptions, RaySet, SearchCertificate, SearchOutcome};
use crate::{Result, DEFAULT_TOL};

/// Default node budget for verifying lifted sets.
pub const DEFAULT_LIFT_BUDGET: u64 = 100_000_000;

/// Restricts `c` (dimension `d'`) to dimension `d` on the given states and effects. Each
/// requested object must appear, embedded, in `c`'s tables; its row is copied unchanged.
pub fn restrict_expectation_rep(
    c: &CandidateRepresentation,
    d: usize,
    states: &[DensityMatrix],
    effects: &[Ray<Complex64>],
    tol: f64,
) -> Result<CandidateRepresentation> {
    if d > c.dim() {
        return Err(Error::EmbedShrinks { from: c.dim(), to: d });
    }
    let mut out_states = Vec::with_capacity(states.len());
    for (i, rho) in states.iter().enumerate() {
        if rho.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: rho.dim() });
        }
        let big = rho.embed(c.dim())?;
        let entry = c
            .states()
            .iter()
            .find(|s| s.rho.distance(&big).is_ok_and(|x| x <= tol))
            .ok_or_else(|| Error::MissingObject(format!("state {i} (embedded) is not in the candidate's table")))?;
        out_states.push(StateEntry { rho: rho.clone(), mu: entry.mu.clone() });
    }
    let mut out_effects = Vec::with_capacity(effects.len());
    for (j, ray) in effects.iter().enumerate() {
        if ray.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: ray.dim() });
        }
        let big = ray.embed(c.dim())?;
        let entry = c
            .effects()
            .iter()
            .find(|e| e.ray.is_equivalent(&big, tol))
            .ok_or_else(|| Error::MissingObject(format!("effect {j} (embedded) is not in the candidate's table")))?;
        out_effects.push(EffectEntry { ray: ray.clone(), f: entry.f.clone() });
    }
    CandidateRepresentation::new(d, c.lambda().to_vec(), out_states, out_effects)
}

/// How a lifted set was built: copy `k` of the input places coordinate `i` at
/// `windows[k][i]`; the standard basis is always included.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LiftRecipe {
    pub from_dim: usize,
    pub to_dim: usize,
    pub windows: Vec<Vec<usize>>,
    pub standard_basis: bool,
}

#[derive(Clone, Debug)]
pub struct Lifted<S> {
    pub rays: RaySet<S>,
    pub recipe: LiftRecipe,
    /// Solver certificate that the input admits no valuation.
    pub precondition: SearchCertificate,
    /// Solver certificate that the output admits no valuation.
    pub certificate: SearchCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftOptions {
    pub budget: Option<u64>,
    /// Additional shifted windows tried when verification finds a valuation.
    pub max_extra_windows: usize,
    pub tol: f64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { budget: Some(DEFAULT_LIFT_BUDGET), max_extra_windows: 8, tol: DEFAULT_TOL }
    }
}

/// Blocks of `d` consecutive coordinates at offsets `0, d, 2d, …`, plus a final block
/// ending at `to − 1` when `d ∤ to`.
fn covering_windows(d: usize, to: usize) -> Vec<Vec<usize>> {
    let mut offsets: Vec<usize> = (0..).map(|k| k * d).take_while(|&o| o + d <= to).collect();
    if !to.is_multiple_of(d) {
        offsets.push(to - d);
    }
    offsets.into_iter().map(|o| (o..o + d).collect()).collect()
}

fn standard_ray<S: Scalar>(dim: usize, k: usize) -> Ray<S> {
    let mut c = vec![S::zero(); dim];
    c[k] = S::one();
    Ray::new(c).expect("unit vector")
}

fn certify<S: Scalar>(rs: &RaySet<S>, opts: &LiftOptions) -> Result<SearchCertificate> {
    let cert = find_valuation_with_budget(&build_contexts(rs, opts.tol), opts.budget);
    if let SearchOutcome::Budget { budget } = cert.outcome {
        return Err(Error::Budget { budget });
    }
    Ok(cert)
}

fn assemble<S: Scalar>(rs: &RaySet<S>, to: usize, windows: &[Vec<usize>], tol: f64) -> Result<RaySet<S>> {
    let mut rays = Vec::new();
    for w in windows {
        for r in rs.rays() {
            rays.push(r.place(w, to)?);
        }
    }
    rays.extend((0..to).map(|k| standard_ray::<S>(to, k)));
    let name = format!("{} lifted to dimension {to}", rs.name);
    RaySet::dedup(to, rays, name, rs.provenance.clone(), tol)
}

/// Lifts an uncolorable ray set to dimension `to`. Fails rather than return a set the
/// solver has not certified.
pub fn lift_rayset<S: Scalar>(rs: &RaySet<S>, to: usize, opts: LiftOptions) -> Result<Lifted<S>> {
    let d = rs.dim();
    if d == 0 || to <= d {
        return Err(Error::Precondition(format!("target dimension {to} must exceed {d}")));
    }
    let precondition = certify(rs, &opts)?;
    if !precondition.outcome.is_exhausted() {
        return Err(Error::Precondition("input ray set admits a valuation".into()));
    }
    let mut windows = covering_windows(d, to);
    let mut extra = 0;
    loop {
        let lifted = assemble(rs, to, &windows, opts.tol)?;
        let certificate = certify(&lifted, &opts)?;
        match &certificate.outcome {
            SearchOutcome::Exhausted => {
                let recipe = LiftRecipe { from_dim: d, to_dim: to, windows, standard_basis: true };
                return Ok(Lifted { rays: lifted, recipe, precondition, certificate });
            }
            SearchOutcome::Found { valuation } if extra >= opts.max_extra_windows => {
                return Err(Error::VerificationFailed { counterexample: valuation.values.clone() });
            }
            _ => {
                extra += 1;
                windows.push((0..d).map(|i| (i + extra) % to).collect());
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct TensorLift<S> {
    /// `P ⊗ I_k` for each ray's projection `P`, in input order.
    pub observables: Vec<Observable<S>>,
    pub precondition: SearchCertificate,
    pub certificate: SearchCertificate,
}

/// `{P ⊗ I_k}` over the rank-1 projections of an uncolorable set, verified to admit no
/// valuation with the general solver.
pub fn tensor_modulo_identity<S: Scalar>(rs: &RaySet<S>, k: usize, opts: GeneralOptions) -> Result<TensorLift<S>> {
    if k == 0 {
        return Err(Error::InvalidArgument("identity factor must have dimension at least 1".into()));
    }
    let lift_opts = LiftOptions { budget: opts.budget, tol: opts.tol, ..LiftOptions::default() };
    let precondition = certify(rs, &lift_opts)?;
    if !precondition.outcome.is_exhausted() {
        return Err(Error::Precondition("input ray set admits a valuation".into()));
    }
    let observables: Vec<Observable<S>> = rs.rays().iter().map(|r| r.projector().tensor_identity(k)).collect();
    let certificate = find_valuation_general(&observables, opts)?;
    match &certificate.outcome {
        SearchOutcome::Exhausted => Ok(TensorLift { observables, precondition, certificate }),
        SearchOutcome::Found { valuation } => Err(Error::VerificationFailed { counterexample: valuation.values.clone() }),
        SearchOutcome::Budget { budget } => Err(Error::Budget { budget: *budget }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expectation::{check_eq1, trivial_pure_theory};
    use crate::scalar::Exact;

    fn e3(k: usize) -> Ray<Exact> {
        standard_ray(3, k)
    }

    #[test]
    fn windows_cover_every_coordinate() {
        assert_eq!(covering_windows(3, 4), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(covering_windows(3, 6), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(covering_windows(3, 5), vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn lifting_colorable_set_is_rejected() {
        let rs = RaySet::new(3, vec![e3(0), e3(1), e3(2)], "std", "", 0.0).unwrap();
        assert!(matches!(lift_rayset(&rs, 4, LiftOptions::default()), Err(Error::Precondition(_))));
        assert!(matches!(tensor_modulo_identity(&rs, 2, GeneralOptions::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn restriction_copies_rows() {
        let s = |v: [f64; 3]| Ray::new(v.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap();
        let parent = trivial_pure_theory(3, &[s([1.0, 0.0, 0.0]), s([0.0, 1.0, 0.0]), s([1.0, 1.0, 0.0]), s([0.0, 0.0, 1.0])]).unwrap();
        let t = |v: [f64; 2]| Ray::new(v.iter().map(|&x| Complex64::new(x, 0.0)).collect()).unwrap();
        let small = [t([1.0, 0.0]), t([0.0, 1.0]), t([1.0, 1.0])];
        let states: Vec<DensityMatrix> = small.iter().map(DensityMatrix::pure).collect();
        let r = restrict_expectation_rep(&parent, 2, &states, &small, DEFAULT_TOL).unwrap();
        assert!(check_eq1(&r, DEFAULT_TOL).is_empty());
        assert_eq!(r.states()[2].mu, parent.states()[2].mu);
        let missing = [t([1.0, -1.0])];
        assert!(matches!(restrict_expectation_rep(&parent, 2, &states, &missing, DEFAULT_TOL), Err(Error::MissingObject(_))));
        assert!(matches!(restrict_expectation_rep(&parent, 4, &[], &[], DEFAULT_TOL), Err(Error::EmbedShrinks { .. })));
    }

    #[test]
    fn tensor_k1_keeps_projections() {
        let p = e3(1).projector();
        assert_eq!(p.tensor_identity(1), p);
        let big = p.tensor_identity(2);
        assert_eq!(big.matrix().mul(big.matrix()).unwrap(), *big.matrix());
        assert_eq!(big.matrix().trace(), Exact::from_i64(2));
    }
}
