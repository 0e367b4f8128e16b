//! Finite candidate expectation representations and a falsifier for them.
//!
//! A candidate lists a finite hidden-variable space `Λ`, a probability row `μ(ρ)` over
//! `Λ` for each listed density matrix, and a response row `F(E)` with entries in `[0, 1]`
//! for each listed rank-1 projection `E`. Integrals over `Λ` are weighted sums. A
//! candidate is an expectation representation on its tables when
//!
//! * `Tr(ρE) = Σ_λ F(E)(λ) μ(ρ)(λ)` for every listed pair,
//! * `μ` is convex-linear on every mixture identity among listed states, and in
//!   particular any two decompositions of one state give the same row.
//!
//! The checks report [`Violation`]s that carry enough to be re-evaluated later. Since a
//! finite table can be consistent on its own, [`falsify`] also probes: it asks an
//! [`ExtensionHook`] to extend the tables to random pure states, random projections and
//! random decompositions of `I/d`, and re-checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bell::{assign_value_decomposed, decompose, BlochState, HiddenVariable};
use crate::eigen::eigh;
use crate::error::Error;
use crate::matrix::CMatrix;
use crate::operator::{DensityMatrix, Ray};
use crate::random::{haar_basis, haar_vector};
use crate::{Result, DEFAULT_TOL};

/// Tolerance on matrix identities (mixtures, purity) inside the checks.
pub const MATRIX_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct StateEntry {
    pub rho: DensityMatrix,
    pub mu: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EffectEntry {
    pub ray: Ray<Complex64>,
    pub f: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateRepresentation {
    dim: usize,
    lambda: Vec<String>,
    states: Vec<StateEntry>,
    effects: Vec<EffectEntry>,
}

fn check_mu(mu: &[f64], n: usize, what: &str) -> Result<()> {
    if mu.len() != n {
        return Err(Error::InvalidCandidate(format!("{what}: row has {} entries, Λ has {n}", mu.len())));
    }
    if let Some(x) = mu.iter().find(|x| x.is_nan() || **x < 0.0) {
        return Err(Error::InvalidCandidate(format!("{what}: negative or NaN weight {x}")));
    }
    let s: f64 = mu.iter().sum();
    if (s - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidCandidate(format!("{what}: weights sum to {s}")));
    }
    Ok(())
}

fn check_f(f: &[f64], n: usize, what: &str) -> Result<()> {
    if f.len() != n {
        return Err(Error::InvalidCandidate(format!("{what}: row has {} entries, Λ has {n}", f.len())));
    }
    if let Some(x) = f.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::InvalidCandidate(format!("{what}: response {x} outside [0, 1]")));
    }
    Ok(())
}

impl CandidateRepresentation {
    pub fn new(dim: usize, lambda: Vec<String>, states: Vec<StateEntry>, effects: Vec<EffectEntry>) -> Result<Self> {
        let mut c = CandidateRepresentation { dim, lambda, states: Vec::new(), effects: Vec::new() };
        for s in states {
            c.push_state(s.rho, s.mu)?;
        }
        for e in effects {
            c.push_effect(e.ray, e.f)?;
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> &[String] {
        &self.lambda
    }

    pub fn states(&self) -> &[StateEntry] {
        &self.states
    }

    pub fn effects(&self) -> &[EffectEntry] {
        &self.effects
    }

    pub fn push_state(&mut self, rho: DensityMatrix, mu: Vec<f64>) -> Result<usize> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rho.dim() });
        }
        check_mu(&mu, self.lambda.len(), &format!("state {}", self.states.len()))?;
        self.states.push(StateEntry { rho, mu });
        Ok(self.states.len() - 1)
    }

    pub fn push_effect(&mut self, ray: Ray<Complex64>, f: Vec<f64>) -> Result<usize> {
        if ray.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: ray.dim() });
        }
        check_f(&f, self.lambda.len(), &format!("effect {}", self.effects.len()))?;
        self.effects.push(EffectEntry { ray, f });
        Ok(self.effects.len() - 1)
    }

    /// Adds a point to `Λ`. Existing states give it weight 0; `responses` supplies its
    /// `F` value for each existing effect.
    pub fn push_lambda(&mut self, label: String, responses: &[f64]) -> Result<usize> {
        if responses.len() != self.effects.len() {
            return Err(Error::InvalidCandidate(format!("{} responses for {} effects", responses.len(), self.effects.len())));
        }
        if let Some(x) = responses.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidCandidate(format!("response {x} outside [0, 1]")));
        }
        for s in &mut self.states {
            s.mu.push(0.0);
        }
        for (e, &r) in self.effects.iter_mut().zip(responses) {
            e.f.push(r);
        }
        self.lambda.push(label);
        Ok(self.lambda.len() - 1)
    }

    /// Reorders `Λ`: new point `k` is old point `perm[k]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.lambda.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || core::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of {n} points")));
        }
        let pick = |row: &[f64]| perm.iter().map(|&p| row[p]).collect::<Vec<f64>>();
        Ok(CandidateRepresentation {
            dim: self.dim,
            lambda: perm.iter().map(|&p| self.lambda[p].clone()).collect(),
            states: self.states.iter().map(|s| StateEntry { rho: s.rho.clone(), mu: pick(&s.mu) }).collect(),
            effects: self.effects.iter().map(|e| EffectEntry { ray: e.ray.clone(), f: pick(&e.f) }).collect(),
        })
    }

    /// `Σ_λ F(E_j)(λ) μ(ρ_i)(λ)`.
    pub fn integral(&self, state: usize, effect: usize) -> f64 {
        self.states[state].mu.iter().zip(&self.effects[effect].f).map(|(m, f)| m * f).sum()
    }

    /// `Tr(ρ_i E_j)`.
    pub fn born(&self, state: usize, effect: usize) -> f64 {
        let e = self.effects[effect].ray.projection();
        self.states[state].rho.expectation(&e).expect("dimensions validated on insertion")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ViolationKind {
    Eq1,
    Convexity,
    MixtureConsistency,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "type", rename_all = "snake_case"))]
pub enum ViolationObjects {
    /// Indices into the candidate's state and effect tables.
    Eq1 { state: usize, effect: usize },
    /// `ρ_k = p ρ_i + (1 − p) ρ_j`.
    Convexity { p: f64, i: usize, j: usize, k: usize },
    /// Two weighted lists of state indices describing the same density matrix.
    Mixture { left: Vec<(f64, usize)>, right: Vec<(f64, usize)> },
    /// Self-contained: an effect and two pure states (unit vectors) whose Born values
    /// would have to equal one common `Λ`-sum under a state-independent measure.
    SharedMeasure { effect: Vec<Complex64>, states: [Vec<Complex64>; 2] },
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum ViolationValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub kind: ViolationKind,
    pub objects: ViolationObjects,
    pub lhs: ViolationValue,
    pub rhs: ViolationValue,
    pub gap: f64,
    pub tol: f64,
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn combine_rows(c: &CandidateRepresentation, parts: &[(f64, usize)]) -> Vec<f64> {
    let mut row = vec![0.0; c.lambda.len()];
    for &(w, i) in parts {
        for (r, m) in row.iter_mut().zip(&c.states[i].mu) {
            *r += w * m;
        }
    }
    row
}

fn combine_matrices(c: &CandidateRepresentation, parts: &[(f64, usize)]) -> CMatrix {
    let mut m = CMatrix::zeros(c.dim, c.dim);
    for &(w, i) in parts {
        m = m.add(&c.states[i].rho.matrix().scale(&Complex64::new(w, 0.0))).expect("same dimension");
    }
    m
}

fn pure_born(effect: &[Complex64], state: &[Complex64]) -> f64 {
    crate::matrix::inner(effect, state).norm_sqr()
}

impl Violation {
    /// Recomputes the gap from the recorded objects. Index-based objects need the
    /// candidate the violation was found on.
    pub fn recheck(&self, c: Option<&CandidateRepresentation>) -> Result<f64> {
        let need = || c.ok_or_else(|| Error::MissingObject("candidate required to re-check this violation".into()));
        let bounds = |c: &CandidateRepresentation, states: &[usize], effects: &[usize]| -> Result<()> {
            if let Some(i) = states.iter().find(|&&i| i >= c.states.len()) {
                return Err(Error::MissingObject(format!("state {i}")));
            }
            if let Some(j) = effects.iter().find(|&&j| j >= c.effects.len()) {
                return Err(Error::MissingObject(format!("effect {j}")));
            }
            Ok(())
        };
        match &self.objects {
            ViolationObjects::Eq1 { state, effect } => {
                let c = need()?;
                bounds(c, &[*state], &[*effect])?;
                Ok((c.born(*state, *effect) - c.integral(*state, *effect)).abs())
            }
            ViolationObjects::Convexity { p, i, j, k } => {
                let c = need()?;
                bounds(c, &[*i, *j, *k], &[])?;
                Ok(sup_diff(&c.states[*k].mu, &combine_rows(c, &[(*p, *i), (1.0 - p, *j)])))
            }
            ViolationObjects::Mixture { left, right } => {
                let c = need()?;
                let idx: Vec<usize> = left.iter().chain(right).map(|&(_, i)| i).collect();
                bounds(c, &idx, &[])?;
                let residual = combine_matrices(c, left).sub(&combine_matrices(c, right))?.frobenius();
                if residual > MATRIX_TOL {
                    return Err(Error::IllPosedMixture { index: 0, residual });
                }
                Ok(sup_diff(&combine_rows(c, left), &combine_rows(c, right)))
            }
            ViolationObjects::SharedMeasure { effect, states } => {
                Ok((pure_born(effect, &states[0]) - pure_born(effect, &states[1])).abs())
            }
        }
    }
}

/// `Tr(ρE)` against the `Λ`-sum for every listed (state, effect) pair.
pub fn check_eq1(c: &CandidateRepresentation, tol: f64) -> Vec<Violation> {
    check_eq1_from(c, 0, 0, tol)
}

/// Only pairs involving a state at index `≥ state_from` or an effect at `≥ effect_from`.
fn check_eq1_from(c: &CandidateRepresentation, state_from: usize, effect_from: usize, tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..c.states.len() {
        for j in 0..c.effects.len() {
            if i < state_from && j < effect_from {
                continue;
            }
            let lhs = c.born(i, j);
            let rhs = c.integral(i, j);
            let gap = (lhs - rhs).abs();
            if gap > tol {
                out.push(Violation {
                    kind: ViolationKind::Eq1,
                    objects: ViolationObjects::Eq1 { state: i, effect: j },
                    lhs: ViolationValue::Scalar(lhs),
                    rhs: ViolationValue::Scalar(rhs),
                    gap,
                    tol,
                });
            }
        }
    }
    out
}

/// Convex-linearity of `μ` on claimed mixture identities `ρ_k = p ρ_i + (1 − p) ρ_j`.
/// A triple whose identity fails on the matrices is rejected as ill-posed.
pub fn check_convex(c: &CandidateRepresentation, triples: &[(f64, usize, usize, usize)], tol: f64) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (index, &(p, i, j, k)) in triples.iter().enumerate() {
        if [i, j, k].iter().any(|&x| x >= c.states.len()) {
            return Err(Error::MissingObject(format!("triple {index} refers to a state outside the table")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::IllPosedMixture { index, residual: f64::NAN });
        }
        let parts = [(p, i), (1.0 - p, j)];
        let residual = c.states[k].rho.matrix().sub(&combine_matrices(c, &parts))?.frobenius();
        if residual > MATRIX_TOL {
            return Err(Error::IllPosedMixture { index, residual });
        }
        let rhs = combine_rows(c, &parts);
        let gap = sup_diff(&c.states[k].mu, &rhs);
        if gap > tol {
            out.push(Violation {
                kind: ViolationKind::Convexity,
                objects: ViolationObjects::Convexity { p, i, j, k },
                lhs: ViolationValue::Vector(c.states[k].mu.clone()),
                rhs: ViolationValue::Vector(rhs),
                gap,
                tol,
            });
        }
    }
    Ok(out)
}

/// Real inner product `Re Tr(X* Y)` on Hermitian matrices.
fn hs(x: &CMatrix, y: &CMatrix) -> f64 {
    x.as_slice().iter().zip(y.as_slice()).map(|(a, b)| (a.conj() * b).re).sum()
}

/// Solves `ρ_a + p(ρ_b − ρ_a) = ρ_c + q(ρ_d − ρ_c)` for `p, q ∈ [0, 1]`. Parallel
/// segments are skipped.
fn segment_intersection(c: &CandidateRepresentation, (a, b): (usize, usize), (cc, d): (usize, usize)) -> Option<(f64, f64)> {
    let m = |i: usize| c.states[i].rho.matrix();
    let u = m(b).sub(m(a)).ok()?;
    let v = m(d).sub(m(cc)).ok()?;
    let r = m(cc).sub(m(a)).ok()?;
    // Normal equations for p u − q v = r.
    let (uu, uv, vv) = (hs(&u, &u), hs(&u, &v), hs(&v, &v));
    let (ur, vr) = (hs(&u, &r), hs(&v, &r));
    let det = uu * vv - uv * uv;
    if det.abs() <= 1e-12 * (uu * vv).max(1e-300) {
        return None;
    }
    let p = (ur * vv - uv * vr) / det;
    let q = (ur * uv - uu * vr) / det;
    let inside = |t: f64| (-1e-12..=1.0 + 1e-12).contains(&t);
    if !inside(p) || !inside(q) {
        return None;
    }
    let (p, q) = (p.clamp(0.0, 1.0), q.clamp(0.0, 1.0));
    let lhs = m(a).add(&u.scale(&Complex64::new(p, 0.0))).ok()?;
    let rhs = m(cc).add(&v.scale(&Complex64::new(q, 0.0))).ok()?;
    (lhs.sub(&rhs).ok()?.frobenius() <= MATRIX_TOL).then_some((p, q))
}

/// Drops zero weights and merges repeated indices, so identical decompositions compare
/// equal.
fn normalize(parts: &[(f64, usize)]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &(w, i) in parts {
        if w <= 1e-12 {
            continue;
        }
        match out.iter_mut().find(|(_, j)| *j == i) {
            Some(e) => e.0 += w,
            None => out.push((w, i)),
        }
    }
    out.sort_by_key(|&(_, i)| i);
    out
}

fn same_decomposition(l: &[(f64, usize)], r: &[(f64, usize)]) -> bool {
    l.len() == r.len() && l.iter().zip(r).all(|(x, y)| x.1 == y.1 && (x.0 - y.0).abs() <= 1e-12)
}

fn mixture_violation(c: &CandidateRepresentation, left: Vec<(f64, usize)>, right: Vec<(f64, usize)>, tol: f64) -> Option<Violation> {
    let (left, right) = (normalize(&left), normalize(&right));
    if same_decomposition(&left, &right) {
        return None;
    }
    let lhs = combine_rows(c, &left);
    let rhs = combine_rows(c, &right);
    let gap = sup_diff(&lhs, &rhs);
    (gap > tol).then_some(Violation {
        kind: ViolationKind::MixtureConsistency,
        objects: ViolationObjects::Mixture { left, right },
        lhs: ViolationValue::Vector(lhs),
        rhs: ViolationValue::Vector(rhs),
        gap,
        tol,
    })
}

/// Finds listed states with two different two-term decompositions (or a listed state
/// lying on a segment between two others) and compares the combined `μ` rows.
pub fn check_mixture_consistency(c: &CandidateRepresentation, tol: f64) -> Vec<Violation> {
    let n = c.states.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for &(cc, d) in &pairs[x + 1..] {
            if let Some((p, q)) = segment_intersection(c, (a, b), (cc, d)) {
                out.extend(mixture_violation(c, vec![(1.0 - p, a), (p, b)], vec![(1.0 - q, cc), (q, d)], tol));
            }
        }
        let u = c.states[b].rho.matrix().sub(c.states[a].rho.matrix()).expect("same dimension");
        let uu = hs(&u, &u);
        if uu <= 1e-24 {
            continue;
        }
        for k in (0..n).filter(|&k| k != a && k != b) {
            let r = c.states[k].rho.matrix().sub(c.states[a].rho.matrix()).expect("same dimension");
            let p = hs(&u, &r) / uu;
            if !(0.0..=1.0).contains(&p) {
                continue;
            }
            let on_segment = r.sub(&u.scale(&Complex64::new(p, 0.0))).expect("same dimension").frobenius() <= MATRIX_TOL;
            if on_segment {
                out.extend(mixture_violation(c, vec![(1.0, k)], vec![(1.0 - p, a), (p, b)], tol));
            }
        }
    }
    out
}

fn largest(vs: Vec<Violation>) -> Option<Violation> {
    // First maximum in check order, so the choice is deterministic.
    vs.into_iter().fold(None, |best: Option<Violation>, v| match best {
        Some(b) if b.gap >= v.gap => Some(b),
        _ => Some(v),
    })
}

/// Supplies table rows for objects the candidate does not list yet.
pub trait ExtensionHook {
    /// Adds `rho` to the state table (possibly adding `Λ` points) and returns its index.
    fn add_state(&mut self, c: &mut CandidateRepresentation, rho: &DensityMatrix) -> Result<usize>;
    /// Adds the projection onto `ray` to the effect table and returns its index.
    fn add_effect(&mut self, c: &mut CandidateRepresentation, ray: &Ray<Complex64>) -> Result<usize>;
}

/// Extends the pure-state theory: each new pure state becomes a new `Λ` point carrying
/// `F(E) = ⟨ψ|E|ψ⟩`, and a mixed state gets the mixture of point masses of the
/// eigenvectors returned by the eigensolver.
#[derive(Clone, Debug, Default)]
pub struct TrivialPureHook;

impl TrivialPureHook {
    fn point_for(c: &mut CandidateRepresentation, psi: &Ray<Complex64>) -> Result<usize> {
        let rho = DensityMatrix::pure(psi);
        for s in &c.states {
            if s.rho.distance(&rho)? <= MATRIX_TOL {
                if let Some(p) = s.mu.iter().position(|&m| m == 1.0) {
                    return Ok(p);
                }
            }
        }
        let responses: Vec<f64> = c.effects.iter().map(|e| rho.expectation(&e.ray.projection()).map(|x| x.clamp(0.0, 1.0))).collect::<Result<_>>()?;
        let label = format!("psi{}", c.lambda.len());
        let p = c.push_lambda(label, &responses)?;
        let mut mu = vec![0.0; c.lambda.len()];
        mu[p] = 1.0;
        c.push_state(rho, mu)?;
        Ok(p)
    }
}

impl ExtensionHook for TrivialPureHook {
    fn add_state(&mut self, c: &mut CandidateRepresentation, rho: &DensityMatrix) -> Result<usize> {
        let eig = eigh(rho.matrix())?;
        let d = rho.dim();
        let mut weights = Vec::new();
        for k in 0..d {
            let w = eig.values[k];
            if w > 1e-12 {
                let v: Vec<Complex64> = (0..d).map(|i| eig.vectors[(i, k)]).collect();
                weights.push((w, Ray::new(v)?));
            }
        }
        if let [(_, psi)] = weights.as_slice() {
            Self::point_for(c, psi)?;
            return Ok(c.states.len() - 1);
        }
        let mut mu_parts = Vec::new();
        for (w, psi) in &weights {
            mu_parts.push((*w, Self::point_for(c, psi)?));
        }
        let mut mu = vec![0.0; c.lambda.len()];
        let total: f64 = mu_parts.iter().map(|p| p.0).sum();
        for (w, p) in mu_parts {
            mu[p] += w / total;
        }
        c.push_state(rho.clone(), mu)
    }

    fn add_effect(&mut self, c: &mut CandidateRepresentation, ray: &Ray<Complex64>) -> Result<usize> {
        let e = ray.projection();
        // Λ points are the pure states in the table with point-mass rows.
        let mut f = vec![0.0; c.lambda.len()];
        for s in &c.states {
            if let Some(p) = s.mu.iter().position(|&m| m == 1.0) {
                f[p] = s.rho.expectation(&e)?.clamp(0.0, 1.0);
            }
        }
        c.push_effect(ray.clone(), f)
    }
}

/// The qubit value model as a finite candidate: `Λ` is an `m`-point midpoint grid on
/// `[−1, 1]`, `μ` is uniform for every state, and `F(E)(λ)` is the model's value of `E`
/// at `λ` for a fixed reference state.
#[derive(Clone, Debug)]
pub struct BellHook {
    pub reference: BlochState,
    pub grid: Vec<f64>,
}

impl BellHook {
    pub fn new(reference: BlochState, points: usize) -> Self {
        let grid = (0..points).map(|k| -1.0 + (2 * k + 1) as f64 / points as f64).collect();
        BellHook { reference, grid }
    }

    fn responses(&self, ray: &Ray<Complex64>) -> Result<Vec<f64>> {
        let d = decompose(&ray.projector())?;
        Ok(self
            .grid
            .iter()
            .map(|&l| assign_value_decomposed(&self.reference, HiddenVariable::new(l).expect("grid inside [-1, 1]"), &d).clamp(0.0, 1.0))
            .collect())
    }

    fn uniform(&self) -> Vec<f64> {
        vec![1.0 / self.grid.len() as f64; self.grid.len()]
    }

    /// `true` when `c`'s Λ labels are this hook's grid points.
    pub fn matches(&self, c: &CandidateRepresentation) -> bool {
        c.lambda.len() == self.grid.len() && c.lambda.iter().zip(&self.grid).all(|(l, g)| l.parse::<f64>().is_ok_and(|x| (x - g).abs() <= 1e-12))
    }

    fn check(&self, c: &CandidateRepresentation) -> Result<()> {
        if c.dim != 2 || !self.matches(c) {
            return Err(Error::Precondition("candidate is not a qubit table on this hook's grid".into()));
        }
        Ok(())
    }
}

impl ExtensionHook for BellHook {
    fn add_state(&mut self, c: &mut CandidateRepresentation, rho: &DensityMatrix) -> Result<usize> {
        self.check(c)?;
        c.push_state(rho.clone(), self.uniform())
    }

    fn add_effect(&mut self, c: &mut CandidateRepresentation, ray: &Ray<Complex64>) -> Result<usize> {
        self.check(c)?;
        let f = self.responses(ray)?;
        c.push_effect(ray.clone(), f)
    }
}

/// `Λ` = the given pure states, `μ(|ψ⟩⟨ψ|)` = point mass at `λ_ψ`, and
/// `F(E)(λ_ψ) = ⟨ψ|E|ψ⟩` for each of the given states taken as effects.
pub fn trivial_pure_theory(dim: usize, pure_states: &[Ray<Complex64>]) -> Result<CandidateRepresentation> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    for (i, a) in pure_states.iter().enumerate() {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: a.dim() });
        }
        if let Some(j) = pure_states[..i].iter().position(|b| b.is_equivalent(a, DEFAULT_TOL)) {
            return Err(Error::DuplicateRay(j, i));
        }
    }
    let n = pure_states.len();
    let rhos: Vec<DensityMatrix> = pure_states.iter().map(DensityMatrix::pure).collect();
    let states = rhos
        .iter()
        .enumerate()
        .map(|(i, rho)| {
            let mut mu = vec![0.0; n];
            mu[i] = 1.0;
            StateEntry { rho: rho.clone(), mu }
        })
        .collect();
    let effects = pure_states
        .iter()
        .map(|e| {
            let p = e.projection();
            let f = rhos.iter().map(|r| r.expectation(&p).map(|x| x.clamp(0.0, 1.0))).collect::<Result<Vec<f64>>>()?;
            Ok(EffectEntry { ray: e.clone(), f })
        })
        .collect::<Result<Vec<_>>>()?;
    let lambda = (0..n).map(|i| format!("psi{i}")).collect();
    CandidateRepresentation::new(dim, lambda, states, effects)
}

/// A qubit candidate built from [`BellHook`] rows for the given states and effects.
pub fn bell_candidate(hook: &mut BellHook, states: &[Ray<Complex64>], effects: &[Ray<Complex64>]) -> Result<CandidateRepresentation> {
    let lambda = hook.grid.iter().map(|l| format!("{l}")).collect();
    let mut c = CandidateRepresentation::new(2, lambda, Vec::new(), Vec::new())?;
    for s in states {
        hook.add_state(&mut c, &DensityMatrix::pure(s))?;
    }
    for e in effects {
        hook.add_effect(&mut c, e)?;
    }
    Ok(c)
}

/// Single-point `Λ` with `F ≡ value` on every effect.
pub fn constant_candidate(dim: usize, states: &[DensityMatrix], effects: &[Ray<Complex64>], value: f64) -> Result<CandidateRepresentation> {
    let states = states.iter().map(|r| StateEntry { rho: r.clone(), mu: vec![1.0] }).collect();
    let effects = effects.iter().map(|e| EffectEntry { ray: e.clone(), f: vec![value] }).collect();
    CandidateRepresentation::new(dim, vec!["*".into()], states, effects)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FalsifyOptions {
    /// Number of probe rounds.
    pub budget: u64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for FalsifyOptions {
    fn default() -> Self {
        FalsifyOptions { budget: 100, seed: 0, tol: DEFAULT_TOL }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum FalsifyOutcome {
    /// `candidate` is the (possibly extended) table on which `violation` re-checks;
    /// `round` is `None` when the listed tables already fail.
    Violation { violation: Violation, candidate: CandidateRepresentation, round: Option<u64> },
    Budget { rounds: u64 },
}

/// Runs the three checks on the listed tables, then probes through `hook`. Each probe
/// round draws a random pure state, a random projection and two random orthonormal bases,
/// adds them (and `I/d`) through the hook, and re-checks every constraint involving new
/// objects, including the two basis decompositions of `I/d`. Round `r` draws from
/// ChaCha8 stream `r` of `seed`.
pub fn falsify(c: &CandidateRepresentation, hook: Option<&mut dyn ExtensionHook>, opts: FalsifyOptions) -> Result<FalsifyOutcome> {
    let d = c.dim;
    if d < 2 {
        return Err(Error::Precondition("falsification needs dimension at least 2".into()));
    }
    let mut found = check_eq1(c, opts.tol);
    found.extend(check_mixture_consistency(c, opts.tol));
    if let Some(v) = largest(found) {
        return Ok(FalsifyOutcome::Violation { violation: v, candidate: c.clone(), round: None });
    }
    let Some(hook) = hook else {
        return Err(Error::HookRequired);
    };
    let mut cand = c.clone();
    for round in 0..opts.budget {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(round);
        let (state_from, effect_from) = (cand.states.len(), cand.effects.len());
        let psi = Ray::new(haar_vector(d, &mut rng))?;
        let e = Ray::new(haar_vector(d, &mut rng))?;
        let bases = [haar_basis(d, &mut rng), haar_basis(d, &mut rng)];

        hook.add_state(&mut cand, &DensityMatrix::pure(&psi))?;
        let mut decomps: Vec<Vec<(f64, usize)>> = Vec::new();
        for basis in &bases {
            let mut parts = Vec::new();
            for v in basis {
                let idx = hook.add_state(&mut cand, &DensityMatrix::pure(&Ray::new(v.clone())?))?;
                parts.push((1.0 / d as f64, idx));
            }
            decomps.push(parts);
        }
        let mixed = hook.add_state(&mut cand, &DensityMatrix::maximally_mixed(d))?;
        hook.add_effect(&mut cand, &e)?;
        hook.add_effect(&mut cand, &Ray::new(bases[0][0].clone())?)?;

        let mut found = check_eq1_from(&cand, state_from, effect_from, opts.tol);
        let mut all = decomps.clone();
        all.push(vec![(1.0, mixed)]);
        for x in 0..all.len() {
            for y in x + 1..all.len() {
                found.extend(mixture_violation(&cand, all[x].clone(), all[y].clone(), opts.tol));
            }
        }
        if let Some(v) = largest(found) {
            return Ok(FalsifyOutcome::Violation { violation: v, candidate: cand, round: Some(round) });
        }
    }
    Ok(FalsifyOutcome::Budget { rounds: opts.budget })
}
