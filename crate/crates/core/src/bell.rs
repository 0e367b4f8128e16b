//! A value representation for qubits.
//!
//! The hidden variable `λ` is uniform on `[−1, 1]`. For a pure state with Bloch vector
//! `n` and an observable `A = a₀ I + a·σ` with `a ≠ 0`, the assigned value is
//!
//! ```text
//! v = a₀ + ‖a‖ · sign₀(â·n + c(â) λ),   â = a / ‖a‖
//! ```
//!
//! where `c` is the orientation rule (sign of the first nonzero component of `â` in the
//! order x, y, z) and `sign₀(0) = c(â)`. Averaging `sign₀(x + cλ)` over `λ` gives `x`
//! for `|x| ≤ 1`, so the λ-average is `a₀ + a·n = ⟨ψ|A|ψ⟩`. Because `c(−â) = −c(â)`,
//! `v(f(A)) = f(v(A))` holds at every `λ`, tie points included.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::expectation::{Violation, ViolationKind, ViolationObjects, ViolationValue};
use crate::matrix::{pauli, CMatrix};
use crate::operator::{DensityMatrix, Observable, Ray};
use crate::poly::Polynomial;
use crate::Result;

/// Components of `â` at or below this magnitude count as zero in the orientation rule,
/// and `|â·n + cλ|` at or below it counts as a tie.
pub const TIE_EPS: f64 = 1e-12;

/// Pure qubit state `|ψ⟩⟨ψ| = (I + n·σ)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlochState {
    n: [f64; 3],
}

impl BlochState {
    /// Requires `‖n‖ = 1` within `1e−12`.
    pub fn new(n: [f64; 3]) -> Result<Self> {
        let norm = norm3(&n);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(alloc::format!("Bloch vector norm {norm} is not 1")));
        }
        Ok(BlochState { n })
    }

    /// Normalizes any nonzero direction.
    pub fn from_direction(v: [f64; 3]) -> Result<Self> {
        let norm = norm3(&v);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("zero Bloch direction".into()));
        }
        Ok(BlochState { n: v.map(|x| x / norm) })
    }

    pub fn vector(&self) -> [f64; 3] {
        self.n
    }

    /// Bloch vector of a qubit ray.
    pub fn from_ray(ray: &Ray<Complex64>) -> Result<Self> {
        if ray.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: ray.dim() });
        }
        let rho = DensityMatrix::pure(ray);
        let [x, y, z] = pauli();
        let n = [&x, &y, &z].map(|s| rho.expectation(s).unwrap_or(f64::NAN));
        BlochState::from_direction(n)
    }

    pub fn density(&self) -> DensityMatrix {
        let [x, y, z] = pauli();
        let mut m = CMatrix::identity(2);
        for (s, &c) in [x, y, z].iter().zip(&self.n) {
            m = m.add(&s.scale(&Complex64::new(c, 0.0))).expect("2x2");
        }
        DensityMatrix::new(m.scale(&Complex64::new(0.5, 0.0)), 1e-9).expect("pure qubit state")
    }

    /// A state vector `|ψ⟩` with this Bloch vector.
    pub fn ray(&self) -> Ray<Complex64> {
        let [x, y, z] = self.n;
        if z > -1.0 + 1e-15 {
            let c = libm::sqrt((1.0 + z) / 2.0);
            let s = Complex64::new(x, y) / (2.0 * c);
            Ray::new(alloc::vec![Complex64::new(c, 0.0), s]).expect("nonzero")
        } else {
            Ray::new(alloc::vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).expect("nonzero")
        }
    }
}

fn norm3(v: &[f64; 3]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `A = a₀ I + a·σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PauliDecomposition {
    pub a0: f64,
    pub a: [f64; 3],
}

impl PauliDecomposition {
    pub fn new(a0: f64, a: [f64; 3]) -> Self {
        PauliDecomposition { a0, a }
    }

    pub fn matrix(&self) -> CMatrix {
        let [x, y, z] = pauli();
        let mut m = CMatrix::identity(2).scale(&Complex64::new(self.a0, 0.0));
        for (s, &c) in [x, y, z].iter().zip(&self.a) {
            m = m.add(&s.scale(&Complex64::new(c, 0.0))).expect("2x2");
        }
        m
    }

    pub fn observable(&self) -> Observable<Complex64> {
        Observable::new(self.matrix(), 1e-12).expect("Hermitian by construction")
    }

    pub fn norm(&self) -> f64 {
        norm3(&self.a)
    }

    /// The two eigenvalues `a₀ ∓ ‖a‖`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        [self.a0 - self.norm(), self.a0 + self.norm()]
    }

    /// `a₀ + a·n`.
    pub fn expectation(&self, s: &BlochState) -> f64 {
        self.a0 + dot3(&self.a, &s.n)
    }
}

/// `a₀ = Tr(A)/2`, `a_k = Tr(A σ_k)/2`.
pub fn decompose(a: &Observable<Complex64>) -> Result<PauliDecomposition> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: a.dim() });
    }
    let m = a.matrix();
    let dev = m.hermitian_deviation();
    if dev > 1e-12 {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let half_trace = |x: &CMatrix| x.trace().re / 2.0;
    let [x, y, z] = pauli();
    Ok(PauliDecomposition {
        a0: half_trace(m),
        a: [&x, &y, &z].map(|s| half_trace(&m.mul(s).expect("2x2"))),
    })
}

/// Hidden variable `λ ∈ [−1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HiddenVariable(f64);

impl HiddenVariable {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(alloc::format!("hidden variable {lambda} outside [-1, 1]")));
        }
        Ok(HiddenVariable(lambda))
    }

    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        HiddenVariable(rng.random_range(-1.0..=1.0))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// `c(â)`: sign of the first component of `â` (order x, y, z) with magnitude above
/// [`TIE_EPS`]. Antisymmetric: `orientation(−â) = −orientation(â)`.
pub fn orientation(dir: &[f64; 3]) -> f64 {
    for &x in dir {
        if x > TIE_EPS {
            return 1.0;
        }
        if x < -TIE_EPS {
            return -1.0;
        }
    }
    1.0
}

/// `sign₀(x)` with ties resolved to `c`.
fn sign0(x: f64, c: f64) -> f64 {
    if x > TIE_EPS {
        1.0
    } else if x < -TIE_EPS {
        -1.0
    } else {
        c
    }
}

/// Value of a decomposed observable in state `s` at hidden variable `λ`.
pub fn assign_value_decomposed(s: &BlochState, lambda: HiddenVariable, d: &PauliDecomposition) -> f64 {
    let norm = d.norm();
    if norm <= TIE_EPS {
        return d.a0;
    }
    let dir = d.a.map(|x| x / norm);
    let c = orientation(&dir);
    d.a0 + norm * sign0(dot3(&dir, &s.n) + c * lambda.0, c)
}

pub fn assign_value(s: &BlochState, lambda: HiddenVariable, a: &Observable<Complex64>) -> Result<f64> {
    Ok(assign_value_decomposed(s, lambda, &decompose(a)?))
}

/// The exact λ-average of [`assign_value`]: `a₀ + ‖a‖·(â·n) = a₀ + a·n`.
pub fn expectation_exact(s: &BlochState, a: &Observable<Complex64>) -> Result<f64> {
    let d = decompose(a)?;
    let norm = d.norm();
    if norm <= TIE_EPS {
        return Ok(d.a0);
    }
    // Mean of sign₀(x + cλ) over uniform λ is the probability mass split at −x/c, i.e. x.
    let x = dot3(&d.a.map(|v| v / norm), &s.n).clamp(-1.0, 1.0);
    Ok(d.a0 + norm * x)
}

/// `Tr(ρ_s A)` computed with matrices.
pub fn born_expectation(s: &BlochState, a: &Observable<Complex64>) -> Result<f64> {
    s.density().expectation(a.matrix())
}

/// Sample mean, sample standard deviation over `√N`, and the sample count.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Running sums for a Monte Carlo run, mergeable across substreams.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct McSums {
    pub count: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl McSums {
    pub fn merge(self, other: McSums) -> McSums {
        McSums { count: self.count + other.count, sum: self.sum + other.sum, sum_sq: self.sum_sq + other.sum_sq }
    }

    pub fn estimate(&self) -> Result<McEstimate> {
        if self.count == 0 {
            return Err(Error::InvalidArgument("Monte Carlo needs at least one sample".into()));
        }
        let n = self.count as f64;
        let mean = self.sum / n;
        let stderr = if self.count > 1 {
            let var = ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
            libm::sqrt(var / n)
        } else {
            0.0
        };
        Ok(McEstimate { estimate: mean, stderr, samples: self.count })
    }
}

/// Draws `count` hidden variables from ChaCha8 stream `stream` of `seed` and accumulates
/// the assigned values. Substream `t` of a run split across `T` workers is
/// `(seed, stream = t)`.
pub fn mc_substream(s: &BlochState, d: &PauliDecomposition, count: u64, seed: u64, stream: u64) -> McSums {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut sums = McSums::default();
    for _ in 0..count {
        let v = assign_value_decomposed(s, HiddenVariable::sample(&mut rng), d);
        sums.sum += v;
        sums.sum_sq += v * v;
    }
    sums.count = count;
    sums
}

/// Monte Carlo estimate of the λ-average with `n` uniform draws, single stream.
pub fn expectation_mc(s: &BlochState, a: &Observable<Complex64>, n: u64, seed: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("Monte Carlo needs at least one sample".into()));
    }
    mc_substream(s, &decompose(a)?, n, seed, 0).estimate()
}

/// `f(A)` for a univariate polynomial, by Horner's rule on the matrix.
pub fn apply_polynomial(f: &Polynomial, a: &Observable<Complex64>) -> Result<Observable<Complex64>> {
    if f.nvars != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.nvars });
    }
    let m = f.eval_matrices(&[a.matrix().clone()])?;
    Observable::new(m, 1e-9)
}

/// `v(f(A)) = f(v(A))` within `1e−9`.
pub fn check_functional_consistency(s: &BlochState, lambda: HiddenVariable, a: &Observable<Complex64>, f: &Polynomial) -> Result<bool> {
    let lhs = assign_value(s, lambda, &apply_polynomial(f, a)?)?;
    let rhs = f.eval(&[assign_value(s, lambda, a)?])?;
    Ok((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()))
}

/// The hidden variable at which `â·n + c(â)λ = 0`, if it lies in `[−1, 1]`.
pub fn tie_point(s: &BlochState, d: &PauliDecomposition) -> Option<HiddenVariable> {
    let norm = d.norm();
    if norm <= TIE_EPS {
        return None;
    }
    let dir = d.a.map(|x| x / norm);
    let lambda = -dot3(&dir, &s.n) * orientation(&dir);
    HiddenVariable::new(lambda).ok()
}

/// Obstruction to a convex-linear extension with a state-independent measure.
///
/// The model's measure on `Λ` is the same for every pure state, so any `F(E)` that depends
/// on `λ` alone has the same integral for `|0⟩` and `|+⟩`. The Born values for
/// `E = |0⟩⟨0|` are 1 and 1/2, so no such `F` exists. The certificate's `lhs` is the pair
/// of Born values, `rhs` the common value closest to both, and `gap` their spread.
pub fn convex_extension_certificate() -> Violation {
    let zero = Ray::new(alloc::vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).expect("nonzero");
    let plus = Ray::new(alloc::vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).expect("nonzero");
    shared_measure_certificate(&zero, [&zero, &plus], 1e-9)
}

/// Same obstruction for an arbitrary effect and pair of pure states.
pub fn shared_measure_certificate(effect: &Ray<Complex64>, states: [&Ray<Complex64>; 2], tol: f64) -> Violation {
    let e = effect.projection();
    let born: Vec<f64> = states.iter().map(|s| DensityMatrix::pure(*s).expectation(&e).unwrap_or(f64::NAN)).collect();
    Violation {
        kind: ViolationKind::Eq1,
        objects: ViolationObjects::SharedMeasure {
            effect: effect.unit_c64(),
            states: [states[0].unit_c64(), states[1].unit_c64()],
        },
        lhs: ViolationValue::Vector(born.clone()),
        rhs: ViolationValue::Scalar((born[0] + born[1]) / 2.0),
        gap: (born[0] - born[1]).abs(),
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::unit_vector3;
    use rand_chacha::ChaCha8Rng;

    fn z_up() -> BlochState {
        BlochState::new([0.0, 0.0, 1.0]).unwrap()
    }

    fn lam(x: f64) -> HiddenVariable {
        HiddenVariable::new(x).unwrap()
    }

    fn obs(a0: f64, a: [f64; 3]) -> Observable<Complex64> {
        PauliDecomposition::new(a0, a).observable()
    }

    #[test]
    fn decompose_examples() {
        let [_, _, z] = pauli();
        let d = decompose(&Observable::new(z, 0.0).unwrap()).unwrap();
        assert_eq!(d, PauliDecomposition::new(0.0, [0.0, 0.0, 1.0]));
        let d = decompose(&Observable::identity(2)).unwrap();
        assert_eq!(d, PauliDecomposition::new(1.0, [0.0; 3]));
        let d = decompose(&Observable::diagonal(&[Complex64::new(3.0, 0.0), Complex64::new(1.0, 0.0)])).unwrap();
        assert_eq!(d, PauliDecomposition::new(2.0, [0.0, 0.0, 1.0]));
    }

    #[test]
    fn decompose_rejects_non_qubit() {
        assert!(decompose(&Observable::identity(3)).is_err());
    }

    #[test]
    fn assign_examples() {
        assert_eq!(assign_value(&z_up(), lam(0.3), &obs(0.0, [0.0, 0.0, 1.0])).unwrap(), 1.0);
        assert_eq!(assign_value(&z_up(), lam(-1.0), &obs(0.0, [0.0, 0.0, 1.0])).unwrap(), 1.0);
        assert_eq!(assign_value(&BlochState::new([1.0, 0.0, 0.0]).unwrap(), lam(0.1), &obs(5.0, [0.0; 3])).unwrap(), 5.0);
        let sx = obs(0.0, [1.0, 0.0, 0.0]);
        assert_eq!(orientation(&[1.0, 0.0, 0.0]), 1.0);
        assert_eq!(assign_value(&z_up(), lam(0.7), &sx).unwrap(), 1.0);
        assert_eq!(assign_value(&z_up(), lam(-0.7), &sx).unwrap(), -1.0);
    }

    #[test]
    fn orientation_is_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let v = unit_vector3(&mut rng);
            assert_eq!(orientation(&v), -orientation(&v.map(|x| -x)));
        }
        for v in [[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [0.0, 1e-13, -1.0]] {
            assert_eq!(orientation(&v), -orientation(&v.map(|x: f64| -x)));
        }
    }

    #[test]
    fn exact_expectation_examples() {
        assert_eq!(expectation_exact(&z_up(), &obs(0.0, [1.0, 0.0, 0.0])).unwrap(), 0.0);
        assert_eq!(expectation_exact(&z_up(), &obs(0.0, [0.0, 0.0, 1.0])).unwrap(), 1.0);
    }

    #[test]
    fn exact_expectation_matches_born_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let s = BlochState::new(unit_vector3(&mut rng)).unwrap();
            let a = obs(rng.random_range(-2.0..2.0), unit_vector3(&mut rng).map(|x| x * rng.random_range(0.0..3.0)));
            let lhs = expectation_exact(&s, &a).unwrap();
            let rhs = born_expectation(&s, &a).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn exact_average_matches_quadrature() {
        // Midpoint rule over λ as an independent route to the integral.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let s = BlochState::new(unit_vector3(&mut rng)).unwrap();
            let d = PauliDecomposition::new(0.5, unit_vector3(&mut rng).map(|x| 2.0 * x));
            let m = 200_000;
            let avg: f64 = (0..m)
                .map(|k| assign_value_decomposed(&s, lam(-1.0 + (2 * k + 1) as f64 / m as f64), &d))
                .sum::<f64>()
                / m as f64;
            let exact = expectation_exact(&s, &d.observable()).unwrap();
            assert!((avg - exact).abs() < 1e-4, "{avg} vs {exact}");
        }
    }

    #[test]
    fn mc_examples() {
        let est = expectation_mc(&z_up(), &obs(0.0, [0.0, 0.0, 1.0]), 1000, 1).unwrap();
        assert_eq!((est.estimate, est.stderr), (1.0, 0.0));
        let est = expectation_mc(&z_up(), &obs(-0.25, [0.0; 3]), 1000, 1).unwrap();
        assert_eq!((est.estimate, est.stderr), (-0.25, 0.0));
        let est = expectation_mc(&z_up(), &obs(0.0, [1.0, 0.0, 0.0]), 200_000, 4).unwrap();
        assert!(est.estimate.abs() <= 4.0 * est.stderr);
        assert!(expectation_mc(&z_up(), &obs(0.0, [1.0, 0.0, 0.0]), 0, 4).is_err());
        let again = expectation_mc(&z_up(), &obs(0.0, [1.0, 0.0, 0.0]), 200_000, 4).unwrap();
        assert_eq!(est, again);
    }

    #[test]
    fn functional_consistency_examples() {
        let sq = Polynomial::univariate(&[0.0, 0.0, 1.0]);
        let sz = obs(0.0, [0.0, 0.0, 1.0]);
        assert!(check_functional_consistency(&z_up(), lam(0.2), &sz, &sq).unwrap());
        let neg = Polynomial::univariate(&[0.0, -1.0]);
        let sx = obs(0.0, [1.0, 0.0, 0.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let s = BlochState::new(unit_vector3(&mut rng)).unwrap();
            assert!(check_functional_consistency(&s, HiddenVariable::sample(&mut rng), &sx, &neg).unwrap());
        }
    }

    #[test]
    fn consistency_at_tie_points() {
        let neg = Polynomial::univariate(&[1.0, -2.0, 0.0, 0.5]);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut ties = 0;
        for _ in 0..500 {
            let s = BlochState::new(unit_vector3(&mut rng)).unwrap();
            let d = PauliDecomposition::new(0.3, unit_vector3(&mut rng));
            if let Some(t) = tie_point(&s, &d) {
                ties += 1;
                assert!(check_functional_consistency(&s, t, &d.observable(), &neg).unwrap());
            }
        }
        assert_eq!(ties, 500);
    }

    #[test]
    fn value_lies_in_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..1000 {
            let s = BlochState::new(unit_vector3(&mut rng)).unwrap();
            let d = PauliDecomposition::new(rng.random_range(-1.0..1.0), unit_vector3(&mut rng));
            let v = assign_value_decomposed(&s, HiddenVariable::sample(&mut rng), &d);
            assert!(d.eigenvalues().contains(&v));
        }
    }

    #[test]
    fn expectation_is_affine_in_state() {
        let d = PauliDecomposition::new(0.4, [0.3, -0.7, 1.1]);
        let a = d.observable();
        let p = [0.0, 0.0, 1.0];
        let q = [1.0, 0.0, 0.0];
        let ev = |n: [f64; 3]| d.a0 + dot3(&d.a, &n);
        let fp = expectation_exact(&BlochState::new(p).unwrap(), &a).unwrap();
        let fq = expectation_exact(&BlochState::new(q).unwrap(), &a).unwrap();
        assert!((fp - ev(p)).abs() < 1e-15 && (fq - ev(q)).abs() < 1e-15);
        // Affine map: f(tp + (1−t)q) = t f(p) + (1−t) f(q) for interior points.
        let mid = [0.5, 0.0, 0.5];
        assert!((d.a0 + dot3(&d.a, &mid) - 0.5 * (fp + fq)).abs() < 1e-15);
    }

    #[test]
    fn bloch_state_validation() {
        assert!(BlochState::new([0.0, 0.0, 0.9]).is_err());
        let s = BlochState::from_direction([0.0, 3.0, 4.0]).unwrap();
        assert!((s.vector()[2] - 0.8).abs() < 1e-15);
        let back = BlochState::from_ray(&s.ray()).unwrap();
        for (a, b) in back.vector().iter().zip(s.vector()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn certificate_gap_is_half() {
        let v = convex_extension_certificate();
        assert_eq!(v.kind, ViolationKind::Eq1);
        assert!((v.gap - 0.5).abs() < 1e-15);
        assert_eq!(v.lhs, ViolationValue::Vector(alloc::vec![1.0, 0.5]));
        assert!((v.recheck(None).unwrap() - v.gap).abs() <= 1e-12);
    }

    #[test]
    fn certificate_for_orthogonal_pair() {
        let e = BlochState::new([0.0, 1.0, 0.0]).unwrap();
        let perp = BlochState::new([0.0, -1.0, 0.0]).unwrap();
        let v = shared_measure_certificate(&e.ray(), [&e.ray(), &perp.ray()], 1e-9);
        assert!((v.gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn certificate_angle_formula() {
        let zero = z_up().ray();
        for k in 0..=16 {
            let theta = core::f64::consts::PI * k as f64 / 16.0;
            let n = BlochState::new([libm::sin(theta), 0.0, libm::cos(theta)]).unwrap();
            let v = shared_measure_certificate(&zero, [&zero, &n.ray()], 1e-9);
            let expected = (1.0 - libm::pow(libm::cos(theta / 2.0), 2.0)).abs();
            assert!((v.gap - expected).abs() < 1e-12);
        }
    }
}
