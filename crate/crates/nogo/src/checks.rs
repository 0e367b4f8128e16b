//! Checks shared by the subcommands and the bundled-data self-check.

use nogo_core::bell::{expectation_exact, born_expectation, convex_extension_certificate, BlochState, PauliDecomposition};
use nogo_core::expectation::{falsify, FalsifyOptions, FalsifyOutcome, TrivialPureHook};
use nogo_core::joint::joint_spectrum;
use nogo_core::valuation::{
    build_contexts, find_valuation_general, verify_general_valuation, verify_ray_valuation, ContextSystem, GeneralOptions, SearchCertificate, SearchOutcome, Verdict,
};
use nogo_core::{Observable, Scalar};
use serde::{Deserialize, Serialize};

use crate::data;
use crate::parallel::find_valuation_parallel;
use crate::sat::sat_colorability;
use crate::schema::{load_candidate, load_observables, load_rayset, AnyObservables, AnyRaySet, Expected};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayReport {
    pub name: String,
    pub dim: usize,
    pub rays: usize,
    pub pairs: usize,
    pub bases: usize,
    pub certificate: SearchCertificate,
    /// Verdict of the independent checker on a found valuation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    /// Satisfiability according to the SAT encoding, when it was consulted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sat_satisfiable: Option<bool>,
    pub tol: f64,
}

impl RayReport {
    /// `true` when every consulted oracle agrees with the search outcome.
    pub fn consistent(&self) -> bool {
        let verdict_ok = match (&self.certificate.outcome, &self.verdict) {
            (SearchOutcome::Found { .. }, Some(v)) => v.is_accepted(),
            (SearchOutcome::Found { .. }, None) => false,
            _ => true,
        };
        let sat_ok = match (self.sat_satisfiable, &self.certificate.outcome) {
            (Some(s), SearchOutcome::Found { .. }) => s,
            (Some(s), SearchOutcome::Exhausted) => !s,
            _ => true,
        };
        verdict_ok && sat_ok
    }
}

fn ray_report<S: Scalar>(rs: &nogo_core::valuation::RaySet<S>, tol: f64, budget: Option<u64>, threads: usize, with_sat: bool) -> nogo_core::Result<RayReport> {
    let ctx: ContextSystem = build_contexts(rs, tol);
    let certificate = find_valuation_parallel(&ctx, budget, threads);
    let verdict = match certificate.outcome.valuation() {
        Some(v) => Some(verify_ray_valuation(rs, v, tol)?),
        None => None,
    };
    let sat_satisfiable = with_sat.then(|| sat_colorability(&ctx).is_satisfiable());
    Ok(RayReport {
        name: rs.name.clone(),
        dim: rs.dim(),
        rays: rs.len(),
        pairs: ctx.pairs.len(),
        bases: ctx.bases.len(),
        certificate,
        verdict,
        sat_satisfiable,
        tol,
    })
}

pub fn check_rayset(rs: &AnyRaySet, tol: f64, budget: Option<u64>, threads: usize, with_sat: bool) -> nogo_core::Result<RayReport> {
    match rs {
        AnyRaySet::Exact(r) => ray_report(r, tol, budget, threads, with_sat),
        AnyRaySet::Float(r) => ray_report(r, tol, budget, threads, with_sat),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralReport {
    pub name: String,
    pub dim: usize,
    pub observables: usize,
    pub certificate: SearchCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub tol: f64,
}

impl GeneralReport {
    pub fn consistent(&self) -> bool {
        !self.certificate.outcome.is_found() || self.verdict.as_ref().is_some_and(Verdict::is_accepted)
    }
}

fn general_report<S: Scalar>(name: &str, obs: &[Observable<S>], opts: GeneralOptions) -> nogo_core::Result<GeneralReport> {
    let start = std::time::Instant::now();
    let mut certificate = find_valuation_general(obs, opts)?;
    certificate.elapsed = Some(start.elapsed());
    let verdict = match certificate.outcome.valuation() {
        Some(v) => Some(verify_general_valuation(obs, v, opts.tol)?),
        None => None,
    };
    Ok(GeneralReport {
        name: name.into(),
        dim: obs.first().map_or(0, |o| o.dim()),
        observables: obs.len(),
        certificate,
        verdict,
        tol: opts.tol,
    })
}

pub fn check_observables(name: &str, obs: &AnyObservables, opts: GeneralOptions) -> nogo_core::Result<GeneralReport> {
    match obs {
        AnyObservables::Exact(o) => general_report(name, o, opts),
        AnyObservables::Float(o) => general_report(name, o, opts),
    }
}

pub fn matches_expected(outcome: &SearchOutcome, expected: Option<Expected>) -> Option<bool> {
    match (expected?, outcome) {
        (_, SearchOutcome::Budget { .. }) => Some(false),
        (Expected::Colorable, o) => Some(o.is_found()),
        (Expected::Uncolorable, o) => Some(o.is_exhausted()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub evaluations: usize,
    pub max_error: f64,
    pub tol: f64,
}

/// Compares the closed-form average with `Tr(ρA)` for 50 states × 50 observable axes ×
/// 8 `(a₀, ‖a‖)` pairs. States come from a 10 × 5 angle grid, axes from a 5 × 10 grid
/// rotated away from the state grid.
pub fn bell_exactness_grid() -> nogo_core::Result<GridReport> {
    let states: Vec<[f64; 3]> = angle_grid(10, 5, 0.0);
    let axes: Vec<[f64; 3]> = angle_grid(5, 10, 0.37);
    let scales = [(0.0, 1.0), (1.0, 1.0), (-0.5, 0.25), (2.0, 3.0), (0.3, 0.7), (-1.2, 2.5), (0.0, 10.0), (5.0, 0.01)];
    let mut max_error = 0.0f64;
    let mut evaluations = 0;
    for n in &states {
        let s = BlochState::from_direction(*n)?;
        for ax in &axes {
            for &(a0, r) in &scales {
                let a = PauliDecomposition::new(a0, ax.map(|x| r * x)).observable();
                let err = (expectation_exact(&s, &a)? - born_expectation(&s, &a)?).abs();
                max_error = max_error.max(err);
                evaluations += 1;
            }
        }
    }
    Ok(GridReport { evaluations, max_error, tol: 1e-12 })
}

fn angle_grid(polar: usize, azimuthal: usize, shift: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for i in 0..polar {
        let theta = std::f64::consts::PI * (i as f64 + 0.5) / polar as f64;
        for j in 0..azimuthal {
            let phi = 2.0 * std::f64::consts::PI * (j as f64 + shift) / azimuthal as f64;
            out.push([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub checks: Vec<CheckLine>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Re-verifies every bundled file's expected verdict, refutes the bundled candidates, and
/// checks the qubit model's exactness grid and convex-extension certificate.
pub fn selfcheck(threads: usize) -> SelfcheckReport {
    let mut checks = Vec::new();
    let mut push = |name: String, result: Result<(bool, String), String>| {
        let (passed, detail) = result.unwrap_or_else(|e| (false, e));
        checks.push(CheckLine { name, passed, detail });
    };
    for (name, text) in data::RAYSETS {
        let result = (|| {
            let (file, rs) = load_rayset(name, text, nogo_core::DEFAULT_TOL).map_err(|e| e.to_string())?;
            let report = check_rayset(&rs, nogo_core::DEFAULT_TOL, None, threads, true).map_err(|e| e.to_string())?;
            let counts_ok = file.contexts.is_none_or(|c| c.pairs == report.pairs && c.bases == report.bases);
            let ok = report.consistent() && counts_ok && matches_expected(&report.certificate.outcome, file.expected).unwrap_or(false);
            let outcome = if report.certificate.outcome.is_found() { "colorable" } else { "uncolorable" };
            Ok((ok, format!("{outcome}; {} pairs, {} bases; SAT agrees: {}", report.pairs, report.bases, report.consistent())))
        })();
        push(format!("ray set {name}"), result);
    }
    for (name, text) in data::OBSERVABLES {
        let result = (|| {
            let (file, obs) = load_observables(name, text, nogo_core::DEFAULT_TOL).map_err(|e| e.to_string())?;
            if file.expected.is_none() {
                let points = match &obs {
                    AnyObservables::Exact(o) => joint_spectrum(o, nogo_core::DEFAULT_TOL),
                    AnyObservables::Float(o) => joint_spectrum(o, nogo_core::DEFAULT_TOL),
                }
                .map_err(|e| e.to_string())?;
                return Ok((true, format!("joint spectrum {}", format_tuples(&points.tuples()))));
            }
            let report = check_observables(&file.name, &obs, GeneralOptions::default()).map_err(|e| e.to_string())?;
            let ok = report.consistent() && matches_expected(&report.certificate.outcome, file.expected).unwrap_or(false);
            Ok((ok, format!("{} after {} nodes", outcome_word(&report.certificate.outcome), report.certificate.nodes)))
        })();
        push(format!("observables {name}"), result);
    }
    for (name, text) in data::CANDIDATES {
        let result = (|| {
            let c = load_candidate(name, text).map_err(|e| e.to_string())?;
            match falsify(&c, Some(&mut TrivialPureHook), FalsifyOptions::default()).map_err(|e| e.to_string())? {
                FalsifyOutcome::Violation { violation, candidate, round } => {
                    let again = violation.recheck(Some(&candidate)).map_err(|e| e.to_string())?;
                    let ok = (again - violation.gap).abs() <= 1e-12;
                    let at = round.map_or("listed tables".to_string(), |r| format!("probe round {r}"));
                    Ok((ok, format!("refuted on {at}: {:?} gap {:.6}", violation.kind, violation.gap)))
                }
                FalsifyOutcome::Budget { rounds } => Ok((false, format!("not refuted in {rounds} rounds"))),
            }
        })();
        push(format!("candidate {name}"), result);
    }
    let grid = bell_exactness_grid().map_err(|e| e.to_string()).map(|g| (g.max_error <= g.tol, format!("{} evaluations, max error {:e}", g.evaluations, g.max_error)));
    push("qubit model exactness grid".into(), grid);
    let cert = convex_extension_certificate();
    let recheck = cert.recheck(None).map_err(|e| e.to_string()).map(|g| ((g - 0.5).abs() <= 1e-12 && (g - cert.gap).abs() <= 1e-12, format!("gap {g}")));
    push("convex-extension certificate".into(), recheck);
    SelfcheckReport { checks }
}

pub fn outcome_word(o: &SearchOutcome) -> &'static str {
    match o {
        SearchOutcome::Found { .. } => "found",
        SearchOutcome::Exhausted => "exhausted",
        SearchOutcome::Budget { .. } => "budget",
    }
}

/// `{(1,1),(1,0),(0,0)}`-style rendering: descending lexicographic order, trailing zeros
/// trimmed.
pub fn format_tuples(tuples: &[Vec<f64>]) -> String {
    let num = |x: f64| {
        let r = if x.abs() < 5e-13 { 0.0 } else { x };
        let s = format!("{r:.12}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".to_string() } else { s.to_string() }
    };
    let mut sorted = tuples.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let items: Vec<String> = sorted.iter().map(|t| format!("({})", t.iter().map(|&x| num(x)).collect::<Vec<_>>().join(","))).collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_formatting() {
        assert_eq!(format_tuples(&[vec![1.0, 1.0], vec![1.0, 0.0], vec![0.0, 0.0]]), "{(1,1),(1,0),(0,0)}");
        assert_eq!(format_tuples(&[vec![-1e-15, 0.5]]), "{(0,0.5)}");
    }

    #[test]
    fn grid_size() {
        assert_eq!(bell_exactness_grid().unwrap().evaluations, 50 * 50 * 8);
    }
}
