//! Command-line front end.
//!
//! Exit codes: 0 success (or verdict matches the file's `expected`), 10 valuation found,
//! 11 no valuation exists, 3 budget exhausted, 2 input error, 1 verification failure.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nogo_core::bell::{born_expectation, convex_extension_certificate, decompose, expectation_exact, BlochState};
use nogo_core::bootstrap::{lift_rayset, tensor_modulo_identity, LiftOptions};
use nogo_core::expectation::{falsify, BellHook, ExtensionHook, FalsifyOptions, FalsifyOutcome, TrivialPureHook};
use nogo_core::joint::joint_spectrum;
use nogo_core::valuation::{GeneralOptions, RaySet, SearchOutcome};
use nogo_core::{Error, Observable, Scalar, DEFAULT_TOL};
use serde::Serialize;
use serde_json::json;

use crate::checks::{check_observables, check_rayset, format_tuples, matches_expected, outcome_word, selfcheck};
use crate::parallel::{available_threads, expectation_mc_parallel};
use crate::schema::{
    exact_json, float_json, load_candidate, load_observables, load_rayset, observable_file, parse_floats, parse_json, parse_qubit_observable, rayset_file_exact,
    rayset_file_float, read_file, AnyObservables, AnyRaySet, Expected, InputError, ScalarMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_FOUND: i32 = 10;
pub const EXIT_NONE: i32 = 11;

#[derive(Parser, Debug)]
#[command(name = "nogo", version, about = "Checks hidden-variable no-go constructions on small quantum systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Common {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (falls back to NOGO_THREADS, then available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a valuation of a ray-set or observable-set file.
    CheckValuation {
        file: String,
        /// Use the general solver (always used for observable files).
        #[arg(long)]
        general: bool,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Node budget; unlimited for ray sets unless given.
        #[arg(long)]
        budget: Option<u64>,
        /// Also decide colorability with the SAT encoding.
        #[arg(long)]
        sat: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Lift an uncolorable ray set to a higher dimension.
    Lift {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        to_dim: usize,
        #[arg(long)]
        out: String,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Tensor the projections of an uncolorable ray set with an identity factor.
    TensorId {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: String,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the qubit value model for one state and observable.
    BellSim {
        /// Bloch vector `nx,ny,nz` of a pure state.
        #[arg(long)]
        state: String,
        /// `a0,ax,ay,az` or a 2×2 JSON matrix.
        #[arg(long)]
        obs: String,
        /// Closed-form average (the default).
        #[arg(long, conflicts_with = "mc")]
        exact: bool,
        /// Monte Carlo sample count.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Print the certificate that the qubit model has no convex extension.
    BellCertificate {
        #[command(flatten)]
        common: Common,
    },
    /// Look for a violated constraint in a candidate expectation representation.
    Falsify {
        file: String,
        /// Probe rounds.
        #[arg(long, default_value_t = 100)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// How probes extend the candidate's tables.
        #[arg(long, value_enum, default_value_t = HookKind::Trivial)]
        hook: HookKind,
        #[command(flatten)]
        common: Common,
    },
    /// Joint spectrum of a commuting observable family.
    JointSpectrum {
        file: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Re-verify the bundled data.
    Selfcheck {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum HookKind {
    /// New hidden-variable point per pure state, response |⟨e|ψ⟩|².
    Trivial,
    /// The qubit value model (dimension 2 only).
    Bell,
    /// Check only the listed tables.
    None,
}

/// A failed command: exit code plus message for stderr.
struct Failure(i32, String);

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => EXIT_BUDGET,
            Error::VerificationFailed { .. } => EXIT_VERIFICATION,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
    threads: usize,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        let s = if self.json { serde_json::to_string_pretty(value).map_err(|e| Failure(EXIT_INPUT, e.to_string()))? } else { text() };
        writeln!(self.out, "{s}").map_err(|e| Failure(EXIT_INPUT, e.to_string()))
    }
}

fn resolve_threads(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return if n == 0 { Err(Failure(EXIT_INPUT, "--threads must be at least 1".into())) } else { Ok(n) };
    }
    match std::env::var("NOGO_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Failure(EXIT_INPUT, format!("NOGO_THREADS: expected a positive integer, found {v:?}"))),
        },
        Err(_) => Ok(available_threads()),
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "nogo: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    let common = match &cmd {
        Command::CheckValuation { common, .. }
        | Command::Lift { common, .. }
        | Command::TensorId { common, .. }
        | Command::BellSim { common, .. }
        | Command::BellCertificate { common }
        | Command::Falsify { common, .. }
        | Command::JointSpectrum { common, .. }
        | Command::Selfcheck { common } => *common,
    };
    let mut ctx = Ctx { out, json: common.json, threads: resolve_threads(common.threads)? };
    match cmd {
        Command::CheckValuation { file, general, tol, budget, sat, .. } => check_valuation(&mut ctx, &file, general, tol, budget, sat),
        Command::Lift { input, to_dim, out, budget, .. } => lift(&mut ctx, &input, to_dim, &out, budget),
        Command::TensorId { input, k, out, budget, .. } => tensor_id(&mut ctx, &input, k, &out, budget),
        Command::BellSim { state, obs, mc, seed, .. } => bell_sim(&mut ctx, &state, &obs, mc, seed),
        Command::BellCertificate { .. } => {
            let cert = convex_extension_certificate();
            // The certificate is JSON either way.
            ctx.json = true;
            ctx.emit(&cert, String::new)?;
            Ok(EXIT_OK)
        }
        Command::Falsify { file, budget, seed, tol, hook, .. } => falsify_cmd(&mut ctx, &file, FalsifyOptions { budget, seed, tol }, hook),
        Command::JointSpectrum { file, tol, .. } => joint_spectrum_cmd(&mut ctx, &file, tol),
        Command::Selfcheck { .. } => {
            let report = selfcheck(ctx.threads);
            let passed = report.passed();
            ctx.emit(&report, || {
                let mut s = String::new();
                for c in &report.checks {
                    s.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
                }
                s.push_str(if passed { "selfcheck passed" } else { "selfcheck FAILED" });
                s
            })?;
            Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
        }
    }
}

fn is_observable_file(path: &str, text: &str) -> Result<bool, Failure> {
    let v: serde_json::Value = parse_json(path, text)?;
    Ok(v.get("operators").is_some())
}

fn outcome_code(outcome: &SearchOutcome, expected: Option<Expected>) -> i32 {
    if let SearchOutcome::Budget { .. } = outcome {
        return EXIT_BUDGET;
    }
    if matches_expected(outcome, expected) == Some(true) {
        return EXIT_OK;
    }
    if outcome.is_found() {
        EXIT_FOUND
    } else {
        EXIT_NONE
    }
}

fn projections<S: Scalar>(rs: &RaySet<S>) -> Vec<Observable<S>> {
    rs.rays().iter().map(|r| r.projector()).collect()
}

fn check_valuation(ctx: &mut Ctx, path: &str, general: bool, tol: f64, budget: Option<u64>, sat: bool) -> CmdResult {
    let text = read_file(path)?;
    let opts = GeneralOptions { tol, budget: budget.or(GeneralOptions::default().budget) };
    if is_observable_file(path, &text)? {
        let (file, obs) = load_observables(path, &text, tol)?;
        let report = check_observables(&file.name, &obs, opts)?;
        let code = if report.consistent() { outcome_code(&report.certificate.outcome, file.expected) } else { EXIT_VERIFICATION };
        ctx.emit(&json!({ "report": report, "expected": file.expected, "exit_code": code }), || {
            format!("{}: {} ({} observables, {} nodes)", report.name, outcome_word(&report.certificate.outcome), report.observables, report.certificate.nodes)
        })?;
        return Ok(code);
    }
    let (file, rs) = load_rayset(path, &text, tol)?;
    if general {
        let obs = match &rs {
            AnyRaySet::Exact(r) => AnyObservables::Exact(projections(r)),
            AnyRaySet::Float(r) => AnyObservables::Float(projections(r)),
        };
        let report = check_observables(&file.name, &obs, opts)?;
        let code = if report.consistent() { outcome_code(&report.certificate.outcome, file.expected) } else { EXIT_VERIFICATION };
        ctx.emit(&json!({ "report": report, "expected": file.expected, "exit_code": code }), || {
            format!("{}: {} (general solver, {} nodes)", report.name, outcome_word(&report.certificate.outcome), report.certificate.nodes)
        })?;
        return Ok(code);
    }
    let report = check_rayset(&rs, tol, budget, ctx.threads, sat)?;
    let code = if report.consistent() { outcome_code(&report.certificate.outcome, file.expected) } else { EXIT_VERIFICATION };
    ctx.emit(&json!({ "report": report, "expected": file.expected, "exit_code": code }), || {
        let mut s = format!(
            "{}: {} ({} rays, {} orthogonal pairs, {} bases, ~{} nodes)",
            report.name,
            outcome_word(&report.certificate.outcome),
            report.rays,
            report.pairs,
            report.bases,
            report.certificate.nodes
        );
        if let Some(v) = report.certificate.outcome.valuation() {
            let ones: Vec<String> = v.values.iter().enumerate().filter(|(_, &x)| x == 1.0).map(|(i, _)| i.to_string()).collect();
            s.push_str(&format!("\nrays valued 1: {}", ones.join(" ")));
        }
        if let Some(sat) = report.sat_satisfiable {
            s.push_str(&format!("\nSAT encoding: {}", if sat { "satisfiable" } else { "unsatisfiable" }));
        }
        if let Some(e) = file.expected {
            s.push_str(&format!("\nexpected: {}", if e == Expected::Colorable { "colorable" } else { "uncolorable" }));
        }
        s
    })?;
    Ok(code)
}

fn write_json<T: Serialize>(path: &str, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))
}

fn lift(ctx: &mut Ctx, input: &str, to: usize, out: &str, budget: Option<u64>) -> CmdResult {
    let text = read_file(input)?;
    let (_, rs) = load_rayset(input, &text, DEFAULT_TOL)?;
    let opts = LiftOptions { budget: budget.or(LiftOptions::default().budget), ..LiftOptions::default() };
    let mut file = match &rs {
        AnyRaySet::Exact(r) => {
            let l = lift_rayset(r, to, opts)?;
            let mut f = rayset_file_exact(&l.rays);
            f.recipe = Some(l.recipe);
            f.certificate = Some(l.certificate);
            f
        }
        AnyRaySet::Float(r) => {
            let l = lift_rayset(r, to, opts)?;
            let mut f = rayset_file_float(&l.rays);
            f.recipe = Some(l.recipe);
            f.certificate = Some(l.certificate);
            f
        }
    };
    file.expected = Some(Expected::Uncolorable);
    file.verified = file.certificate.as_ref().is_some_and(|c| c.outcome.is_exhausted());
    write_json(out, &file)?;
    let summary = json!({ "out": out, "dim": file.dim, "rays": file.rays.len(), "verified": file.verified, "certificate": file.certificate });
    ctx.emit(&summary, || format!("wrote {out}: {} rays in dimension {}, verified uncolorable", file.rays.len(), file.dim))?;
    Ok(EXIT_OK)
}

fn tensor_id(ctx: &mut Ctx, input: &str, k: usize, out: &str, budget: Option<u64>) -> CmdResult {
    let text = read_file(input)?;
    let (src, rs) = load_rayset(input, &text, DEFAULT_TOL)?;
    let opts = GeneralOptions { budget: budget.or(GeneralOptions::default().budget), ..GeneralOptions::default() };
    let name = format!("{} tensored with a {k}-dimensional identity", src.name);
    let mut file = match &rs {
        AnyRaySet::Exact(r) => {
            let t = tensor_modulo_identity(r, k, opts)?;
            let mut f = observable_file(&name, &t.observables, exact_json, ScalarMode::Exact);
            f.certificate = Some(t.certificate);
            f
        }
        AnyRaySet::Float(r) => {
            let t = tensor_modulo_identity(r, k, opts)?;
            let mut f = observable_file(&name, &t.observables, float_json, ScalarMode::Float);
            f.certificate = Some(t.certificate);
            f
        }
    };
    file.expected = Some(Expected::Uncolorable);
    file.verified = file.certificate.as_ref().is_some_and(|c| c.outcome.is_exhausted());
    write_json(out, &file)?;
    let summary = json!({ "out": out, "dim": file.dim, "observables": file.operators.len(), "verified": file.verified, "certificate": file.certificate });
    ctx.emit(&summary, || format!("wrote {out}: {} observables in dimension {}, verified without valuation", file.operators.len(), file.dim))?;
    Ok(EXIT_OK)
}

fn bell_sim(ctx: &mut Ctx, state: &str, obs: &str, mc: Option<u64>, seed: u64) -> CmdResult {
    let n = parse_floats(state, 3).map_err(|e| Failure(EXIT_INPUT, format!("--state: {e}")))?;
    let s = BlochState::new([n[0], n[1], n[2]])?;
    let a = parse_qubit_observable(obs).map_err(|e| Failure(EXIT_INPUT, format!("--obs: {e}")))?;
    let exact = expectation_exact(&s, &a)?;
    let born = born_expectation(&s, &a)?;
    match mc {
        None => {
            ctx.emit(&json!({ "state": n, "exact": exact, "born": born }), || format!("exact average {exact}\nTr(ρA)        {born}"))?;
        }
        Some(samples) => {
            let d = decompose(&a)?;
            let est = expectation_mc_parallel(&s, &d, samples, seed, ctx.threads)?;
            let threads = ctx.threads;
            let z = if est.stderr > 0.0 { (est.estimate - exact).abs() / est.stderr } else { 0.0 };
            ctx.emit(&json!({ "state": n, "exact": exact, "born": born, "mc": est, "seed": seed, "threads": threads }), || {
                format!(
                    "Monte Carlo {} samples (seed {seed}, {} threads): {} ± {}\nexact average {exact} ({z:.2} standard errors away)",
                    est.samples, threads, est.estimate, est.stderr
                )
            })?;
        }
    }
    Ok(EXIT_OK)
}

fn falsify_cmd(ctx: &mut Ctx, path: &str, opts: FalsifyOptions, hook: HookKind) -> CmdResult {
    let text = read_file(path)?;
    let c = load_candidate(path, &text)?;
    let mut trivial = TrivialPureHook;
    let mut bell;
    let hook: Option<&mut dyn ExtensionHook> = match hook {
        HookKind::None => None,
        HookKind::Trivial => Some(&mut trivial),
        HookKind::Bell => {
            bell = BellHook::new(BlochState::new([0.0, 0.0, 1.0])?, c.lambda().len());
            if c.dim() != 2 || !bell.matches(&c) {
                return Err(Failure(EXIT_INPUT, "--hook bell needs a qubit candidate whose lambda labels are the midpoint grid on [-1, 1]".into()));
            }
            Some(&mut bell)
        }
    };
    match falsify(&c, hook, opts) {
        Ok(FalsifyOutcome::Violation { violation, round, .. }) => {
            ctx.emit(&json!({ "outcome": "violation", "round": round, "violation": violation }), || {
                let at = round.map_or("listed tables".to_string(), |r| format!("probe round {r}"));
                format!("violation ({:?}) on {at}: gap {}\n{}", violation.kind, violation.gap, serde_json::to_string_pretty(&violation).unwrap_or_default())
            })?;
            Ok(EXIT_OK)
        }
        Ok(FalsifyOutcome::Budget { rounds }) => {
            ctx.emit(&json!({ "outcome": "budget", "rounds": rounds }), || format!("no violation after {rounds} probe rounds"))?;
            Ok(EXIT_BUDGET)
        }
        Err(Error::HookRequired) => {
            ctx.emit(&json!({ "outcome": "budget", "rounds": 0, "reason": "listed tables are consistent and probing is disabled" }), || {
                "listed tables are consistent; probing is disabled (--hook none)".to_string()
            })?;
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

fn joint_spectrum_cmd(ctx: &mut Ctx, path: &str, tol: f64) -> CmdResult {
    let text = read_file(path)?;
    let (_, obs) = load_observables(path, &text, tol)?;
    let (set, err) = match &obs {
        AnyObservables::Exact(o) => {
            let s = joint_spectrum(o, tol)?;
            let e = s.reconstruction_error(o)?;
            (s, e)
        }
        AnyObservables::Float(o) => {
            let s = joint_spectrum(o, tol)?;
            let e = s.reconstruction_error(o)?;
            (s, e)
        }
    };
    let tuples = set.tuples();
    let multiplicities: Vec<usize> = set.points.iter().map(|p| p.multiplicity()).collect();
    ctx.emit(&json!({ "points": tuples, "multiplicities": multiplicities, "reconstruction_error": err }), || format_tuples(&tuples))?;
    Ok(EXIT_OK)
}
