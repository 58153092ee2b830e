//! Command dispatch. Exit codes: 0 success, 1 violation or unexpected
//! witness, 2 usage or parse error, 3 resource cap.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::config::{ConfigError, SessionConfig};
use super::eval::{algebra_from_str, series_from_str};
use super::parse::parse_word;
use crate::cyclicalg::subfield::{DEFAULT_PROBE_HEIGHT, DEFAULT_ROOT_HEIGHT};
use crate::cyclicalg::{
    autocommutator_probe, galois_roots, self_invariance_report, span_closure, AlgebraSummary,
    AutocommOutcome, CyclicAlgebra, SpanClosure, Subfield, SubfieldReport,
};
use crate::error::{AlgebraError, EvalError, FreeGroupError, ParseError, SeriesError};
use crate::freegroup::{try_compare_with_cap, Word};
use crate::mnseries::{self_invariance_probe, CaseTag, ProbeTrace, RingHandle, Series};
use crate::subnormal::{chain_report, ChainParams, ChainReport};

pub const SCHEMA: &str = "malcev.report/v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "malcev", version, about = "Exact Mal'cev-Neumann series and cyclic algebra checks")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Sampling seed (overrides config).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// TOML session config.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare two words in the Magnus order.
    Order { u: String, w: String },
    /// Evaluate a series expression.
    Eval {
        expr: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Invert a series and check the product against 1.
    Invert {
        expr: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Search for ℓ with γ h^ℓ γ⁻¹ outside Δ((h)).
    ProbeSelfinv {
        #[arg(long)]
        h: String,
        #[arg(long)]
        gamma: String,
        #[arg(long, allow_negative_numbers = true)]
        lmin: i64,
        #[arg(long, allow_negative_numbers = true)]
        lmax: i64,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Inclusion and sampled normality for the chain v⁻¹(⟨g⟩_i).
    Chain {
        #[arg(long)]
        g: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        ball: usize,
        #[arg(long)]
        samples: Option<usize>,
        /// Inline every sample's certificate.
        #[arg(long)]
        certificates: bool,
    },
    /// Cyclic algebra reports.
    Cyclic {
        /// lam-14-16, quaternion, or custom (from the config's [algebra] table).
        #[arg(long)]
        preset: String,
        #[command(subcommand)]
        action: CyclicAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CyclicAction {
    /// The algebra and its generating subfields.
    Report,
    /// Self-invariance of ℚ(GEN).
    Selfinv { gen: String },
    /// The span K + Kx + Kx² + ⋯ for K = ℚ(GEN).
    Span {
        gen: String,
        x: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Witnesses x ∈ ℚ(GEN) with x⁻¹τ(x) ∉ ℚ for each nontrivial root τ.
    Autocomm {
        gen: String,
        #[arg(long, default_value_t = DEFAULT_PROBE_HEIGHT)]
        height: i64,
    },
}

/// Everything a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

fn group_code(e: &FreeGroupError) -> i32 {
    match e {
        FreeGroupError::DegreeCapExhausted { .. }
        | FreeGroupError::CoefficientOverflow
        | FreeGroupError::BudgetExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn algebra_code(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::RootSearchExhausted { .. } | AlgebraError::LambdaCapReached { .. } => EXIT_CAP,
        AlgebraError::Singular(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage(e)
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::usage(e)
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        let code = match &e {
            SeriesError::Group(g) => group_code(g),
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FreeGroupError> for Failure {
    fn from(e: FreeGroupError) -> Self {
        Failure {
            code: group_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure {
            code: algebra_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Series(s) => s.into(),
            EvalError::Algebra(a) => a.into(),
            other => Failure::usage(other),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    exit_code: i32,
    config: &'a SessionConfig,
    result: T,
}

struct Rendered {
    code: i32,
    command: &'static str,
    text: String,
    json: serde_json::Value,
}

fn rendered<T: Serialize>(code: i32, command: &'static str, text: String, result: &T) -> Rendered {
    Rendered {
        code,
        command,
        text,
        json: serde_json::to_value(result).expect("reports serialize"),
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T, E, K, V>(args: I, env: E) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    E: IntoIterator<Item = (K, V)>,
    K: AsRef<str>,
    V: AsRef<str>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut cfg = match SessionConfig::load(cli.config.as_deref(), env) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    match dispatch(&cli.command, &cfg) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Structured => {
                    let env = Envelope {
                        schema: SCHEMA,
                        command: r.command,
                        exit_code: r.code,
                        config: &cfg,
                        result: r.json,
                    };
                    serde_json::to_string_pretty(&env).unwrap() + "\n"
                }
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn word_in(text: &str, cfg: &SessionConfig) -> Result<Word, Failure> {
    let w = parse_word(text)?;
    if w.max_generator() > cfg.rank {
        return Err(Failure::usage(format!("{w} uses a generator beyond rank {}", cfg.rank)));
    }
    Ok(w)
}

fn dispatch(cmd: &Command, cfg: &SessionConfig) -> Result<Rendered, Failure> {
    match cmd {
        Command::Order { u, w } => {
            let (u, w) = (word_in(u, cfg)?, word_in(w, cfg)?);
            let o = try_compare_with_cap(&u, &w, cfg.degree_cap)?;
            let s = match o {
                Ordering::Less => "LT",
                Ordering::Equal => "EQ",
                Ordering::Greater => "GT",
            };
            #[derive(Serialize)]
            struct R<'a> {
                u: &'a Word,
                w: &'a Word,
                result: &'a str,
            }
            Ok(rendered(EXIT_OK, "order", format!("{s}\n"), &R { u: &u, w: &w, result: s }))
        }
        Command::Eval { expr, depth } => {
            let ring = cfg.ring()?;
            let s = series_from_str(expr, &ring, depth.unwrap_or(cfg.depth))?;
            #[derive(Serialize)]
            struct R<'a> {
                value: &'a Series,
            }
            Ok(rendered(EXIT_OK, "eval", format!("{s}\n"), &R { value: &s }))
        }
        Command::Invert { expr, depth } => {
            let ring = cfg.ring()?;
            let depth = depth.unwrap_or(cfg.depth);
            let a = series_from_str(expr, &ring, depth)?;
            let inv = a.invert(depth)?;
            let check = a.mul(&inv).agrees_with(&ring.one());
            #[derive(Serialize)]
            struct R<'a> {
                input: &'a Series,
                inverse: &'a Series,
                product_agrees_with_one: bool,
            }
            let text = format!(
                "inverse: {inv}\ncheck: product {} 1 within precision\n",
                if check { "agrees with" } else { "DIFFERS from" }
            );
            let code = if check { EXIT_OK } else { EXIT_VIOLATION };
            Ok(rendered(code, "invert", text, &R { input: &a, inverse: &inv, product_agrees_with_one: check }))
        }
        Command::ProbeSelfinv { h, gamma, lmin, lmax, depth } => {
            let ring = cfg.ring()?;
            let depth = depth.unwrap_or(cfg.depth);
            let h = word_in(h, cfg)?;
            let gamma = series_from_str(gamma, &ring, depth)?;
            if lmin > lmax {
                return Err(Failure::usage(format!("empty range [{lmin}, {lmax}]")));
            }
            let trace = self_invariance_probe(&gamma, &h, (*lmin, *lmax), depth)?;
            let sound = probe_is_sound(&trace);
            let text = probe_text(&trace, sound);
            #[derive(Serialize)]
            struct R<'a> {
                trace: &'a ProbeTrace,
                inconclusive: bool,
                recheck_passed: bool,
            }
            let code = if sound { EXIT_OK } else { EXIT_VIOLATION };
            Ok(rendered(
                code,
                "probe-selfinv",
                text,
                &R { trace: &trace, inconclusive: !trace.is_violation(), recheck_passed: sound },
            ))
        }
        Command::Chain { g, depth, ball, samples, certificates } => {
            let x = word_in(g, cfg)?;
            let mut p = ChainParams::new(cfg.group()?, x, *depth, *ball);
            p.samples = samples.unwrap_or(cfg.samples);
            p.seed = cfg.seed;
            p.budget = cfg.ball_budget;
            p.inline_certificates = *certificates;
            let rep = chain_report(&p)?;
            let code = if rep.passed { EXIT_OK } else { EXIT_VIOLATION };
            Ok(rendered(code, "chain", chain_text(&rep), &rep))
        }
        Command::Cyclic { preset, action } => {
            let alg = cfg.algebra(preset)?;
            cyclic(&alg, action, cfg)
        }
    }
}

/// Recheck of a probe result without a second inversion: `λγ = γh^ℓ` inside
/// `λ`'s window, and the case tag recomputed from the recorded valuations.
fn probe_is_sound(t: &ProbeTrace) -> bool {
    let Some(v) = &t.violation else {
        return true;
    };
    let ring = t.gamma.ring();
    let lhs = v.lambda.mul(&t.gamma);
    let rhs = t.gamma.mul(&ring.word(t.h.pow(v.ell)));
    let w = &v.witness;
    let witness_ok = w.power_of(&t.h).is_none() && v.lambda.coefficient(w).is_some();
    let tag = CaseTag::from_ordering(crate::freegroup::compare(&v.v_eps_h_ell, &v.v_lambda_eps));
    lhs.agrees_with(&rhs) && witness_ok && tag == t.case_tag
}

fn probe_text(t: &ProbeTrace, sound: bool) -> String {
    let mut s = String::new();
    writeln!(s, "gamma: {}", t.gamma).unwrap();
    writeln!(s, "h: {}", t.h).unwrap();
    writeln!(s, "delta: {}", t.delta).unwrap();
    writeln!(s, "epsilon: {}", t.epsilon).unwrap();
    match &t.violation {
        Some(v) => {
            writeln!(s, "violation at l = {}: lambda = {}", v.ell, v.lambda).unwrap();
            writeln!(s, "witness: {} is not a power of {}", v.witness, t.h).unwrap();
            writeln!(
                s,
                "case: {:?} (v(eps h^l) = {}, v(lambda eps) = {})",
                t.case_tag, v.v_eps_h_ell, v.v_lambda_eps
            )
            .unwrap();
            writeln!(s, "recheck: {}", if sound { "ok" } else { "FAILED" }).unwrap();
        }
        None => writeln!(
            s,
            "no violation for l in [{}, {}] (inconclusive)",
            t.ell_range.0, t.ell_range.1
        )
        .unwrap(),
    }
    s
}

fn chain_text(r: &ChainReport) -> String {
    let mut s = String::new();
    writeln!(s, "chain for {} with length bound {} (cross-check bound {})", r.x, r.max_len, r.enlarged_len).unwrap();
    for l in &r.levels {
        writeln!(
            s,
            "level {}: {} words, inside level {} ({} words): {}; samples {}, counterexamples {}, enlarged-ball hits {}/{}",
            l.depth,
            l.inclusion.members,
            l.depth - 1,
            l.inclusion.previous_members,
            if l.inclusion.holds { "yes" } else { "NO" },
            l.samples,
            l.counterexamples.len(),
            l.found_in_enlarged_ball,
            l.checked_in_enlarged_ball,
        )
        .unwrap();
        for c in &l.counterexamples {
            writeln!(s, "  counterexample: alpha = {}, beta = {}: {}", c.alpha, c.beta, c.reason).unwrap();
        }
    }
    for n in &r.not_checked {
        writeln!(s, "not checked: {n}").unwrap();
    }
    writeln!(s, "chain: {}", if r.passed { "pass" } else { "FAIL" }).unwrap();
    s
}

fn subfield_text(r: &SubfieldReport) -> String {
    let mut s = String::new();
    match (r.self_invariant, r.normalizer_witnesses.iter().find_map(|w| w.witness.as_ref())) {
        (true, _) => writeln!(s, "self-invariant").unwrap(),
        (false, Some(w)) => writeln!(s, "not self-invariant; witness {w}").unwrap(),
        (false, None) => writeln!(s, "not self-invariant; centralizer larger than K").unwrap(),
    }
    writeln!(s, "K = Q({}), minimal polynomial {}, degree {}", r.generator, r.min_poly_over_f, r.degree).unwrap();
    writeln!(
        s,
        "maximal: {} (centralizer dimension {}, dim_F D = {})",
        r.is_maximal, r.centralizer_dim, r.dim_f_algebra
    )
    .unwrap();
    let roots: Vec<String> = r.galois.roots.iter().map(|p| p.fmt_with("t")).collect();
    writeln!(
        s,
        "galois roots: {} ({})",
        roots.join(", "),
        if r.galois_trivial { "trivial" } else { "nontrivial" }
    )
    .unwrap();
    for w in &r.normalizer_witnesses {
        writeln!(
            s,
            "  t -> {}: {}",
            w.root,
            w.witness.as_deref().map_or("no normalizing element".to_string(), |x| format!("realized by {x}"))
        )
        .unwrap();
    }
    writeln!(s, "degmax lower bound: {}", r.degmax_lower_bound).unwrap();
    s
}

#[derive(Serialize)]
struct AlgebraReport {
    algebra: AlgebraSummary,
    u_power_is_a: bool,
    u_conjugation_is_sigma: bool,
    subfields: Vec<SubfieldReport>,
}

fn cyclic(alg: &CyclicAlgebra, action: &CyclicAction, cfg: &SessionConfig) -> Result<Rendered, Failure> {
    match action {
        CyclicAction::Report => {
            let u = alg.u();
            let u_power_is_a = alg.pow(&u, alg.n() as u32) == alg.scalar(alg.parameter().clone());
            let u_inv = alg.inv(&u)?;
            let u_conjugation_is_sigma = (0..alg.n()).all(|i| {
                let b = alg.basis_element(i, 0);
                let lhs = alg.mul(&alg.mul(&u, &b), &u_inv);
                let p = alg.as_k(&b).unwrap();
                lhs == alg.from_k(&alg.sigma_pow(&p, 1))
            });
            let mut gens = vec![alg.v()];
            gens.extend(alg.aliases().iter().map(|(_, x)| x.clone()));
            let subfields = gens
                .iter()
                .map(|g| self_invariance_report(alg, g))
                .collect::<Result<Vec<_>, _>>()?;
            let sum = alg.summary();
            let mut s = String::new();
            writeln!(
                s,
                "{}: K = Q(v), {} = 0, sigma(v) = {}, u^{} = {}, dim_F = {}",
                sum.name, sum.minpoly, sum.sigma_image, sum.n, sum.a, sum.dim_f
            )
            .unwrap();
            writeln!(s, "u^n = a: {u_power_is_a}; u k u^-1 = sigma(k): {u_conjugation_is_sigma}").unwrap();
            for (name, r) in std::iter::once("v".to_string())
                .chain(alg.aliases().iter().map(|(n, _)| n.clone()))
                .zip(&subfields)
            {
                writeln!(s, "subfield Q({name}):").unwrap();
                for line in subfield_text(r).lines() {
                    writeln!(s, "  {line}").unwrap();
                }
            }
            let ok = u_power_is_a && u_conjugation_is_sigma;
            let rep = AlgebraReport { algebra: sum, u_power_is_a, u_conjugation_is_sigma, subfields };
            Ok(rendered(if ok { EXIT_OK } else { EXIT_VIOLATION }, "cyclic-report", s, &rep))
        }
        CyclicAction::Selfinv { gen } => {
            let g = algebra_from_str(gen, alg)?;
            let r = self_invariance_report(alg, &g)?;
            let code = if r.identity_consistent == r.is_maximal { EXIT_OK } else { EXIT_VIOLATION };
            Ok(rendered(code, "cyclic-selfinv", subfield_text(&r), &r))
        }
        CyclicAction::Span { gen, x, samples } => {
            let g = algebra_from_str(gen, alg)?;
            let x = algebra_from_str(x, alg)?;
            let k = Subfield::generated_by(alg, &g);
            let r: SpanClosure = span_closure(alg, &k.basis, &x, *samples, cfg.seed)?;
            let text = format!(
                "dim_K {}, dim_F {}, stabilized at power {}, closed under multiplication: {}, inverses inside: {}/{}\n",
                r.dim_over_k, r.dim_f, r.stabilized_at, r.closed_under_mul, r.inverses_inside, r.inversion_samples
            );
            let ok = r.closed_under_mul && (!alg.verified_division() || r.is_division_closed());
            Ok(rendered(if ok { EXIT_OK } else { EXIT_VIOLATION }, "cyclic-span", text, &r))
        }
        CyclicAction::Autocomm { gen, height } => {
            let g = algebra_from_str(gen, alg)?;
            let k = Subfield::generated_by(alg, &g);
            let roots = galois_roots(&k.min_poly, DEFAULT_ROOT_HEIGHT)?;
            let maximal = (k.degree() * k.degree()) == alg.dim_f()
                && crate::cyclicalg::is_maximal_subfield(alg, &k.basis)?;
            #[derive(Serialize)]
            struct Entry {
                root: String,
                outcome: AutocommOutcome,
            }
            let mut entries = Vec::new();
            let mut s = String::new();
            let mut missing = false;
            for root in roots.roots.iter().skip(1) {
                let out = autocommutator_probe(alg, &g, root, *height)?;
                match &out {
                    AutocommOutcome::Witness { x, quotient, .. } => {
                        writeln!(s, "t -> {}: witness {x}, x^-1 tau(x) = {quotient}", root.fmt_with("t")).unwrap()
                    }
                    AutocommOutcome::Exhausted { height } => {
                        missing |= maximal;
                        writeln!(s, "t -> {}: no witness up to height {height}", root.fmt_with("t")).unwrap()
                    }
                }
                entries.push(Entry { root: root.fmt_with("t"), outcome: out });
            }
            if entries.is_empty() {
                writeln!(s, "Galois group trivial; nothing to probe").unwrap();
            }
            #[derive(Serialize)]
            struct R {
                generator: String,
                maximal: bool,
                probes: Vec<Entry>,
            }
            let r = R { generator: alg.fmt_element(&g), maximal, probes: entries };
            Ok(rendered(if missing { EXIT_VIOLATION } else { EXIT_OK }, "cyclic-autocomm", s, &r))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        let mut v = vec!["malcev"];
        v.extend_from_slice(args);
        run(v, Vec::<(String, String)>::new())
    }

    #[test]
    fn order_command() {
        let o = go(&["order", "y", "x"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "LT\n"));
        assert_eq!(go(&["order", "x", "x"]).stdout, "EQ\n");
        assert_eq!(go(&["order", "x**", "x"]).code, 2);
        assert_eq!(go(&["order", "z", "x"]).code, 2);
        assert_eq!(go(&["bogus"]).code, 2);
    }

    #[test]
    fn structured_envelope() {
        let o = go(&["--format", "structured", "order", "y", "x"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["result"]["result"], "LT");
    }

    #[test]
    fn probe_command() {
        let o = go(&["probe-selfinv", "--h", "x", "--gamma", "1+y", "--lmin", "-2", "--lmax", "2"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.contains("violation at l = -2"), "{}", o.stdout);
        let o = go(&["probe-selfinv", "--h", "X", "--gamma", "1+y", "--lmin", "1", "--lmax", "2"]);
        assert_eq!(o.code, 2);
    }

    #[test]
    fn cyclic_selfinv_command() {
        let o = go(&["cyclic", "--preset", "quaternion", "selfinv", "v"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().next(), Some("not self-invariant; witness u"));
        let o = go(&["cyclic", "--preset", "nope", "report"]);
        assert_eq!(o.code, 2);
    }

    #[test]
    fn caps_exit_three() {
        let mut v = vec!["malcev", "chain", "--g", "x", "--depth", "1", "--ball", "6"];
        v.push("--samples");
        v.push("1");
        let o = run(v, [("MALCEV_BALL_BUDGET", "100")]);
        assert_eq!(o.code, 3, "{o:?}");
        let o = run(["malcev", "order", "XYxy", "1"], [("MALCEV_DEGREE_CAP", "1")]);
        assert_eq!(o.code, 3);
    }
}
