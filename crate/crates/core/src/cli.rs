//! Batch entry point: one subcommand per verification suite, one JSON
//! report per run.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grouplab::{
    antisymmetry_check, biplicativity_check, cocycle_check, lambda_constant, Bicharacter,
    FinGroup, FiniteBichar, GroupExchange, BICHAR_TOLERANCE,
};
use crate::ncpoly::{normal_form, parse_expr, Presentation};
use crate::{fintwist, qgroup, spectra};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "twistlab", version, about = "Checks for the twisted upper-triangular quantum group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl Cli {
    /// Parse a full argument list (program name first) without exiting.
    pub fn parse_args<I, T>(args: I) -> std::result::Result<Self, String>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Self::try_parse_from(args).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresentationName {
    Qtriag,
    Polar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BicharKind {
    /// `Z × R₊*`.
    Zxr,
    /// The additive group `C`.
    C,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Nf {
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "qtriag")]
        presentation: PresentationName,
    },
    /// Defining relations, the polar derivation of q and the q-ladder.
    CheckRelations {
        #[arg(long, default_value_t = 5)]
        ladder: i32,
    },
    /// Homomorphism, adjoint and coassociativity checks of the coproduct.
    CheckCoassoc,
    /// The flipped coproduct in the `s -> 1/s` presentation.
    CheckFlip,
    /// Finite-ring twisting suite.
    Fintwist {
        #[arg(long, default_value_t = 5)]
        n: u64,
        /// `i^{ab}`, `zeta^{ab}` (primitive |K|-th root) or `trivial`.
        #[arg(long, default_value = "i^{ab}")]
        bichar: String,
        /// Group exchange JSON; its table, if any, replaces `--bichar`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Spectrum of the truncated modular element.
    Spectrum {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 50)]
        trunc: usize,
        /// Also write `mode,eigenvalue` rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Relation residuals on the truncated lattice model.
    Qtorus {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 64)]
        trunc: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Largest `m`, `n` in the `a^m (b*)^n` cross-validation.
        #[arg(long, default_value_t = 3)]
        max_power: u32,
    },
    /// Sampled cocycle, antisymmetry and biplicativity checks.
    Cocycle {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, value_enum, default_value = "zxr")]
        kind: BicharKind,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Compare the point spectra for two deformation parameters.
    Witness {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Nf { .. } => "nf",
            Command::CheckRelations { .. } => "check-relations",
            Command::CheckCoassoc => "check-coassoc",
            Command::CheckFlip => "check-flip",
            Command::Fintwist { .. } => "fintwist",
            Command::Spectrum { .. } => "spectrum",
            Command::Qtorus { .. } => "qtorus",
            Command::Cocycle { .. } => "cocycle",
            Command::Witness { .. } => "witness",
        }
    }

    fn params(&self) -> BTreeMap<String, Value> {
        let v = match self {
            Command::Nf { expr, presentation } => {
                json!({"expr": expr, "presentation": format!("{presentation:?}").to_lowercase()})
            }
            Command::CheckRelations { ladder } => json!({ "ladder": ladder }),
            Command::CheckCoassoc | Command::CheckFlip => json!({}),
            Command::Fintwist { n, bichar, input } => {
                json!({"n": n, "bichar": bichar, "input": input.as_ref().map(|p| p.display().to_string())})
            }
            Command::Spectrum { x, trunc, csv } => {
                json!({"x": x, "trunc": trunc, "csv": csv.as_ref().map(|p| p.display().to_string())})
            }
            Command::Qtorus { x, trunc, depth, max_power } => {
                json!({"x": x, "trunc": trunc, "depth": depth, "max_power": max_power})
            }
            Command::Cocycle { x, kind, samples } => {
                json!({"x": x, "kind": format!("{kind:?}").to_lowercase(), "samples": samples})
            }
            Command::Witness { x, y } => json!({"x": x, "y": y}),
        };
        serde_json::from_value(v).expect("params are an object")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when `value ≤ tolerance`.
    AtMost,
    /// Passes when `value > tolerance` (negative controls).
    Above,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
    pub bound: Bound,
}

impl Residual {
    pub fn passes(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.tolerance,
            Bound::Above => self.value > self.tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub residuals: BTreeMap<String, Residual>,
    pub values: BTreeMap<String, Value>,
    pub timing_ms: f64,
    pub tool_version: String,
    pub seed: u64,
    pub error: Option<String>,
}

impl Report {
    /// Pretty JSON with every object's keys sorted.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    /// [`Report::to_json`] with `timing_ms` removed, for determinism checks.
    pub fn to_json_untimed(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timing_ms");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

/// Accumulates residuals and values while a command runs.
#[derive(Default)]
struct Outcome {
    residuals: BTreeMap<String, Residual>,
    values: BTreeMap<String, Value>,
}

impl Outcome {
    fn at_most(&mut self, name: &str, value: f64, tolerance: f64) {
        self.residuals.insert(name.into(), Residual { value, tolerance, bound: Bound::AtMost });
    }

    fn above(&mut self, name: &str, value: f64, tolerance: f64) {
        self.residuals.insert(name.into(), Residual { value, tolerance, bound: Bound::Above });
    }

    fn value(&mut self, name: &str, v: impl Serialize) {
        self.values.insert(name.into(), serde_json::to_value(v).expect("value serializes"));
    }
}

/// Run one command. Module errors end up in the `error` field with
/// `pass = false`.
pub fn run(command: &Command, seed: u64) -> Report {
    let start = Instant::now();
    let mut out = Outcome::default();
    let error = dispatch(command, seed, &mut out).err().map(|e| e.to_string());
    let pass = error.is_none() && out.residuals.values().all(Residual::passes);
    Report {
        schema: SCHEMA_VERSION,
        command: command.name().into(),
        params: command.params(),
        pass,
        residuals: out.residuals,
        values: out.values,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        seed,
        error,
    }
}

fn presentation(name: PresentationName) -> Presentation {
    match name {
        PresentationName::Qtriag => qgroup::qtriag_presentation(),
        PresentationName::Polar => qgroup::polar_presentation(),
    }
}

fn dispatch(command: &Command, seed: u64, out: &mut Outcome) -> Result<()> {
    match command {
        Command::Nf { expr, presentation: name } => {
            let p = presentation(*name);
            let nf = normal_form(&parse_expr(expr, &p)?, &p)?;
            out.value("normal_form", nf.display(&p).to_string());
            out.value("terms", nf.num_terms());
        }
        Command::CheckRelations { ladder } => check_relations(*ladder, out)?,
        Command::CheckCoassoc => symbolic(qgroup::check_coproduct()?, out),
        Command::CheckFlip => symbolic(qgroup::check_flip_symmetry()?, out),
        Command::Fintwist { n, bichar, input } => fintwist_cmd(*n, bichar, input.as_deref(), seed, out)?,
        Command::Spectrum { x, trunc, csv } => spectrum_cmd(*x, *trunc, csv.as_deref(), out)?,
        Command::Qtorus { x, trunc, depth, max_power } => {
            let model = spectra::build_qtorus(*x, *trunc)?;
            let rel = spectra::relation_residuals(&model, *depth)?;
            let cross = spectra::cross_validate(&model, *max_power)?;
            let interior: BTreeMap<String, f64> = rel
                .relations
                .iter()
                .map(|r| (format!("{:?}: {}", r.chart, r.relation), r.interior))
                .collect();
            let boundary: BTreeMap<String, f64> = rel
                .relations
                .iter()
                .map(|r| (format!("{:?}: {}", r.chart, r.relation), r.boundary))
                .collect();
            out.at_most("interior", rel.interior_max, spectra::SPECTRAL_TOLERANCE);
            out.at_most(
                "cross_validation",
                cross.iter().map(|c| c.residual).fold(0.0, f64::max),
                1e-10,
            );
            out.value("q", rel.q);
            out.value("interior_residuals", interior);
            out.value("boundary_residuals", boundary);
            out.value("boundary_max", rel.boundary_max);
            out.value("interior_sites", rel.interior_sites);
            out.value("cross_validation", cross);
        }
        Command::Cocycle { x, kind, samples } => {
            let psi = match kind {
                BicharKind::Zxr => Bicharacter::ZxR { x: *x },
                BicharKind::C => Bicharacter::C { x: *x },
            };
            let cocycle = cocycle_check(&psi, *samples, seed)?;
            let anti = antisymmetry_check(&psi, *samples, seed)?;
            let bipl = biplicativity_check(&psi, *samples, seed)?;
            out.at_most("cocycle", cocycle.max_residual, BICHAR_TOLERANCE);
            out.at_most("antisymmetry", anti.max_residual, BICHAR_TOLERANCE);
            out.at_most("biplicativity", bipl.max_residual, BICHAR_TOLERANCE);
            if *kind == BicharKind::Zxr {
                let lambda = lambda_constant(&psi)?;
                out.at_most("lambda_constant", (lambda - 1.0).abs(), 0.0);
                out.value("lambda", lambda);
            }
            out.value("samples", samples);
        }
        Command::Witness { x, y } => {
            let w = spectra::nonisomorphism_witness(*x, *y)?;
            out.value("verdict", &w.verdict);
            out.value("q_x", w.q_x);
            out.value("q_y", w.q_y);
            out.value("relative_separation", w.relative_separation);
            out.value("warning", &w.warning);
        }
    }
    Ok(())
}

fn symbolic(report: crate::ncpoly::CheckReport, out: &mut Outcome) {
    out.at_most("residual_terms", report.residual_terms() as f64, 0.0);
    out.value("identities", report.checks.len());
    out.value("checks", &report.checks);
}

fn check_relations(ladder: i32, out: &mut Outcome) -> Result<()> {
    if !(0..=12).contains(&ladder) {
        return Err(Error::InvalidArgument(format!("ladder size {ladder} outside 0..=12")));
    }
    let mut terms = 0usize;
    for (name, p, rels) in [
        ("qtriag", qgroup::qtriag_presentation(), qgroup::qtriag_relations()),
        ("polar", qgroup::polar_presentation(), qgroup::polar_relations()),
    ] {
        let mut names = Vec::new();
        for r in &rels {
            terms += r.residual(&p)?.num_terms();
            names.push(&r.name);
        }
        out.value(&format!("{name}_relations"), names);
    }
    out.at_most("relation_terms", terms as f64, 0.0);

    let derivation = qgroup::derive_q_in(&qgroup::polar_presentation())?;
    let q_ok = derivation.q_scalar == crate::Scalar::q() && derivation.ab_scalar.is_one();
    out.at_most("polar_q_mismatch", if q_ok { 0.0 } else { 1.0 }, 0.0);
    out.value("polar_derivation", &derivation);

    let cells = qgroup::q_ladder(ladder)?;
    let bad = cells.iter().filter(|c| !(c.matches_law && c.matches_oracle)).count();
    out.at_most("ladder_mismatches", bad as f64, 0.0);
    out.value("ladder_cells", cells.len());
    Ok(())
}

fn fintwist_cmd(n: u64, bichar: &str, input: Option<&Path>, seed: u64, out: &mut Outcome) -> Result<()> {
    let (group, table) = match input {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let ex: GroupExchange = serde_json::from_str(&text)?;
            (ex.group()?, ex.table())
        }
        None => (FinGroup::new(n)?, None),
    };
    let psi = match table {
        Some(t) => FiniteBichar::new(&group, t)?,
        None => parse_finite_bichar(bichar, &group)?,
    };
    let r = fintwist::run_suite(&group, &psi, seed)?;
    out.at_most("omega_unitarity", r.omega_unitarity, 1e-12);
    out.at_most("cocycle", r.cocycle, 1e-12);
    out.at_most("coassoc", r.coassoc, 1e-12);
    out.at_most("haar_left", r.haar_left, 1e-12);
    out.at_most("haar_right", r.haar_right, 1e-12);
    out.at_most("haar_left_untwisted", r.haar_left_untwisted, 1e-12);
    out.at_most("haar_right_untwisted", r.haar_right_untwisted, 1e-12);
    out.at_most("w_unitarity", r.w_unitarity, 1e-12);
    out.at_most("w_twisted_unitarity", r.w_twisted_unitarity, 1e-12);
    out.at_most("pentagon", r.pentagon.frobenius, 1e-10);
    out.at_most("pentagon_twisted", r.pentagon_twisted.frobenius, 1e-10);
    out.at_most("w_permutation", r.w_permutation_deviation, 1e-12);
    if r.negative_controls_applicable {
        out.above("corrupted_cocycle", r.corrupted_cocycle, 1e-2);
        out.above("corrupted_pentagon", r.corrupted_pentagon.frobenius, 1e-2);
    }
    out.value("group_order", r.group_order);
    out.value("suite", &r);
    Ok(())
}

/// `trivial`, `i^{ab}` (also `i^ab`) or `zeta^{ab}` (also `zeta^ab`).
pub fn parse_finite_bichar(text: &str, group: &FinGroup) -> Result<FiniteBichar> {
    match text.replace(['{', '}', ' '], "").as_str() {
        "trivial" | "1" => Ok(FiniteBichar::trivial(group)),
        "i^ab" => FiniteBichar::power(group, 4),
        "zeta^ab" => FiniteBichar::power(group, group.k_dual().len() as u64),
        other => Err(Error::InvalidArgument(format!(
            "unknown bicharacter '{other}'; expected trivial, i^{{ab}} or zeta^{{ab}}"
        ))),
    }
}

fn spectrum_cmd(x: f64, trunc: usize, csv: Option<&Path>, out: &mut Outcome) -> Result<()> {
    let model = spectra::build_modular(x, trunc)?;
    let r = spectra::spectrum_report(&model)?;
    out.at_most("ratio", r.ratio_residual, spectra::SPECTRAL_TOLERANCE);
    out.at_most("eigenvalues", r.eigenvalue_residual, spectra::SPECTRAL_TOLERANCE);
    out.at_most("factorization", r.factorization_residual, 1e-15);
    if x != 0.0 {
        out.at_most("exhaustion", if r.strictly_decreasing { 0.0 } else { 1.0 }, 0.0);
    }
    out.value("ratio", r.ratio);
    out.value("spectrum", &r.spectrum);
    out.value("min_eigenvalues", &r.min_eigenvalues);
    if let Some(path) = csv {
        let mut text = String::from("mode,eigenvalue\n");
        for (k, d) in model.modes().zip(&model.delta) {
            text.push_str(&format!("{k},{d:e}\n"));
        }
        std::fs::write(path, text)?;
    }
    Ok(())
}

/// Write the report to `path` or standard output.
pub fn emit(report: &Report, path: Option<&Path>) -> Result<()> {
    let text = report.to_json();
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parse arguments, run, emit; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = run(&cli.command, cli.seed);
    if let Err(e) = emit(&report, cli.output.as_deref()) {
        let mut failed = report;
        failed.pass = false;
        failed.error = Some(format!("could not write report: {e}"));
        eprint!("{}", failed.to_json());
        return 2;
    }
    if report.pass {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Report {
        let cli = Cli::try_parse_from(std::iter::once("twistlab").chain(args.iter().copied())).unwrap();
        run(&cli.command, cli.seed)
    }

    #[test]
    fn nf_reports_q_swap() {
        let r = run_args(&["nf", "--expr", "a bs"]);
        assert!(r.pass);
        assert_eq!(r.values["normal_form"], json!("(1+0i)*s^8*bs*a"));
    }

    #[test]
    fn unknown_flag_is_rejected() {
        assert!(Cli::try_parse_from(["twistlab", "nf", "--expr", "a", "--bogus", "1"]).is_err());
    }

    #[test]
    fn syntax_error_fails_with_error_field() {
        let r = run_args(&["nf", "--expr", "a + "]);
        assert!(!r.pass);
        assert!(r.error.unwrap().contains("4"));
    }

    #[test]
    fn spectrum_ratio() {
        let r = run_args(&["spectrum", "--x", "0.1", "--trunc", "50"]);
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.values["ratio"], json!((-0.2f64).exp()));
        assert_eq!(r.seed, DEFAULT_SEED);
    }

    #[test]
    fn report_keys_are_sorted() {
        let r = run_args(&["witness", "--x", "0.1", "--y", "0.2"]);
        let text = r.to_json();
        let keys: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(r.values["verdict"], json!("distinct"));
    }

    #[test]
    fn bichar_names() {
        let g = FinGroup::new(5).unwrap();
        assert_eq!(parse_finite_bichar("i^{ab}", &g).unwrap(), FiniteBichar::power(&g, 4).unwrap());
        assert!(parse_finite_bichar("nope", &g).is_err());
    }
}
