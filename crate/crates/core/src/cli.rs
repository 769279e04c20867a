//! Command-line front end.
//!
//! ```text
//! decoupling-pulses catalog   [--theta pi/2] [--order second] [--symmetry symmetric] [--name SYM2ND-Pi]
//! decoupling-pulses residuals (--name NAME | --file pulse.json) [--general]
//! decoupling-pulses design    --family harmonic40 --theta pi --guess 10,7,2 [--targets eta11,eta22,eta23]
//! decoupling-pulses scaling   (--name NAME | --file pulse.json) [--bath z-dyn] [--seed 7]
//! ```
//!
//! Every subcommand takes `--format csv|json` (CSV by default, numbers with 17
//! significant digits). `design` and `scaling` write to `--output`, or into
//! the directory named by [`OUTPUT_DIR_ENV`] when that is set; otherwise to
//! standard output. Exit codes: 0 success, 1 usage or input error, 2
//! numerical failure.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::corrections::{eta_specific, general_residuals, GeneralResiduals, Residual};
use crate::designer::{self, DesignProblem};
use crate::error::{Error, Result};
use crate::pulse::{
    catalog, lookup, reference_pulse, CatalogEntry, Family, HarmonicAnsatz, HarmonicSeries, Order, PulseShape, Segment,
    Symmetry, Waveform,
};
use crate::qsim::{self, CouplingStructure, EvolveOptions, RandomBathConfig, ScalingReport};

/// Default output directory for `design` and `scaling`.
pub const OUTPUT_DIR_ENV: &str = "DECOUPLING_PULSES_OUT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "decoupling-pulses",
    version,
    about = "Pulses that decouple a spin from a dynamic bath"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the named pulses.
    Catalog(CatalogArgs),
    /// Correction integrals of a pulse.
    Residuals(ResidualsArgs),
    /// Solve for pulse parameters.
    Design(DesignArgs),
    /// Fit the error exponent against a random bath.
    Scaling(ScalingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, value_parser = parse_angle)]
    pub theta: Option<f64>,
    #[arg(long, value_parser = ["first", "second"])]
    pub order: Option<String>,
    #[arg(long, value_parser = ["symmetric", "asymmetric"])]
    pub symmetry: Option<String>,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct PulseSource {
    /// Catalog name, or CONST-Pi / CONST-Pi2.
    #[arg(long, group = "source")]
    pub name: Option<String>,
    /// Pulse definition file.
    #[arg(long, group = "source")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResidualsArgs {
    #[command(flatten)]
    pub source: PulseSource,
    /// Print the 39 general integrals instead of the five specialised ones.
    #[arg(long)]
    pub general: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    /// composite<N>-asym, composite3-sym, composite5-sym, harmonic38 (harmonic-sym1),
    /// harmonic39 (harmonic-asym1), harmonic40 (harmonic-sym2).
    #[arg(long)]
    pub family: String,
    #[arg(long, value_parser = parse_angle)]
    pub theta: f64,
    /// Comma-separated parameters, or a catalog pulse name or prefix such as `corpse`.
    #[arg(long, allow_hyphen_values = true)]
    pub guess: String,
    /// Comma-separated residual names; defaults depend on the family.
    #[arg(long, value_delimiter = ',')]
    pub targets: Option<Vec<String>>,
    /// Sign pattern for composite families, e.g. `+,-,+`.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BathPreset {
    /// z coupling, dynamic bath.
    ZDyn,
    /// z coupling, `H_b = 0`.
    ZStatic,
    /// Three independent couplings, dynamic bath.
    General,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[command(flatten)]
    pub source: PulseSource,
    #[arg(long, value_enum, default_value = "z-dyn")]
    pub bath: BathPreset,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub spins: usize,
    /// Bath norm `ω_b`, ignored for `z-static`.
    #[arg(long, default_value_t = 1.0)]
    pub omega_b: f64,
    /// Coupling scale, applied to every coupled direction.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub tau_min: f64,
    #[arg(long, default_value_t = 1e-1)]
    pub tau_max: f64,
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    /// Use catalog parameters as quoted instead of polishing them first.
    #[arg(long)]
    pub no_refine: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Parses `pi`, `pi/2`, `-3pi/4`, `2pi` or a plain number (radians).
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace('π', "pi");
    let bad = || format!("cannot read angle {s:?}");
    let Some((coef, rest)) = t.split_once("pi") else {
        return t
            .parse::<f64>()
            .map_err(|_| bad())
            .and_then(|v| if v.is_finite() { Ok(v) } else { Err(bad()) });
    };
    let coef = match coef.trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let div = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    if div == 0.0 {
        return Err(bad());
    }
    Ok(coef * PI / div)
}

/// Seventeen significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

// ---------------------------------------------------------------------------
// pulse definition files

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PulseFileKind {
    PiecewiseConstant,
    HarmonicSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentRecord {
    /// Switching instant, fraction of `τ_p`.
    pub end: f64,
    /// In units of `1/τ_p`.
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientRecord {
    pub ansatz: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignRecord {
    pub family: String,
    pub parameters: Vec<f64>,
    pub targets: Vec<String>,
    pub iterations: usize,
    pub residual_norm: f64,
    pub converged: bool,
}

/// On-disk pulse definition. See `docs/pulse-file.schema.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseFile {
    pub kind: PulseFileKind,
    /// Radians.
    pub theta: f64,
    #[serde(default = "default_axis")]
    pub axis: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<SegmentRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignRecord>,
}

fn default_axis() -> [f64; 3] {
    [0.0, 1.0, 0.0]
}

impl PulseFile {
    pub fn from_pulse(pulse: &PulseShape) -> Self {
        let a = pulse.axis();
        let (kind, segments, coefficients) = match pulse.waveform() {
            Waveform::PiecewiseConstant(segs) => (
                PulseFileKind::PiecewiseConstant,
                Some(
                    segs.iter()
                        .map(|s| SegmentRecord {
                            end: s.end,
                            amplitude: s.amplitude,
                        })
                        .collect(),
                ),
                None,
            ),
            Waveform::HarmonicSeries(series) => (
                PulseFileKind::HarmonicSeries,
                None,
                Some(CoefficientRecord {
                    ansatz: series.ansatz.name().into(),
                    values: series.values.clone(),
                }),
            ),
        };
        Self {
            kind,
            theta: pulse.theta(),
            axis: [a.x, a.y, a.z],
            segments,
            coefficients,
            name: None,
            warning: None,
            design: None,
        }
    }

    pub fn to_pulse(&self) -> Result<PulseShape> {
        let axis = Vector3::from(self.axis);
        let waveform = match (self.kind, &self.segments, &self.coefficients) {
            (PulseFileKind::PiecewiseConstant, Some(segs), None) => {
                Waveform::PiecewiseConstant(segs.iter().map(|s| Segment::new(s.end, s.amplitude)).collect())
            }
            (PulseFileKind::HarmonicSeries, None, Some(c)) => {
                let ansatz = HarmonicAnsatz::from_name(&c.ansatz)
                    .ok_or_else(|| Error::InvalidPulse(format!("unknown ansatz {:?}", c.ansatz)))?;
                Waveform::HarmonicSeries(HarmonicSeries::new(ansatz, c.values.clone())?)
            }
            (PulseFileKind::PiecewiseConstant, _, _) => {
                return Err(Error::InvalidPulse(
                    "piecewise-constant pulses need `segments` and no `coefficients`".into(),
                ))
            }
            (PulseFileKind::HarmonicSeries, _, _) => {
                return Err(Error::InvalidPulse(
                    "harmonic-series pulses need `coefficients` and no `segments`".into(),
                ))
            }
        };
        PulseShape::new(self.theta, axis, waveform)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Json(j) => Error::InvalidPulse(format!("{}: {j}", path.display())),
            e => e,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pulse files serialise")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// driver

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Catalog(a) => cmd_catalog(a, out),
        Command::Residuals(a) => cmd_residuals(a, out),
        Command::Design(a) => cmd_design(a, out, err),
        Command::Scaling(a) => cmd_scaling(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotConverged { .. }
        | Error::SingularJacobian { .. }
        | Error::StepBudget { .. }
        | Error::TooFewPoints { .. } => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Where a report goes when `--output` is absent.
fn resolve_output(explicit: &Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(default_name))
    })
}

#[derive(Debug, Serialize)]
struct CatalogRow<'a> {
    name: &'a str,
    theta: f64,
    order: &'static str,
    symmetry: &'static str,
    family: String,
    parameters: &'a [f64],
}

pub fn cmd_catalog(args: &CatalogArgs, out: &mut dyn Write) -> Result<i32> {
    let entries: Vec<CatalogEntry> = catalog()
        .into_iter()
        .filter(|e| args.theta.is_none_or(|t| (e.theta() - t).abs() < 1e-9))
        .filter(|e| args.order.as_deref().is_none_or(|o| e.order.name() == o))
        .filter(|e| args.symmetry.as_deref().is_none_or(|s| e.symmetry.name() == s))
        .filter(|e| args.name.as_deref().is_none_or(|n| e.name.eq_ignore_ascii_case(n)))
        .collect();
    let rows: Vec<CatalogRow> = entries
        .iter()
        .map(|e| CatalogRow {
            name: e.name,
            theta: e.theta(),
            order: e.order.name(),
            symmetry: e.symmetry.name(),
            family: e.family.name(),
            parameters: &e.parameters,
        })
        .collect();
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            let mut s = String::from("name,theta,order,symmetry,family,parameters\n");
            for r in &rows {
                let params: Vec<String> = r.parameters.iter().map(|p| fmt_num(*p)).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.name,
                    fmt_num(r.theta),
                    r.order,
                    r.symmetry,
                    r.family,
                    params.join(";")
                );
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

/// Resolves `--name` / `--file` to a pulse.
pub fn load_pulse(source: &PulseSource) -> Result<(String, PulseShape)> {
    match (&source.name, &source.file) {
        (Some(name), None) => {
            if let Some(e) = lookup(name) {
                Ok((e.name.to_string(), e.shape))
            } else if let Some(p) = reference_pulse(name) {
                Ok((name.clone(), p))
            } else {
                Err(Error::InvalidPulse(format!("no catalog pulse named {name:?}")))
            }
        }
        (None, Some(path)) => {
            let file = PulseFile::read(path)?;
            let label = file.name.clone().unwrap_or_else(|| path.display().to_string());
            Ok((label, file.to_pulse()?))
        }
        _ => Err(Error::InvalidPulse("give exactly one of --name and --file".into())),
    }
}

fn general_rows(g: &GeneralResiduals) -> Vec<(String, f64)> {
    let axes = ["x", "y", "z"];
    let mut rows = Vec::with_capacity(39);
    for (label, m) in [("first", &g.first_order), ("second_a", &g.second_order_a)] {
        for i in 0..3 {
            for j in 0..3 {
                rows.push((format!("{label}[{}{}]", axes[i], axes[j]), m[(i, j)]));
            }
        }
    }
    for (i, row) in g.second_order_b.iter().enumerate() {
        for (p, &(l, m)) in GeneralResiduals::LM_PAIRS.iter().enumerate() {
            rows.push((format!("second_b[{};{}{}]", axes[i], axes[l], axes[m]), row[p]));
        }
    }
    for (p, &(j, k)) in GeneralResiduals::JK_PAIRS.iter().enumerate() {
        rows.push((format!("second_c[{}{}]", axes[j], axes[k]), g.second_order_c[p]));
    }
    rows
}

fn quantity_table(rows: &[(String, f64)], format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("quantity,value\n");
            for (k, v) in rows {
                let _ = writeln!(s, "{k},{}", fmt_num(*v));
            }
            s
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                rows.iter().map(|(k, v)| (k.clone(), serde_json::json!(v))).collect();
            serde_json::to_string_pretty(&map)? + "\n"
        }
    })
}

pub fn cmd_residuals(args: &ResidualsArgs, out: &mut dyn Write) -> Result<i32> {
    let (_, pulse) = load_pulse(&args.source)?;
    let mut rows: Vec<(String, f64)> = if args.general {
        general_rows(&general_residuals(&pulse))
    } else {
        let eta = eta_specific(&pulse)?;
        Residual::ALL
            .iter()
            .map(|r| (r.name().to_string(), eta.get(*r)))
            .collect()
    };
    rows.push(("psi1".into(), pulse.final_angle()));
    emit(out, &quantity_table(&rows, args.format)?)?;
    Ok(EXIT_OK)
}

fn parse_signs(s: &str) -> Result<Vec<i8>> {
    s.split(',')
        .map(|t| match t.trim() {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            other => Err(Error::InvalidProblem(format!("bad sign {other:?}"))),
        })
        .collect()
}

fn parse_guess(guess: &str, family: &Family, theta: f64) -> Result<Vec<f64>> {
    let numeric: std::result::Result<Vec<f64>, _> = guess.split(',').map(|t| t.trim().parse::<f64>()).collect();
    if let Ok(v) = numeric {
        return Ok(v);
    }
    let g = guess.trim().to_ascii_lowercase();
    catalog()
        .into_iter()
        .filter(|e| (e.theta() - theta).abs() < 1e-9)
        .filter(|e| {
            e.family.parameter_count() == family.parameter_count() && e.family.is_composite() == family.is_composite()
        })
        .find(|e| {
            let n = e.name.to_ascii_lowercase();
            n == g || n.split('-').next() == Some(g.as_str()) || n.starts_with(&format!("{g}-"))
        })
        .map(|e| e.parameters)
        .ok_or_else(|| {
            Error::InvalidProblem(format!(
                "guess {guess:?} is neither a number list nor a matching catalog pulse"
            ))
        })
}

#[derive(Debug, Serialize)]
struct DesignReport<'a> {
    family: String,
    theta: f64,
    converged: bool,
    iterations: usize,
    residual_norm: f64,
    parameters: &'a [f64],
    residuals: serde_json::Map<String, serde_json::Value>,
    psi1: f64,
}

pub fn cmd_design(args: &DesignArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut family = Family::from_name(&args.family)
        .ok_or_else(|| Error::InvalidProblem(format!("unknown family {:?}", args.family)))?;
    if let Some(s) = &args.signs {
        family = family.with_signs(&parse_signs(s)?)?;
    }
    let guess = parse_guess(&args.guess, &family, args.theta)?;
    let mut problem = DesignProblem::new(family.clone(), args.theta, guess);
    if let Some(t) = &args.targets {
        problem.targets = t
            .iter()
            .map(|n| {
                Residual::from_name(n.trim()).ok_or_else(|| Error::InvalidProblem(format!("unknown residual {n:?}")))
            })
            .collect::<Result<_>>()?;
    }
    let target_names: Vec<String> = problem.targets.iter().map(|r| r.name().to_string()).collect();

    let (params, iterations, residual_norm, converged, failure) = match designer::solve(&problem) {
        Ok(s) => (s.parameters, s.iterations, s.residual_norm, true, None),
        Err(Error::NotConverged {
            iterations,
            residual_norm,
            best,
        }) => (
            best,
            iterations,
            residual_norm,
            false,
            Some("solver did not converge; parameters are the best iterate"),
        ),
        Err(e) => return Err(e),
    };
    let pulse = family.build(args.theta, &params)?;
    let mut file = PulseFile::from_pulse(&pulse);
    file.name = Some(format!("{}@{}", family.name(), fmt_num(args.theta)));
    file.warning = failure.map(String::from);
    file.design = Some(DesignRecord {
        family: family.name(),
        parameters: params.clone(),
        targets: target_names,
        iterations,
        residual_norm,
        converged,
    });

    let eta = eta_specific(&pulse)?;
    let default_name = format!("design-{}.json", family.name());
    match resolve_output(&args.output, &default_name) {
        Some(path) => file.write(&path)?,
        None => emit(out, &(file.to_json() + "\n"))?,
    }
    let report = DesignReport {
        family: family.name(),
        theta: args.theta,
        converged,
        iterations,
        residual_norm,
        parameters: &params,
        residuals: Residual::ALL
            .iter()
            .map(|r| (r.name().to_string(), serde_json::json!(eta.get(*r))))
            .collect(),
        psi1: pulse.final_angle(),
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut rows: Vec<(String, f64)> = family
                .parameter_names()
                .into_iter()
                .zip(params.iter().copied())
                .collect();
            rows.extend(Residual::ALL.iter().map(|r| (r.name().to_string(), eta.get(*r))));
            rows.push(("psi1".into(), pulse.final_angle()));
            rows.push(("residual_norm".into(), residual_norm));
            rows.push(("iterations".into(), iterations as f64));
            quantity_table(&rows, Format::Csv)?
        }
    };
    // with the pulse on stdout the report goes to stderr
    if resolve_output(&args.output, &default_name).is_some() {
        emit(out, &text)?;
    } else {
        emit(err, &text)?;
    }
    if let Some(w) = failure {
        let _ = writeln!(err, "warning: {w}");
        return Ok(EXIT_NUMERICAL);
    }
    Ok(EXIT_OK)
}

fn bath_config(args: &ScalingArgs) -> RandomBathConfig {
    match args.bath {
        BathPreset::ZDyn => RandomBathConfig {
            seed: args.seed,
            spins: args.spins,
            omega_b: args.omega_b,
            lambda: [0.0, 0.0, args.lambda],
            structure: CouplingStructure::ZOnly,
        },
        BathPreset::ZStatic => RandomBathConfig {
            seed: args.seed,
            spins: args.spins,
            omega_b: 0.0,
            lambda: [0.0, 0.0, args.lambda],
            structure: CouplingStructure::ZOnly,
        },
        BathPreset::General => RandomBathConfig {
            seed: args.seed,
            spins: args.spins,
            omega_b: args.omega_b,
            lambda: [args.lambda; 3],
            structure: CouplingStructure::General,
        },
    }
}

/// CSV rows `tau_p,distance,tolerance,steps,included` and a `#` trailer.
pub fn scaling_csv(report: &ScalingReport) -> String {
    let mut s = String::from("tau_p,distance,tolerance,steps,included\n");
    for p in &report.points {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt_num(p.tau_p),
            fmt_num(p.distance),
            fmt_num(p.tolerance),
            p.steps,
            p.included
        );
    }
    let _ = writeln!(s, "# slope,{}", fmt_num(report.slope));
    let _ = writeln!(s, "# intercept,{}", fmt_num(report.intercept));
    let _ = writeln!(s, "# fit_residual,{}", fmt_num(report.fit_residual));
    for w in &report.warnings {
        let _ = writeln!(s, "# warning,{w}");
    }
    s
}

pub fn cmd_scaling(args: &ScalingArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (label, mut pulse) = load_pulse(&args.source)?;
    if !args.no_refine {
        if let Some(entry) = args.source.name.as_deref().and_then(lookup) {
            pulse = designer::refine(&entry)?.pulse;
        }
    }
    let bath = qsim::random_bath(&bath_config(args))?;
    let grid = qsim::log_grid(args.tau_min, args.tau_max, args.points)?;
    let report = qsim::scaling_exponent(&pulse, &bath, &grid, &EvolveOptions::default())?;
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let text = match args.format {
        Format::Csv => scaling_csv(&report),
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
    };
    let ext = match args.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let stem: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    match resolve_output(&args.output, &format!("scaling-{stem}.{ext}")) {
        Some(path) => {
            std::fs::write(&path, &text)?;
            let _ = writeln!(out, "slope {} written to {}", fmt_num(report.slope), path.display());
        }
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

/// Catalog rows matching an order and symmetry, for callers that want the
/// filter logic without the CLI.
pub fn filter_catalog(order: Option<Order>, symmetry: Option<Symmetry>, theta: Option<f64>) -> Vec<CatalogEntry> {
    catalog()
        .into_iter()
        .filter(|e| order.is_none_or(|o| e.order == o))
        .filter(|e| symmetry.is_none_or(|s| e.symmetry == s))
        .filter(|e| theta.is_none_or(|t| (e.theta() - t).abs() < 1e-9))
        .collect()
}
