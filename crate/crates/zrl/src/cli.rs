//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zrl_core::explicit::{check_explicit_formula, NumberFieldData, TestFunction};
use zrl_core::kronecker::{
    diophantine_report, harmonic_projection, solve_cohomological, FourierFunction2D, SlopeParam,
    DEFAULT_MIN_DIVISOR,
};
use zrl_core::lefschetz::{
    arithmetic_lefschetz, burnside_check, compact_support_vanishing_check, euler_characteristic_infinite,
    AutomorphismAction, InfinitePlaceSet,
};
use zrl_core::regdet::{
    euler_factor_direct, euler_factor_via_regdet, half_line_closed_form, regdet, spectral_zeta_derivative_at_0,
    PlaceSpec, SpectralLadder,
};
use zrl_core::suspension::{
    check_trace_formula, closed_orbit_counts, frobenius_eigenvalues, weil_number_check, EllipticCurveData, OrbitData,
    OrbitSource, SuspensionSpec,
};
use zrl_core::zeros::{find_zeros, riemann_von_mangoldt_estimate, ZeroList};
use zrl_core::{Complex64, PrecisionConfig};

use crate::error::{CliError, Result};
use crate::formats;
use crate::report::{verdict, Format, ReportDocument, Value};

/// Environment variable overriding the target absolute error.
pub const PRECISION_ENV: &str = "ZRL_PRECISION";

/// Agreement required between the two Euler-factor evaluations.
const EULER_FACTOR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "zrl", version, about = "Regularized determinants, explicit formulas and trace formulas")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Kv)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Kv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regularized determinants.
    #[command(subcommand)]
    Regdet(RegdetCmd),
    /// Zeros of the Riemann zeta function.
    #[command(subcommand)]
    Zeros(ZerosCmd),
    /// Explicit formula.
    #[command(subcommand)]
    Ef(EfCmd),
    /// Suspension flows of elliptic curves and circle coverings.
    #[command(subcommand)]
    Suspension(SuspensionCmd),
    /// Leafwise cohomology of the Kronecker foliation.
    #[command(subcommand)]
    Kronecker(KroneckerCmd),
    /// Lefschetz numbers.
    #[command(subcommand)]
    Lefschetz(LefschetzCmd),
}

#[derive(Debug, Subcommand)]
enum RegdetCmd {
    /// Euler factor of a place as a regularized determinant.
    EulerFactor {
        #[arg(long, value_parser = parse_place)]
        place: PlaceSpec,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
    /// Regularized determinant of a ladder `γ(z + ν)`.
    Ladder {
        #[arg(long, value_enum)]
        kind: LadderKind,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        gamma: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LadderKind {
    /// `ν = 0, 1, 2, …`
    HalfLine,
    /// `ν ∈ ℤ`
    Bilateral,
}

#[derive(Debug, Subcommand)]
enum ZerosCmd {
    /// Locate zeros below a height.
    Find {
        #[arg(long)]
        tmax: f64,
        /// Save the ordinates in the zeros file format.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Summarize a zeros file.
    Info {
        #[arg(long)]
        zeros: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum EfCmd {
    /// Compare the spectral and geometric sides.
    Check(EfCheck),
}

#[derive(Debug, Args)]
struct EfCheck {
    #[arg(long, value_parser = parse_field, default_value = "q")]
    field: NumberFieldData,
    /// Zeros file; for `q` the zeros may instead be computed with `--tmax`.
    #[arg(long, conflicts_with = "tmax", required_unless_present = "tmax")]
    zeros: Option<PathBuf>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long, value_parser = parse_phi, allow_hyphen_values = true)]
    phi: PhiSpec,
    #[arg(long)]
    prime_cutoff: f64,
    /// Accept an empty zero list.
    #[arg(long)]
    allow_empty: bool,
}

#[derive(Debug, Subcommand)]
enum SuspensionCmd {
    /// Trace formula for the suspension of an ordinary elliptic curve.
    Check {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        ap: i64,
        #[arg(long, default_value_t = 400)]
        kmax: u32,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, value_parser = parse_phi, allow_hyphen_values = true)]
        phi: PhiSpec,
    },
    /// Fixed-point and primitive orbit counts.
    Orbits {
        #[arg(long, requires = "ap", conflicts_with_all = ["covering", "orbits"])]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        ap: Option<i64>,
        #[arg(long, conflicts_with = "orbits")]
        covering: Option<u64>,
        /// Orbit file with lines `n m_n`.
        #[arg(long)]
        orbits: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
    },
}

#[derive(Debug, Subcommand)]
enum KroneckerCmd {
    /// Solve the leafwise cohomological equation for a coefficient file.
    Solve {
        #[arg(long, value_parser = parse_alpha)]
        alpha: SlopeParam,
        /// Coefficient file with lines `m n re im`.
        #[arg(long)]
        coeffs: PathBuf,
        /// Mode cutoff; defaults to the largest index in the file.
        #[arg(long)]
        modes: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MIN_DIVISOR)]
        min_divisor: f64,
        /// Save the solution `h` as a coefficient file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Small-divisor table for cutoffs up to `--modes`.
    Report {
        #[arg(long, value_parser = parse_alpha)]
        alpha: SlopeParam,
        #[arg(long)]
        modes: usize,
    },
}

#[derive(Debug, Subcommand)]
enum LefschetzCmd {
    /// Fixed infinite places of a field automorphism.
    Field {
        /// Places file: `r1 r2`, then the permutation.
        #[arg(long, conflicts_with_all = ["signature", "perm"], required_unless_present = "signature")]
        places: Option<PathBuf>,
        /// `r1,r2`.
        #[arg(long, value_parser = parse_pair::<u32>)]
        signature: Option<(u32, u32)>,
        /// Comma-separated images of the places; identity if omitted.
        #[arg(long, value_delimiter = ',', requires = "signature")]
        perm: Option<Vec<usize>>,
    },
    /// Signed sum of local traces at fixed points.
    Dynamical {
        /// File with lines `local_trace epsilon`.
        #[arg(long, conflicts_with = "orbit_only", required_unless_present = "orbit_only")]
        fixed_points: Option<PathBuf>,
        /// The flow has no fixed points.
        #[arg(long)]
        orbit_only: bool,
    },
}

/// A test function as given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiSpec {
    Bump { center: f64, halfwidth: f64 },
    Gaussian { center: f64, sigma: f64, truncation: f64 },
}

impl PhiSpec {
    fn build(&self) -> Result<TestFunction> {
        Ok(match *self {
            PhiSpec::Bump { center, halfwidth } => TestFunction::bump(center, halfwidth)?,
            PhiSpec::Gaussian { center, sigma, truncation } => TestFunction::gaussian(center, sigma, truncation)?,
        })
    }

    fn describe(&self) -> String {
        match self {
            PhiSpec::Bump { center, halfwidth } => format!("bump:{center},{halfwidth}"),
            PhiSpec::Gaussian { center, sigma, truncation } => format!("gauss:{center},{sigma},{truncation}"),
        }
    }
}

fn parse_floats(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("'{p}' is not a number")))
        .collect()
}

/// `RE,IM` or `RE`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    match parse_floats(s)?.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err("expected RE,IM".to_string()),
    }
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> std::result::Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let a = a.trim().parse().map_err(|_| format!("'{a}' is not valid"))?;
    let b = b.trim().parse().map_err(|_| format!("'{b}' is not valid"))?;
    Ok((a, b))
}

/// `finite:N`, `real` or `complex`.
pub fn parse_place(s: &str) -> std::result::Result<PlaceSpec, String> {
    match s {
        "real" => Ok(PlaceSpec::RealArchimedean),
        "complex" => Ok(PlaceSpec::ComplexArchimedean),
        _ => {
            let norm = s.strip_prefix("finite:").ok_or("expected finite:N, real or complex")?;
            let norm: u64 = norm.parse().map_err(|_| format!("'{norm}' is not a norm"))?;
            PlaceSpec::finite(norm).map_err(|e| e.to_string())
        }
    }
}

/// `q` or `disc:D`.
pub fn parse_field(s: &str) -> std::result::Result<NumberFieldData, String> {
    if s == "q" {
        return Ok(NumberFieldData::rational());
    }
    let d = s.strip_prefix("disc:").ok_or("expected q or disc:D")?;
    let d: i64 = d.parse().map_err(|_| format!("'{d}' is not a discriminant"))?;
    NumberFieldData::quadratic(d).map_err(|e| e.to_string())
}

/// `bump:c,w` or `gauss:c,sigma[,m]`.
pub fn parse_phi(s: &str) -> std::result::Result<PhiSpec, String> {
    let (kind, args) = s.split_once(':').ok_or("expected bump:c,w or gauss:c,sigma[,m]")?;
    let v = parse_floats(args)?;
    match (kind, v.as_slice()) {
        ("bump", [c, w]) => Ok(PhiSpec::Bump { center: *c, halfwidth: *w }),
        ("gauss", [c, s]) => Ok(PhiSpec::Gaussian { center: *c, sigma: *s, truncation: 6.0 }),
        ("gauss", [c, s, m]) => Ok(PhiSpec::Gaussian { center: *c, sigma: *s, truncation: *m }),
        _ => Err("expected bump:c,w or gauss:c,sigma[,m]".to_string()),
    }
}

/// `golden`, `sqrt2`, `liouville` or a number.
pub fn parse_alpha(s: &str) -> std::result::Result<SlopeParam, String> {
    match s {
        "golden" => Ok(SlopeParam::golden()),
        "sqrt2" => Ok(SlopeParam::sqrt2()),
        "liouville" => Ok(SlopeParam::liouville_like()),
        _ => {
            let a: f64 = s.parse().map_err(|_| format!("'{s}' is not a slope"))?;
            SlopeParam::new(a).map_err(|e| e.to_string())
        }
    }
}

fn place_name(place: PlaceSpec) -> String {
    match place {
        PlaceSpec::Finite { norm } => format!("finite:{norm}"),
        PlaceSpec::RealArchimedean => "real".to_string(),
        PlaceSpec::ComplexArchimedean => "complex".to_string(),
    }
}

/// Precision from `ZRL_PRECISION`, or the default.
pub fn precision_from_env(value: Option<&str>) -> Result<PrecisionConfig> {
    match value {
        None => Ok(PrecisionConfig::default()),
        Some(v) => {
            let target: f64 =
                v.trim().parse().map_err(|_| CliError::parse(0, format!("{PRECISION_ENV}='{v}' is not a number")))?;
            PrecisionConfig::for_target(target).map_err(|e| CliError::parse(0, format!("{PRECISION_ENV}: {e}")))
        }
    }
}

fn put_precision(doc: &mut ReportDocument, cfg: &PrecisionConfig) {
    doc.section("truncations")
        .put("target_abs_error", cfg.target_abs_error)
        .put("euler_maclaurin_terms", cfg.euler_maclaurin_terms)
        .put("series_cutoff", cfg.series_cutoff)
        .put("quadrature_max_depth", cfg.quadrature_max_depth);
}

/// Parses `argv` (program name first), runs the command and writes the
/// report. Returns the process exit code.
pub fn run<I, T>(argv: I, precision: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return e.exit_code();
        }
    };
    let result = precision_from_env(precision).and_then(|cfg| execute(&cli.command, &cfg));
    match result {
        Ok(doc) => {
            let format = match cli.format {
                FormatArg::Kv => Format::Kv,
                FormatArg::Text => Format::Text,
            };
            let text = doc.render(format);
            let written = match &cli.out {
                Some(path) => formats::write_file(path, &text),
                None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                }),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command, cfg: &PrecisionConfig) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new();
    match command {
        Command::Regdet(cmd) => regdet_cmd(cmd, cfg, &mut doc)?,
        Command::Zeros(cmd) => zeros_cmd(cmd, cfg, &mut doc)?,
        Command::Ef(EfCmd::Check(args)) => ef_check(args, cfg, &mut doc)?,
        Command::Suspension(cmd) => suspension_cmd(cmd, cfg, &mut doc)?,
        Command::Kronecker(cmd) => kronecker_cmd(cmd, &mut doc)?,
        Command::Lefschetz(cmd) => lefschetz_cmd(cmd, &mut doc)?,
    }
    Ok(doc)
}

fn regdet_cmd(cmd: &RegdetCmd, cfg: &PrecisionConfig, doc: &mut ReportDocument) -> Result<()> {
    match cmd {
        RegdetCmd::EulerFactor { place, s } => {
            doc.section("inputs").put("place", place_name(*place)).put("s", *s);
            put_precision(doc, cfg);
            let value = euler_factor_via_regdet(*place, *s, cfg)?;
            let direct = euler_factor_direct(*place, *s)?;
            let diff = (value - direct).norm();
            doc.section("result")
                .put("value", value)
                .put("direct", direct)
                .put("difference", diff)
                .put("zeta_p_inverse_match", verdict(diff <= EULER_FACTOR_TOLERANCE));
        }
        RegdetCmd::Ladder { kind, gamma, z } => {
            let ladder = match kind {
                LadderKind::HalfLine => SpectralLadder::HalfLine { gamma: *gamma, z: *z },
                LadderKind::Bilateral => SpectralLadder::Bilateral { gamma: *gamma, z: *z },
            };
            let kind_name = match kind {
                LadderKind::HalfLine => "half-line",
                LadderKind::Bilateral => "bilateral",
            };
            doc.section("inputs").put("kind", kind_name).put("gamma", *gamma).put("z", *z);
            put_precision(doc, cfg);
            let value = regdet(&ladder, cfg)?;
            let section = doc.section("result");
            section.put("value", value);
            if let LadderKind::HalfLine = kind {
                if !ladder.contains_zero() {
                    let closed = half_line_closed_form(*gamma, *z)?;
                    section
                        .put("zeta_prime_at_0", spectral_zeta_derivative_at_0(&ladder, cfg)?)
                        .put("closed_form", closed)
                        .put("closed_form_difference", (value - closed).norm());
                }
            }
        }
    }
    Ok(())
}

fn zero_summary(doc: &mut ReportDocument, list: &ZeroList) -> Result<()> {
    let section = doc.section("zeros");
    section.put("count", list.len()).put("field", list.field_label().unwrap_or("unspecified"));
    if let (Some(&first), Some(&last)) = (list.ordinates().first(), list.ordinates().last()) {
        section.put("first", first).put("last", last);
        let min_gap = list.ordinates().windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if min_gap.is_finite() {
            section.put("min_gap", min_gap);
        }
    }
    Ok(())
}

fn zeros_cmd(cmd: &ZerosCmd, cfg: &PrecisionConfig, doc: &mut ReportDocument) -> Result<()> {
    match cmd {
        ZerosCmd::Find { tmax, save } => {
            doc.section("inputs").put("tmax", *tmax);
            put_precision(doc, cfg);
            let list = find_zeros(*tmax, cfg)?;
            zero_summary(doc, &list)?;
            doc.section("zeros").put("smooth_count", riemann_von_mangoldt_estimate(*tmax)?);
            if let Some(path) = save {
                formats::save_zeros(&list, path)?;
                doc.section("zeros").put("saved", path.display().to_string());
            }
            let rows = list.ordinates().iter().enumerate().map(|(i, &g)| vec![Value::from(i + 1), g.into()]).collect();
            doc.section("zeros").table("ordinates", &["index", "gamma"], rows);
        }
        ZerosCmd::Info { zeros } => {
            doc.section("inputs").put("zeros", zeros.display().to_string());
            let list = formats::load_zeros(zeros)?;
            zero_summary(doc, &list)?;
            if let (Some("q"), Some(&last)) = (list.field_label(), list.ordinates().last()) {
                if last >= 10.0 {
                    doc.section("zeros").put("smooth_count_at_last", riemann_von_mangoldt_estimate(last)?);
                }
            }
        }
    }
    Ok(())
}

fn load_or_find(zeros: &Option<PathBuf>, tmax: Option<f64>, field: &NumberFieldData, cfg: &PrecisionConfig) -> Result<ZeroList> {
    match (zeros, tmax) {
        (Some(path), _) => formats::load_zeros(path),
        (None, Some(t)) => {
            if field.label() != "q" {
                return Err(zrl_core::Error::Domain("zeros can only be computed for q; pass --zeros".into()).into());
            }
            Ok(find_zeros(t, cfg)?)
        }
        (None, None) => Err(CliError::parse(0, "either --zeros or --tmax is required")),
    }
}

fn ef_check(args: &EfCheck, cfg: &PrecisionConfig, doc: &mut ReportDocument) -> Result<()> {
    let phi = args.phi.build()?;
    let source = match (&args.zeros, args.tmax) {
        (Some(p), _) => p.display().to_string(),
        (None, Some(t)) => format!("computed:{t}"),
        (None, None) => String::new(),
    };
    doc.section("inputs")
        .put("field", args.field.label())
        .put("discriminant", args.field.discriminant())
        .put("r1", args.field.r1())
        .put("r2", args.field.r2())
        .put("phi", args.phi.describe())
        .put("zeros", source);
    put_precision(doc, cfg);
    let zeros = load_or_find(&args.zeros, args.tmax, &args.field, cfg)?;
    if zeros.is_empty() && !args.allow_empty {
        return Err(zrl_core::Error::Domain("zero list is empty (pass --allow-empty to accept)".into()).into());
    }
    let r = check_explicit_formula(&phi, &args.field, &zeros, args.prime_cutoff, cfg)?;
    doc.section("truncations")
        .put("prime_cutoff", args.prime_cutoff)
        .put("zeros_used", r.spectral.zeros_used)
        .put("zero_height", zeros.ordinates().last().copied().unwrap_or(0.0));
    doc.section("spectral").put("value", r.spectral.value).put("tail_estimate", r.spectral.tail_estimate);
    doc.section("geometric")
        .put("discriminant_term", r.geometric.discriminant_term)
        .put("prime_term", r.geometric.prime_term)
        .put("weil_real", r.geometric.weil_real)
        .put("weil_complex", r.geometric.weil_complex)
        .put("value", r.geometric.value)
        .put("prime_tail_bound", r.geometric.prime_tail_bound)
        .put("weil_tail_estimate", r.geometric.weil_tail_estimate);
    doc.section("result")
        .put("difference", r.difference)
        .put("residual", r.residual)
        .put("total_tail", r.total_tail())
        .put("consistent_with_tails", verdict(r.residual <= r.total_tail() + cfg.target_abs_error));
    Ok(())
}

fn orbit_table(doc: &mut ReportDocument, orbits: &OrbitData) {
    let fixed = orbits.fixed_point_counts();
    let rows = (1..=orbits.max_period())
        .map(|n| vec![Value::from(n), fixed[n as usize - 1].into(), orbits.count(n).into()])
        .collect();
    doc.section("orbits").table("counts", &["n", "N_n", "m_n"], rows);
}

fn suspension_cmd(cmd: &SuspensionCmd, cfg: &PrecisionConfig, doc: &mut ReportDocument) -> Result<()> {
    match cmd {
        SuspensionCmd::Check { p, ap, kmax, nmax, phi } => {
            let curve = EllipticCurveData::new(*p, *ap)?;
            let spec = SuspensionSpec::elliptic(curve);
            doc.section("inputs")
                .put("p", *p)
                .put("ap", *ap)
                .put("l", spec.l())
                .put("alpha", spec.alpha())
                .put("euler_char", spec.euler_char())
                .put("phi", phi.describe());
            put_precision(doc, cfg);
            doc.section("truncations").put("kmax", *kmax).put("nmax", *nmax);
            let (pi, pi_bar) = frobenius_eigenvalues(&curve);
            let weil = weil_number_check(&curve);
            doc.section("weil")
                .put("pi", pi)
                .put("pi_bar", pi_bar)
                .put("modulus_error", weil.modulus_error)
                .put("rotation_error", weil.rotation_error)
                .put("weil_check", verdict(weil.passed));
            let r = check_trace_formula(&phi.build()?, &spec, *kmax, *nmax, cfg)?;
            doc.section("sides")
                .put("spectral", r.spectral.value)
                .put("spectral_imaginary", r.spectral.imaginary)
                .put("spectral_terms", r.spectral.terms)
                .put("spectral_tail_bound", r.spectral.tail_bound)
                .put("geometric", r.geometric.value)
                .put("geometric_terms", r.geometric.terms)
                .put("geometric_tail_bound", r.geometric.tail_bound)
                .put("nweighted", r.nweighted.value)
                .put("nweighted_tail_bound", r.nweighted.tail_bound)
                .put("orbit_vs_point_count", (r.geometric.value - r.nweighted.value).abs());
            doc.section("result").put("residual", r.residual);
            orbit_table(doc, &r.orbits);
        }
        SuspensionCmd::Orbits { p, ap, covering, orbits, nmax } => {
            let source = match (p, ap, covering, orbits) {
                (Some(p), Some(a), None, None) => {
                    doc.section("inputs").put("source", "elliptic").put("p", *p).put("ap", *a);
                    OrbitSource::Elliptic(EllipticCurveData::new(*p, *a)?)
                }
                (None, None, Some(q), None) => {
                    doc.section("inputs").put("source", "covering").put("q", *q);
                    if *q < 2 {
                        return Err(zrl_core::Error::Domain("covering degree must be >= 2".into()).into());
                    }
                    OrbitSource::CoveringDegree(*q)
                }
                (None, None, None, Some(path)) => {
                    doc.section("inputs").put("source", "file").put("orbits", path.display().to_string());
                    let counts = formats::parse_orbits(&formats::read_file(path)?)?;
                    OrbitSource::UserOrbits(OrbitData::from_counts(&counts)?)
                }
                _ => return Err(CliError::parse(0, "give exactly one of --p/--ap, --covering, --orbits")),
            };
            doc.section("truncations").put("nmax", *nmax);
            let data = closed_orbit_counts(&source, *nmax)?;
            orbit_table(doc, &data);
        }
    }
    Ok(())
}

fn kronecker_cmd(cmd: &KroneckerCmd, doc: &mut ReportDocument) -> Result<()> {
    match cmd {
        KroneckerCmd::Solve { alpha, coeffs, modes, min_divisor, save } => {
            let entries = formats::parse_coefficients(&formats::read_file(coeffs)?)?;
            let widest = entries.iter().map(|((m, n), _)| m.unsigned_abs().max(n.unsigned_abs())).max().unwrap_or(0);
            let cutoff = match modes {
                Some(m) if (*m as u64) < widest => {
                    return Err(zrl_core::Error::Domain(format!(
                        "--modes {m} is smaller than the largest mode index {widest} in the file"
                    ))
                    .into())
                }
                Some(m) => *m,
                None => widest as usize,
            };
            let mut g = FourierFunction2D::zeros(cutoff);
            for ((m, n), c) in &entries {
                g.set(*m, *n, *c);
            }
            doc.section("inputs").put("alpha", alpha.value()).put("coeffs", coeffs.display().to_string());
            doc.section("truncations").put("modes", cutoff).put("min_divisor", *min_divisor);
            let sol = solve_cohomological(&g, *alpha, *min_divisor)?;
            let section = doc.section("result");
            section
                .put("obstruction", sol.obstruction)
                .put("smallest_divisor", sol.smallest_divisor)
                .put("small_divisor_flag", if sol.small_divisor_flag() { "raised" } else { "clear" })
                .put("flagged_modes", sol.flagged.len())
                .put("h_norm", sol.h.l2_norm())
                .put("g_norm", g.l2_norm());
            match harmonic_projection(&g) {
                Ok(p) => section.put("harmonic_projection", p),
                Err(_) => section.put("harmonic_projection", "not real-valued"),
            };
            if !sol.flagged.is_empty() {
                let rows = sol
                    .flagged
                    .iter()
                    .map(|&(m, n)| vec![Value::from(m), n.into(), alpha.divisor(m, n).abs().into()])
                    .collect();
                doc.section("result").table("flagged", &["m", "n", "divisor"], rows);
            }
            if let Some(path) = save {
                let coeffs: Vec<_> = sol
                    .h
                    .modes()
                    .map(|mn| (mn, sol.h.get(mn.0, mn.1)))
                    .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                    .collect();
                formats::write_file(path, &formats::format_coefficients(&coeffs))?;
            }
        }
        KroneckerCmd::Report { alpha, modes } => {
            doc.section("inputs").put("alpha", alpha.value());
            doc.section("truncations").put("modes", *modes);
            let r = diophantine_report(*alpha, *modes)?;
            doc.section("result").put("fitted_constant", r.fitted_constant());
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        Value::from(row.cutoff),
                        row.min_divisor.into(),
                        row.argmin.0.into(),
                        row.argmin.1.into(),
                        row.scaled_min.into(),
                        row.amplification.into(),
                    ]
                })
                .collect();
            doc.section("result").table("divisors", &["M", "min", "m", "n", "M_times_min", "amplification"], rows);
        }
    }
    Ok(())
}

fn lefschetz_cmd(cmd: &LefschetzCmd, doc: &mut ReportDocument) -> Result<()> {
    match cmd {
        LefschetzCmd::Field { places, signature, perm } => {
            let (set, action) = match (places, signature) {
                (Some(path), _) => formats::parse_places(&formats::read_file(path)?)?,
                (None, Some((r1, r2))) => {
                    let set = InfinitePlaceSet::from_signature(*r1, *r2);
                    let action = match perm {
                        Some(p) => AutomorphismAction::from_permutation(p.clone(), &set)?,
                        None => AutomorphismAction::identity(&set),
                    };
                    (set, action)
                }
                (None, None) => return Err(CliError::parse(0, "either --places or --signature is required")),
            };
            doc.section("inputs")
                .put("r1", set.r1())
                .put("r2", set.r2())
                .put("permutation", action.permutation().to_vec())
                .put("order", action.order());
            let (lhs, rhs) = burnside_check(&set, &action)?;
            doc.section("result")
                .put("euler_characteristic_infinite", euler_characteristic_infinite(&set))
                .put("lefschetz", arithmetic_lefschetz(&set, &action)?)
                .put("burnside_sum", lhs)
                .put("burnside_expected", rhs)
                .put("burnside_check", verdict(lhs == rhs));
        }
        LefschetzCmd::Dynamical { fixed_points, orbit_only } => {
            let data = match fixed_points {
                Some(path) => formats::parse_fixed_points(&formats::read_file(path)?)?,
                None => Vec::new(),
            };
            doc.section("inputs").put("fixed_points", data.len()).put("orbit_only", *orbit_only);
            let value = compact_support_vanishing_check(*orbit_only, &data)?;
            let section = doc.section("result");
            section.put("lefschetz", value);
            if *orbit_only {
                section.put("vanishing", verdict(value == 0.0));
            }
        }
    }
    Ok(())
}
