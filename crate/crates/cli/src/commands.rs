//! Argument definitions and command bodies.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simplexbound::bits::decimal_ceil;
use simplexbound::bounds::{
    canny_bound, compact_bound, loera_santos_bound, simplex_bound_chain, simplex_min_bound, univariate_bound,
};
use simplexbound::certify::{certify_face, certify_simplex_min, certify_univariate_min, Rur, Status};
use simplexbound::face::{enumerate_faces, SimplexFace};
use simplexbound::numeric::numeric_min_estimate;
use simplexbound::{IntMultiPoly, Rat};

use crate::formats::{load_poly, load_rur, parse_rational};
use crate::report::{
    certified_parts, face_report, univariate_parts, BoundReport, CsvReport, NumericReport, Params, Report, ValueReport,
    LOG2_PLACES,
};
use crate::{CliError, EXIT_INCOMPLETE, EXIT_NONPOSITIVE, EXIT_OK};

pub const CSV_HEADER: &str = "k,d,tau,L_exact,log2_compact,log2_canny,log2_ls";
pub const NUMERIC_SAMPLES: usize = 10_000;
pub const NUMERIC_ROUNDS: usize = 100;
pub const NUMERIC_TOLERANCE: f64 = 1e-6;
const MAX_GRID_POINTS: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "simplexbound", version, about = "Lower bounds and certified minima on the standard simplex")]
pub struct Cli {
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a lower bound for given (k, d, tau) or a polynomial.
    Bound(BoundArgs),
    /// Certify the minimum of a univariate polynomial on [0, 1].
    #[command(name = "certify1d")]
    Certify1d(Certify1dArgs),
    /// Certify the minimum over the simplex, face by face.
    Certify(CertifyArgs),
    /// Tabulate the bound formulas over a parameter grid as CSV.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    Exact,
    Compact,
    Canny,
    Ls,
}

impl Formula {
    fn name(self) -> &'static str {
        match self {
            Formula::Exact => "exact",
            Formula::Compact => "compact",
            Formula::Canny => "canny",
            Formula::Ls => "ls",
        }
    }
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, conflicts_with = "poly")]
    pub k: Option<u64>,
    #[arg(long, conflicts_with = "poly")]
    pub d: Option<u64>,
    #[arg(long, conflicts_with = "poly")]
    pub tau: Option<u64>,
    #[arg(long, value_enum, default_value = "exact")]
    pub formula: Formula,
    /// Exponent constant for `--formula ls`, e.g. `1` or `3/2`.
    #[arg(long)]
    pub c: Option<String>,
    /// Use the univariate bound on [0, 1] (k = 1 only).
    #[arg(long)]
    pub univariate: bool,
    /// Measure (k, d, tau) from a polynomial file.
    #[arg(long)]
    pub poly: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Certify1dArgs {
    #[arg(long)]
    pub poly: PathBuf,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub poly: PathBuf,
    /// Directory holding `face_<vertices>.rur` files.
    #[arg(long)]
    pub rur_dir: Option<PathBuf>,
    /// Certify a single face, e.g. `0,2`.
    #[arg(long)]
    pub face: Option<String>,
    /// Compare against the floating-point estimate.
    #[arg(long)]
    pub numeric_check: bool,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub kmax: u64,
    #[arg(long)]
    pub dmax: u64,
    #[arg(long)]
    pub taumax: u64,
    #[arg(long)]
    pub c: String,
    /// Write the CSV here and print a report instead.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command; returns the exit code and stdout.
pub fn execute(cli: &Cli, echo: &[String], seed: u64) -> Result<(i32, String), CliError> {
    let start = Instant::now();
    let (code, mut report) = match &cli.command {
        Command::Bound(a) => (EXIT_OK, bound(a, echo)?),
        Command::Certify1d(a) => certify1d(a, echo)?,
        Command::Certify(a) => certify(a, echo, seed)?,
        Command::Compare(a) => match compare(a, echo)? {
            CompareOutput::Stdout(csv) => return Ok((EXIT_OK, csv)),
            CompareOutput::Report(r) => (EXIT_OK, *r),
        },
    };
    if cli.timings {
        report.timings_ms = Some(BTreeMap::from([("total".to_string(), start.elapsed().as_millis() as u64)]));
    }
    Ok((code, report.to_json()))
}

fn measure(p: &IntMultiPoly) -> Result<Params, CliError> {
    let d = u64::from(p.total_degree().unwrap_or(0));
    Ok(Params { k: p.nvars() as u64, d, tau: p.bitsize()? })
}

fn bound(a: &BoundArgs, echo: &[String]) -> Result<Report, CliError> {
    let params = match (&a.poly, a.k, a.d, a.tau) {
        (Some(path), ..) => measure(&load_poly(path)?)?,
        (None, Some(k), Some(d), Some(tau)) => Params { k, d, tau },
        _ => return Err(CliError::Invalid("give either --poly or all of --k, --d and --tau".into())),
    };
    if params.k == 0 || params.d == 0 || params.tau == 0 {
        return Err(CliError::Invalid("k, d and tau must all be at least 1".into()));
    }
    if a.univariate && (a.formula != Formula::Exact || params.k != 1) {
        return Err(CliError::Invalid("--univariate needs --formula exact and k = 1".into()));
    }
    if a.c.is_some() && a.formula != Formula::Ls {
        return Err(CliError::Invalid("--c only applies to --formula ls".into()));
    }
    let Params { k, d, tau } = params;
    let name = a.formula.name();
    let entry = match a.formula {
        Formula::Exact if a.univariate => BoundReport::from_value(name, &univariate_bound(d, tau)?),
        Formula::Exact => BoundReport::from_chain(name, &simplex_bound_chain(k, d, tau)?),
        Formula::Compact => BoundReport::from_log2(name, &compact_bound(k, d, tau)),
        Formula::Canny => BoundReport::from_log2(name, &canny_bound(k, d, tau)),
        Formula::Ls => {
            let c = a.c.as_deref().ok_or_else(|| CliError::Invalid("--formula ls needs --c".into()))?;
            BoundReport::from_log2(name, &loera_santos_bound(k, d, tau, &parse_rational(c)?)?)
        }
    };
    let mut report = Report::new("bound", echo, "ok");
    report.params = Some(params);
    report.bounds.push(entry);
    Ok(report)
}

fn certify1d(a: &Certify1dArgs, echo: &[String]) -> Result<(i32, Report), CliError> {
    let p = load_poly(&a.poly)?;
    if p.nvars() != 1 {
        return Err(CliError::Invalid(format!("certify1d needs a univariate polynomial, got {} variables", p.nvars())));
    }
    let params = measure(&p)?;
    let uni = p.to_uni().ok_or_else(|| CliError::Invalid("polynomial is not univariate".into()))?;
    let m = certify_univariate_min(&uni)?;
    let status = if m.positive { Status::Complete } else { Status::Nonpositive };
    let mut report = Report::new("certify1d", echo, status.name());
    report.params = Some(params);
    if let Some(b) = &m.bound {
        let mut entry = BoundReport::from_value("exact", b);
        entry.holds = Some(m.bound_holds);
        report.bounds.push(entry);
    }
    let (minimum, minimizers, resultant) = univariate_parts(&m);
    report.minimum = Some(minimum);
    report.positive = Some(m.positive);
    report.minimizers = minimizers;
    report.resultant = resultant;
    Ok((exit_for(status), report))
}

fn exit_for(status: Status) -> i32 {
    match status {
        Status::Complete => EXIT_OK,
        Status::Nonpositive => EXIT_NONPOSITIVE,
        Status::Incomplete => EXIT_INCOMPLETE,
    }
}

/// RURs for every face of dimension at least two that has a file in `dir`.
pub fn load_rurs(dir: Option<&Path>, k: usize) -> Result<BTreeMap<SimplexFace, Rur>, CliError> {
    let mut out = BTreeMap::new();
    let Some(dir) = dir else { return Ok(out) };
    if !dir.is_dir() {
        return Err(CliError::Io(dir.display().to_string(), "not a directory".into()));
    }
    for face in enumerate_faces(k).into_iter().filter(|f| f.dim() >= 2) {
        let path = dir.join(face.rur_file_name());
        if path.exists() {
            out.insert(face, load_rur(&path)?);
        }
    }
    Ok(out)
}

fn certify(a: &CertifyArgs, echo: &[String], seed: u64) -> Result<(i32, Report), CliError> {
    let p = load_poly(&a.poly)?;
    if p.is_zero() {
        return Err(simplexbound::Error::ZeroPolynomial.into());
    }
    if p.nvars() == 0 {
        return Err(CliError::Invalid("need at least one variable".into()));
    }
    let params = measure(&p)?;
    let rurs = load_rurs(a.rur_dir.as_deref(), p.nvars())?;

    if let Some(label) = &a.face {
        let face = SimplexFace::parse(p.nvars(), label)?;
        let result = certify_face(&p, &face, rurs.get(&face))?;
        let status = match &result.minimum {
            None => Status::Incomplete,
            Some(m) if !m.is_positive() => Status::Nonpositive,
            Some(_) => Status::Complete,
        };
        let mut report = Report::new("certify", echo, status.name());
        report.params = Some(params);
        report.minimum = result.minimum.as_ref().map(|m| ValueReport::new(m, "Z"));
        report.positive = result.minimum.as_ref().map(|m| m.is_positive());
        if status == Status::Incomplete {
            report.missing_faces.push(face.label());
        }
        let fr = face_report(&result, rurs.get(&face))?;
        report.minimizers = fr.minimizers.clone();
        report.faces.push(fr);
        return Ok((exit_for(status), report));
    }

    let c = certify_simplex_min(&p, &rurs)?;
    let mut report = Report::new("certify", echo, c.status.name());
    report.params = Some(params);
    let mut entry = BoundReport::from_value("exact", &c.bound);
    entry.holds = Some(c.bound_holds);
    report.bounds.push(entry);
    report.minimum = Some(ValueReport::new(&c.value, "Z"));
    report.positive = Some(c.value.is_positive());
    let (faces, minimizers) = certified_parts(&c, &rurs)?;
    report.faces = faces;
    report.minimizers = minimizers;
    report.attained_on = c.attained_on.iter().map(SimplexFace::label).collect();
    report.missing_faces = c.missing.iter().map(SimplexFace::label).collect();
    if a.numeric_check {
        let e = numeric_min_estimate(&p, NUMERIC_SAMPLES, NUMERIC_ROUNDS, seed);
        let certified = (c.status == Status::Complete).then_some(&c.value);
        report.numeric_check = Some(NumericReport::new(seed, &e, certified, NUMERIC_TOLERANCE));
    }
    Ok((exit_for(c.status), report))
}

enum CompareOutput {
    Stdout(String),
    Report(Box<Report>),
}

/// One CSV row per `(k, d, tau)`, `k` outermost.
pub fn compare_csv(kmax: u64, dmax: u64, taumax: u64, c: &Rat) -> Result<(String, usize), CliError> {
    if kmax == 0 || dmax == 0 || taumax == 0 {
        return Err(CliError::Invalid("grid bounds must be at least 1".into()));
    }
    let points = kmax.checked_mul(dmax).and_then(|n| n.checked_mul(taumax));
    if points.is_none_or(|n| n > MAX_GRID_POINTS) {
        return Err(CliError::Invalid(format!("grid has more than {MAX_GRID_POINTS} points")));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io("csv".into(), e.to_string());
    w.write_record(CSV_HEADER.split(',')).map_err(io)?;
    let mut rows = 0;
    for k in 1..=kmax {
        for d in 1..=dmax {
            for tau in 1..=taumax {
                let l = simplex_min_bound(k, d, tau)?.l;
                w.write_record([
                    k.to_string(),
                    d.to_string(),
                    tau.to_string(),
                    l.to_string(),
                    decimal_ceil(&compact_bound(k, d, tau), LOG2_PLACES),
                    decimal_ceil(&canny_bound(k, d, tau), LOG2_PLACES),
                    decimal_ceil(&loera_santos_bound(k, d, tau, c)?, LOG2_PLACES),
                ])
                .map_err(io)?;
                rows += 1;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io("csv".into(), e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Io("csv".into(), e.to_string()))?;
    Ok((text, rows))
}

fn compare(a: &CompareArgs, echo: &[String]) -> Result<CompareOutput, CliError> {
    let c = parse_rational(&a.c)?;
    let (text, rows) = compare_csv(a.kmax, a.dmax, a.taumax, &c)?;
    let Some(out) = &a.out else {
        return Ok(CompareOutput::Stdout(text));
    };
    std::fs::write(out, &text).map_err(|e| CliError::Io(out.display().to_string(), e.to_string()))?;
    let mut report = Report::new("compare", echo, "ok");
    report.csv = Some(CsvReport { path: Some(out.display().to_string()), rows, header: CSV_HEADER.to_string() });
    Ok(CompareOutput::Report(Box::new(report)))
}
