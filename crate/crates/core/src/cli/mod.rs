//! Command-line front end. Every verb writes a plain-text `key = value`
//! report to stdout; `--report` additionally writes the report together with
//! any matrix attachments to a file.
//!
//! Exit codes: 0 success, 1 validation or contract error, 2 theorem-check
//! failure, 3 parse error (input files, perversities, example expressions
//! and command-line usage).

pub mod expr;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::complex::glue::split_by_bicollar;
use crate::complex::{
    barycentric_subdivide, emit_ssp, parse_perversity, parse_ssp, validate, ComplexError, Decomposition, Perversity,
    PerversitySpec, Space,
};
use crate::ichain::{build_complex, build_qp_quotient, build_relative, homology, IchainError};
use crate::pairing::{middle_pairing, relative_middle_pairing, PairingError};
use crate::qlinalg::io::{format_matrix, parse_matrix};
use crate::qlinalg::{BilinearForm, LinalgError, QMatrix, Subspace};
use crate::signatures::{maslov, verify_wall, verify_wall_boundary, BoundaryDecomposition, MaslovProblem, SignatureError};

use expr::ExprError;

pub const MAX_SUBDIV_VAR: &str = "STRATOS_MAX_SUBDIV";
pub const DEFAULT_MAX_SUBDIV: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "stratos", version, about = "Exact intersection homology, perverse signatures and Maslov indices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Barycentric subdivisions applied before computing.
    #[arg(long, default_value_t = 0, value_name = "K")]
    pub subdivide: usize,
    /// Also write the report and matrix attachments to this file.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PerversityPair {
    /// Perversity name (zero, top, lower-middle, upper-middle, an integer) or file.
    #[arg(long, default_value = "lower-middle")]
    pub p: String,
    /// Defaults to the complement of `--p`.
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinary rational homology of the underlying complex.
    Homology {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Intersection homology `I^p H`, or `I^{q/p} H` when `--q` is given.
    Ih {
        file: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        /// Relative to the boundary.
        #[arg(long)]
        relative: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Perverse signature of the middle pairing; relative to the boundary if there is one.
    Signature {
        file: PathBuf,
        #[command(flatten)]
        perversities: PerversityPair,
        #[command(flatten)]
        common: Common,
    },
    /// Maslov triple index of three isotropic column spans in a skew form.
    Maslov {
        form: PathBuf,
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
    /// Non-additivity check on a closed space split along its bicollar.
    WallVerify {
        file: PathBuf,
        #[command(flatten)]
        perversities: PerversityPair,
        #[command(flatten)]
        common: Common,
    },
    /// Non-additivity check on a space with boundary split along its bicollar.
    WallVerifyBoundary {
        file: PathBuf,
        #[command(flatten)]
        perversities: PerversityPair,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a catalog space as `.ssp`, e.g. `make glue cone(s3) cone(s3)`.
    Make {
        #[arg(required = true, num_args = 1.., value_name = "EXPR")]
        words: Vec<String>,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Validation, face counts, strata and Euler characteristic.
    Info {
        file: PathBuf,
        #[arg(long, default_value_t = 0, value_name = "K")]
        subdivide: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 3,
            CliError::Validation(_) | CliError::Failed(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Parse(_) => CliError::Parse(e.to_string()),
            ComplexError::Invalid(_) => CliError::Validation(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Parse { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Syntax { .. } => CliError::Parse(e.to_string()),
            ExprError::Complex(c) => c.into(),
            ExprError::Io { path, message } => CliError::Io { path, message },
            ExprError::Invalid(_) => CliError::Failed(e.to_string()),
        }
    }
}

macro_rules! failed_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Failed(e.to_string())
            }
        })*
    };
}
failed_from!(IchainError, PairingError, SignatureError);

/// A finished report; `holds == false` means a theorem check failed.
pub struct Outcome {
    pub report: String,
    pub attachments: String,
    pub report_path: Option<PathBuf>,
    pub holds: bool,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome { report, attachments: String::new(), report_path: None, holds: true }
    }
}

/// Parses `args` (program name first), runs the verb and returns the exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{e}");
                3
            };
        }
    };
    match run(&cli.command) {
        Ok(o) => {
            let _ = write!(out, "{}", o.report);
            if let Some(path) = &o.report_path {
                let text = format!("{}{}", o.report, o.attachments);
                if let Err(e) = std::fs::write(path, text) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return 1;
                }
            }
            if o.holds {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// `STRATOS_MAX_SUBDIV`, or the default when unset.
pub fn max_subdivisions() -> Result<usize, CliError> {
    match std::env::var(MAX_SUBDIV_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Parse(format!("{MAX_SUBDIV_VAR}: expected a nonnegative integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_SUBDIV),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Parses and validates an `.ssp` file.
pub fn load_space(path: &Path) -> Result<Space, CliError> {
    let x = parse_ssp(&read(path)?).map_err(|e| match e {
        ComplexError::Parse(p) => CliError::Parse(format!("{}: {p}", path.display())),
        other => CliError::Validation(format!("{}: {other}", path.display())),
    })?;
    let v = validate(&x);
    if !v.is_valid() {
        return Err(CliError::Validation(format!("{}: validation failed\n{v}", path.display())));
    }
    Ok(x)
}

/// A perversity name, or else a perversity file.
pub fn load_perversity(arg: &str) -> Result<PerversitySpec, CliError> {
    if let Some(spec) = PerversitySpec::from_name(arg) {
        return Ok(spec);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Parse(format!(
            "`{arg}` is neither a perversity name (zero, top, lower-middle, upper-middle, an integer) nor a file"
        )));
    }
    parse_perversity(&read(path)?).map_err(|e| CliError::Parse(format!("{arg}: {e}")))
}

fn resolve_pair(x: &Space, pair: &PerversityPair) -> Result<(Perversity, Perversity), CliError> {
    let p = load_perversity(&pair.p)?.resolve(x)?;
    let q = match &pair.q {
        Some(q) => load_perversity(q)?.resolve(x)?,
        None => p.complement(x),
    };
    Ok((p, q))
}

/// `k` barycentric subdivisions, carrying perversities along.
fn subdivide(x: Space, k: usize, perversities: &mut [Perversity]) -> Result<Space, CliError> {
    let mut x = x;
    for _ in 0..k {
        let sd = barycentric_subdivide(&x)?;
        for p in perversities.iter_mut() {
            *p = sd.transfer(&x, p);
        }
        x = sd.space;
    }
    Ok(x)
}

fn degrees(x: &Space, degree: Option<usize>) -> Result<Vec<usize>, CliError> {
    match degree {
        Some(d) if d > x.dim() => Err(CliError::Failed(format!("degree {d} exceeds dimension {}", x.dim()))),
        Some(d) => Ok(vec![d]),
        None => Ok((0..=x.dim()).collect()),
    }
}

fn header(out: &mut String, file: &Path, x: &Space) {
    let _ = writeln!(out, "file = {}", file.display());
    let _ = writeln!(out, "dim = {}", x.dim());
}

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Homology { file, degree, common } => {
            let x = subdivide(load_space(file)?.forget_strata(), common.subdivide, &mut [])?;
            let c = build_complex(&x, &Perversity::zero(&x))?;
            let mut out = String::new();
            header(&mut out, file, &x);
            for i in degrees(&x, *degree)? {
                out.push_str(&homology(&c, i).report(&x));
            }
            Ok(with_report(Outcome::ok(out), common))
        }
        Command::Ih { file, p, q, degree, relative, common } => {
            let x0 = load_space(file)?;
            let mut perv = vec![load_perversity(p)?.resolve(&x0)?];
            if let Some(q) = q {
                perv.push(load_perversity(q)?.resolve(&x0)?);
            }
            let x = subdivide(x0, common.subdivide, &mut perv)?;
            if *relative && !x.has_boundary() {
                return Err(CliError::Failed("--relative needs a space with boundary".into()));
            }
            let boundary = relative.then(|| x.boundary_mask());
            let c = match (&perv[..], boundary) {
                ([p], None) => build_complex(&x, p)?,
                ([p], Some(b)) => build_relative(&x, b, p)?,
                ([p, q], b) => build_qp_quotient(&x, b, p, q)?,
                _ => unreachable!("one or two perversities"),
            };
            let mut out = String::new();
            header(&mut out, file, &x);
            let _ = writeln!(out, "p = {:?}", perv[0].values());
            if let Some(q) = perv.get(1) {
                let _ = writeln!(out, "q = {:?}", q.values());
            }
            let _ = writeln!(out, "relative = {relative}");
            for i in degrees(&x, *degree)? {
                out.push_str(&homology(&c, i).report(&x));
            }
            Ok(with_report(Outcome::ok(out), common))
        }
        Command::Signature { file, perversities, common } => {
            let x0 = load_space(file)?;
            let (p, q) = resolve_pair(&x0, perversities)?;
            let mut pq = [p, q];
            let x = subdivide(x0, common.subdivide, &mut pq)?;
            let [p, q] = pq;
            let depth = max_subdivisions()?;
            let relative = x.has_boundary();
            let m = if relative { relative_middle_pairing(&x, &p, &q, depth)? } else { middle_pairing(&x, &p, &q, depth)? };
            let mut out = String::new();
            header(&mut out, file, &x);
            let _ = writeln!(out, "p = {:?}", p.values());
            let _ = writeln!(out, "q = {:?}", q.values());
            let _ = writeln!(out, "relative = {relative}");
            let _ = writeln!(out, "rank = {}", m.matrix.rows());
            let _ = writeln!(out, "depth = {}", m.depth);
            let _ = writeln!(out, "sigma = {}", m.signature()?);
            let mut o = Outcome::ok(out);
            o.attachments = format!("\n{}", m.emit());
            Ok(with_report(o, common))
        }
        Command::Maslov { form, a, b, c, report } => {
            let load = |p: &Path| -> Result<QMatrix, CliError> {
                parse_matrix(&read(p)?).map_err(|e| match e {
                    LinalgError::Parse { .. } => CliError::Parse(format!("{}: {e}", p.display())),
                    other => CliError::Failed(format!("{}: {other}", p.display())),
                })
            };
            let f = load(form)?;
            let n = f.rows();
            let span = |p: &Path| -> Result<Subspace, CliError> {
                let m = load(p)?;
                if m.rows() != n {
                    return Err(CliError::Failed(format!("{}: expected {n} rows, found {}", p.display(), m.rows())));
                }
                Ok(Subspace::column_space(&m))
            };
            let problem = MaslovProblem::new(BilinearForm::new(f)?, span(a)?, span(b)?, span(c)?)?;
            let o = maslov(&problem)?;
            let mut out = String::new();
            let _ = writeln!(out, "dim = {n}");
            let _ = writeln!(out, "dim_a = {}", problem.a().dim());
            let _ = writeln!(out, "dim_b = {}", problem.b().dim());
            let _ = writeln!(out, "dim_c = {}", problem.c().dim());
            let _ = writeln!(out, "dim_w = {}", o.w_dim);
            let _ = writeln!(out, "index = {}", o.index);
            let mut outcome = Outcome::ok(out);
            outcome.attachments = format!("\n# psi on W\n{}", format_matrix(&o.psi));
            outcome.report_path = report.clone();
            Ok(outcome)
        }
        Command::WallVerify { file, perversities, common } => {
            let x = load_space(file)?;
            if x.has_boundary() {
                return Err(CliError::Failed("space has boundary; use wall-verify-boundary".into()));
            }
            let (mut p, mut q) = resolve_pair(&x, perversities)?;
            let mut d = Decomposition::from_space(x)?;
            for _ in 0..common.subdivide {
                let (next, sd) = d.subdivide()?;
                p = sd.transfer(&d.x, &p);
                q = sd.transfer(&d.x, &q);
                d = next;
            }
            let r = verify_wall(&d, &p, &q, max_subdivisions()?)?;
            let mut out = String::new();
            header(&mut out, file, &d.x);
            let _ = writeln!(out, "p = {:?}", p.values());
            let _ = writeln!(out, "q = {:?}", q.values());
            let _ = writeln!(out, "{r}");
            Ok(with_report(Outcome { holds: r.holds(), ..Outcome::ok(out) }, common))
        }
        Command::WallVerifyBoundary { file, perversities, common } => {
            let x = load_space(file)?;
            if !x.has_boundary() {
                return Err(CliError::Failed("space has no boundary; use wall-verify".into()));
            }
            let (z, y1, y2) = split_by_bicollar(&x)?;
            let (mut p, mut q) = resolve_pair(&x, perversities)?;
            let n = x.dim();
            let (mut x, mut z, mut y1, mut y2) = (x, z, y1, y2);
            for _ in 0..common.subdivide {
                let sd = barycentric_subdivide(&x)?;
                p = sd.transfer(&x, &p);
                q = sd.transfer(&x, &q);
                z = sd.subdivide_tops(n - 1, &z);
                y1 = sd.subdivide_tops(n, &y1);
                y2 = sd.subdivide_tops(n, &y2);
                x = sd.space;
            }
            let bd = BoundaryDecomposition::new(x, &z, &y1, &y2)?;
            let r = verify_wall_boundary(&bd, &p, &q, max_subdivisions()?)?;
            let mut out = String::new();
            header(&mut out, file, &bd.original);
            let _ = writeln!(out, "p = {:?}", p.values());
            let _ = writeln!(out, "q = {:?}", q.values());
            let _ = writeln!(out, "{r}");
            Ok(with_report(Outcome { holds: r.holds(), ..Outcome::ok(out) }, common))
        }
        Command::Make { words, output } => {
            let x = expr::build(&expr::from_words(words)?)?;
            let v = validate(&x);
            if !v.is_valid() {
                return Err(CliError::Validation(format!("generated space failed validation\n{v}")));
            }
            let text = emit_ssp(&x);
            match output {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
                    Ok(Outcome::ok(format!("wrote = {}\n", path.display())))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Info { file, subdivide: k } => {
            let x = subdivide(load_space(file)?, *k, &mut [])?;
            Ok(Outcome::ok(info(file, &x)))
        }
    }
}

fn with_report(mut o: Outcome, common: &Common) -> Outcome {
    o.report_path = common.report.clone();
    o
}

fn info(file: &Path, x: &Space) -> String {
    let mut out = String::new();
    header(&mut out, file, x);
    let f: Vec<String> = (0..=x.dim()).map(|d| x.complex().count(d).to_string()).collect();
    let _ = writeln!(out, "f_vector = {}", f.join(" "));
    let _ = writeln!(out, "euler = {}", x.euler_characteristic());
    let _ = writeln!(out, "boundary = {}", x.has_boundary());
    let _ = writeln!(out, "s_closed = {}", x.is_s_closed());
    let _ = writeln!(out, "bicollar = {}", x.bicollar().is_some());
    let strata = x.singular_strata();
    let _ = writeln!(out, "singular_strata = {}", strata.len());
    for (i, s) in strata.iter().enumerate() {
        let rep: Vec<String> = s.representative.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "stratum {i} = codim {} level {} representative {}", s.codim, s.level, rep.join(" "));
    }
    let _ = write!(out, "{}", validate(x));
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}
