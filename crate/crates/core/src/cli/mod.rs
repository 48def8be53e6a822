//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 a mathematical
//! precondition does not hold (for example a leading coefficient that is
//! not semisimple).

pub mod tuplefile;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::convolution::{convolution_matrices, middle_convolution, ConvolutionError};
use crate::exactla::{Mat, Scalar};
use crate::model::{fixtures, from_okubo, spectral_type, ShiftVector, SpectralError, Tuple};
use crate::reduction::{classify_terminal, enumerate_terminals, reduce, ReductionError, Verdict};
use crate::rigidity::{are_similar, index, is_irreducible, RigidityError};
use tuplefile::{parse_tuple, write_tuple, TupleFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "midconv", version, about = "Middle convolution and rigidity index for tuples of matrices")]
struct Cli {
    /// Report style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index of rigidity with commutant dimensions.
    Idx { file: PathBuf },
    /// Convolution matrices for a parameter mu.
    Conv {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Middle convolution.
    Mc {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Addition: shift every coefficient by a scalar multiple of the identity.
    Add {
        file: PathBuf,
        /// Comma separated shifts, one per coefficient slot in slot order.
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Absolute irreducibility.
    Irred { file: PathBuf },
    /// Spectral type of every point.
    Spectral { file: PathBuf },
    /// Simultaneous similarity of two tuples.
    Similar { a: PathBuf, b: PathBuf },
    /// Reduce by addition and middle convolution.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// List terminal multiplicity patterns of index zero.
    Enumerate {
        #[arg(long)]
        r: usize,
        #[arg(long = "nmax")]
        n_max: usize,
    },
    /// Emit a built-in example tuple.
    Fixtures(FixtureArgs),
}

#[derive(Args, Debug)]
struct FixtureArgs {
    #[command(subcommand)]
    which: Fixture,
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Fixture {
    /// Confluent hypergeometric system.
    Hypergeometric {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value = "1/3", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        k: String,
    },
    /// Bessel-type system with nilpotent leading coefficient.
    Bessel {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a11: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a12: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a21: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a22: String,
    },
    /// Birkhoff form of an Okubo system (z - T) Y' = A Y with diagonal T.
    Okubo {
        /// Diagonal of T, comma separated.
        #[arg(long = "t-diag", allow_hyphen_values = true)]
        t_diag: String,
        /// Rows of A separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INVALID, message: message.into() }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PRECONDITION, message: message.into() }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Model(m) => Failure::invalid(m.to_string()),
            other => Failure::precondition(other.to_string()),
        }
    }
}

impl From<ConvolutionError> for Failure {
    fn from(e: ConvolutionError) -> Self {
        Failure::precondition(e.to_string())
    }
}

impl From<RigidityError> for Failure {
    fn from(e: RigidityError) -> Self {
        match e {
            RigidityError::SizeMismatch { .. } | RigidityError::SkeletonMismatch | RigidityError::Shape => {
                Failure::invalid(e.to_string())
            }
            _ => Failure::precondition(e.to_string()),
        }
    }
}

/// Output of a successful command: the human text, the machine document,
/// and an exit code (nonzero when the report itself states a violated
/// precondition).
struct Report {
    human: String,
    machine: Value,
    code: i32,
}

impl Report {
    fn ok(human: String, machine: Value) -> Self {
        Report { human, machine, code: EXIT_OK }
    }
}

fn scalar(s: &str) -> Result<Scalar, Failure> {
    s.trim().parse().map_err(|e| Failure::invalid(format!("{e}")))
}

fn scalar_list(s: &str) -> Result<Vec<Scalar>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(scalar).collect()
}

fn read_tuple(path: &Path) -> Result<Tuple, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_tuple(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, t: &Tuple) -> Result<(), Failure> {
    std::fs::write(path, write_tuple(t)).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn tuple_json(t: &Tuple) -> Value {
    serde_json::to_value(TupleFile::from_tuple(t)).expect("serializable")
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn matrix_text(m: &Mat, indent: &str) -> String {
    let rows = m.to_rows();
    let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>width$}", x.to_string())).collect();
        let _ = writeln!(out, "{indent}[{}]", cells.join("  "));
    }
    out
}

fn tuple_text(t: &Tuple) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, r = {}, M = {}", t.n(), t.r(), t.slot_count());
    for (i, p) in t.points().iter().enumerate() {
        let _ = writeln!(out, "point {i} ({}), m = {}", p.location, p.m);
        for (k, a) in p.coeffs.iter().enumerate() {
            let _ = writeln!(out, "  A_{}:", p.m - k);
            out.push_str(&matrix_text(a, "    "));
        }
    }
    out
}

fn cmd_idx(file: &Path) -> Result<Report, Failure> {
    let t = read_tuple(file)?;
    let rep = index(&t);
    let human = format!(
        "n = {}, r = {}, M = {}\ncommutant dims: {:?}\nlocal indices: {:?}\nidx = {}\n",
        rep.n, rep.r, rep.slots, rep.commutant_dims, rep.local_indices, rep.idx
    );
    Ok(Report::ok(human, to_value(&rep)))
}

fn cmd_conv(file: &Path, mu: &str) -> Result<Report, Failure> {
    let t = read_tuple(file)?;
    let mu = scalar(mu)?;
    let c = convolution_matrices(&t, &mu);
    let blocks: Vec<Value> = c.block_index.iter().map(|s| json!([s.point, s.j])).collect();
    let mut human = format!("mu = {mu}\nblock order: ");
    human.push_str(&c.block_index.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    human.push('\n');
    human.push_str(&tuple_text(&c.base));
    let machine = json!({ "mu": mu.to_string(), "block_index": blocks, "tuple": tuple_json(&c.base) });
    Ok(Report::ok(human, machine))
}

fn cmd_mc(file: &Path, mu: &str, output: Option<&Path>) -> Result<Report, Failure> {
    let t = read_tuple(file)?;
    let mu = scalar(mu)?;
    let out = middle_convolution(&t, &mu)?;
    if let Some(path) = output {
        write_output(path, &out.result)?;
    }
    let dim_k: usize = out.dim_k.iter().sum();
    let mut human = format!(
        "mu = {mu}\ndim K = {dim_k} (per point {:?})\ndim L = {}\nsize {} -> {}\n",
        out.dim_k,
        out.dim_l,
        t.n() * t.slot_count(),
        out.result.n()
    );
    human.push_str(&tuple_text(&out.result));
    let machine = json!({
        "mu": mu.to_string(),
        "dim_k": out.dim_k,
        "dim_l": out.dim_l,
        "size": out.result.n(),
        "result": tuple_json(&out.result),
    });
    Ok(Report::ok(human, machine))
}

fn cmd_add(file: &Path, shift: &str, output: Option<&Path>) -> Result<Report, Failure> {
    let t = read_tuple(file)?;
    let s = ShiftVector(scalar_list(shift)?);
    let u = t.addition(&s).map_err(|e| Failure::invalid(e.to_string()))?;
    if let Some(path) = output {
        write_output(path, &u)?;
    }
    Ok(Report::ok(tuple_text(&u), json!({ "result": tuple_json(&u) })))
}

fn cmd_irred(file: &Path) -> Result<Report, Failure> {
    let t = read_tuple(file)?;
    let irr = is_irreducible(&t);
    Ok(Report::ok(format!("irreducible: {irr}\n"), json!({ "irreducible": irr })))
}

fn cmd_spectral(file: &Path) -> Result<Report, Failure> {
    let t = read_tuple(file)?;
    let mut human = String::new();
    let mut points = Vec::new();
    for i in 0..t.points().len() {
        let st = spectral_type(&t, i)?;
        let _ = writeln!(human, "point {i}: {}", st.pattern());
        for b in &st.blocks {
            let subs: Vec<String> = b
                .sub
                .iter()
                .map(|e| format!("{} (mult {}, jordan {:?})", e.eigenvalue, e.multiplicity, e.partition))
                .collect();
            let _ = writeln!(human, "  A_1 eigenvalue {} on dim {}: {}", b.eigenvalue, b.size, subs.join(", "));
        }
        points.push(json!({ "point": i, "pattern": st.pattern().to_string(), "blocks": to_value(&st.blocks) }));
    }
    Ok(Report::ok(human, json!({ "points": points })))
}

fn cmd_similar(a: &Path, b: &Path) -> Result<Report, Failure> {
    let ta = read_tuple(a)?;
    let tb = read_tuple(b)?;
    let s = are_similar(&ta, &tb)?;
    let mut human = format!("similar: {}\n", s.is_some());
    if let Some(m) = &s {
        human.push_str("intertwiner S (S A = B S):\n");
        human.push_str(&matrix_text(m, "  "));
    }
    let machine = json!({ "similar": s.is_some(), "intertwiner": s.as_ref().map(|m| to_value(&m.to_rows())) });
    Ok(Report::ok(human, machine))
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::ReducedToRankOne => json!({ "kind": "reduced_to_rank_one" }),
        Verdict::Terminal { pattern, classification } => json!({
            "kind": "terminal",
            "pattern": pattern.to_string(),
            "classification": classification.to_string(),
        }),
        Verdict::AssumptionViolated(why) => json!({ "kind": "assumption_violated", "reason": why }),
    }
}

fn cmd_reduce(file: &Path, trace: bool) -> Result<Report, Failure> {
    let t = read_tuple(file)?;
    let tr = reduce(&t);
    let mut human = format!("verdict: {}\nsizes: {:?}\n", tr.verdict, tr.sizes());
    if trace {
        for (k, s) in tr.steps.iter().enumerate() {
            let shift: Vec<String> = s.shift.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                human,
                "step {}: shift [{}], mu = {}, size {} -> {}",
                k + 1,
                shift.join(", "),
                s.mu,
                s.size_before,
                s.size_after
            );
        }
        human.push_str("terminal tuple:\n");
        human.push_str(&tuple_text(&tr.terminal));
    }
    let mut machine = json!({ "verdict": verdict_json(&tr.verdict), "sizes": tr.sizes() });
    if trace {
        machine["steps"] = to_value(&tr.steps);
        machine["terminal"] = tuple_json(&tr.terminal);
    }
    let code = if matches!(tr.verdict, Verdict::AssumptionViolated(_)) { EXIT_PRECONDITION } else { EXIT_OK };
    Ok(Report { human, machine, code })
}

fn cmd_enumerate(r: usize, n_max: usize) -> Result<Report, Failure> {
    let found = enumerate_terminals(r, n_max).map_err(|e| match e {
        ReductionError::EnumerationBounds { .. } => Failure::invalid(e.to_string()),
        other => Failure::precondition(other.to_string()),
    })?;
    let mut human = String::new();
    let mut items = Vec::new();
    for e in &found {
        let class = classify_terminal(&e.pattern);
        let _ = writeln!(human, "n={:>2}  {}  [{}]", e.pattern.size(), e.pattern, class);
        items.push(json!({
            "n": e.pattern.size(),
            "pattern": e.pattern.to_string(),
            "classification": class.to_string(),
            "realizability_unknown": e.realizability_unknown,
        }));
    }
    let _ = writeln!(human, "{} patterns", found.len());
    Ok(Report::ok(human, json!({ "r": r, "n_max": n_max, "patterns": items })))
}

fn parse_matrix(s: &str) -> Result<Mat, Failure> {
    let rows = s.split(';').map(scalar_list).collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(rows).map_err(|e| Failure::invalid(e.to_string()))
}

fn cmd_fixture(args: &FixtureArgs) -> Result<Report, Failure> {
    let t = match &args.which {
        Fixture::Hypergeometric { nu, gamma, alpha, k } => {
            fixtures::hypergeometric(&scalar(nu)?, &scalar(gamma)?, &scalar(alpha)?, &scalar(k)?)
                .map_err(|e| Failure::invalid(e.to_string()))?
        }
        Fixture::Bessel { a11, a12, a21, a22 } => {
            fixtures::bessel(&scalar(a11)?, &scalar(a12)?, &scalar(a21)?, &scalar(a22)?)
        }
        Fixture::Okubo { t_diag, a } => {
            let t = Mat::diag(&scalar_list(t_diag)?);
            from_okubo(&t, &parse_matrix(a)?).map_err(|e| Failure::invalid(e.to_string()))?
        }
    };
    if let Some(path) = &args.output {
        write_output(path, &t)?;
    }
    Ok(Report::ok(write_tuple(&t), tuple_json(&t)))
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Idx { file } => cmd_idx(file),
        Command::Conv { file, mu } => cmd_conv(file, mu),
        Command::Mc { file, mu, output } => cmd_mc(file, mu, output.as_deref()),
        Command::Add { file, shift, output } => cmd_add(file, shift, output.as_deref()),
        Command::Irred { file } => cmd_irred(file),
        Command::Spectral { file } => cmd_spectral(file),
        Command::Similar { a, b } => cmd_similar(a, b),
        Command::Reduce { file, trace } => cmd_reduce(file, *trace),
        Command::Enumerate { r, n_max } => cmd_enumerate(*r, *n_max),
        Command::Fixtures(args) => cmd_fixture(args),
    }
}

/// Runs the command line `argv` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(rep) => {
            let text = match cli.format {
                Format::Human => rep.human,
                Format::Machine => {
                    let mut s = serde_json::to_string_pretty(&rep.machine).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            let _ = out.write_all(text.as_bytes());
            rep.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
