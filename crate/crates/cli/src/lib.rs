//! Command-line front end for the analogue library: `eval`, `series` and
//! `verify`. Exit codes are 0 on success, 1 when a verification check fails
//! and 2 on usage or configuration errors.

mod render;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacobi_analogues::verify::{run_suite, SuiteConfig, Tolerances};
use jacobi_analogues::{phi_oracle, AnalogueFn, AnalogueSet, ModulusParams, DEFAULT_ORDER};
use num_complex::Complex64;

pub use render::{fmt_num, EvalRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "jacobi-analogues",
    version,
    about = "Jacobi-type analogue functions and their identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at a point inside its trusted disk.
    Eval(EvalArgs),
    /// Print the Maclaurin coefficients of one function.
    Series(SeriesArgs),
    /// Run the identity checks over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// phi, psi, s, c, d, partial, nabla or delta.
    #[arg(long = "fn")]
    pub function: AnalogueFn,
    /// Parameter as p/q, e.g. 1/6.
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub kappa: f64,
    /// Complex point such as 0.1 or 0.1+0.05i.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Complex64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long = "fn")]
    pub function: AnalogueFn,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Values of a, comma separated or repeated. Defaults to the built-in grid.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<String>,
    /// Values of kappa, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub kappa: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Tolerance for coefficientwise series checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Tolerance for pointwise checks.
    #[arg(long)]
    pub pointwise_tol: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` (or the `--output` file) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((code, text, common_output)) => match emit(&text, common_output, out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(text.as_bytes()),
        None => out.write_all(text.as_bytes()),
    }
}

type Outcome<'a> = std::result::Result<(i32, String, Option<&'a PathBuf>), String>;

fn execute(command: &Command) -> Outcome<'_> {
    match command {
        Command::Eval(args) => {
            let text = cmd_eval(args)?;
            Ok((EXIT_OK, text, args.common.output.as_ref()))
        }
        Command::Series(args) => {
            let text = cmd_series(args)?;
            Ok((EXIT_OK, text, args.common.output.as_ref()))
        }
        Command::Verify(args) => {
            let (code, text) = cmd_verify(args)?;
            Ok((code, text, args.common.output.as_ref()))
        }
    }
}

fn build(a: &str, kappa: f64, order: usize) -> std::result::Result<AnalogueSet, String> {
    let params = ModulusParams::parse(a, kappa).map_err(|e| e.to_string())?;
    AnalogueSet::build(&params, order).map_err(|e| e.to_string())
}

pub fn cmd_eval(args: &EvalArgs) -> std::result::Result<String, String> {
    let set = build(&args.a, args.kappa, args.order)?;
    let value = set.eval(args.function, args.u).map_err(|e| e.to_string())?;
    let oracle = if args.function == AnalogueFn::Phi && args.u.im == 0.0 {
        Some(phi_oracle(set.params(), args.u.re).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let record = EvalRecord {
        function: args.function,
        a: set.params().a().to_string(),
        kappa: args.kappa,
        u: args.u,
        value,
        oracle,
    };
    Ok(render::eval(&record, args.common.format))
}

pub fn cmd_series(args: &SeriesArgs) -> std::result::Result<String, String> {
    let set = build(&args.a, args.kappa, args.order)?;
    Ok(render::series(
        args.function,
        set.params(),
        set.get(args.function),
        args.common.format,
    ))
}

/// Validates the whole grid, runs the suite, and returns the exit code with
/// the rendered report.
pub fn cmd_verify(args: &VerifyArgs) -> std::result::Result<(i32, String), String> {
    let defaults = SuiteConfig::default();
    let kappas = if args.kappa.is_empty() {
        defaults.kappas.clone()
    } else {
        args.kappa.clone()
    };
    let a_values = if args.a.is_empty() {
        defaults.a_values.clone()
    } else {
        let mut parsed = Vec::with_capacity(args.a.len());
        for a in &args.a {
            let params = ModulusParams::parse(a, kappas[0]).map_err(|e| e.to_string())?;
            parsed.push(params.a().clone());
        }
        parsed
    };
    for a in &a_values {
        for &kappa in &kappas {
            ModulusParams::new(a.clone(), kappa).map_err(|e| e.to_string())?;
        }
    }
    let mut tolerances = Tolerances::default();
    if let Some(t) = args.tol {
        tolerances.series = check_tol(t, "--tol")?;
    }
    if let Some(t) = args.pointwise_tol {
        tolerances.pointwise = check_tol(t, "--pointwise-tol")?;
    }
    if args.order < 4 {
        return Err("order must be at least 4".into());
    }
    let config = SuiteConfig {
        a_values,
        kappas,
        order: args.order,
        tolerances,
    };
    let report = run_suite(&config);
    let code = if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let text = render::report(&report, args.common.format).map_err(|e| e.to_string())?;
    Ok((code, text))
}

fn check_tol(t: f64, flag: &str) -> std::result::Result<f64, String> {
    if t.is_finite() && t >= 0.0 {
        Ok(t)
    } else {
        Err(format!("{flag} must be a finite non-negative number"))
    }
}
