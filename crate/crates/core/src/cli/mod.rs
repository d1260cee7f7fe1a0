//! Command-line front end.
//!
//! Subcommands `sigma`, `approx`, `theorem2`, `gronwall` and `delta-demo`
//! each emit one table. Exit codes: 0 success, 2 usage error, 3 numeric
//! failure.

pub mod expr;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::approximants::{approximant_sequence, converge_to_sigma, limit_value, ApproxStep};
use crate::error::Error;
use crate::gronwall::{gronwall_sequence, Variant, DEFAULT_M_MAX, DEFAULT_ZETA_TOL};
use crate::kernel::{
    check_condition_a, normalization_table, phi_n, theorem2_verify, KernelInterval,
};
use crate::numtheory::{divisors_brute, g_alpha_brute, sigma_exact};

pub use expr::Expr;
pub use output::{write_table, Format, Meta};

#[derive(Debug, Parser)]
#[command(
    name = "divapprox",
    version,
    about = "Smooth divisor-function approximants, the cos^2n kernel, and Gronwall limits"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// Worker threads; defaults to rayon's choice (RAYON_NUM_THREADS or the core count).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// sigma_alpha(m), G_alpha(m) and the divisor count of m.
    Sigma {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        m: u64,
    },
    /// Convergence of C_{alpha,n}(M; x) as n doubles.
    Approx {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        x: f64,
        /// Summation cutoff M.
        #[arg(long = "M")]
        cutoff: f64,
        /// Stop once the tail bound (integer x) or the value (otherwise) is at most this.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Largest n tried when x is not a positive integer.
        #[arg(long, default_value_t = 1 << 20)]
        n_max: u64,
    },
    /// Kernel integral against f on [from, to] versus its integer-sum limit.
    Theorem2 {
        /// One of: a constant, x, x^k, cos(a*pi*x), step(x0).
        #[arg(long = "f", allow_hyphen_values = true)]
        function: String,
        /// Left endpoint as p/q or an integer.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value = "100,1000,10000")]
        schedule: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// G_alpha along m!, lcm(1..m) or P_m against zeta(alpha).
    Gronwall {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: u64,
        #[arg(long, value_parser = parse_variant, default_value = "factorial")]
        variant: Variant,
        #[arg(long, default_value_t = DEFAULT_ZETA_TOL)]
        zeta_tol: f64,
    },
    /// Kernel normalization I_n and the mass outside (-delta, delta).
    DeltaDemo {
        #[arg(long, default_value = "1,10,100,1000,10000")]
        schedule: String,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        /// Random points per n for the x -> 1-x symmetry spot check.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a CLI run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) => e.exit_code(),
            CliError::Io(_) => 2,
        }
    }
}

/// Parses a comma-separated, strictly increasing list of positive integers.
pub fn parse_schedule(s: &str) -> Result<Vec<u64>, Error> {
    let values = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::invalid(format!("bad schedule entry `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("schedule must be strictly increasing"));
    }
    Ok(values)
}

fn check_tol(name: &'static str, tol: f64) -> Result<(), Error> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::ArgumentOutOfRange {
            name,
            value: tol.to_string(),
            range: "> 0",
        })
    }
}

#[derive(Serialize)]
struct SigmaRow {
    alpha: f64,
    m: u64,
    sigma: f64,
    g: f64,
    divisor_count: usize,
}

#[derive(Serialize)]
struct ApproxRow {
    n: u64,
    value: f64,
    tail_bound: Option<f64>,
    residual: f64,
}

#[derive(Serialize)]
struct DeltaRow {
    n: u64,
    i_n: f64,
    one_minus_i_n: f64,
    n_one_minus_i_n: f64,
    delta: f64,
    tail_mass: f64,
    ln_tail_mass: f64,
    envelope: f64,
    ln_envelope: f64,
    symmetry_dev: f64,
}

fn meta(command: &str) -> Meta {
    vec![
        ("tool", format!("divapprox {}", env!("CARGO_PKG_VERSION"))),
        ("command", command.to_string()),
    ]
}

/// Runs one parsed command, writing its table to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.global.format;
    match &cli.command {
        Command::Sigma { alpha, m } => {
            let row = SigmaRow {
                alpha: *alpha,
                m: *m,
                sigma: sigma_exact(*alpha, *m)?,
                g: g_alpha_brute(*alpha, *m)?,
                divisor_count: divisors_brute(*m)?.len(),
            };
            let mut meta = meta("sigma");
            meta.push(("units", "dimensionless; g = sigma / m^alpha".into()));
            write_table(out, format, &meta, &[row])?;
        }
        Command::Approx {
            alpha,
            x,
            cutoff,
            tol,
            n_max,
        } => {
            check_tol("tol", *tol)?;
            let steps = approx_steps(*alpha, *x, *cutoff, *tol, *n_max)?;
            let limit = limit_value(*alpha, *x)?;
            let rows: Vec<ApproxRow> = steps
                .iter()
                .map(|s| ApproxRow {
                    n: s.n,
                    value: s.value,
                    tail_bound: s.tail_bound,
                    residual: s.value - limit,
                })
                .collect();
            let mut meta = meta("approx");
            meta.push(("alpha", alpha.to_string()));
            meta.push(("x", x.to_string()));
            meta.push(("M", cutoff.to_string()));
            meta.push(("tol", tol.to_string()));
            meta.push(("limit", limit.to_string()));
            meta.push((
                "units",
                "n is half the cosine power; residual = value - limit".into(),
            ));
            write_table(out, format, &meta, &rows)?;
        }
        Command::Theorem2 {
            function,
            from,
            to,
            schedule,
            tol,
        } => {
            check_tol("tol", *tol)?;
            let iv = KernelInterval::parse(from, to)?;
            let f = Expr::parse(function)?.to_test_function(function, &iv);
            let schedule = parse_schedule(schedule)?;
            let rows = theorem2_verify(&f, &iv, &schedule, *tol)?;
            let mut meta = meta("theorem2");
            meta.push(("f", function.clone()));
            meta.push(("interval", iv.to_string()));
            meta.push(("tol", tol.to_string()));
            meta.push((
                "units",
                "gap = |lhs - rhs|; error_estimate is absolute".into(),
            ));
            write_table(out, format, &meta, &rows)?;
        }
        Command::Gronwall {
            alpha,
            m_max,
            variant,
            zeta_tol,
        } => {
            check_tol("zeta_tol", *zeta_tol)?;
            let rows = gronwall_sequence(*alpha, *m_max, *variant, *zeta_tol)?;
            let mut meta = meta("gronwall");
            meta.push(("alpha", alpha.to_string()));
            meta.push(("variant", variant.to_string()));
            meta.push(("zeta_tol", zeta_tol.to_string()));
            meta.push((
                "units",
                "dimensionless; zeta lies in [zeta_value, zeta_value + zeta_tail_bound]".into(),
            ));
            write_table(out, format, &meta, &rows)?;
        }
        Command::DeltaDemo {
            schedule,
            delta,
            samples,
        } => {
            let schedule = parse_schedule(schedule)?;
            let norms = normalization_table(&schedule)?;
            let tails = check_condition_a(&schedule, *delta)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.global.seed);
            let rows: Vec<DeltaRow> = norms
                .iter()
                .zip(&tails)
                .map(|(nm, t)| {
                    let peak = phi_n(nm.n, 0.0);
                    let symmetry_dev = (0..*samples)
                        .map(|_| {
                            let x: f64 = rng.gen();
                            (phi_n(nm.n, x) - phi_n(nm.n, 1.0 - x)).abs() / peak
                        })
                        .fold(0.0, f64::max);
                    DeltaRow {
                        n: nm.n,
                        i_n: nm.value,
                        one_minus_i_n: nm.deficit,
                        n_one_minus_i_n: nm.scaled_deficit(),
                        delta: *delta,
                        tail_mass: t.tail_mass,
                        ln_tail_mass: t.ln_tail_mass,
                        envelope: t.envelope,
                        ln_envelope: t.ln_envelope,
                        symmetry_dev,
                    }
                })
                .collect();
            let mut meta = meta("delta-demo");
            meta.push(("delta", delta.to_string()));
            meta.push(("seed", cli.global.seed.to_string()));
            meta.push(("samples", samples.to_string()));
            meta.push((
                "units",
                "i_n is kernel mass over one period; symmetry_dev is relative to phi_n(0)".into(),
            ));
            write_table(out, format, &meta, &rows)?;
        }
    }
    Ok(())
}

fn approx_steps(
    alpha: f64,
    x: f64,
    cutoff: f64,
    tol: f64,
    n_max: u64,
) -> Result<Vec<ApproxStep>, Error> {
    if x >= 1.0 && x.fract() == 0.0 {
        return Ok(converge_to_sigma(alpha, x as u64, cutoff, tol)?.steps);
    }
    let mut steps = Vec::new();
    let mut n = 1u64;
    loop {
        let step = approximant_sequence(alpha, x, cutoff, &[n])?[0];
        steps.push(step);
        if step.value <= tol || n >= n_max {
            return Ok(steps);
        }
        n = n.saturating_mul(2).min(n_max);
    }
}

fn execute_with_threads(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.global.threads {
        Some(0) => Err(Error::invalid("--threads must be at least 1").into()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
            let buf = pool.install(|| {
                let mut buf = Vec::new();
                execute(cli, &mut buf).map(|()| buf)
            })?;
            out.write_all(&buf).map_err(CliError::from)
        }
        None => execute(cli, out),
    }
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.global.output {
        Some(path) => File::create(path).map_err(CliError::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            execute_with_threads(&cli, &mut w)?;
            w.flush().map_err(CliError::from)
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            execute_with_threads(&cli, &mut lock)
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
