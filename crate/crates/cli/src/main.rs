use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

use bosent::{
    build_pair, delta_squared, entanglement_closed_form, entanglement_of_formation, normal_form,
    oracle_pair_covariance, pair_covariance, threshold_temperature, validate_rows, Error,
    FockCutoff, PairParams, Temperature, DEFAULT_VALIDATION_TOL,
};

mod systemfile;

#[derive(Parser)]
#[command(
    name = "bosent",
    version,
    about = "Thermal entanglement between bosonic modes built from eigenmode Bogoliubov rows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[command(group(ArgGroup::new("freq").required(true)))]
struct FreqArgs {
    /// Upper eigenfrequency of the pair (>= 1)
    #[arg(long, group = "freq", allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Coupling strength; the eigenfrequency is sqrt(1 + 2 omega0^2)
    #[arg(long, group = "freq", allow_negative_numbers = true)]
    omega0: Option<f64>,
}

impl FreqArgs {
    fn params(&self, temperature: Temperature) -> Result<PairParams, Error> {
        match (self.omega, self.omega0) {
            (Some(w), None) => PairParams::from_omega(w, temperature),
            (None, Some(w0)) => PairParams::from_omega0(w0, temperature),
            _ => unreachable!("the argument group admits exactly one frequency flag"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the constraint sums of a mode system file
    Validate {
        /// TOML file with the eigenfrequencies and the two Bogoliubov rows
        path: PathBuf,
        /// Largest residual accepted as zero
        #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
        tol: f64,
    },
    /// Entanglement of formation of the oscillator pair
    Entangle {
        #[command(flatten)]
        freq: FreqArgs,
        /// Temperature in units of the lower eigenfrequency (0 allowed)
        #[arg(long, allow_negative_numbers = true)]
        temperature: f64,
    },
    /// Temperature at which the oscillator pair stops being entangled
    Threshold {
        /// Upper eigenfrequency of the pair (> 1)
        #[arg(long, allow_negative_numbers = true)]
        omega: f64,
        /// Bisection stops once |delta^2 - 1| falls below this
        #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
        tol: f64,
    },
    /// CSV sweep of the discriminant and entanglement over a parameter grid
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        omega_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        omega_max: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        omega_steps: u32,
        #[arg(long, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t_steps: u32,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the covariance against the truncated Fock-space reconstruction
    OracleCheck {
        #[command(flatten)]
        freq: FreqArgs,
        /// Temperature in units of the lower eigenfrequency (0 allowed)
        #[arg(long, allow_negative_numbers = true)]
        temperature: f64,
        /// Per-mode occupation cutoff; chosen automatically when omitted
        #[arg(long)]
        cutoff: Option<usize>,
    },
}

enum CliError {
    Lib(Error),
    Io(std::io::Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Input(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    /// 2 for domain rejections (unphysical or out-of-range physics), 1 for
    /// input shape, size guards, and I/O.
    fn code(&self) -> i32 {
        match self {
            CliError::Lib(Error::LengthMismatch { .. } | Error::ResourceGuard(_)) => 1,
            CliError::Lib(_) => 2,
            CliError::Io(_) | CliError::Input(_) => 1,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.code());
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Validate { path, tol } => validate(&path, tol),
        Command::Entangle { freq, temperature } => entangle(&freq, temperature),
        Command::Threshold { omega, tol } => {
            let tc = threshold_temperature(omega, tol)?;
            println!("{tc:.11e}");
            Ok(0)
        }
        Command::Sweep {
            omega_min,
            omega_max,
            omega_steps,
            t_min,
            t_max,
            t_steps,
            out,
        } => sweep(
            omega_min,
            omega_max,
            omega_steps,
            t_min,
            t_max,
            t_steps,
            out,
        ),
        Command::OracleCheck {
            freq,
            temperature,
            cutoff,
        } => oracle_check(&freq, temperature, cutoff),
    }
}

fn validate(path: &std::path::Path, tol: f64) -> Result<i32, CliError> {
    let (_, rows) = systemfile::load(path).map_err(CliError::Input)?;
    let report = validate_rows(&rows, tol)?;
    println!("{report}");
    let pass = report.pass();
    println!("overall: {}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { 0 } else { 2 })
}

fn entangle(freq: &FreqArgs, temperature: f64) -> Result<i32, CliError> {
    let t = Temperature::new(temperature)?;
    let params = freq.params(t)?;
    let (spectrum, rows) = build_pair(&params);
    let m = pair_covariance(&rows, &spectrum, t)?;
    let nf = normal_form(&m, DEFAULT_VALIDATION_TOL)?;
    let delta = nf.delta();
    let ebits = entanglement_of_formation(&nf)?;
    println!(
        "{{\"delta_squared\":{:.16e},\"Delta\":{:.16e},\"entanglement_ebits\":{:.16e}}}",
        delta * delta,
        delta.min(1.0),
        ebits
    );
    Ok(0)
}

fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![min];
    }
    let h = (max - min) / (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + i as f64 * h
            }
        })
        .collect()
}

fn sweep(
    omega_min: f64,
    omega_max: f64,
    omega_steps: u32,
    t_min: f64,
    t_max: f64,
    t_steps: u32,
    output: Option<PathBuf>,
) -> Result<i32, CliError> {
    let ordered = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo <= hi;
    if !ordered(omega_min, omega_max) || !ordered(t_min, t_max) {
        return Err(CliError::Input(
            "sweep bounds must satisfy min <= max".into(),
        ));
    }
    let omegas = linspace(omega_min, omega_max, omega_steps as usize);
    let temps = linspace(t_min, t_max, t_steps as usize);

    let stdout = std::io::stdout();
    let mut out: BufWriter<Box<dyn Write>> = match output {
        Some(path) => BufWriter::new(Box::new(File::create(path)?)),
        None => BufWriter::new(Box::new(stdout.lock())),
    };
    writeln!(out, "omega,temperature,delta_squared,entanglement_ebits")?;
    for &omega in &omegas {
        for &temp in &temps {
            let params = PairParams::from_omega(omega, Temperature::new(temp)?)?;
            let d2 = delta_squared(&params);
            let ebits = entanglement_closed_form(&params);
            writeln!(out, "{omega:.16e},{temp:.16e},{d2:.16e},{ebits:.16e}")?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn oracle_check(freq: &FreqArgs, temperature: f64, cutoff: Option<usize>) -> Result<i32, CliError> {
    let t = Temperature::new(temperature)?;
    let params = freq.params(t)?;
    let (spectrum, rows) = build_pair(&params);
    let expected = pair_covariance(&rows, &spectrum, t)?;
    let cutoff = match cutoff {
        Some(nmax) => FockCutoff::new(nmax)?,
        None => FockCutoff::auto(&spectrum, t)?,
    };
    let result = oracle_pair_covariance(&rows, &spectrum, t, cutoff)?;
    let discrepancy = result.covariance.max_abs_difference(&expected);
    let allowed = 100.0 * result.truncation_bound + 1e-9;

    println!("cutoff = {}", cutoff.nmax());
    println!("truncation_bound = {:.3e}", result.truncation_bound);
    println!("max_discrepancy = {discrepancy:.3e}");
    println!("max_first_moment = {:.3e}", result.max_first_moment);
    let pass = discrepancy <= allowed;
    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { 0 } else { 2 })
}
