use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use matchgate_core::compress::{compress_circuit, pad_to_power_of_two};
use matchgate_core::expand::{expand_circuit_with_limit, EXPAND_WIDTH_LIMIT};
use matchgate_core::format::{parse_circuit, parse_general, parse_matchgate, serialize_circuit};
use matchgate_core::mgsim::{distribution_from_expectation, simulate_expectation, simulate_expectation_reference};
use matchgate_core::oracle::{expectation_z, report, run_statevector};
use matchgate_core::random::{gen_random, Flavor};
use matchgate_core::standardize::standardize;
use matchgate_core::{Circuit, Error};

#[derive(Parser)]
#[command(name = "matchgate", version, about = "Simulate and compile matchgate circuits")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print <Z_k>, p0 and p1 of a matchgate circuit
    Simulate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Rewrite to input 0...0 measured on line 1
    Standardize { input: PathBuf, output: PathBuf },
    /// Matchgate circuit to a general circuit of width log2(n) + 3
    Compress {
        input: PathBuf,
        output: PathBuf,
        /// Reject inputs that are not standardized or not padded
        #[arg(long)]
        strict: bool,
    },
    /// General circuit to a matchgate circuit of width 2^(m+1)
    Expand {
        input: PathBuf,
        output: PathBuf,
        /// Lift the width guard
        #[arg(long)]
        force: bool,
    },
    /// Compare the measured <Z> of two circuits
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, num_args = 2, value_names = ["KA", "KB"])]
        lines: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Engine::Oracle)]
        lhs: Engine,
        #[arg(long, value_enum, default_value_t = Engine::Oracle)]
        rhs: Engine,
    },
    /// Write a seeded random circuit
    GenRandom {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fast,
    Reference,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Mgsim,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Mg,
    Qc,
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Guard { .. } => 3,
            Error::Internal(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn write(path: &Path, c: &Circuit) -> Result<(), Failure> {
    std::fs::write(path, serialize_circuit(c)).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.15}")
}

fn summary(cmd: &str, a: &Circuit, b: &Circuit) -> String {
    let ratio = b.size() as f64 / a.size().max(1) as f64;
    format!(
        "{cmd} in_width={} in_size={} out_width={} out_size={} size_ratio={ratio:.6}",
        a.width(),
        a.size(),
        b.width(),
        b.size()
    )
}

fn expectation(c: &Circuit, line: usize, engine: Engine) -> Result<f64, Failure> {
    match (engine, c) {
        (Engine::Mgsim, Circuit::Matchgate(mg)) => {
            let mut mg = mg.clone();
            mg.measure = line;
            Ok(simulate_expectation(&mg)?)
        }
        (Engine::Mgsim, Circuit::General(_)) => Err(fail(2, "mgsim evaluates matchgate circuits only")),
        (Engine::Oracle, _) => Ok(expectation_z(&run_statevector(c)?, line)?),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Simulate { path, method } => {
            let c = parse_matchgate(&read(&path)?)?;
            let z = match method {
                Method::Fast => simulate_expectation(&c)?,
                Method::Reference => simulate_expectation_reference(&c)?,
            };
            let (p0, p1) = distribution_from_expectation(z)?;
            println!("{} {} {}", real(z.clamp(-1.0, 1.0)), real(p0), real(p1));
        }
        Cmd::Standardize { input, output } => {
            let c = parse_matchgate(&read(&input)?)?;
            let s = standardize(&c)?;
            let (a, b) = (Circuit::from(c), Circuit::from(s));
            write(&output, &b)?;
            println!("{}", summary("standardize", &a, &b));
        }
        Cmd::Compress { input, output, strict } => {
            let c = parse_matchgate(&read(&input)?)?;
            let src = if strict { c.clone() } else { pad_to_power_of_two(&standardize(&c)?) };
            let q = compress_circuit(&src)?;
            let (a, b) = (Circuit::from(c), Circuit::from(q));
            write(&output, &b)?;
            println!("{}", summary("compress", &a, &b));
        }
        Cmd::Expand { input, output, force } => {
            let c = parse_general(&read(&input)?)?;
            let limit = if force { usize::MAX } else { EXPAND_WIDTH_LIMIT };
            let e = expand_circuit_with_limit(&c, limit)?;
            let (a, b) = (Circuit::from(c), Circuit::from(e));
            write(&output, &b)?;
            println!("{}", summary("expand", &a, &b));
        }
        Cmd::Verify { a, b, lines, tol, lhs, rhs } => {
            let ca = parse_circuit(&read(&a)?)?;
            let cb = parse_circuit(&read(&b)?)?;
            let (ka, kb) = match lines.as_deref() {
                Some(&[ka, kb]) => (ka, kb),
                _ => (ca.measured_line(), cb.measured_line()),
            };
            let za = expectation(&ca, ka, lhs)?;
            let zb = expectation(&cb, kb, rhs)?;
            let r = report(za, zb, tol);
            println!("{r}");
            if !r.pass {
                return Err(fail(4, "circuits differ"));
            }
        }
        Cmd::GenRandom { flavor, width, size, seed, output } => {
            let flavor = match flavor {
                FlavorArg::Mg => Flavor::Matchgate,
                FlavorArg::Qc => Flavor::General,
            };
            let min_width = if matches!(flavor, Flavor::Matchgate) { 2 } else { 1 };
            if width < min_width || size == 0 {
                return Err(fail(2, format!("need width >= {min_width} and size >= 1")));
            }
            let c = gen_random(flavor, width, size, seed);
            match output {
                Some(p) => write(&p, &c)?,
                None => print!("{}", serialize_circuit(&c)),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
