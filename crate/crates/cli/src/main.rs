use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kz_core::acceptance::{criterion, Tier, CRITERIA};
use kz_core::arith::{format_rational, int, parse_rational, RFMatrix, Rational};
use kz_core::assembly::{assemble_product, verify_full_system, BasePointConfig};
use kz_core::coords::{asymptotic_exponents, coordinate_maps, h_matrix, omega_eigensystem, omega_matrix};
use kz_core::hypergeom::rationality_certificate;
use kz_core::io::{parse_document, report_to_json, solution_from_json, solution_to_json, write_document};
use kz_core::report::Report;
use kz_core::KzError;

/// Exact rational solutions of the KZ system for the permutation representation.
#[derive(Parser)]
#[command(name = "kz", version)]
struct Cli {
    /// Also write a machine-readable report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify the fundamental solution for integer rho.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        rho: i64,
        /// Comma-separated distinct rationals, one per variable (default 0,1,...).
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        /// Output document; printed to standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symbolically verify a stored solution against all n equations.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Coupling to verify against (defaults to the one stored).
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
    },
    /// Print the Omega matrices and their spectra.
    Omega {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Print the coordinate change and the H matrices.
    Coords {
        #[arg(long)]
        n: usize,
    },
    /// Certify rational solutions of the associated Gauss equation.
    Hypergeom {
        #[arg(long, allow_hyphen_values = true)]
        rho: i64,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        tier: TierArg,
        /// Run a single criterion (1..8).
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Quick,
    Full,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<KzError> for Failure {
    fn from(e: KzError) -> Self {
        match e {
            KzError::InvalidIndices(_)
            | KzError::DegenerateBasePoints
            | KzError::DegeneratePoint(_)
            | KzError::Parse { .. } => Failure::Usage(e.to_string()),
            e => {
                eprintln!("error: {e}");
                Failure::Check
            }
        }
    }
}

fn print_rf(m: &RFMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
}

fn parse_base(text: &str, n: usize) -> Result<BasePointConfig, Failure> {
    let points = text
        .split(',')
        .map(|p| parse_rational(p).ok_or_else(|| Failure::Usage(format!("bad base point {p:?}"))))
        .collect::<Result<Vec<Rational>, _>>()?;
    if points.len() != n {
        return Err(Failure::Usage(format!("expected {n} base points, got {}", points.len())));
    }
    BasePointConfig::new(points).map_err(|_| Failure::Usage("base points must be distinct".into()))
}

fn finish(command: &str, reports: &[Report], path: &Option<PathBuf>) -> Result<(), Failure> {
    for r in reports {
        print!("{r}");
    }
    if let Some(p) = path {
        fs::write(p, write_document(&report_to_json(command, reports)))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    if reports.iter().all(Report::all_passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let echo: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match cli.command {
        Command::Construct { n, rho, base, out } => {
            if n < 2 {
                return Err(Failure::Usage("n must be at least 2".into()));
            }
            let base = match base {
                Some(b) => parse_base(&b, n)?,
                None => BasePointConfig::default_for(n),
            };
            let sol = assemble_product(n, rho, &base)?;
            let rep = verify_full_system(&sol.product, n, &int(rho));
            let doc = write_document(&solution_to_json(&sol));
            match out {
                Some(p) => {
                    fs::write(&p, doc).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?
                }
                None => print!("{doc}"),
            }
            finish(&echo, &[rep], &cli.report)
        }
        Command::Verify { input, rho } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let sol = solution_from_json(&parse_document(&text)?)?;
            let rho = match rho {
                Some(r) => parse_rational(&r).ok_or_else(|| Failure::Usage(format!("bad rho {r:?}")))?,
                None => int(sol.rho),
            };
            let rep = verify_full_system(&sol.product, sol.n, &rho);
            finish(&echo, &[rep], &cli.report)
        }
        Command::Omega { n, s } => {
            if n < 2 {
                return Err(Failure::Usage("n must be at least 2".into()));
            }
            let range: Vec<usize> = match s {
                Some(s) if s == 0 || s >= n => return Err(Failure::Usage(format!("s must lie in 1..{}", n - 1))),
                Some(s) => vec![s],
                None => (1..n).collect(),
            };
            let mut rep = Report::new(format!("Omega matrices, n = {n}"));
            for s in range {
                let o = omega_matrix(n, s)?;
                let e = omega_eigensystem(n, s)?;
                println!(
                    "Omega_{s} (blocks {} I_{} and diagonal {}):\n{}",
                    o.upper_scalar,
                    s - 1,
                    o.lower_diagonal,
                    o.matrix
                );
                for (k, (v, l)) in e.vectors.iter().zip(&e.eigenvalues).enumerate() {
                    let v: Vec<String> = v.iter().map(format_rational).collect();
                    println!("  v_{} = [{}] -> {l}", k + 1, v.join(", "));
                }
                rep.pass(format!("Omega_{s}: block form and eigenvectors"));
            }
            let table = asymptotic_exponents(n, 1)?;
            println!("eigenvalue table (row k, column s):");
            for (k, row) in table.iter().enumerate() {
                println!("  k = {}: {:?}", k + 1, row);
            }
            finish(&echo, &[rep], &cli.report)
        }
        Command::Coords { n } => {
            if n < 2 {
                return Err(Failure::Usage("n must be at least 2".into()));
            }
            let maps = coordinate_maps(n)?;
            println!("S:\n{}\nS^-1:\n{}", maps.s_matrix, maps.s_inverse);
            for k in 1..=n {
                println!("H_{k}:");
                print_rf(&h_matrix(n, k)?);
            }
            let mut rep = Report::new(format!("coordinates, n = {n}"));
            rep.pass("S S^-1 = I and S^-1 = T - C/n");
            finish(&echo, &[rep], &cli.report)
        }
        Command::Hypergeom { rho } => finish(&echo, &[rationality_certificate(rho)], &cli.report),
        Command::Selftest { tier, criterion: only } => {
            let tier = match tier {
                TierArg::Quick => Tier::Quick,
                TierArg::Full => Tier::Full,
            };
            let indices: Vec<usize> = match only {
                Some(i) if i == 0 || i > CRITERIA.len() => {
                    return Err(Failure::Usage(format!("criterion must lie in 1..{}", CRITERIA.len())))
                }
                Some(i) => vec![i],
                None => (1..=CRITERIA.len()).collect(),
            };
            let reports: Vec<Report> = indices.iter().map(|&i| criterion(i, tier)).collect();
            for (i, r) in indices.iter().zip(&reports) {
                println!("{} criterion {i}: {}", if r.all_passed() { "PASS" } else { "FAIL" }, r.title);
            }
            finish(&echo, &reports, &cli.report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
