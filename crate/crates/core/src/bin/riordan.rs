//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or parse
//! error, 3 domain error (non-invertible input, precision mismatch, ...).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use riordan_core::checks::{run_suite, CheckConfig, SUITE_NAMES};
use riordan_core::{
    parse_pair, parse_series, phi_apply, rtimes_binomial_power, to_matrix, CauchyElement, Error,
    Rational, RiordanElement,
};

#[derive(Parser)]
#[command(
    name = "riordan",
    about = "Exact calculator for truncated power series, the Riordan ⋊ product, \
             the formal calculus Φ, and Riordan matrices",
    version
)]
struct Cli {
    /// Truncation order used when the input carries no O(x^N) marker
    #[arg(long, global = true, default_value_t = 16)]
    precision: usize,

    /// RNG seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Trials per randomized check suite
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and normalize a series or a pair
    Eval {
        /// A series like "1 + 2*x - x^3" or a pair like "(1 + x ; x + x^2)"
        input: String,
    },
    /// ⋊ product of two pairs
    Rtimes { left: String, right: String },
    /// n-th ⋊ power of a pair, via the closed form
    Power { input: String, n: usize },
    /// Apply Φ_base to a series: sum of f_n · base^⋊n
    Phi {
        /// Base pair; mu must have no constant term, sigma no linear term
        base: String,
        /// Coefficient series f
        f: String,
    },
    /// Cauchy-algebra (star) arithmetic over a fixed ideal base
    Star {
        /// Base pair for the algebra
        base: String,
        #[command(subcommand)]
        op: StarOp,
    },
    /// Generalized binomial power with rational exponent
    Genpow {
        input: String,
        /// Rational exponent, e.g. 2, -1, 3/2
        lambda: String,
        /// Which power to take
        #[arg(long, value_enum, default_value_t = GenpowMode::Rtimes)]
        mode: GenpowMode,
    },
    /// Leading n-by-n block of the Riordan matrix of a pair
    Matrix { input: String, n: usize },
    /// Run the randomized property suites
    Check {
        /// Suite name, or "all"
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum StarOp {
    /// Star product of two representation series
    Mul { left: String, right: String },
    /// Star inverse of a representation with constant term 1
    Inverse { rep: String },
    /// Star exponential of a representation with no constant term
    Exp { rep: String },
    /// Star logarithm of a representation with constant term 1
    Log { rep: String },
    /// Realize a representation as an actual pair via Φ
    Realize { rep: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenpowMode {
    /// Binomial series in ⋊-powers of (g - identity); needs a group element
    Rtimes,
    /// Star power of the representation series; needs constant term 1
    Star,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_parse() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let n = cli.precision;
    match &cli.command {
        Command::Eval { input } => {
            if input.trim_start().starts_with('(') {
                let p = parse_pair(input, n)?;
                print_pair(&p, cli.format);
            } else {
                let s = parse_series(input, n)?;
                match cli.format {
                    Format::Text => println!("{s}"),
                    Format::Csv => println!("{}", csv_row(s.coeffs())),
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({
                            "precision": s.precision(),
                            "coefficients": rational_strings(s.coeffs()),
                        })
                    ),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rtimes { left, right } => {
            let a = parse_pair(left, n)?;
            let b = parse_pair(right, n)?;
            print_pair(&a.rtimes(&b)?, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Power { input, n: k } => {
            let a = parse_pair(input, n)?;
            print_pair(&a.rtimes_power(*k)?, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi { base, f } => {
            let base = parse_pair(base, n)?;
            let f = parse_series(f, base.precision())?;
            print_pair(&phi_apply(&base, &f)?, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Star { base, op } => {
            let base = parse_pair(base, n)?;
            let elem = |text: &str| -> Result<CauchyElement, Error> {
                CauchyElement::from_series(&base, parse_series(text, base.precision())?)
            };
            match op {
                StarOp::Mul { left, right } => {
                    print_star(&elem(left)?.star_mul(&elem(right)?)?, cli.format)
                }
                StarOp::Inverse { rep } => print_star(&elem(rep)?.star_inverse()?, cli.format),
                StarOp::Exp { rep } => print_star(&elem(rep)?.star_exp()?, cli.format),
                StarOp::Log { rep } => print_star(&elem(rep)?.star_log()?, cli.format),
                StarOp::Realize { rep } => print_pair(&elem(rep)?.realize()?, cli.format),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Genpow {
            input,
            lambda,
            mode,
        } => {
            let lambda: Rational = lambda
                .parse()
                .map_err(|e: Error| Error::Parse {
                    offset: 0,
                    expected: format!("rational exponent ({e})"),
                })?;
            let a = parse_pair(input, n)?;
            match mode {
                GenpowMode::Rtimes => {
                    print_pair(&rtimes_binomial_power(&a, &lambda)?, cli.format)
                }
                GenpowMode::Star => {
                    // route through the Cauchy algebra: g = identity + p with
                    // p the ideal part, so g is represented by 1 + x over p
                    if !a.is_group() {
                        return Err(Error::NotGroupElement);
                    }
                    let base = ideal_part(&a)?;
                    let mut rep = vec![Rational::from_int(0); a.precision()];
                    rep[0] = Rational::from_int(1);
                    if rep.len() > 1 {
                        rep[1] = Rational::from_int(1);
                    }
                    let u = CauchyElement::from_series(
                        &base,
                        riordan_core::Series::from_coeffs(rep)?,
                    )?;
                    print_pair(&u.star_generalized_power(&lambda)?.realize()?, cli.format)
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { input, n: size } => {
            let a = parse_pair(input, (*size).max(n).max(1))?;
            let m = to_matrix(&a, *size)?;
            match cli.format {
                Format::Text => print!("{m}"),
                Format::Csv => print!("{}", m.to_csv()),
                Format::Json => println!("{}", riordan_core::matrix::to_json(&a, &m)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { suite } => {
            let cfg = CheckConfig {
                seed: cli.seed,
                trials: cli.trials,
                precision: n.max(4),
            };
            let names: Vec<&'static str> = if suite == "all" {
                SUITE_NAMES.to_vec()
            } else {
                match SUITE_NAMES.iter().find(|s| **s == *suite) {
                    Some(s) => vec![*s],
                    None => {
                        eprintln!(
                            "error: unknown suite '{suite}' (expected one of: all, {})",
                            SUITE_NAMES.join(", ")
                        );
                        return Ok(ExitCode::from(2));
                    }
                }
            };
            let mut failed = false;
            for name in names {
                match run_suite(name, &cfg) {
                    Ok(()) => println!("ok   {name}"),
                    Err(f) => {
                        failed = true;
                        println!("FAIL {name}: {}", f.message);
                    }
                }
            }
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

/// The ideal projection (mu - mu(0), sigma - sigma'(0)x) of a pair, used as
/// the Cauchy base when `genpow --mode star` receives a group element.
fn ideal_part(a: &RiordanElement) -> Result<RiordanElement, Error> {
    let n = a.precision();
    let mut mu = a.mu().coeffs().to_vec();
    mu[0] = Rational::from_int(0);
    let mut sigma = a.sigma().coeffs().to_vec();
    if n > 1 {
        sigma[1] = Rational::from_int(0);
    }
    RiordanElement::new(
        riordan_core::Series::from_coeffs(mu)?,
        riordan_core::Series::from_coeffs(sigma)?,
    )
}

fn rational_strings(coeffs: &[Rational]) -> Vec<String> {
    coeffs.iter().map(|c| c.to_string()).collect()
}

fn csv_row(coeffs: &[Rational]) -> String {
    rational_strings(coeffs).join(",")
}

fn print_pair(p: &RiordanElement, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Csv => {
            println!("{}", csv_row(p.mu().coeffs()));
            println!("{}", csv_row(p.sigma().coeffs()));
        }
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "precision": p.precision(),
                "mu": rational_strings(p.mu().coeffs()),
                "sigma": rational_strings(p.sigma().coeffs()),
            })
        ),
    }
}

fn print_star(e: &CauchyElement, format: Format) {
    match format {
        Format::Text => println!("{e}"),
        Format::Csv => println!("{}", csv_row(e.rep().coeffs())),
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "precision": e.precision(),
                "rep": rational_strings(e.rep().coeffs()),
                "base_mu": rational_strings(e.base().mu().coeffs()),
                "base_sigma": rational_strings(e.base().sigma().coeffs()),
            })
        ),
    }
}
