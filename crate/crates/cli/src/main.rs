//! `rcf` — command-line front end for evaluating the Rogers-Ramanujan
//! family of continued fractions, computing singular moduli, solving
//! the associated polynomials, and running the verification suite.
//!
//! Exit codes: `0` success; `1` a verification check failed; `2` usage
//! or domain error.  All numeric output is round-to-nearest decimal at
//! the requested number of significant digits, so identical invocations
//! produce identical output.

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rcf_core::closed_forms::{
    fraction_closed, g_sextic_residual, m5_polyroot, p_from_r, p_polynomial, w_sextic_solve,
    x_polynomial,
};
use rcf_core::elliptic::modulus_from_r;
use rcf_core::verifier::run_suite;
use rcf_core::{
    cfrac::{fraction_direct, fraction_oracle},
    Error, FractionKind, Nome, PrecisionContext, Result,
};
use rug::Float;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rcf",
    version,
    about = "Arbitrary-precision continued fractions of the Rogers-Ramanujan family",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage/domain error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a continued fraction at q = e^(-π√r) or at a given nome q.
    #[command(group(ArgGroup::new("input").required(true).args(["r", "q"])))]
    Eval {
        /// Fraction kind: rr | h | v | s | q | m
        kind: String,
        /// Parameter r as an exact rational, e.g. "4", "1/4", "5/2"
        #[arg(long, value_name = "R")]
        r: Option<String>,
        /// Nome q in (0, 0.9) as a decimal, e.g. "0.01"
        #[arg(long, value_name = "Q")]
        q: Option<String>,
        /// Working precision in bits (≥ 64)
        #[arg(long, value_name = "BITS", default_value_t = 256)]
        prec: u32,
        /// Significant digits to print (2 ≤ digits ≤ 0.3·prec)
        #[arg(long, value_name = "N", default_value_t = 50)]
        digits: u32,
        /// Evaluation route
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
    },
    /// Print the singular modulus data k_r, k'_r, K(k), K(k') at r.
    Modulus {
        /// Parameter r as an exact rational
        #[arg(long, value_name = "R")]
        r: String,
        /// Working precision in bits (≥ 64)
        #[arg(long, value_name = "BITS", default_value_t = 256)]
        prec: u32,
        /// Significant digits to print
        #[arg(long, value_name = "N", default_value_t = 50)]
        digits: u32,
    },
    /// Solve one of the named polynomial relations at the parameter r.
    Solve {
        /// Equation: eq17 | eq36 | eq37 | eq39a | eq39b
        equation: String,
        /// Parameter r as an exact rational
        #[arg(long, value_name = "R")]
        r: String,
        /// Working precision in bits (≥ 64)
        #[arg(long, value_name = "BITS", default_value_t = 256)]
        prec: u32,
        /// Significant digits to print
        #[arg(long, value_name = "N", default_value_t = 50)]
        digits: u32,
    },
    /// Run verification checks and print a report.
    Verify {
        /// Only run checks whose id starts with this prefix
        #[arg(long, value_name = "NAME")]
        suite: Option<String>,
        /// Working precision in bits (≥ 64)
        #[arg(long, value_name = "BITS", default_value_t = 256)]
        prec: u32,
        /// Report format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tabulate a fraction by all three routes over a list of r values.
    Table {
        /// Fraction kind: rr | h | v | s | q | m
        #[arg(long, value_name = "K")]
        fraction: String,
        /// Comma-separated exact rationals, e.g. "1/4,1/2,1,2"
        #[arg(long = "r-list", value_name = "R1,R2,...")]
        r_list: String,
        /// Output format (table supports csv)
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Working precision in bits (≥ 64)
        #[arg(long, value_name = "BITS", default_value_t = 256)]
        prec: u32,
        /// Significant digits to print
        #[arg(long, value_name = "N", default_value_t = 50)]
        digits: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Continued-fraction recurrence
    Direct,
    /// q-product / theta-quotient form
    Oracle,
    /// Elliptic closed form in the singular modulus
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    // Clap handles usage errors itself with exit code 2.
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Build the working context, enforcing the digit budget
/// `2 ≤ digits ≤ 0.3 · prec` (0.3 ≈ log₁₀ 2 with margin, so printed
/// digits are always backed by computed bits).
fn context_for(prec: u32, digits: u32) -> Result<PrecisionContext> {
    let ctx = PrecisionContext::new(prec)?;
    let max_digits = (f64::from(prec) * 0.3).floor() as u32;
    if !(2..=max_digits).contains(&digits) {
        return Err(Error::Domain(format!(
            "digits must lie in 2..={max_digits} at {prec} bits, got {digits}"
        )));
    }
    Ok(ctx)
}

/// Round-to-nearest decimal string with `digits` significant digits.
///
/// Values whose decimal point falls within (or just outside) the digit
/// window print positionally (`0.2840…`, `17.123…`); everything else
/// prints as scientific `d.ddd…e±exp`.
fn format_digits(x: &Float, digits: u32) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if *x == 0u32 {
        return "0".to_string();
    }
    let digits = digits.max(2) as usize;
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero value carries an exponent");
    let sign = if neg { "-" } else { "" };
    let body = if exp > mantissa.len() as i32 + 4 || exp < -4 {
        // value = 0.mantissa × 10^exp  ⇒  d.ddd × 10^(exp-1)
        let (head, tail) = mantissa.split_at(1);
        if tail.is_empty() {
            format!("{head}e{}", exp - 1)
        } else {
            format!("{head}.{tail}e{}", exp - 1)
        }
    } else if exp <= 0 {
        format!("0.{}{}", "0".repeat(exp.unsigned_abs() as usize), mantissa)
    } else if (exp as usize) >= mantissa.len() {
        format!("{}{}", mantissa, "0".repeat(exp as usize - mantissa.len()))
    } else {
        let (head, tail) = mantissa.split_at(exp as usize);
        format!("{head}.{tail}")
    };
    format!("{sign}{body}")
}

/// Parse `--r`, requiring a strictly positive value.
fn parse_r(ctx: &PrecisionContext, s: &str) -> Result<Float> {
    let r = ctx.parse_ratio(s)?;
    if !(r.is_finite() && r.is_sign_positive() && r != 0u32) {
        return Err(Error::Domain(format!("r must be positive, got {s}")));
    }
    Ok(r)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Eval {
            kind,
            r,
            q,
            prec,
            digits,
            route,
        } => {
            let kind = FractionKind::parse(&kind)?;
            let ctx = context_for(prec, digits)?;
            // Normalize both input styles to (nome, r): closed forms
            // need r, the direct/oracle routes need the nome.
            let (nome, r_val) = match (r, q) {
                (Some(rs), None) => {
                    let r_val = parse_r(&ctx, &rs)?;
                    let ln_q = -(ctx.pi() * ctx.real(r_val.sqrt_ref()));
                    (Nome::from_ln_q(&ctx, ln_q)?, r_val)
                }
                (None, Some(qs)) => {
                    let q_val = ctx.parse_decimal(&qs)?;
                    let nome = Nome::from_q(&ctx, q_val)?;
                    let r_val = ctx.powi(&(ctx.real(nome.ln_q()) / ctx.pi()), 2);
                    (nome, r_val)
                }
                // The ArgGroup guarantees exactly one is present.
                _ => unreachable!("clap enforces the r/q group"),
            };
            let value = match route {
                Route::Direct => fraction_direct(&ctx, kind, &nome)?,
                Route::Oracle => fraction_oracle(&ctx, kind, &nome)?,
                Route::Closed => fraction_closed(&ctx, kind, &r_val)?,
            };
            println!("{}", format_digits(&value, digits));
            Ok(ExitCode::SUCCESS)
        }

        Command::Modulus { r, prec, digits } => {
            let ctx = context_for(prec, digits)?;
            let r_val = parse_r(&ctx, &r)?;
            let point = modulus_from_r(&ctx, &r_val)?;
            let fmt = |x: &Float| format_digits(x, digits);
            println!("r     = {}", fmt(point.r()));
            println!("q     = {}", fmt(point.nome().q()));
            println!("k     = {}", fmt(point.k()));
            println!("k'    = {}", fmt(point.kprime()));
            println!("K(k)  = {}", fmt(&point.modulus().big_k(&ctx)?));
            println!("K(k') = {}", fmt(&point.modulus().big_k_prime(&ctx)?));
            Ok(ExitCode::SUCCESS)
        }

        Command::Solve {
            equation,
            r,
            prec,
            digits,
        } => {
            let ctx = context_for(prec, digits)?;
            let r_val = parse_r(&ctx, &r)?;
            let fmt = |x: &Float| format_digits(x, digits);
            match equation.as_str() {
                "eq17" => {
                    let root = m5_polyroot(&ctx, &r_val)?;
                    println!("root     = {}", fmt(&root.value));
                    println!("residual = {}", format_digits(&root.residual, 6));
                    if root.tangent {
                        println!("note     = double root; certified against the K-ratio value");
                    }
                }
                "eq36" => {
                    let pp = p_from_r(&ctx, &r_val)?;
                    let poly = p_polynomial(&ctx, &pp.k);
                    let residual = ctx.real(poly.eval(&ctx, &pp.p).abs_ref());
                    println!("p        = {}", fmt(&pp.p));
                    println!("residual = {}", format_digits(&residual, 6));
                }
                "eq37" => {
                    let pp = p_from_r(&ctx, &r_val)?;
                    let poly = x_polynomial(&ctx, &pp.k);
                    let residual = ctx.real(poly.eval(&ctx, &pp.x).abs_ref());
                    println!("x        = {}", fmt(&pp.x));
                    println!("residual = {}", format_digits(&residual, 6));
                }
                "eq39a" => {
                    let gs = g_sextic_residual(&ctx, &r_val)?;
                    println!("G        = {}", fmt(&gs.g));
                    println!("c        = {}", fmt(&gs.c));
                    println!("residual = {}", format_digits(&gs.residual, 6));
                    println!("scale    = {}", format_digits(&gs.scale, 6));
                }
                "eq39b" => {
                    let root = w_sextic_solve(&ctx, &r_val)?;
                    println!("w        = {}", fmt(&root.value));
                    println!("residual = {}", format_digits(&root.residual, 6));
                    for other in &root.other_roots {
                        println!("other    = {}", fmt(other));
                    }
                }
                other => {
                    return Err(Error::Domain(format!(
                        "unknown equation {other:?}; expected eq17, eq36, eq37, eq39a or eq39b"
                    )))
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            suite,
            prec,
            format,
        } => {
            let ctx = PrecisionContext::new(prec)?;
            let report = run_suite(&ctx, suite.as_deref())?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
                Format::Csv => print!("{}", report.to_csv()),
            }
            if report.success() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }

        Command::Table {
            fraction,
            r_list,
            format,
            prec,
            digits,
        } => {
            if format != Format::Csv {
                return Err(Error::Domain(
                    "table output supports only --format csv".into(),
                ));
            }
            let kind = FractionKind::parse(&fraction)?;
            let ctx = context_for(prec, digits)?;
            let mut out = String::from("fraction,r,direct,oracle,closed,max_rel_diff\n");
            for token in r_list.split(',') {
                let token = token.trim();
                if token.is_empty() {
                    return Err(Error::Domain("empty entry in --r-list".into()));
                }
                let r_val = parse_r(&ctx, token)?;
                let ln_q = -(ctx.pi() * ctx.real(r_val.sqrt_ref()));
                let nome = Nome::from_ln_q(&ctx, ln_q)?;
                let direct = fraction_direct(&ctx, kind, &nome)?;
                let oracle = fraction_oracle(&ctx, kind, &nome)?;
                let closed = fraction_closed(&ctx, kind, &r_val)?;
                let spread = [
                    ctx.rel_diff(&direct, &oracle),
                    ctx.rel_diff(&direct, &closed),
                    ctx.rel_diff(&oracle, &closed),
                ]
                .into_iter()
                .reduce(|a, b| if a > b { a } else { b })
                .expect("three members");
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    kind.token(),
                    token,
                    format_digits(&direct, digits),
                    format_digits(&oracle, digits),
                    format_digits(&closed, digits),
                    format_digits(&spread, 6)
                ));
            }
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
    }
}
