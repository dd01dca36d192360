//! `cmfactor`: verify CM-value factorizations and product identities.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cmfactor::arithside::{term, whittaker2_ma, Side};
use cmfactor::numeric::class_polynomial_with_retries;
use cmfactor::quadarith::{rho, splitting_in_e_over_f, EfSplitting};
use cmfactor::{borcherds_verify, gz_verify, yz_verify, CmPair, Disc, Error, IdentityCase, VerificationReport};

const EXIT_DISAGREE: u8 = 2;
const EXIT_HYPOTHESIS: u8 = 3;
const EXIT_PRECISION: u8 = 4;
const EXIT_OTHER: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "cmfactor", version, about = "Factorizations of CM-value differences of j and ω₂")]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "CMFACTOR_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    d1: i64,
    #[arg(long, allow_hyphen_values = true)]
    d2: i64,
    /// Working precision in bits (0 = automatic).
    #[arg(long, default_value_t = 0)]
    prec: usize,
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    J,
    Weber,
    Eta1,
    Eta2,
    F2,
}

impl From<CaseArg> for IdentityCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::J => IdentityCase::J,
            CaseArg::Weber => IdentityCase::Weber,
            CaseArg::Eta1 => IdentityCase::Eta1,
            CaseArg::Eta2 => IdentityCase::Eta2,
            CaseArg::F2 => IdentityCase::F2,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor the norm of j(τ₂) − j(τ₁) and check it against the numeric side.
    Gz(PairArgs),
    /// Same for ω₂ at odd-norm representatives (d₁ ≡ d₂ ≡ 1 mod 8).
    Yz(PairArgs),
    /// Compare a Borcherds product with the direct two-variable expansion.
    BorcherdsCheck {
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Order in q₁ (and in q₂ unless --order2 is given).
        #[arg(long, default_value_t = 8)]
        order: i64,
        #[arg(long)]
        order2: Option<i64>,
    },
    /// Show the factorization of t = (m + √D)/2, its Diff set and ρ values.
    Rho {
        #[arg(long, allow_hyphen_values = true)]
        d1: i64,
        #[arg(long, allow_hyphen_values = true)]
        d2: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Hilbert class polynomial of discriminant d.
    ClassPoly {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, default_value_t = 0)]
        prec: usize,
    },
    /// Local values at a split prime above 2 as a polynomial in X = 2^(-s).
    Whittaker {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        a: u8,
        /// ord₂(t); −1 for t outside Z₂.
        #[arg(long, allow_hyphen_values = true)]
        ord: i64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_) | Error::Domain(_) => EXIT_HYPOTHESIS,
        Error::Precision { .. } => EXIT_PRECISION,
        _ => EXIT_OTHER,
    }
}

fn emit_report(r: &VerificationReport, args: &PairArgs) -> Result<u8, Error> {
    let json = serde_json::to_string(&output::ReportJson::from(r)).expect("report serializes");
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    if args.json {
        println!("{json}");
    } else {
        print!("{}", output::report_text(r));
    }
    Ok(if r.is_ok() { 0 } else { EXIT_DISAGREE })
}

fn rho_command(d1: i64, d2: i64, m: i64) -> Result<u8, Error> {
    let pair = CmPair::new(d1, d2)?;
    let t = term(m, &pair, Side::J)?;
    println!("t = {} with N(t) = {}", t.t, t.t.norm());
    println!("(t) = {}", t.factorization);
    let diff: Vec<String> = t.diff.iter().map(|p| p.to_string()).collect();
    println!("Diff(t) = {{{}}}", diff.join(", "));
    println!("rho((t)) = {}", rho(&t.factorization, &pair)?);
    for (p, e) in t.factorization.iter().filter(|(_, e)| *e > 0) {
        if splitting_in_e_over_f(p, &pair)? == EfSplitting::InertEF {
            println!("rho((t)/{p}) = {}  (ord = {e}, inert in E/F)", rho(&t.factorization.times(p, -1), &pair)?);
        }
    }
    println!("contribution = {}", t.contribution);
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Gz(args) => emit_report(&gz_verify(args.d1, args.d2, args.prec)?, &args),
        Command::Yz(args) => emit_report(&yz_verify(args.d1, args.d2, args.prec)?, &args),
        Command::BorcherdsCheck { case, order, order2 } => {
            let n2 = order2.unwrap_or(order);
            match borcherds_verify(case.into(), order, n2)? {
                None => {
                    println!("{case:?}: identity holds through ({order}, {n2})");
                    Ok(0)
                }
                Some(d) => {
                    println!("{case:?}: first difference at {d}");
                    Ok(EXIT_DISAGREE)
                }
            }
        }
        Command::Rho { d1, d2, m } => rho_command(d1, d2, m),
        Command::ClassPoly { d, prec } => {
            println!("{}", class_polynomial_with_retries(Disc::new(d)?, prec)?);
            Ok(0)
        }
        Command::Whittaker { a, ord } => {
            let w = whittaker2_ma(a, ord);
            println!("W(s) = {w}");
            println!("W(0) = {}", w.value_at_0());
            println!("W'(0) = {}·log2", w.derivative_at_0());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_OTHER } else { 0 });
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
