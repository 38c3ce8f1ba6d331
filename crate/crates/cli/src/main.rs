use std::process::ExitCode;

use clap::{Parser, Subcommand};
use equimilnor::classify::{analyze_with, Limits, DEFAULT_MU_CAP};
use equimilnor::construct::{verify_loop_with, LoopSpec};
use equimilnor::primes::{erdos_statistic, hunt};
use equimilnor::{parse_polynomial, DiagonalAction, Error};
use equimilnor_cli::verify::{render_table, run_all, VerifyConfig};
use equimilnor_cli::{exit_code, EXIT_FAILURE, EXIT_OK};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "equimilnor", version, about = "Milnor algebras of germs invariant under cyclic diagonal actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Milnor number, stability and representation class of an invariant germ.
    Analyze {
        /// The germ, e.g. "x1^5 + x1*x2^2".
        #[arg(allow_hyphen_values = true)]
        germ: String,
        /// Order m of the cyclic group.
        #[arg(long = "mod", value_name = "M")]
        modulus: u64,
        /// Weights w1,...,wn of the action, one per variable.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Largest Milnor number to compute.
        #[arg(long, default_value_t = DEFAULT_MU_CAP)]
        mu_cap: usize,
    },
    /// Build and verify the loop germ x1^d1*x2 + ... + xn^dn*x1.
    Loop {
        /// Exponents d1,...,dn (odd count, each at least 2).
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u64>,
        /// Largest Milnor number to compute.
        #[arg(long, default_value_t = DEFAULT_MU_CAP)]
        mu_cap: usize,
    },
    /// Primes p <= N whose p-1 groups into at least k loop exponents.
    Hunt {
        #[arg(long, value_name = "N")]
        max: u64,
        #[arg(long, value_name = "K")]
        min_factors: usize,
    },
    /// Share of primes p <= N with omega(p-1) > (1-eps) ln ln N.
    Erdos {
        #[arg(long, value_name = "N")]
        max: u64,
        #[arg(long, value_name = "EPS")]
        epsilon: f64,
    },
    /// Run the full verification suite and print a table of results.
    #[command(alias = "verify")]
    VerifyPaper {
        /// Seed for the randomized sweeps.
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        /// Print outcomes as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn analyze(germ: &str, modulus: u64, weights: &[i64], json: bool, mu_cap: usize) -> Result<(), Error> {
    let f = parse_polynomial(germ, Some(weights.len()))?;
    let a = DiagonalAction::new(modulus, weights)?;
    let limits = Limits {
        mu_cap,
        ..Limits::default()
    };
    let analysis = analyze_with(&f, &a, &limits)?;
    let r = &analysis.report;
    if json {
        print_json(r);
        return Ok(());
    }
    let opt = |v: Option<String>| v.unwrap_or_else(|| "n/a (composite modulus)".into());
    println!("germ             {f}");
    println!("action           {a}");
    println!("mu               {}", r.mu);
    println!("nu               {}", r.nu);
    println!("stable           {}", r.stable);
    println!("characters       {}", analysis.milnor.characters);
    println!("class            {}", opt(r.repclass.map(|c| c.to_string())));
    println!("det_char         {}", r.det_char);
    println!("rk               {}", r.rk);
    println!("corank_bound_ok  {}", opt(r.corank_bound_ok.map(|b| b.to_string())));
    println!("real_action      {}", r.real_action);
    Ok(())
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Analyze {
            germ,
            modulus,
            weights,
            json,
            mu_cap,
        } => analyze(&germ, modulus, &weights, json, mu_cap)?,
        Command::Loop { d, mu_cap } => {
            let limits = Limits {
                mu_cap,
                ..Limits::default()
            };
            print_json(&verify_loop_with(&LoopSpec::new(&d)?, &limits)?);
        }
        Command::Hunt { max, min_factors } => print_json(&hunt(max, min_factors)),
        Command::Erdos { max, epsilon } => print_json(&erdos_statistic(max, epsilon)?),
        Command::VerifyPaper { seed, json } => {
            let cfg = VerifyConfig {
                seed,
                ..VerifyConfig::default()
            };
            let outcomes = run_all(&cfg);
            if json {
                print_json(&outcomes);
            } else {
                print!("{}", render_table(&outcomes));
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
