use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depthforge::commands::{self, CliError, ExportInput, GridOptions};
use depthforge::export::Target;
use depthforge::Report;
use depthforge_core::homology::FieldSpec;
use depthforge_core::monomial::set_max_total_degree;
use serde_json::json;

#[derive(Parser)]
#[command(name = "depthforge", version, about = "Monomial ideals, depth and flat local morphisms")]
struct Cli {
    /// Characteristic of the coefficient field: 0 or a prime.
    #[arg(long, global = true, default_value_t = 0)]
    field_char: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized checks of grid-verify.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest total degree any monomial may reach.
    #[arg(long, global = true)]
    max_degree: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// An ideal expression such as `vars x,y ; x^2, x*y`; `-` reads stdin.
#[derive(Args)]
struct Expr {
    expression: String,
}

impl Expr {
    fn read(&self) -> Result<String, CliError> {
        if self.expression == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        } else {
            Ok(self.expression.clone())
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a flat local morphism (n1, d1) -> (n2, d2).
    Construct {
        #[arg(long, allow_negative_numbers = true)]
        dim_a: i64,
        #[arg(long, allow_negative_numbers = true)]
        depth_a: i64,
        #[arg(long, allow_negative_numbers = true)]
        dim_b: i64,
        #[arg(long, allow_negative_numbers = true)]
        depth_b: i64,
    },
    /// Build and verify a single ring of dimension n and depth d.
    Lemma {
        #[arg(long, allow_negative_numbers = true)]
        dim: i64,
        #[arg(long, allow_negative_numbers = true)]
        depth: i64,
    },
    /// Dimension, depth, CM defect, primes, Betti totals and Hilbert series.
    Invariants(Expr),
    /// Irredundant irreducible decomposition.
    Decompose(Expr),
    /// Multigraded Betti numbers of S/I.
    Betti(Expr),
    /// Hilbert series of S/I.
    Hilbert {
        #[command(flatten)]
        expr: Expr,
        /// Number of series coefficients to list.
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
    /// Minimal primes.
    Minprimes(Expr),
    /// Associated primes.
    Assprimes(Expr),
    /// Print a Macaulay2 or Singular script for an ideal or a constructed ring.
    Export {
        #[arg(long)]
        target: Target,
        /// Ideal expression.
        #[arg(long, conflicts_with_all = ["lemma", "construct"])]
        ideal: Option<String>,
        /// Single ring `N,D`.
        #[arg(long, value_parser = int_list::<2>, allow_hyphen_values = true)]
        lemma: Option<IntList>,
        /// Morphism `N1,D1,N2,D2`; see --ring.
        #[arg(long, value_parser = int_list::<4>, allow_hyphen_values = true, conflicts_with = "lemma")]
        construct: Option<IntList>,
        /// Which ring of the morphism to export.
        #[arg(long, default_value = "b", value_parser = ["a", "b", "c"])]
        ring: String,
    },
    /// Run the verification grids.
    GridVerify {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_n2: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
}

#[derive(Clone, Debug)]
struct IntList(Vec<i64>);

/// `K` comma-separated integers.
fn int_list<const K: usize>(s: &str) -> Result<IntList, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != K {
        return Err(format!("expected {K} comma-separated integers, got {}", v.len()));
    }
    Ok(IntList(v))
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Lemma { .. } => "lemma",
            Command::Invariants(_) => "invariants",
            Command::Decompose(_) => "decompose",
            Command::Betti(_) => "betti",
            Command::Hilbert { .. } => "hilbert",
            Command::Minprimes(_) => "minprimes",
            Command::Assprimes(_) => "assprimes",
            Command::Export { .. } => "export",
            Command::GridVerify { .. } => "grid-verify",
        }
    }
}

fn configure_threads() {
    let Ok(raw) = std::env::var("DEPTHFORGE_THREADS") else { return };
    match raw.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => eprintln!("warning: ignoring DEPTHFORGE_THREADS={raw:?}"),
    }
}

fn run_report(cli: &Cli, field: FieldSpec) -> Result<Report, CliError> {
    match &cli.command {
        Command::Construct { dim_a, depth_a, dim_b, depth_b } => {
            commands::construct(*dim_a, *depth_a, *dim_b, *depth_b, field)
        }
        Command::Lemma { dim, depth } => commands::lemma(*dim, *depth, field),
        Command::Invariants(e) => commands::invariants(&e.read()?, field),
        Command::Decompose(e) => commands::decompose(&e.read()?, field),
        Command::Betti(e) => commands::betti(&e.read()?, field),
        Command::Hilbert { expr, terms } => commands::hilbert(&expr.read()?, field, *terms),
        Command::Minprimes(e) => commands::minprimes(&e.read()?, field),
        Command::Assprimes(e) => commands::assprimes(&e.read()?, field),
        Command::GridVerify { max_n, max_n2, samples, pairs } => {
            let opts = GridOptions {
                max_n: *max_n,
                max_n2: *max_n2,
                samples: *samples,
                pairs: *pairs,
                seed: cli.seed,
                ..GridOptions::default()
            };
            commands::grid_verify(&opts, field)
        }
        Command::Export { .. } => unreachable!("export prints a script"),
    }
}

fn export_input(cli: &Cli) -> Option<ExportInput> {
    let Command::Export { ideal, lemma, construct, ring, .. } = &cli.command else { return None };
    if let Some(IntList(v)) = lemma {
        return Some(ExportInput::Lemma { n: v[0], d: v[1] });
    }
    if let Some(IntList(v)) = construct {
        let ring = ring.chars().next().unwrap_or('b');
        return Some(ExportInput::Construct { params: [v[0], v[1], v[2], v[3]], ring });
    }
    ideal.clone().map(ExportInput::Ideal)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    if let Some(limit) = cli.max_degree {
        set_max_total_degree(limit);
    }
    let command = cli.command.name();
    let field = match FieldSpec::new(cli.field_char) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(depthforge::EXIT_INPUT as u8);
        }
    };

    if let Command::Export { target, .. } = &cli.command {
        let Some(input) = export_input(&cli) else {
            eprintln!("error: export needs one of --ideal, --lemma or --construct");
            return ExitCode::from(depthforge::EXIT_INPUT as u8);
        };
        return match commands::export(&input, *target, field) {
            Ok(script) => {
                print!("{script}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        };
    }

    let (report, code) = match run_report(&cli, field) {
        Ok(r) => {
            let code = commands::exit_code(&r);
            (r, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let inputs = json!({"argv": std::env::args().skip(1).collect::<Vec<_>>()});
            (commands::error_report(command, field, inputs, &e), e.exit_code())
        }
    };
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(code as u8)
}
