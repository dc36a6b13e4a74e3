use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use igusa::bench::{bench_degrees, render_table, BENCH_PRIME, DEFAULT_DEGREES};
use igusa::corpus::{fixed_corpus, random_corpus, CorpusEntry};
use igusa::oracle::OracleBudget;
use igusa::series::{coefficients_via_tree, keystream, poincare_from_zeta, poincare_to_machine};
use igusa::verify::{check_budget, verify_corpus, Fault, VerifyConfig};
use igusa::{analyze, Error, IntPolynomial, Prime};

/// Usage errors. Chosen apart from the result codes 1 to 4.
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "igusa",
    version,
    about = "Igusa local zeta functions of polynomials split over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Z(s, f) as a sum of atoms and as a reduced fraction in t = p^-s
    Zeta(JobArgs),
    /// Print the Poincare series H(t) = (1 - t Z) / (1 - t)
    Poincare(JobArgs),
    /// Print the congruence counts N_0, ..., N_u
    Nm(CountArgs),
    /// Print the volume coefficients c_0, ..., c_J
    Coefficients(OrderArgs),
    /// Write the serialized counts N_0, ..., N_u
    Keystream(KeystreamArgs),
    /// Print the weighted residue tree
    Tree(TreeArgs),
    /// Cross-check both zeta constructions, the coefficients and the brute-force counts
    Verify(VerifyArgs),
    /// Time every pipeline stage on prod (x - i), i = 1..d, at p = 101
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct JobArgs {
    /// Ascending integer coefficients, e.g. "-1,0,1" for x^2 - 1
    #[arg(long, allow_hyphen_values = true)]
    poly: IntPolynomial,
    #[arg(short, long)]
    prime: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    job: JobArgs,
    #[arg(short = 'u', long = "count")]
    count: usize,
}

#[derive(Args)]
struct OrderArgs {
    #[command(flatten)]
    job: JobArgs,
    #[arg(short = 'J', long = "order", default_value_t = 20)]
    order: usize,
}

#[derive(Args)]
struct KeystreamArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: IntPolynomial,
    #[arg(short, long)]
    prime: u64,
    #[arg(short = 'u', long = "count")]
    count: usize,
    /// Print hex instead of raw bytes
    #[arg(long)]
    hex: bool,
}

#[derive(Args)]
struct TreeArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: IntPolynomial,
    #[arg(short, long)]
    prime: u64,
    /// Graphviz output
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify a single polynomial instead of the built-in corpus
    #[arg(long, allow_hyphen_values = true, requires = "prime")]
    poly: Option<IntPolynomial>,
    #[arg(short, long)]
    prime: Option<u64>,
    /// Add a seeded random corpus
    #[arg(long)]
    seed: Option<u64>,
    /// Size of the random corpus
    #[arg(long, default_value_t = 200, requires = "seed")]
    random: usize,
    /// Largest exponent m compared against the oracle
    #[arg(long)]
    m_max: Option<u32>,
    #[arg(short = 'J', long = "order", default_value_t = 20)]
    order: usize,
    /// Largest modulus p^m the oracle may enumerate
    #[arg(long, env = "IGUSA_BUDGET", default_value_t = OracleBudget::DEFAULT_MAX_MODULUS)]
    budget: u64,
    /// Negate the first tree atom before checking
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DEGREES)]
    degrees: Vec<usize>,
}

enum Failure {
    Lib(Error),
    Mismatch,
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotSplitOverQ { .. } => 2,
        Error::NotPrime(_) => 3,
        Error::BudgetExceeded { .. } => 4,
        _ => 1,
    }
}

fn print(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Zeta(job) => {
            let a = analyze(&job.poly, Prime::new(job.prime)?)?;
            match job.format {
                Format::Text => print(&format!(
                    "Z = {}\n  = {}\n",
                    a.zeta.render_atoms(),
                    a.zeta.render_fraction()
                )),
                Format::Machine => print(&a.zeta.to_machine()),
            }
        }
        Command::Poincare(job) => {
            let a = analyze(&job.poly, Prime::new(job.prime)?)?;
            let h = poincare_from_zeta(&a.zeta);
            match job.format {
                Format::Text => print(&format!("H = {}\n", h.render())),
                Format::Machine => print(&poincare_to_machine(&h)),
            }
        }
        Command::Nm(args) => {
            let p = Prime::new(args.job.prime)?;
            let counts = keystream(&args.job.poly, p, args.count)?;
            let line: Vec<String> = counts.values.iter().map(ToString::to_string).collect();
            match args.job.format {
                Format::Text => print(&format!("{}\n", line.join(" "))),
                Format::Machine => print(&format!(
                    "{{\"kind\": \"igusa-counts\", \"prime\": {}, \"counts\": [{}]}}\n",
                    p,
                    line.iter()
                        .map(|n| format!("\"{n}\""))
                        .collect::<Vec<_>>()
                        .join(", ")
                )),
            }
        }
        Command::Coefficients(args) => {
            let a = analyze(&args.job.poly, Prime::new(args.job.prime)?)?;
            let c = coefficients_via_tree(a.tree.as_ref(), &a.split, args.order);
            let values: Vec<String> = c.values.iter().map(ToString::to_string).collect();
            match args.job.format {
                Format::Text => print(
                    &values
                        .iter()
                        .enumerate()
                        .map(|(j, v)| format!("c_{j} = {v}\n"))
                        .collect::<String>(),
                ),
                Format::Machine => {
                    print(&format!(
                    "{{\"kind\": \"igusa-coefficients\", \"prime\": {}, \"coefficients\": [{}]}}\n",
                    a.prime,
                    values.iter().map(|v| format!("\"{v}\"")).collect::<Vec<_>>().join(", ")
                ))
                }
            }
        }
        Command::Keystream(args) => {
            let ks = keystream(&args.poly, Prime::new(args.prime)?, args.count)?;
            let bytes = ks.to_bytes();
            if args.hex {
                let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
                print(&format!("{hex}\n"))
            } else {
                let mut out = std::io::stdout().lock();
                out.write_all(&bytes)?;
                out.flush()?;
                Ok(())
            }
        }
        Command::Tree(args) => {
            let a = analyze(&args.poly, Prime::new(args.prime)?)?;
            match (&a.tree, args.dot) {
                (Some(t), true) => print(&t.to_dot()),
                (Some(t), false) => print(&t.to_text()),
                (None, true) => print("digraph tree {\n  // no p-integral roots\n}\n"),
                (None, false) => print("no p-integral roots\n"),
            }
        }
        Command::Verify(args) => {
            let mut entries: Vec<CorpusEntry> = match (args.poly, args.prime) {
                (Some(poly), Some(p)) => vec![CorpusEntry {
                    name: "input".to_string(),
                    poly,
                    prime: Prime::new(p)?,
                }],
                _ => fixed_corpus(),
            };
            if let Some(seed) = args.seed {
                entries.extend(random_corpus(seed, args.random));
            }
            let cfg = VerifyConfig {
                order: args.order,
                budget: OracleBudget::new(args.budget),
                m_max: args.m_max,
                fault: args.inject_fault.then_some(Fault::NegateFirstTreeAtom),
            };
            check_budget(&entries, &cfg)?;
            let report = verify_corpus(&entries, &cfg);
            print(&report.to_text())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Bench(args) => {
            let rows = bench_degrees(&args.degrees, Prime::new(BENCH_PRIME)?)?;
            print(&render_table(&rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.exit_code() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Mismatch) => {
            eprintln!("error: verification found mismatches");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
