use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dtwist::acceptance::{self, Level, Options};
use dtwist::invariants::Definiteness;
use dtwist::lattice::{embed_gram_with, jk_problem, JkCase, OracleConfig, DEFAULT_NODE_BUDGET};
use dtwist::report::{build_table, render_twist, Format, TableSpec};
use dtwist::twist::{primitive_t_search, Variant};
use dtwist::{DoubleTwist, Error, GenusReport};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "dtwist", version, about = "Nonorientable 4-genus bounds for double twist knots C(m, n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bounds, invariants and evidence for one knot.
    #[command(allow_negative_numbers = true)]
    Knot {
        m: i64,
        n: i64,
        /// text or json
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// The grid of table symbols, positive-n block then negative-n block.
    #[command(allow_negative_numbers = true)]
    Table {
        #[arg(long, default_value_t = 20)]
        m_max: i64,
        #[arg(long, default_value_t = -20)]
        n_min: i64,
        #[arg(long, default_value_t = 20)]
        n_max: i64,
        /// csv, json or md
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Primitive moduli t whose residue gaps obstruct twist knots.
    Twist {
        #[arg(long, default_value_t = 1000)]
        t_max: u64,
        /// A (m ≡ 0 mod 4) or B (m ≡ 1 mod 4)
        #[arg(long, default_value = "A")]
        variant: Variant,
        /// text, json, csv or md
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Decides one lattice embedding question by exhaustive search.
    #[command(allow_negative_numbers = true)]
    Oracle {
        m: i64,
        n: i64,
        /// 1 to 4
        #[arg(long, default_value_t = 1)]
        case: u8,
        /// + or -; cases 1 and 2 fix it
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Runs the acceptance suite.
    Verify {
        /// Every criterion rather than the fast subset.
        #[arg(long)]
        full: bool,
        /// Range of the Murakami–Yasuhara comparison.
        #[arg(long, default_value_t = 100)]
        my_max: i64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    })
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn knot(m: i64, n: i64, format: Format) -> Result<String, Error> {
    let r = GenusReport::of(DoubleTwist::new(m, n))?;
    match format {
        Format::Text => Ok(r.to_text()),
        Format::Json => Ok(serde_json::to_string_pretty(&r).expect("reports serialize") + "\n"),
        _ => Err(Error::InvalidInput("knot reports are text or json".into())),
    }
}

fn table(spec: TableSpec, format: Format, threads: usize) -> Result<String, Error> {
    if format == Format::Text {
        return Err(Error::InvalidInput("tables are csv, json or md".into()));
    }
    Ok(build_table(spec, threads)?.render(format))
}

fn oracle(m: i64, n: i64, case: u8, eps: Option<&str>, node_budget: u64) -> Result<String, Error> {
    let case = JkCase::from_index(case)?;
    let eps = match (eps, case) {
        (Some("+"), _) | (None, JkCase::One) => Definiteness::Positive,
        (Some("-"), _) | (None, JkCase::Two) => Definiteness::Negative,
        (None, _) => return Err(Error::InvalidInput("cases 3 and 4 need --eps".into())),
        (Some(other), _) => return Err(Error::InvalidInput(format!("eps must be + or -, got `{other}`"))),
    };
    let (form, rank) = jk_problem(DoubleTwist::new(m, n), case, eps)?;
    let found = embed_gram_with(&form, rank, &OracleConfig { node_budget })?;
    let mut out = String::new();
    out.push_str(&format!("form ({eps:?}, rank {}):\n", form.rank()));
    for row in form.entries() {
        out.push_str(&format!("  {row:?}\n"));
    }
    match found {
        Some(w) => {
            out.push_str(&format!("embeds in rank {rank}:\n"));
            for row in &w.rows {
                out.push_str(&format!("  {row:?}\n"));
            }
        }
        None => out.push_str(&format!("no embedding in rank {rank}\n")),
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match cli.command {
        Command::Knot { m, n, format } => knot(m, n, format),
        Command::Table { m_max, n_min, n_max, format, threads } => {
            TableSpec::new(m_max, n_min, n_max).and_then(|spec| table(spec, format, threads))
        }
        Command::Twist { t_max, variant, format } => {
            primitive_t_search(t_max, variant).map(|rows| render_twist(&rows, format))
        }
        Command::Oracle { m, n, case, eps, node_budget } => oracle(m, n, case, eps.as_deref(), node_budget),
        Command::Verify { full, my_max, node_budget } => {
            if !(2..=300).contains(&my_max) {
                return usage("--my-max must be in 2..=300");
            }
            let level = if full { Level::Full } else { Level::Fast };
            let outcomes = acceptance::run(Options { level, my_max, oracle: OracleConfig { node_budget } });
            for o in &outcomes {
                println!("{}", o.line());
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
            return if outcomes.iter().any(|o| o.exhausted) {
                ExitCode::from(EXIT_BUDGET)
            } else if failed > 0 {
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match output {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
