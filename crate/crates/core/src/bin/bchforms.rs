use std::process::ExitCode;
use std::time::Instant;

use bchforms::api::{self, Mode, Outcome};
use bchforms::forms::RankType;
use bchforms::oracle::EnumerationBudget;
use bchforms::schemes::FamilyKind;
use bchforms::verify::{Suite, VerifyOptions};
use bchforms::weights::ConstantClass;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

/// Parameters, weight enumerators and minimum distances of narrow-sense
/// primitive BCH codes, each closed form checked against exhaustive search.
#[derive(Parser, Debug)]
#[command(name = "bchforms", version)]
struct Cli {
    /// Worker threads for exhaustive searches (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// small, default, large, a codeword ceiling, or `codewords,field`
    /// (numbers may be written 2^k). Overrides BCHFORMS_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// Single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Code {
    #[arg(short = 'q', long = "q")]
    q: u64,
    #[arg(short = 'm', long = "m")]
    m: u32,
    #[arg(short = 'i', long = "i")]
    i: u32,
}

#[derive(Args, Debug, Serialize)]
struct Field {
    #[arg(short = 'q', long = "q")]
    q: u64,
    #[arg(short = 'm', long = "m")]
    m: u32,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Length, designed distance, dimension and Bose distance.
    Params(Code),
    /// q-cyclotomic coset leaders modulo q^m - 1 with coset sizes.
    CosetLeaders(Field),
    /// Generator polynomial, lowest degree first, for designed distance
    /// --delta or for the code of index -i.
    Genpoly {
        #[command(flatten)]
        #[serde(flatten)]
        field: Field,
        #[arg(long, conflicts_with = "i", required_unless_present = "i")]
        delta: Option<u64>,
        #[arg(short = 'i', long = "i")]
        i: Option<u32>,
    },
    /// Weight enumerator (odd q) or minimum distance with witness (even q).
    Enumerator {
        #[command(flatten)]
        #[serde(flatten)]
        code: Code,
        #[arg(long, default_value = "both", value_parser = ["closed", "oracle", "both"])]
        mode: String,
    },
    /// Rank and type of the family member with the given λ indices.
    ClassifyForm {
        #[command(flatten)]
        #[serde(flatten)]
        code: Code,
        /// Comma-separated field indices, one per exponent j.
        #[arg(long, value_delimiter = ',', required = true)]
        lambdas: Vec<u32>,
    },
    /// Inner distribution of a family: closed form, census, or both.
    InnerDist {
        /// Q1, Q2, S1, S2, A1 or A2.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        #[serde(flatten)]
        code: Code,
        #[arg(long, default_value = "both", value_parser = ["closed", "census", "both"])]
        mode: String,
    },
    /// Delsarte-Goethals bound for a 2d-code in Alt(n, q).
    DgBound {
        #[arg(short = 'n', long = "n")]
        n: u32,
        #[arg(short = 'd', long = "d")]
        d: u32,
        #[arg(short = 'q', long = "q")]
        q: u64,
    },
    /// t-design check of the symmetric family.
    DesignCheck {
        #[command(flatten)]
        #[serde(flatten)]
        code: Code,
        #[arg(short = 't', long = "t", default_value_t = 2)]
        t: usize,
        /// Replace one member by a copy of another (negative control).
        #[arg(long)]
        corrupt: bool,
    },
    /// Frequencies of N(Q + L + c) over all linear L.
    AppendixTable {
        #[command(flatten)]
        #[serde(flatten)]
        field: Field,
        #[arg(long)]
        rank: u32,
        /// ±1 for odd q; 0, 1 or 2 for even q.
        #[arg(long = "type", allow_hyphen_values = true)]
        #[serde(rename = "type")]
        ty: i8,
        /// zero, square, nonsquare, nonzero, or all-nonzero.
        #[arg(long, default_value = "zero")]
        class: String,
        #[arg(long, default_value = "both", value_parser = ["closed", "oracle", "both"])]
        mode: String,
    },
    /// Run a property suite: params, cosets, forms, schemes, appendix,
    /// distance, or all.
    Verify {
        suite: String,
        /// Restrict to this base field order.
        #[arg(short = 'q', long = "q")]
        q: Option<u64>,
        /// Restrict to this extension degree.
        #[arg(short = 'm', long = "m")]
        m: Option<u32>,
        /// Restrict to this code index.
        #[arg(short = 'i', long = "i")]
        i: Option<u32>,
        /// Largest extension degree swept when -m is not given.
        #[arg(long)]
        max_m: Option<u32>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Params(_) => "params",
            Command::CosetLeaders(_) => "coset-leaders",
            Command::Genpoly { .. } => "genpoly",
            Command::Enumerator { .. } => "enumerator",
            Command::ClassifyForm { .. } => "classify-form",
            Command::InnerDist { .. } => "inner-dist",
            Command::DgBound { .. } => "dg-bound",
            Command::DesignCheck { .. } => "design-check",
            Command::AppendixTable { .. } => "appendix-table",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Serialize)]
struct CommandResult<'a> {
    command: &'a str,
    parameters: serde_json::Value,
    payload: serde_json::Value,
    elapsed_ms: u128,
}

fn dispatch(cmd: &Command, budget: &EnumerationBudget) -> bchforms::Result<Outcome> {
    match cmd {
        Command::Params(c) => api::params(c.q, c.m, c.i),
        Command::CosetLeaders(f) => api::coset_leaders(f.q, f.m),
        Command::Genpoly { field, delta, i } => {
            let delta = match (delta, i) {
                (Some(d), _) => *d,
                (None, Some(i)) => bchforms::cyclotomic::code_params(field.q, field.m, *i)?.delta_i,
                (None, None) => unreachable!("clap requires one of --delta, -i"),
            };
            api::genpoly(field.q, field.m, delta)
        }
        Command::Enumerator { code, mode } => {
            api::enumerator(code.q, code.m, code.i, Mode::parse(mode)?, budget)
        }
        Command::ClassifyForm { code, lambdas } => {
            api::classify_form(code.q, code.m, code.i, lambdas, budget)
        }
        Command::InnerDist { family, code, mode } => api::inner_dist(
            FamilyKind::parse(family)?,
            code.q,
            code.m,
            code.i,
            Mode::parse(mode)?,
            budget,
        ),
        Command::DgBound { n, d, q } => api::dg_bound(*n, *d, *q),
        Command::DesignCheck { code, t, corrupt } => {
            api::design_check(code.q, code.m, code.i, *t, *corrupt, budget)
        }
        Command::AppendixTable {
            field,
            rank,
            ty,
            class,
            mode,
        } => api::appendix_table(
            field.q,
            field.m,
            RankType::new(*rank, *ty),
            ConstantClass::parse(class)?,
            Mode::parse(mode)?,
            budget,
        ),
        Command::Verify {
            suite,
            q,
            m,
            i,
            max_m,
        } => {
            let opts = VerifyOptions {
                q: *q,
                m: *m,
                i: *i,
                max_m: *max_m,
                budget: *budget,
            };
            Ok(api::run_verify(Suite::parse(suite)?, &opts))
        }
    }
}

fn print(value: &impl Serialize, compact: bool) {
    let s = if compact {
        serde_json::to_string(value)
    } else {
        serde_json::to_string_pretty(value)
    };
    println!("{}", s.expect("JSON output"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("bchforms: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let budget = match cli
        .budget
        .as_deref()
        .map(EnumerationBudget::parse)
        .unwrap_or_else(EnumerationBudget::from_env)
    {
        Ok(b) => b,
        Err(e) => {
            eprintln!("bchforms: {e}");
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    let mut parameters = serde_json::to_value(&cli.command).expect("arguments serialize");
    if let Some(inner) = parameters.get(name).cloned() {
        parameters = inner;
    }
    let start = Instant::now();
    match dispatch(&cli.command, &budget) {
        Ok(out) => {
            print(
                &CommandResult {
                    command: name,
                    parameters,
                    payload: out.payload,
                    elapsed_ms: start.elapsed().as_millis(),
                },
                cli.compact,
            );
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            print(
                &json!({"command": name, "parameters": parameters, "error": {"kind": e.kind(), "message": e.to_string()}}),
                cli.compact,
            );
            ExitCode::from(2)
        }
    }
}
