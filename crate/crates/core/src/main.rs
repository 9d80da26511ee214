use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nsgp::chains;
use nsgp::factorization::{
    count_factorizations, factorizations, factorizations_limited, length_set,
};
use nsgp::gas::{self, GasParams};
use nsgp::harness::{self, Check, OutputFormat, SweepConfig, XMode};
use nsgp::{Error, NumericalMonoid};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "nsgp",
    version,
    about = "Factorization invariants of numerical monoids"
)]
struct Cli {
    /// Generators of the monoid, comma separated
    #[arg(long, global = true, value_name = "G1,G2,...", conflicts_with = "gas")]
    gens: Option<String>,

    /// Generalized arithmetic sequence <a, ha+d, ..., ha+xd>
    #[arg(long, global = true, value_name = "A,H,D,X")]
    gas: Option<String>,

    /// Element for the per-element subcommands
    #[arg(long, global = true, allow_hyphen_values = true)]
    n: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest factorization set that will be enumerated
    #[arg(long, global = true, default_value_t = 100_000)]
    max_factorizations: usize,

    /// Report g(ℕ) with the given convention (only -1 is accepted)
    #[arg(long = "frobenius-of-N", global = true, allow_hyphen_values = true)]
    frobenius_of_n: Option<i64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generators, Frobenius number, Apéry set and global invariants
    Info,
    /// Per-element data for --n
    Element {
        #[arg(value_enum)]
        what: What,
    },
    Factorizations,
    Lengths,
    Rclasses,
    Catenary,
    Tame,
    /// The graph G_n in DOT format
    Graph,
    /// Compare closed forms with the general algorithms over a parameter grid
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Factorizations,
    Lengths,
    Rclasses,
    Catenary,
    Tame,
    Graph,
}

#[derive(Args)]
struct SweepArgs {
    /// Range of a, e.g. 3..8
    #[arg(long, default_value = "2..12")]
    a: String,
    #[arg(long, default_value = "1..4")]
    h: String,
    #[arg(long, default_value = "1..7")]
    d: String,
    /// "all" for 1..a-1, or a comma separated list
    #[arg(long, default_value = "all")]
    x: String,
    /// A single tuple a,h,d,x (overrides the ranges)
    #[arg(long, value_name = "A,H,D,X")]
    tuple: Option<String>,
    #[arg(long, default_value = "all")]
    checks: String,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Per-tuple oracle budget in seconds (default: NSGP_TIMEOUT_SECS or 10)
    #[arg(long)]
    timeout_secs: Option<u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    if let Some(v) = cli.frobenius_of_n {
        if v != -1 {
            return Err(usage("--frobenius-of-N only accepts -1"));
        }
    }
    match &cli.command {
        Command::Info => info(cli),
        Command::Element { what } => element(cli, *what),
        Command::Factorizations => element(cli, What::Factorizations),
        Command::Lengths => element(cli, What::Lengths),
        Command::Rclasses => element(cli, What::Rclasses),
        Command::Catenary => element(cli, What::Catenary),
        Command::Tame => element(cli, What::Tame),
        Command::Graph => element(cli, What::Graph),
        Command::Sweep(args) => sweep(cli, args),
    }
}

fn parse_list(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("'{t}' is not an integer")))
        })
        .collect()
}

fn parse_quad(text: &str) -> Result<GasParams, Failure> {
    match parse_list(text)?.as_slice() {
        &[a, h, d, x] => Ok(GasParams::new(a, h, d, x)?),
        _ => Err(usage(format!("expected a,h,d,x, got '{text}'"))),
    }
}

fn parse_range(text: &str) -> Result<RangeInclusive<i64>, Failure> {
    let bad = || usage(format!("expected a range like 3..8, got '{text}'"));
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        Ok(int(lo)?..=int(hi)?)
    } else {
        let v = int(text)?;
        Ok(v..=v)
    }
}

struct Target {
    monoid: NumericalMonoid,
    params: Option<GasParams>,
}

fn target(cli: &Cli) -> Result<Target, Failure> {
    match (&cli.gens, &cli.gas) {
        (Some(g), None) => Ok(Target {
            monoid: NumericalMonoid::new(&parse_list(g)?)?,
            params: None,
        }),
        (None, Some(q)) => {
            let params = parse_quad(q)?;
            Ok(Target {
                monoid: gas::to_monoid(&params)?,
                params: Some(params),
            })
        }
        _ => Err(usage("exactly one of --gens or --gas is required")),
    }
}

/// Prints an ordered record in the chosen format.
fn emit(record: &Map<String, Value>, format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(record).expect("serializable")
            );
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["key", "value"]).expect("stdout");
            for (k, v) in record {
                w.write_record([k.as_str(), &plain(v)]).expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Text => {
            for (k, v) in record {
                println!("{k}: {}", plain(v));
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn info(cli: &Cli) -> Result<u8, Failure> {
    let Target { monoid: s, params } = target(cli)?;
    let mut rec = Map::new();
    rec.insert("generators".into(), json!(s.generators()));
    rec.insert("embedding_dim".into(), json!(s.embedding_dim()));
    if s.is_all_of_n() {
        if cli.frobenius_of_n.is_none() {
            return Err(Error::IsAllOfN.into());
        }
        rec.insert("frobenius".into(), json!(s.frobenius_or_minus_one()));
        rec.insert("apery".into(), json!([0]));
        emit(&rec, cli.format);
        return Ok(0);
    }

    let frobenius = s.frobenius()?;
    let catenary = chains::catenary_degree(&s)?;
    let tame = chains::tame_degree(&s)?;
    let omega = chains::omega(&s)?;
    let min_multiple = chains::min_multiple_in_rest(&s)?;
    rec.insert("frobenius".into(), json!(frobenius));
    rec.insert(
        "apery".into(),
        json!(s.apery_set(s.multiplicity())?.as_slice()),
    );
    rec.insert("betti_elements".into(), json!(chains::betti_elements(&s)?));
    rec.insert("catenary".into(), json!(catenary));
    rec.insert("tame".into(), json!(tame));
    rec.insert("omega".into(), json!(omega));
    rec.insert("min_multiple".into(), json!(min_multiple));

    let mut code = 0;
    if let Some(p) = params {
        let mut apery_formula = gas::gas_apery(&p)?;
        apery_formula.sort_unstable();
        let mut apery_oracle = s.apery_set(p.a())?.to_vec();
        apery_oracle.sort_unstable();
        let rows = [
            ("catenary", json!(gas::gas_catenary(&p)?), json!(catenary)),
            ("tame", json!(gas::gas_tame(&p)?), json!(tame)),
            ("omega", json!(gas::gas_tame(&p)?), json!(omega)),
            (
                "frobenius",
                json!(gas::gas_frobenius(&p)?),
                json!(frobenius),
            ),
            (
                "min_multiple",
                json!(gas::gas_min_multiple(&p)?),
                json!(min_multiple),
            ),
            ("apery", json!(apery_formula), json!(apery_oracle)),
        ];
        let mut closed = Vec::new();
        for (name, formula, oracle) in rows {
            let equal = formula == oracle;
            if !equal {
                code = EXIT_VERIFY;
            }
            closed.push(json!({
                "check": name,
                "formula": formula,
                "oracle": oracle,
                "equal": equal,
            }));
        }
        let bounds = gas::gas_bounds(&p)?;
        rec.insert("closed_forms".into(), Value::Array(closed));
        rec.insert("bound_B".into(), json!(bounds.b.to_string()));
        rec.insert("B_minus_t".into(), json!(bounds.b_minus_t.to_string()));
        rec.insert("t_minus_c".into(), json!(bounds.t_minus_c));
    }
    emit(&rec, cli.format);
    Ok(code)
}

fn element(cli: &Cli, what: What) -> Result<u8, Failure> {
    let Target { monoid: s, .. } = target(cli)?;
    let n = cli.n.ok_or_else(|| usage("--n is required"))?;
    let gens = s.generators();

    if let What::Factorizations = what {
        let (zs, truncated) = factorizations_limited(&s, n, cli.max_factorizations);
        let total = if truncated {
            count_factorizations(&s, n)?
        } else {
            zs.len() as u64
        };
        if truncated {
            eprintln!(
                "warning: showing {} of {total} factorizations (--max-factorizations)",
                zs.len()
            );
        }
        match cli.format {
            Format::Json => {
                let rec = json!({
                    "element": n,
                    "generators": gens,
                    "count": total,
                    "truncated": truncated,
                    "data_quality": u8::from(truncated),
                    "factorizations": zs,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rec).expect("serializable")
                );
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                w.write_record(gens.iter().map(|g| format!("n={g}")))
                    .expect("stdout");
                for z in &zs {
                    w.write_record(z.exponents().iter().map(u32::to_string))
                        .expect("stdout");
                }
                w.flush().expect("stdout");
            }
            Format::Text => {
                for z in &zs {
                    println!("{z}");
                }
                if truncated {
                    println!("# truncated: {} of {total} factorizations", zs.len());
                }
            }
        }
        return Ok(0);
    }

    if !s.contains(n) {
        return Err(Error::NotAMember(n).into());
    }
    if !matches!(what, What::Graph) {
        let count = count_factorizations(&s, n)?;
        if count > cli.max_factorizations as u64 {
            return Err(usage(format!(
                "Z({n}) has {count} factorizations, above --max-factorizations {}",
                cli.max_factorizations
            )));
        }
    }

    let mut rec = Map::new();
    rec.insert("element".into(), json!(n));
    match what {
        What::Factorizations => unreachable!(),
        What::Lengths => {
            let l = length_set(&s, n)?;
            rec.insert("lengths".into(), json!(l.lengths));
            rec.insert("min".into(), json!(l.min()));
            rec.insert("max".into(), json!(l.max()));
            rec.insert("delta".into(), json!(l.delta()));
            if n > 0 {
                let rho = num_rational::Ratio::new(l.max(), l.min());
                rec.insert("elasticity".into(), json!(rho.to_string()));
            }
        }
        What::Rclasses => {
            let r = chains::r_classes(&s, n)?;
            rec.insert("count".into(), json!(r.len()));
            let classes: Vec<Vec<String>> = r
                .classes
                .iter()
                .map(|c| c.iter().map(ToString::to_string).collect())
                .collect();
            rec.insert("classes".into(), json!(classes));
            rec.insert("class_min_lengths".into(), json!(r.class_min_lengths));
            rec.insert("mu".into(), json!(r.mu()));
        }
        What::Catenary => {
            rec.insert(
                "catenary".into(),
                json!(chains::catenary_of_element(&s, n)?),
            );
        }
        What::Tame => {
            let zs = factorizations(&s, n);
            let mut per_atom = Map::new();
            for (i, &g) in gens.iter().enumerate() {
                if zs.iter().any(|z| z.uses(i)) {
                    per_atom.insert(g.to_string(), json!(chains::tame_of_element_i(&s, n, i)?));
                }
            }
            rec.insert("tame".into(), json!(chains::tame_of_element(&s, n)?));
            rec.insert("per_atom".into(), Value::Object(per_atom));
        }
        What::Graph => {
            let g = chains::element_graph(&s, n)?;
            if let Format::Text = cli.format {
                print!("{}", g.to_dot(gens));
                return Ok(0);
            }
            let one_based = |v: &usize| v + 1;
            rec.insert(
                "vertices".into(),
                json!(g.vertices.iter().map(one_based).collect::<Vec<_>>()),
            );
            rec.insert(
                "edges".into(),
                json!(g
                    .edges
                    .iter()
                    .map(|(i, j)| [i + 1, j + 1])
                    .collect::<Vec<_>>()),
            );
            rec.insert("components".into(), json!(g.component_count()));
            rec.insert("dot".into(), json!(g.to_dot(gens)));
        }
    }
    emit(&rec, cli.format);
    Ok(0)
}

fn sweep(cli: &Cli, args: &SweepArgs) -> Result<u8, Failure> {
    let checks = Check::parse_list(&args.checks)?;
    let mut config = match &args.tuple {
        Some(t) => SweepConfig::single(parse_quad(t)?, checks),
        None => {
            let mut c = SweepConfig::new(
                parse_range(&args.a)?,
                parse_range(&args.h)?,
                parse_range(&args.d)?,
                checks,
            );
            if args.x != "all" {
                c.x_mode = XMode::List(parse_list(&args.x)?);
            }
            c
        }
    };
    config.parallelism = args.jobs;
    config.output_format = cli.format.into();
    config.timeout = match args.timeout_secs {
        Some(secs) => Duration::from_secs(secs),
        None => match std::env::var("NSGP_TIMEOUT_SECS") {
            Ok(v) => Duration::from_secs(
                v.trim()
                    .parse()
                    .map_err(|_| usage(format!("NSGP_TIMEOUT_SECS='{v}' is not a number")))?,
            ),
            Err(_) => harness::DEFAULT_TIMEOUT,
        },
    };
    let result = harness::run_sweep(&config)?;
    print!("{}", harness::render(&result, config.output_format));
    if !matches!(config.output_format, OutputFormat::Text) {
        let s = &result.summary;
        eprintln!(
            "tuples={} skipped={} passed={} failed={} timeouts={}",
            s.tuples, s.skipped, s.passed, s.failed, s.timeouts
        );
    }
    Ok(if result.summary.all_passed() {
        0
    } else {
        EXIT_VERIFY
    })
}
