mod certificate;
mod commands;
mod formats;

use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use certificate::{Outcome, Provenance};
use commands::Ctx;

/// Finite Ramsey toolkit for metric spaces: reads JSON, prints certificates.
///
/// Exit status: 0 success, 1 verified negative (or a failed self-check),
/// 2 input error.
#[derive(Parser, Debug)]
#[command(name = "metramsey", version)]
pub struct Cli {
    /// JSON input file, `-` for standard input.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Treat the input as a certificate and reproduce it.
    #[arg(long, global = true)]
    recheck: bool,
    /// Size limit for materializations and searches.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Floor for the final gap in the thinness policy.
    #[arg(long, global = true, default_value_t = metramsey_core::integers::DEFAULT_THIN_FLOOR)]
    thin_floor: u64,
    /// Seed for randomly generated instances.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a distance matrix: not a metric, metric or ultrametric.
    Validate,
    /// The set of nonzero distances.
    Scale,
    /// Classes of the relation d(x, y) <= r on an ultrametric space.
    Partition {
        #[arg(long, value_parser = formats::parse_rational)]
        r: metramsey_core::Rational,
    },
    /// Pair colorings: induce from a scale map, recognize, largest monochrome set.
    #[command(subcommand)]
    Color(ColorCommand),
    /// Largest equidistant subset.
    Equidist,
    /// Longest increasing, decreasing or constant-tail distance sequence.
    CanonSeq,
    /// Separated families of subsets and their colorings.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Profile trees of ultrametric spaces with a finite scale.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Constructions on the integers.
    #[command(subcommand)]
    Int(IntCommand),
    /// The truncated Boolean group and its ultrametric.
    #[command(subcommand)]
    Bgroup(GroupCommand),
    /// Brute-force reference searches.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
pub enum ColorCommand {
    /// Pair coloring of a scale map.
    Induce,
    /// Scale map a pair coloring factors through, or two pairs that disagree.
    Recognize,
    /// Largest monochrome subset.
    MaxMono,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// Separation level of a family of cells.
    Check,
    /// Within-cell 0, cross-cell 1 coloring of a weakly separated family.
    Color,
    /// Lift of a coloring of cell pairs to the space.
    Lift,
}

#[derive(Subcommand, Debug)]
pub enum TreeCommand {
    /// Whether every isometric coloring has an infinite monochrome set.
    Decide,
    /// Finite sample of the space.
    Materialize,
    /// Canonical sequence with its color prediction map.
    Witness {
        #[arg(long)]
        k: usize,
    },
    /// Coloring at the failing level and its monochrome bound.
    Obstruct,
    /// Two-level tree of a partition: distance 1 inside blocks, 2 across.
    FromPartition,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Generator {
    Powers,
    Squares,
    Factorials,
}

#[derive(clap::Args, Debug)]
pub struct SetArgs {
    /// Comma-separated increasing integers.
    #[arg(long, value_delimiter = ',', conflicts_with = "t")]
    set: Option<Vec<u64>>,
    /// Named set instead of an explicit list.
    #[arg(long)]
    t: Option<Generator>,
    /// Largest element of a named set.
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(clap::Args, Debug)]
pub struct FunctionArgs {
    /// double, successor, plus-K, square-plus-one, or table (read from the input's "f").
    #[arg(long)]
    f: String,
    /// Window size.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(clap::Args, Debug)]
pub struct BlockArgs {
    #[command(flatten)]
    set: SetArgs,
    /// Blocks as a:b pairs, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_block)]
    blocks: Vec<(u64, u64)>,
    /// Window size; defaults to the last block end.
    #[arg(long)]
    n: Option<u64>,
}

fn parse_block(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, found {s:?}"))?;
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    A,
    B,
}

#[derive(Subcommand, Debug)]
pub enum IntCommand {
    /// Two-cell partition separating x from f(x).
    Forest {
        #[command(flatten)]
        f: FunctionArgs,
    },
    /// Search a set for {a, a + x, a + f(x)}.
    PatternCheck {
        #[command(flatten)]
        f: FunctionArgs,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Largest monochrome set of the forest difference coloring.
    PatternMember {
        #[command(flatten)]
        f: FunctionArgs,
    },
    /// Thinness under the finite policy.
    Thin {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Greedy block pairs of a thin set.
    Blocks {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        count: usize,
    },
    /// The five block conditions.
    VerifyBlocks {
        #[command(flatten)]
        blocks: BlockArgs,
    },
    /// Cells of one side as a strongly separated family.
    Quotient {
        #[command(flatten)]
        blocks: BlockArgs,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Whether all pairwise differences are distinct.
    Sidon {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Scale map on the window realizing a coloring of the set's pairs.
    Extend {
        #[command(flatten)]
        set: SetArgs,
        /// Window size; defaults to the largest element.
        #[arg(long)]
        n: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// Distance between two bit strings.
    Dist {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// The whole group as a metric space.
    Space {
        #[arg(long)]
        l: u32,
    },
    /// Whether the coloring depends only on x + y.
    PsCheck {
        #[arg(long)]
        l: u32,
    },
    /// Whether the coloring is translation invariant.
    InvCheck {
        #[arg(long)]
        l: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Largest monochrome subset by exhaustive search.
    MaxMono {
        /// Points of a random coloring drawn from `--seed`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Whether every {1, 2} distance assignment on n points has k equidistant points.
    EquiGuarantee {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

/// Arguments worth replaying: everything except where the input came from.
fn invocation(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--input" {
            it.next();
        } else if !(a.starts_with("--input=") || a == "--recheck") {
            out.push(a.clone());
        }
    }
    out
}

fn operation_name(m: &ArgMatches) -> String {
    let mut names = Vec::new();
    let mut cur = m;
    while let Some((name, sub)) = cur.subcommand() {
        names.push(name);
        cur = sub;
    }
    names.join(" ")
}

fn read_input(path: Option<&str>) -> Result<Value> {
    let Some(path) = path else {
        return Ok(Value::Null);
    };
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("{path} is not valid JSON"))
}

enum Parsed {
    Run(Box<Cli>, String),
    /// Help or version was printed.
    Exit,
}

fn parse(args: &[String]) -> Result<Parsed> {
    match Cli::command().try_get_matches_from(args) {
        Ok(m) => {
            let cli = Cli::from_arg_matches(&m)?;
            Ok(Parsed::Run(Box::new(cli), operation_name(&m)))
        }
        Err(e) if !e.use_stderr() => {
            // help and version
            e.print()?;
            Ok(Parsed::Exit)
        }
        Err(e) => Err(anyhow!("{}", e.render().to_string().trim())),
    }
}

/// Certificate and exit code for one parsed command line.
fn certify(cli: Cli, operation: &str, invocation: &[String], input: Value) -> Result<(Value, u8)> {
    let command = cli.command.ok_or_else(|| anyhow!("no subcommand given"))?;
    let ctx = Ctx {
        input,
        budget: cli.budget,
        thin_floor: cli.thin_floor,
        seed: cli.seed,
    };
    let outcome: Outcome = commands::run(&command, &ctx)?;
    let cert = certificate::build(
        &Provenance {
            operation,
            invocation,
            input: &ctx.input,
            seed: ctx.seed,
            thin_floor: ctx.thin_floor,
        },
        &outcome,
    );
    Ok((cert, outcome.exit_code()))
}

fn recheck(original: Value) -> Result<(Value, u8)> {
    let invocation: Vec<String> = original
        .get("invocation")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("input is not a certificate: no invocation"))?
        .iter()
        .map(|a| a.as_str().map(String::from).ok_or_else(|| anyhow!("invocation entries must be strings")))
        .collect::<Result<_>>()?;
    let mut args = vec!["metramsey".to_string()];
    args.extend(invocation.iter().cloned());
    let Parsed::Run(cli, operation) = parse(&args)? else {
        bail!("certificate invocation does not name an operation");
    };
    if cli.recheck {
        bail!("certificate invocation cannot itself be a recheck");
    }
    let input = original.get("input").cloned().unwrap_or(Value::Null);
    let (fresh, _) = certify(*cli, &operation, &invocation, input)?;
    let mismatched: Vec<&str> = certificate::RECHECKED
        .into_iter()
        .filter(|k| original.get(k) != fresh.get(k))
        .collect();
    let identical = mismatched.is_empty();
    let outcome = Outcome::new(json!({
        "operation": operation,
        "identical": identical,
        "mismatched": mismatched,
        "status": fresh["status"],
    }))
    .check("certificate reproduced", identical);
    let cert = certificate::build(
        &Provenance {
            operation: "recheck",
            invocation: &[],
            input: &original,
            seed: None,
            thin_floor: fresh["conventions"]["thinness"]["floor"].as_u64().unwrap_or(2),
        },
        &outcome,
    );
    Ok((cert, outcome.exit_code()))
}

fn run(args: &[String]) -> Result<Option<(Value, u8)>> {
    let (cli, operation) = match parse(args)? {
        Parsed::Run(cli, operation) => (cli, operation),
        Parsed::Exit => return Ok(None),
    };
    let input = read_input(cli.input.as_deref())?;
    if cli.recheck {
        if cli.command.is_some() {
            bail!("--recheck takes the operation from the certificate; drop the subcommand");
        }
        return recheck(input).map(Some);
    }
    let invocation = invocation(&args[1..]);
    certify(*cli, &operation, &invocation, input).map(Some)
}

/// Pretty JSON on stdout; a closed pipe is not an error worth reporting.
fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    match run(&args) {
        Ok(Some((cert, code))) => {
            emit(&cert);
            ExitCode::from(code)
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            let diagnostic = json!({ "error": { "kind": "input", "message": format!("{e:#}") } });
            emit(&diagnostic);
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn invocation_drops_input_source() {
        assert_eq!(
            invocation(&args("--input x.json tree decide --recheck --budget 3 --input=-")),
            args("tree decide --budget 3")
        );
    }

    #[test]
    fn operation_names() {
        let Parsed::Run(_, op) = parse(&args("metramsey int forest --f double --n 10")).unwrap() else {
            panic!()
        };
        assert_eq!(op, "int forest");
        assert!(parse(&args("metramsey int nothing")).is_err());
    }

    #[test]
    fn blocks_parse() {
        assert_eq!(parse_block("1:2"), Ok((1, 2)));
        assert!(parse_block("1-2").is_err());
    }
}
