mod coloring;
mod group;
mod integers;
mod oracle;
mod space;
mod tree;

use anyhow::{anyhow, bail, Context, Result};
use metramsey_core::integers::StepFunction;
use serde_json::Value;

use crate::certificate::Outcome;
use crate::{formats, Command, FunctionArgs, Generator, SetArgs};

/// Largest element of a named set when `--limit` is not given.
const DEFAULT_LIMIT: u64 = 1 << 40;

pub struct Ctx {
    pub input: Value,
    pub budget: Option<usize>,
    pub thin_floor: u64,
    pub seed: Option<u64>,
}

impl Ctx {
    pub fn input(&self) -> Result<&Value> {
        if self.input.is_null() {
            bail!("this command reads JSON from --input");
        }
        Ok(&self.input)
    }

    pub fn set(&self, args: &SetArgs) -> Result<Vec<u64>> {
        if let Some(set) = &args.set {
            return Ok(set.clone());
        }
        if let Some(t) = args.t {
            return Ok(generate(t, args.limit.unwrap_or(DEFAULT_LIMIT)));
        }
        let v = self
            .input
            .get("set")
            .ok_or_else(|| anyhow!("give the set with --set, --t or an input \"set\" field"))?;
        formats::u64_list(v, "set")
    }

    pub fn function(&self, args: &FunctionArgs) -> Result<StepFunction> {
        let name = args.f.as_str();
        if name == "table" {
            let values = formats::u64_list(
                self.input()?.get("f").ok_or_else(|| anyhow!("input lacks the \"f\" table"))?,
                "f",
            )?;
            if let Some(n) = args.n {
                if n != values.len() as u64 {
                    bail!("--n {n} does not match a table of {} values", values.len());
                }
            }
            return Ok(StepFunction::new(values)?);
        }
        let n = args.n.ok_or_else(|| anyhow!("--n is required for --f {name}"))?;
        if n == 0 {
            bail!("window must contain at least one point");
        }
        Ok(match name {
            "double" => StepFunction::double(n),
            "successor" => StepFunction::successor(n),
            "square-plus-one" => StepFunction::square_plus_one(n),
            _ => {
                let k = name
                    .strip_prefix("plus-")
                    .ok_or_else(|| anyhow!("unknown function {name:?}"))?
                    .parse::<u64>()
                    .with_context(|| format!("bad shift in {name:?}"))?;
                StepFunction::plus(k, n)?
            }
        })
    }
}

fn generate(t: Generator, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    match t {
        Generator::Powers => {
            let mut x = 1u64;
            while x <= limit {
                out.push(x);
                match x.checked_mul(2) {
                    Some(y) => x = y,
                    None => break,
                }
            }
        }
        Generator::Squares => {
            let mut k = 1u64;
            while let Some(sq) = k.checked_mul(k).filter(|&s| s <= limit) {
                out.push(sq);
                k += 1;
            }
        }
        Generator::Factorials => {
            let (mut x, mut k) = (1u64, 2u64);
            while x <= limit {
                out.push(x);
                match x.checked_mul(k) {
                    Some(y) => x = y,
                    None => break,
                }
                k += 1;
            }
        }
    }
    out
}

pub fn run(command: &Command, ctx: &Ctx) -> Result<Outcome> {
    match command {
        Command::Validate => space::validate(ctx),
        Command::Scale => space::scale(ctx),
        Command::Partition { r } => space::partition(ctx, *r),
        Command::Equidist => space::equidist(ctx),
        Command::CanonSeq => space::canon_seq(ctx),
        Command::Color(c) => coloring::color(c, ctx),
        Command::Family(c) => coloring::family(c, ctx),
        Command::Tree(c) => tree::run(c, ctx),
        Command::Int(c) => integers::run(c, ctx),
        Command::Bgroup(c) => group::run(c, ctx),
        Command::Oracle(c) => oracle::run(c, ctx),
    }
}
