use anyhow::{anyhow, bail, Result};
use metramsey_core::oracle::{brute_max_monochrome, equidistance_guarantee, BRUTE_LIMIT};
use metramsey_core::PairColoring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::Ctx;
use crate::certificate::Outcome;
use crate::formats::{self, coloring_json};
use crate::OracleCommand;

pub fn run(c: &OracleCommand, ctx: &Ctx) -> Result<Outcome> {
    match c {
        OracleCommand::MaxMono { n } => {
            let (chi, generated) = match n {
                Some(n) => {
                    let seed = ctx.seed.ok_or_else(|| anyhow!("a random instance needs --seed"))?;
                    if *n > BRUTE_LIMIT {
                        bail!("{n} points exceed the exhaustive limit {BRUTE_LIMIT}");
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut chi = PairColoring::constant(*n, 0);
                    for i in 0..*n {
                        for j in i + 1..*n {
                            chi.set(i, j, rng.gen_range(0..=1));
                        }
                    }
                    (chi, true)
                }
                None => {
                    let input = ctx.input()?;
                    let n = input
                        .get("n")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| anyhow!("give --n with --seed, or an input with \"n\" and \"coloring\""))?;
                    let labels = formats::index_labels(n as usize);
                    let v = input.get("coloring").ok_or_else(|| anyhow!("input lacks the \"coloring\" field"))?;
                    (formats::coloring(v, &labels)?, false)
                }
            };
            let brute = brute_max_monochrome(&chi)?;
            let fast = metramsey_core::coloring::max_monochrome(&chi);
            let mut result = json!({
                "points": brute.points,
                "color": brute.color,
                "size": brute.points.len(),
            });
            if generated {
                result["coloring"] = coloring_json(&chi);
            }
            Ok(Outcome::new(result)
                .check("set is monochrome", chi.is_monochrome(&brute.points))
                .check("branch and bound search returns the same set", fast == brute))
        }
        OracleCommand::EquiGuarantee { n, k } => {
            let g = equidistance_guarantee(*n, *k)?;
            let counterexample_ok = match &g.counterexample {
                None => true,
                // no k points with all pairs in one color
                Some(chi) => metramsey_core::coloring::max_monochrome(chi).points.len() < *k,
            };
            Ok(Outcome::new(json!({
                "n": n,
                "k": k,
                "holds": g.holds,
                "assignments": g.assignments,
                "counterexample": g.counterexample.as_ref().map(coloring_json),
            }))
            .check("counterexample has no equidistant subset of size k", counterexample_ok)
            .negative(!g.holds))
        }
    }
}
