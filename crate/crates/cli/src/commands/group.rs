use anyhow::{anyhow, Result};
use metramsey_core::boolean::{
    b_distance, b_space, invariance_violation, is_invariant_coloring, is_ps_coloring, ps_violation, BElement,
    BooleanSpace,
};
use metramsey_core::metric::{classify, Classification};
use metramsey_core::PairColoring;
use serde_json::json;

use super::Ctx;
use crate::certificate::Outcome;
use crate::formats;
use crate::GroupCommand;

/// One plus the last position where the strings differ, read straight off
/// the characters.
fn distance_by_characters(x: &str, y: &str) -> u32 {
    x.chars().zip(y.chars()).enumerate().filter(|(_, (a, b))| a != b).map(|(i, _)| i as u32 + 1).max().unwrap_or(0)
}

fn group_coloring(ctx: &Ctx, l: u32) -> Result<(BooleanSpace, PairColoring, Vec<String>)> {
    let b = b_space(l)?;
    let labels = b.to_finite().labels().to_vec();
    let v = ctx.input()?.get("coloring").ok_or_else(|| anyhow!("input lacks the \"coloring\" field"))?;
    let chi = formats::coloring(v, &labels)?;
    Ok((b, chi, labels))
}

pub fn run(c: &GroupCommand, ctx: &Ctx) -> Result<Outcome> {
    match c {
        GroupCommand::Dist { x, y } => {
            let d = b_distance(BElement::parse(x)?, BElement::parse(y)?)?;
            Ok(Outcome::new(json!({ "x": x, "y": y, "distance": d }))
                .check("matches the last differing coordinate", d == distance_by_characters(x, y)))
        }
        GroupCommand::Space { l } => {
            let space = b_space(*l)?.to_finite();
            let mut result = formats::space_json(&space);
            result["scale"] = formats::scale_json(&space.scale());
            Ok(Outcome::new(result).check("space is ultrametric", classify(&space) == Classification::Ultrametric))
        }
        GroupCommand::PsCheck { l } => {
            let (b, chi, labels) = group_coloring(ctx, *l)?;
            let v = ps_violation(&b, &chi)?;
            let invariant = is_invariant_coloring(&b, &chi)?;
            let result = match v {
                None => json!({ "ps": true }),
                Some(v) => json!({
                    "ps": false,
                    "first": [labels[v.first.0], labels[v.first.1]],
                    "second": [labels[v.second.0], labels[v.second.1]],
                }),
            };
            Ok(Outcome::new(result)
                .check("translation invariance gives the same answer", invariant == v.is_none())
                .negative(v.is_some()))
        }
        GroupCommand::InvCheck { l } => {
            let (b, chi, labels) = group_coloring(ctx, *l)?;
            let v = invariance_violation(&b, &chi)?;
            let ps = is_ps_coloring(&b, &chi)?;
            let result = match v {
                None => json!({ "invariant": true }),
                Some(v) => json!({
                    "invariant": false,
                    "pair": [labels[v.pair.0], labels[v.pair.1]],
                    "shift": labels[v.shift],
                }),
            };
            Ok(Outcome::new(result)
                .check("sum dependence gives the same answer", ps == v.is_none())
                .negative(v.is_some()))
        }
    }
}
