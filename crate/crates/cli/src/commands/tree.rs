use anyhow::{anyhow, Result};
use metramsey_core::coloring::{induce_coloring, max_monochrome};
use metramsey_core::metric::{classify, Classification, Metric, Partition};
use metramsey_core::tree::{check_guarantee, from_partition, partition_order, ProfileTree, TreeError};
use metramsey_core::Rational;
use serde_json::{json, Value};

use super::Ctx;
use crate::certificate::Outcome;
use crate::formats::{self, labelled, rational_json, scale_map_json};
use crate::TreeCommand;

const DEFAULT_MATERIALIZE: usize = 16;
const DEFAULT_OBSTRUCT: usize = 12;

fn count_json(c: Option<u64>, none: &str) -> Value {
    c.map_or_else(|| json!(none), |k| json!(k))
}

pub fn run(c: &TreeCommand, ctx: &Ctx) -> Result<Outcome> {
    if let TreeCommand::FromPartition = c {
        return partition_tree(ctx);
    }
    let tree = formats::tree(ctx.input()?)?;
    match c {
        TreeCommand::Decide => decide(&tree),
        TreeCommand::Materialize => {
            let budget = ctx.budget.unwrap_or(DEFAULT_MATERIALIZE);
            let m = tree.materialize(budget)?;
            Ok(Outcome::new(json!({
                "size": m.space.len(),
                "truncated": m.truncated,
                "round": m.round,
                "space": formats::space_json(&m.space),
            }))
            .check("sample fits the budget", m.space.len() <= budget)
            .check("sample is ultrametric", classify(&m.space) == Classification::Ultrametric)
            .check("sample distances are tree levels", m.space.scale().is_subset_of(&tree.scale())))
        }
        TreeCommand::Witness { k } => match tree.witness_set(*k) {
            Err(TreeError::TooSmall { found, required }) => Ok(Outcome::new(json!({
                "found": found,
                "required": required,
                "finite_size": tree.finite_size(),
            }))
            .negative(true)),
            Err(e) => Err(e.into()),
            Ok(w) => {
                let mut seq = vec![w.anchor];
                seq.extend(&w.points);
                let guarantee = check_guarantee(&w.space, &w.points, &w.h);
                let detail = guarantee
                    .as_ref()
                    .err()
                    .map(|f| format!("fails under {:?}", f.map.colors()))
                    .unwrap_or_else(|| format!("all {} scale maps", 1u64 << w.space.scale().len()));
                Ok(Outcome::new(json!({
                    "kind": w.kind.name(),
                    "anchor": w.space.label(w.anchor),
                    "points": labelled(&w.space, &w.points),
                    "h": w.h.iter().map(|&r| rational_json(r)).collect::<Vec<_>>(),
                    "sample_size": w.space.len(),
                }))
                .check(format!("sequence is {}", w.kind.name()), w.kind.holds(&w.space, &seq))
                .check_detail("majority class is monochrome with at least half the points", guarantee.is_ok(), detail))
            }
        },
        TreeCommand::Obstruct => {
            let budget = ctx.budget.unwrap_or(DEFAULT_OBSTRUCT);
            match tree.obstruction_coloring(budget) {
                Err(TreeError::Universal) => Ok(Outcome::new(json!({ "universal": true })).negative(true)),
                Err(e) => Err(e.into()),
                Ok(o) => {
                    let map = o
                        .map
                        .restrict(&o.space.scale())
                        .ok_or_else(|| anyhow!("sample uses a distance outside the tree levels"))?;
                    let chi = induce_coloring(&o.space, &map)?;
                    let best = max_monochrome(&chi);
                    Ok(Outcome::new(json!({
                        "obstruction": {
                            "index": o.obstruction.index,
                            "level": rational_json(o.obstruction.level),
                            "clause": o.obstruction.clause.name(),
                        },
                        "map": scale_map_json(&o.map),
                        "sample_size": o.space.len(),
                        "truncated": o.truncated,
                        "classes": o.classes,
                        "largest_class": o.largest_class,
                        "bound": o.bound,
                        "largest_monochrome": labelled(&o.space, &best.points),
                    }))
                    .check_detail(
                        "no monochrome set exceeds the bound",
                        best.points.len() <= o.bound,
                        format!("largest monochrome set has {} points", best.points.len()),
                    ))
                }
            }
        }
        TreeCommand::FromPartition => unreachable!("handled above"),
    }
}

fn decide(tree: &ProfileTree) -> Result<Outcome> {
    let v = tree.decide_universal_ramsey();
    let levels: Vec<Value> = v
        .levels
        .iter()
        .map(|r| {
            json!({
                "index": r.index,
                "level": rational_json(r.level),
                "infinite_classes": count_json(r.infinite_classes, "infinitely many"),
                "finite_class_bound": count_json(r.finite_class_bound, "unbounded"),
                "failure": r.failure().map(|c| c.name()),
            })
        })
        .collect();
    let failing: Vec<usize> = v.levels.iter().filter(|r| r.failure().is_some()).map(|r| r.index).collect();
    let lowest_failing = failing.iter().max().copied();
    let witness_ok = match (v.obstruction, &v.witness) {
        (Some(o), Some(w)) => *w == tree.class_coloring(o.index),
        (None, None) => true,
        _ => false,
    };
    Ok(Outcome::new(json!({
        "universal": v.universal,
        "obstruction": v.obstruction.map(|o| json!({
            "index": o.index,
            "level": rational_json(o.level),
            "clause": o.clause.name(),
        })),
        "witness_map": v.witness.as_ref().map(scale_map_json),
        "levels": levels,
    }))
    .check("universal exactly when no level fails", v.universal == failing.is_empty())
    .check("obstruction sits at the lowest failing level", v.obstruction.map(|o| o.index) == lowest_failing)
    .check("witness map separates classes of the failing level", witness_ok))
}

fn partition_tree(ctx: &Ctx) -> Result<Outcome> {
    let input = ctx.input()?;
    let n = input
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("input lacks the number of points \"n\""))? as usize;
    let blocks = formats::cells(
        input.get("blocks").ok_or_else(|| anyhow!("input lacks the \"blocks\" field"))?,
        &formats::index_labels(n),
    )?;
    let partition = Partition::new(blocks.clone(), n)?;
    let tree = from_partition(&partition);
    let order = partition_order(&partition);
    let m = tree.materialize(n.max(1))?;
    let block_of = partition.block_index();
    let reproduced = m.space.len() == n
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let expect = if i == j {
                    0
                } else if block_of[order[i]] == block_of[order[j]] {
                    1
                } else {
                    2
                };
                m.space.dist(i, j) == Rational::from_integer(expect)
            })
        });
    Ok(Outcome::new(json!({ "tree": formats::tree_json(&tree), "order": order }))
        .check("materialization has distance 1 inside blocks and 2 across", reproduced))
}
