use std::collections::HashSet;

use anyhow::{anyhow, Result};
use metramsey_core::coloring::{lift_coloring, recognize_isometric, Isometry, SeparationFailure, SeparationLevel};
use metramsey_core::integers::{
    blocks_to_quotient, construct_blocks, difference_coloring, extend_to_isometric, forest_partition, is_sidon,
    is_thin, pattern_free_member, sidon_violation, verify_block_conditions, verify_pattern_free, BlockReport,
    IntegerError, OrderFailure, Side, StepFunction,
};
use metramsey_core::{PairColoring, Rational};
use serde_json::{json, Value};

use super::Ctx;
use crate::certificate::Outcome;
use crate::formats::{self, rational_json, scale_map_json};
use crate::{BlockArgs, IntCommand, SideArg};

/// Largest prefix the block conditions are verified on; beyond this the
/// pairwise distance sets get too big.
const BLOCK_VERIFY_LIMIT: usize = 3000;
/// Largest `n * |set|` for the direct pattern scan.
const PATTERN_SCAN_LIMIT: u64 = 100_000_000;

pub fn run(c: &IntCommand, ctx: &Ctx) -> Result<Outcome> {
    match c {
        IntCommand::Forest { f } => forest(&ctx.function(f)?),
        IntCommand::PatternCheck { f, set } => pattern_check(&ctx.function(f)?, &ctx.set(set)?),
        IntCommand::PatternMember { f } => pattern_member(&ctx.function(f)?),
        IntCommand::Thin { set } => thin(&ctx.set(set)?, ctx.thin_floor),
        IntCommand::Blocks { set, count } => blocks(&ctx.set(set)?, *count, ctx.thin_floor),
        IntCommand::VerifyBlocks { blocks } => {
            let (set, pairs, n) = block_input(ctx, blocks)?;
            verify_blocks(&set, &pairs, n)
        }
        IntCommand::Quotient { blocks, side } => {
            let (set, pairs, n) = block_input(ctx, blocks)?;
            let side = match side {
                SideArg::A => Side::A,
                SideArg::B => Side::B,
            };
            quotient(&set, &pairs, side, n)
        }
        IntCommand::Sidon { set } => sidon(&ctx.set(set)?),
        IntCommand::Extend { set, n } => {
            let set = ctx.set(set)?;
            let n = n.or(set.last().copied()).ok_or_else(|| anyhow!("the set is empty"))?;
            extend(ctx, &set, n)
        }
    }
}

fn forest(f: &StepFunction) -> Result<Outcome> {
    let p = forest_partition(f);
    let bad = p.crossing_violations(f);
    let max_depth = (1..=p.window()).filter_map(|x| p.depth(x)).max();
    Ok(Outcome::new(json!({
        "n": p.window(),
        "a1": p.a1(),
        "a2": p.a2(),
        "max_depth": max_depth,
    }))
    .check_detail(
        "x and f(x) lie in different cells",
        bad.is_empty(),
        format!("{} violations", bad.len()),
    ))
}

fn scan_for_pattern(set: &[u64], f: &StepFunction) -> bool {
    let members: HashSet<u64> = set.iter().copied().collect();
    set.iter().any(|&a| {
        (1..=f.domain()).any(|x| {
            members.contains(&(a + x)) && f.apply(x).is_some_and(|fx| members.contains(&(a + fx)))
        })
    })
}

fn pattern_check(f: &StepFunction, set: &[u64]) -> Result<Outcome> {
    let found = verify_pattern_free(set, f)?;
    let outcome = match found {
        Some(v) => {
            let fx = f.apply(v.x).expect("violations lie in the domain");
            let triple = [v.a, v.a + v.x, v.a + fx];
            Outcome::new(json!({ "pattern_free": false, "a": v.a, "x": v.x, "triple": triple }))
                .check("triple lies in the set", triple.iter().all(|t| set.binary_search(t).is_ok()))
                .negative(true)
        }
        None => Outcome::new(json!({ "pattern_free": true })),
    };
    Ok(if f.domain().saturating_mul(set.len() as u64) <= PATTERN_SCAN_LIMIT {
        outcome.check("direct scan agrees", scan_for_pattern(set, f) == found.is_some())
    } else {
        outcome.check_detail("direct scan agrees", true, "skipped: window too large")
    })
}

fn pattern_member(f: &StepFunction) -> Result<Outcome> {
    let u = pattern_free_member(f);
    let chi = difference_coloring(f);
    let indices: Vec<usize> = u.iter().map(|&x| x as usize - 1).collect();
    Ok(Outcome::new(json!({ "set": u, "size": u.len() }))
        .check("set is pattern free", verify_pattern_free(&u, f)?.is_none())
        .check("set is monochrome for the forest difference coloring", chi.is_monochrome(&indices)))
}

fn thin(set: &[u64], floor: u64) -> Result<Outcome> {
    let thin = is_thin(set, floor)?;
    let gaps: Vec<u64> = set.windows(2).map(|w| w[1] - w[0]).collect();
    let direct = gaps.len() < 2 || (gaps.windows(2).all(|g| g[0] <= g[1]) && gaps[gaps.len() - 1] > floor);
    Ok(Outcome::new(json!({
        "thin": thin,
        "floor": floor,
        "elements": set.len(),
        "final_gap": gaps.last(),
    }))
    .check("policy recomputed from the gaps", direct == thin)
    .negative(!thin))
}

fn failure_json(f: &Option<SeparationFailure>) -> Value {
    match f {
        None => Value::Null,
        Some(SeparationFailure::WithinMeetsCross { cell, pair, distance }) => json!({
            "kind": "within-meets-cross", "cell": cell, "pair": [pair.0, pair.1], "distance": rational_json(*distance),
        }),
        Some(SeparationFailure::CrossMeetsCross { first, second, distance }) => json!({
            "kind": "cross-meets-cross", "first": [first.0, first.1], "second": [second.0, second.1],
            "distance": rational_json(*distance),
        }),
    }
}

fn order_json(o: &Option<OrderFailure>) -> Value {
    match o {
        None => Value::Null,
        Some(OrderFailure::NotInSet(x)) => json!({ "kind": "not-in-set", "value": x }),
        Some(OrderFailure::NotIncreasing(i, x)) => json!({ "kind": "not-increasing", "position": i, "value": x }),
        Some(OrderFailure::OutOfWindow(x)) => json!({ "kind": "out-of-window", "value": x }),
    }
}

fn report_json(r: &BlockReport) -> Value {
    json!({
        "conditions": r.conditions(),
        "order": order_json(&r.order),
        "a_cells": r.a_cells,
        "b_cells": r.b_cells,
        "a_within": failure_json(&r.a_within),
        "a_cross": failure_json(&r.a_cross),
        "b_within": failure_json(&r.b_within),
        "b_cross": failure_json(&r.b_cross),
    })
}

fn blocks(set: &[u64], count: usize, floor: u64) -> Result<Outcome> {
    let b = construct_blocks(set, count)?;
    let flat: Vec<u64> = b.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut result = json!({
        "pairs": b.pairs,
        "partial": b.partial,
        "thin": is_thin(set, floor)?,
    });
    let outcome = Outcome::new(Value::Null)
        .check("pairs interleave strictly", flat.windows(2).all(|w| w[0] < w[1]))
        .check("pairs are set elements", flat.iter().all(|x| set.binary_search(x).is_ok()));
    let Some(&(_, top)) = b.pairs.last() else {
        result["report"] = Value::Null;
        let mut outcome = outcome;
        outcome.result = result;
        return Ok(outcome);
    };
    let prefix: Vec<u64> = set.iter().copied().take_while(|&x| x <= top).collect();
    let mut outcome = if prefix.len() <= BLOCK_VERIFY_LIMIT {
        let report = verify_block_conditions(&prefix, &b.pairs, top)?;
        result["report"] = report_json(&report);
        outcome.negative(!report.all_pass())
    } else {
        result["report"] = Value::Null;
        outcome.check_detail("block conditions", true, format!("skipped: {} elements below {top}", prefix.len()))
    };
    outcome.result = result;
    Ok(outcome)
}

fn block_input(ctx: &Ctx, args: &BlockArgs) -> Result<(Vec<u64>, Vec<(u64, u64)>, u64)> {
    let pairs = args.blocks.clone();
    let n = args
        .n
        .or(pairs.last().map(|p| p.1))
        .ok_or_else(|| anyhow!("give --blocks a:b,... or a window --n"))?;
    let set: Vec<u64> = ctx.set(&args.set)?.into_iter().take_while(|&x| x <= n).collect();
    Ok((set, pairs, n))
}

fn verify_blocks(set: &[u64], pairs: &[(u64, u64)], n: u64) -> Result<Outcome> {
    let report = verify_block_conditions(set, pairs, n)?;
    let in_intervals = report.order.is_some()
        || report.a_cells.iter().zip(pairs).all(|(c, &(a, b))| c.iter().all(|&x| a <= x && x < b));
    Ok(Outcome::new(report_json(&report))
        .check("A cells lie in their intervals", in_intervals)
        .negative(!report.all_pass()))
}

fn quotient(set: &[u64], pairs: &[(u64, u64)], side: Side, n: u64) -> Result<Outcome> {
    match blocks_to_quotient(set, pairs, side, n) {
        Err(IntegerError::SideFailed { failure, .. }) => Ok(Outcome::new(json!({
            "separated": false,
            "failure": failure_json(&Some(failure)),
        }))
        .negative(true)),
        Err(e) => Err(e.into()),
        Ok(q) => {
            let cells: Vec<Vec<u64>> = q.family.cells().iter().map(|c| c.iter().map(|&i| q.values[i]).collect()).collect();
            let k = cells.len();
            let idx = PairColoring::from_fn(k, |i, j| ((i + j) % 2) as u8);
            let lift = lift_coloring(&q.space, &q.family, &idx)?;
            let isometric = matches!(recognize_isometric(&q.space, &lift)?, Isometry::Isometric(_));
            let phi_ok = cells.iter().enumerate().all(|(i, c)| c.iter().all(|&x| q.phi(x) == i));
            Ok(Outcome::new(json!({
                "separated": true,
                "level": q.family.level().name(),
                "cells": cells,
                "points": q.values.len(),
            }))
            .check("family is strongly separated", q.family.level() == SeparationLevel::Strong)
            .check("phi sends each cell member to its cell", phi_ok)
            .check("lift of the parity coloring of cell pairs is isometric", isometric))
        }
    }
}

fn sidon(set: &[u64]) -> Result<Outcome> {
    let sidon = is_sidon(set);
    Ok(match sidon_violation(set) {
        None => Outcome::new(json!({ "sidon": true })).check("no violation reported", sidon),
        Some((p, q)) => Outcome::new(json!({
            "sidon": false,
            "first": [p.0, p.1],
            "second": [q.0, q.1],
            "difference": p.1.abs_diff(p.0),
        }))
        .check("pairs are distinct with equal differences", p != q && p.1.abs_diff(p.0) == q.1.abs_diff(q.0))
        .negative(true),
    })
}

fn extend(ctx: &Ctx, set: &[u64], n: u64) -> Result<Outcome> {
    let labels: Vec<String> = set.iter().map(u64::to_string).collect();
    let chi = formats::coloring(
        ctx.input()?.get("coloring").ok_or_else(|| anyhow!("input lacks the \"coloring\" field"))?,
        &labels,
    )?;
    match extend_to_isometric(set, &chi, n) {
        Err(IntegerError::NotSidon { first, second }) => Ok(Outcome::new(json!({
            "extended": false,
            "first": [first.0, first.1],
            "second": [second.0, second.1],
        }))
        .negative(true)),
        Err(e) => Err(e.into()),
        Ok(map) => {
            let k = set.len();
            let agrees = (0..k).all(|i| {
                (i + 1..k).all(|j| {
                    map.color_of(Rational::from_integer(set[i].abs_diff(set[j]) as i64)) == Some(chi.get(i, j))
                })
            });
            Ok(Outcome::new(json!({ "extended": true, "map": scale_map_json(&map) }))
                .check("map colors each difference as the coloring does", agrees))
        }
    }
}
