use std::collections::{BTreeMap, BTreeSet};

use anyhow::{anyhow, Result};
use metramsey_core::coloring::{
    check_separation, family_coloring, family_scale_map, induce_coloring, lift_coloring, lift_scale_map,
    max_monochrome, recognize_isometric, Isometry, SeparatedFamily, SeparationFailure, SeparationLevel,
};
use metramsey_core::metric::Metric;
use metramsey_core::oracle::{brute_max_monochrome, BRUTE_LIMIT};
use metramsey_core::{FiniteMetricSpace, PairColoring, Rational};
use serde_json::{json, Value};

use super::Ctx;
use crate::certificate::Outcome;
use crate::formats::{self, coloring_json, labelled, rational_json, scale_map_json};
use crate::{ColorCommand, FamilyCommand};

pub fn color(c: &ColorCommand, ctx: &Ctx) -> Result<Outcome> {
    let input = ctx.input()?;
    match c {
        ColorCommand::Induce => {
            let space = formats::space(input)?;
            let map = formats::scale_map(input.get("map").ok_or_else(|| anyhow!("input lacks the \"map\" field"))?)?;
            let chi = induce_coloring(&space, &map)?;
            let back = match recognize_isometric(&space, &chi)? {
                Isometry::Isometric(g) => map.restrict(&space.scale()) == Some(g),
                Isometry::Violation { .. } => false,
            };
            Ok(Outcome::new(json!({ "coloring": coloring_json(&chi) }))
                .check("coloring is recognized with the same scale map", back))
        }
        ColorCommand::Recognize => {
            let space = formats::space(input)?;
            let chi = coloring_field(input, space.labels())?;
            Ok(match recognize_isometric(&space, &chi)? {
                Isometry::Isometric(map) => {
                    let same = induce_coloring(&space, &map)? == chi;
                    Outcome::new(json!({ "isometric": true, "map": scale_map_json(&map) }))
                        .check("scale map induces the coloring", same)
                }
                Isometry::Violation { first, second, distance } => {
                    let holds = space.dist(first.0, first.1) == distance
                        && space.dist(second.0, second.1) == distance
                        && chi.get(first.0, first.1) != chi.get(second.0, second.1);
                    Outcome::new(json!({
                        "isometric": false,
                        "violation": {
                            "first": labelled(&space, &[first.0, first.1]),
                            "second": labelled(&space, &[second.0, second.1]),
                            "distance": rational_json(distance),
                        },
                    }))
                    .check("pairs share the distance and differ in color", holds)
                    .negative(true)
                }
            })
        }
        ColorCommand::MaxMono => {
            let labels = match input.get("points") {
                Some(_) => formats::space(input)?.labels().to_vec(),
                None => {
                    let n = input
                        .get("n")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| anyhow!("give a space or the number of points \"n\""))?;
                    formats::index_labels(n as usize)
                }
            };
            let chi = coloring_field(input, &labels)?;
            Ok(monochrome_outcome(&chi, &labels))
        }
    }
}

fn coloring_field(input: &Value, labels: &[String]) -> Result<PairColoring> {
    formats::coloring(input.get("coloring").ok_or_else(|| anyhow!("input lacks the \"coloring\" field"))?, labels)
}

pub fn monochrome_outcome(chi: &PairColoring, labels: &[String]) -> Outcome {
    let m = max_monochrome(chi);
    let names: Vec<&str> = m.points.iter().map(|&p| labels[p].as_str()).collect();
    let outcome = Outcome::new(json!({
        "points": names,
        "indices": m.points,
        "color": m.color,
        "size": m.points.len(),
    }))
    .check("set is monochrome", chi.monochrome_color(&m.points).is_none_or(|c| c == m.color));
    match brute_max_monochrome(chi) {
        Ok(b) => outcome.check("exhaustive search returns the same set", b == m),
        Err(_) => outcome.check_detail(
            "exhaustive search returns the same set",
            true,
            format!("skipped: more than {BRUTE_LIMIT} points"),
        ),
    }
}

fn failure_json(f: Option<SeparationFailure>) -> Value {
    match f {
        None => Value::Null,
        Some(SeparationFailure::WithinMeetsCross { cell, pair, distance }) => json!({
            "kind": "within-meets-cross", "cell": cell, "pair": [pair.0, pair.1], "distance": rational_json(distance),
        }),
        Some(SeparationFailure::CrossMeetsCross { first, second, distance }) => json!({
            "kind": "cross-meets-cross", "first": [first.0, first.1], "second": [second.0, second.1],
            "distance": rational_json(distance),
        }),
    }
}

/// Separation level computed straight from the distance sets.
fn direct_level(space: &FiniteMetricSpace, cells: &[Vec<usize>]) -> SeparationLevel {
    let mut within = BTreeSet::new();
    for c in cells {
        for (i, &x) in c.iter().enumerate() {
            for &y in &c[i + 1..] {
                within.insert(space.dist(x, y));
            }
        }
    }
    let mut cross: BTreeMap<(usize, usize), BTreeSet<Rational>> = BTreeMap::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let set = cross.entry((i, j)).or_default();
            for &x in &cells[i] {
                for &y in &cells[j] {
                    set.insert(space.dist(x, y));
                }
            }
        }
    }
    if cross.values().any(|s| !s.is_disjoint(&within)) {
        return SeparationLevel::None;
    }
    let sets: Vec<&BTreeSet<Rational>> = cross.values().collect();
    let disjoint = (0..sets.len()).all(|a| (a + 1..sets.len()).all(|b| sets[a].is_disjoint(sets[b])));
    if disjoint {
        SeparationLevel::Strong
    } else {
        SeparationLevel::Weak
    }
}

fn family_input(ctx: &Ctx) -> Result<(FiniteMetricSpace, SeparatedFamily)> {
    let input = ctx.input()?;
    let space = formats::space(input)?;
    let cells = formats::cells(input.get("cells").ok_or_else(|| anyhow!("input lacks the \"cells\" field"))?, space.labels())?;
    let family = check_separation(&space, &cells)?;
    Ok((space, family))
}

fn cells_json(space: &FiniteMetricSpace, family: &SeparatedFamily) -> Value {
    Value::Array(family.cells().iter().map(|c| labelled(space, c)).collect())
}

pub fn family(c: &FamilyCommand, ctx: &Ctx) -> Result<Outcome> {
    let (space, family) = family_input(ctx)?;
    match c {
        FamilyCommand::Check => {
            let level = family.level();
            Ok(Outcome::new(json!({
                "cells": cells_json(&space, &family),
                "level": level.name(),
                "within_failure": failure_json(family.within_failure()),
                "cross_failure": failure_json(family.cross_failure()),
            }))
            .check("level agrees with the distance sets", direct_level(&space, family.cells()) == level)
            .negative(level == SeparationLevel::None))
        }
        FamilyCommand::Color => {
            let map = family_scale_map(&space, &family)?;
            let chi = family_coloring(&space, &family)?;
            let cell_of = family.cell_of();
            let members: Vec<usize> = cell_of.keys().copied().collect();
            let sound = members.iter().all(|&x| {
                members
                    .iter()
                    .filter(|&&y| y != x)
                    .all(|&y| (chi.get(x, y) == 0) == (cell_of[&x] == cell_of[&y]))
            });
            Ok(Outcome::new(json!({ "map": scale_map_json(&map), "coloring": coloring_json(&chi) }))
                .check("color 0 exactly on pairs inside one cell", sound))
        }
        FamilyCommand::Lift => {
            let input = ctx.input()?;
            let cells = family.cells().len();
            let index = formats::coloring(
                input.get("index").ok_or_else(|| anyhow!("input lacks the \"index\" coloring of cell pairs"))?,
                &formats::index_labels(cells),
            )?;
            let map = lift_scale_map(&space, &family, &index)?;
            let chi = lift_coloring(&space, &family, &index)?;
            let cell_of = family.cell_of();
            let follows = cell_of.iter().all(|(&x, &i)| {
                cell_of
                    .iter()
                    .filter(|(_, &j)| j != i)
                    .all(|(&y, &j)| chi.get(x, y) == index.get(i, j))
            });
            let isometric = matches!(recognize_isometric(&space, &chi)?, Isometry::Isometric(_));
            Ok(Outcome::new(json!({ "map": scale_map_json(&map), "coloring": coloring_json(&chi) }))
                .check("cross pairs carry the color of their cell pair", follows)
                .check("lift is isometric", isometric))
        }
    }
}
