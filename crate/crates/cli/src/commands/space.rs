use anyhow::{ensure, Result};
use metramsey_core::coloring::{canonical_sequence, find_max_equidistance, DEFAULT_SEQUENCE_BUDGET};
use metramsey_core::metric::{validate as classify_matrix, Classification, Metric, MetricViolation, Triple};
use metramsey_core::{FiniteMetricSpace, Rational};
use serde_json::{json, Value};

use super::Ctx;
use crate::certificate::Outcome;
use crate::formats::{self, labelled, rational_json};

/// Largest space the independent triple scans run on.
const SCAN_LIMIT: usize = 200;
/// Largest space the exhaustive equidistance check runs on.
const EXHAUSTIVE_LIMIT: usize = 16;

fn triple_json(t: Triple, labels: &[String], m: &[Vec<Rational>]) -> Value {
    json!({
        "x": labels[t.x], "y": labels[t.y], "via": labels[t.via],
        "d_xy": rational_json(m[t.x][t.y]),
        "d_x_via": rational_json(m[t.x][t.via]),
        "d_via_y": rational_json(m[t.via][t.y]),
    })
}

fn violation_json(v: MetricViolation, labels: &[String], m: &[Vec<Rational>]) -> Value {
    match v {
        MetricViolation::NonZeroDiagonal { point } => json!({"kind": "nonzero-diagonal", "point": labels[point]}),
        MetricViolation::ZeroDistance { x, y } => json!({"kind": "zero-distance", "x": labels[x], "y": labels[y]}),
        MetricViolation::Asymmetric { x, y } => json!({"kind": "asymmetric", "x": labels[x], "y": labels[y]}),
        MetricViolation::Triangle(t) => {
            let mut v = triple_json(t, labels, m);
            v["kind"] = json!("triangle");
            v
        }
    }
}

/// The reported violation really breaks the axiom it names.
fn violation_holds(v: MetricViolation, m: &[Vec<Rational>]) -> bool {
    match v {
        MetricViolation::NonZeroDiagonal { point } => m[point][point] != Rational::from_integer(0),
        MetricViolation::ZeroDistance { x, y } => x != y && m[x][y] == Rational::from_integer(0),
        MetricViolation::Asymmetric { x, y } => m[x][y] != m[y][x],
        MetricViolation::Triangle(t) => m[t.x][t.y] > m[t.x][t.via] + m[t.via][t.y],
    }
}

fn strong_triangle_everywhere(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m[x][y] <= m[x][z].max(m[z][y]))))
}

pub fn validate(ctx: &Ctx) -> Result<Outcome> {
    let (labels, matrix) = formats::raw_space(ctx.input()?)?;
    ensure!(
        labels.len() == matrix.len(),
        "{} labels for a {}-row matrix",
        labels.len(),
        matrix.len()
    );
    let class = classify_matrix(&matrix)?;
    let mut result = json!({
        "points": labels,
        "dist": matrix.iter().map(|r| r.iter().map(|&x| rational_json(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "classification": class.name(),
    });
    let mut outcome = match class {
        Classification::NotAMetric(v) => {
            result["violation"] = violation_json(v, &labels, &matrix);
            Outcome::new(Value::Null)
                .check("violation breaks the named axiom", violation_holds(v, &matrix))
                .negative(true)
        }
        Classification::Metric { ultrametric_violation: t } => {
            result["ultrametric_violation"] = triple_json(t, &labels, &matrix);
            let strict = matrix[t.x][t.y] > matrix[t.x][t.via].max(matrix[t.via][t.y]);
            Outcome::new(Value::Null)
                .check("accepted as a metric space", FiniteMetricSpace::new(labels.clone(), matrix.clone()).is_ok())
                .check("triple breaks the strong triangle inequality", strict)
        }
        Classification::Ultrametric => {
            let outcome = Outcome::new(Value::Null)
                .check("accepted as a metric space", FiniteMetricSpace::new(labels.clone(), matrix.clone()).is_ok());
            if matrix.len() <= SCAN_LIMIT {
                outcome.check("strong triangle inequality on every triple", strong_triangle_everywhere(&matrix))
            } else {
                outcome.check_detail("strong triangle inequality on every triple", true, "skipped: space too large")
            }
        }
    };
    outcome.result = result;
    Ok(outcome)
}

fn off_diagonal(space: &FiniteMetricSpace) -> impl Iterator<Item = Rational> + '_ {
    let n = space.len();
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| space.dist(i, j)))
}

pub fn scale(ctx: &Ctx) -> Result<Outcome> {
    let space = formats::space(ctx.input()?)?;
    let scale = space.scale();
    let used: std::collections::BTreeSet<Rational> = off_diagonal(&space).collect();
    Ok(Outcome::new(json!({ "scale": formats::scale_json(&scale), "size": scale.len() }))
        .check("scale is exactly the set of nonzero distances", used.iter().copied().eq(scale.values().iter().copied())))
}

pub fn partition(ctx: &Ctx, r: Rational) -> Result<Outcome> {
    let space = formats::space(ctx.input()?)?;
    let p = space.r_equivalence(r)?;
    let blocks: Vec<Value> = p.blocks().iter().map(|b| labelled(&space, b)).collect();
    let index = p.block_index();
    let n = space.len();
    let sound = (0..n).all(|i| (0..n).all(|j| (space.dist(i, j) <= r) == (index[i] == index[j])));
    Ok(Outcome::new(json!({ "r": rational_json(r), "blocks": blocks, "classes": p.len() }))
        .check("same block exactly when the distance is at most r", sound))
}

fn equidistant(space: &FiniteMetricSpace, points: &[usize]) -> bool {
    let mut d = points
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| points[i + 1..].iter().map(move |&b| space.dist(a, b)));
    let first = d.next();
    d.all(|x| Some(x) == first)
}

pub fn equidist(ctx: &Ctx) -> Result<Outcome> {
    let space = formats::space(ctx.input()?)?;
    let e = find_max_equidistance(&space);
    let outcome = Outcome::new(json!({
        "points": labelled(&space, &e.points),
        "indices": e.points,
        "size": e.points.len(),
        "distance": e.distance.map(rational_json),
    }))
    .check("points are equidistant", equidistant(&space, &e.points));
    let n = space.len();
    Ok(if n <= EXHAUSTIVE_LIMIT {
        let best = (0u32..1 << n)
            .filter(|&m| equidistant(&space, &(0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>()))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        outcome.check("no larger equidistant subset (exhaustive)", best == e.points.len())
    } else {
        outcome.check_detail("no larger equidistant subset (exhaustive)", true, "skipped: space too large")
    })
}

pub fn canon_seq(ctx: &Ctx) -> Result<Outcome> {
    let space = formats::space(ctx.input()?)?;
    let budget = ctx.budget.unwrap_or(DEFAULT_SEQUENCE_BUDGET);
    let c = canonical_sequence(&space, budget);
    let anchor_distances: Vec<Value> = c
        .sequence
        .iter()
        .skip(1)
        .map(|&p| rational_json(space.dist(c.sequence[0], p)))
        .collect();
    Ok(Outcome::new(json!({
        "kind": c.kind.name(),
        "sequence": labelled(&space, &c.sequence),
        "indices": c.sequence,
        "length": c.sequence.len(),
        "distances_from_first": anchor_distances,
        "exact": c.exact,
        "budget": budget,
    }))
    .check(format!("sequence is {}", c.kind.name()), c.kind.holds(&space, &c.sequence)))
}
