//! JSON encodings of the library types.
//!
//! Rationals are integers or `"p/q"` strings. Points inside colorings and
//! families are referenced by 0-based index or by label.

use anyhow::{anyhow, bail, ensure, Context, Result};
use metramsey_core::metric::Metric;
use metramsey_core::tree::{Group, Mult, Node, ProfileTree, Shape};
use metramsey_core::{FiniteMetricSpace, PairColoring, Rational, Scale, ScaleMap};
use serde_json::{json, Value};

pub fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| anyhow!("{n} is not an integer; write fractions as \"p/q\"")),
        Value::String(s) => parse_rational(s),
        other => bail!("expected a rational, found {other}"),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = p.parse().with_context(|| format!("bad numerator in {s:?}"))?;
    let q: i64 = q.parse().with_context(|| format!("bad denominator in {s:?}"))?;
    ensure!(q != 0, "zero denominator in {s:?}");
    Ok(Rational::new(p, q))
}

pub fn rational_json(r: Rational) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn scale_json(scale: &Scale) -> Value {
    Value::Array(scale.values().iter().map(|&r| rational_json(r)).collect())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| anyhow!("input lacks the {key:?} field"))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| anyhow!("{what} must be an array"))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| anyhow!("{what} must be a nonnegative integer, found {v}"))
}

pub fn u64_list(v: &Value, what: &str) -> Result<Vec<u64>> {
    array(v, what)?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| anyhow!("{what} must hold nonnegative integers, found {x}")))
        .collect()
}

/// Labels and matrix exactly as given, before any metric validation.
pub fn raw_space(v: &Value) -> Result<(Vec<String>, Vec<Vec<Rational>>)> {
    let labels = array(field(v, "points")?, "points")?
        .iter()
        .map(|p| match p {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => bail!("point labels must be strings or numbers, found {other}"),
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = array(field(v, "dist")?, "dist")?
        .iter()
        .map(|row| array(row, "dist rows")?.iter().map(rational).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok((labels, matrix))
}

pub fn space(v: &Value) -> Result<FiniteMetricSpace> {
    let (labels, matrix) = raw_space(v)?;
    Ok(FiniteMetricSpace::new(labels, matrix)?)
}

pub fn space_json(space: &FiniteMetricSpace) -> Value {
    let n = space.len();
    json!({
        "points": space.labels(),
        "dist": (0..n)
            .map(|i| (0..n).map(|j| rational_json(space.dist(i, j))).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// A point given as an index or as a label of `labels`.
fn point(v: &Value, labels: &[String]) -> Result<usize> {
    match v {
        Value::Number(_) => {
            let i = usize_of(v, "point index")?;
            ensure!(i < labels.len(), "point index {i} out of range");
            Ok(i)
        }
        Value::String(s) => labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| anyhow!("unknown point {s:?}")),
        other => bail!("points are indices or labels, found {other}"),
    }
}

fn color(v: &Value) -> Result<u8> {
    match v.as_u64() {
        Some(c @ (0 | 1)) => Ok(c as u8),
        _ => bail!("colors are 0 or 1, found {v}"),
    }
}

pub fn scale_map(v: &Value) -> Result<ScaleMap> {
    let scale = array(field(v, "scale")?, "scale")?
        .iter()
        .map(rational)
        .collect::<Result<Vec<_>>>()?;
    let colors = array(field(v, "colors")?, "colors")?
        .iter()
        .map(color)
        .collect::<Result<Vec<_>>>()?;
    Ok(ScaleMap::new(Scale::new(scale)?, colors)?)
}

pub fn scale_map_json(map: &ScaleMap) -> Value {
    json!({ "scale": scale_json(map.scale()), "colors": map.colors() })
}

/// `[[i, j, color], ...]` covering every pair of `labels` exactly once.
pub fn coloring(v: &Value, labels: &[String]) -> Result<PairColoring> {
    let triples = array(v, "coloring")?
        .iter()
        .map(|t| {
            let t = array(t, "coloring entries")?;
            ensure!(t.len() == 3, "coloring entries are [x, y, color]");
            Ok((point(&t[0], labels)?, point(&t[1], labels)?, color(&t[2])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PairColoring::from_triples(labels.len(), &triples)?)
}

pub fn coloring_json(chi: &PairColoring) -> Value {
    Value::Array(chi.triples().map(|(i, j, c)| json!([i, j, c])).collect())
}

pub fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn cells(v: &Value, labels: &[String]) -> Result<Vec<Vec<usize>>> {
    array(v, "cells")?
        .iter()
        .map(|c| array(c, "each cell")?.iter().map(|p| point(p, labels)).collect())
        .collect()
}

pub fn labelled(space: &FiniteMetricSpace, points: &[usize]) -> Value {
    Value::Array(points.iter().map(|&p| json!(space.label(p))).collect())
}

fn mult(v: &Value) -> Result<Mult> {
    match v {
        Value::String(s) if s == "omega" => Ok(Mult::Omega),
        Value::String(s) if s == "unbounded" => Ok(Mult::Unbounded),
        Value::Number(_) => Ok(Mult::Finite(usize_of(v, "multiplicity")? as u64)),
        other => bail!("multiplicities are integers, \"omega\" or \"unbounded\", found {other}"),
    }
}

fn mult_json(m: Mult) -> Value {
    match m {
        Mult::Finite(k) => json!(k),
        other => json!(other.to_string()),
    }
}

fn node(v: &Value) -> Result<Node> {
    let groups = array(field(v, "groups")?, "groups")?
        .iter()
        .map(|g| {
            let shape = field(g, "shape")?;
            let shape = match shape.get("leaf") {
                Some(m) => Shape::Leaf(mult(m)?),
                None => Shape::Node(node(shape)?),
            };
            Ok(Group {
                shape,
                mult: mult(field(g, "mult")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Node { groups })
}

fn node_json(n: &Node) -> Value {
    let groups: Vec<Value> = n
        .groups
        .iter()
        .map(|g| {
            let shape = match &g.shape {
                Shape::Leaf(m) => json!({ "leaf": mult_json(*m) }),
                Shape::Node(inner) => node_json(inner),
            };
            json!({ "shape": shape, "mult": mult_json(g.mult) })
        })
        .collect();
    json!({ "groups": groups })
}

pub fn tree(v: &Value) -> Result<ProfileTree> {
    let levels = array(field(v, "levels")?, "levels")?
        .iter()
        .map(rational)
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileTree::new(levels, node(field(v, "root")?)?)?)
}

pub fn tree_json(t: &ProfileTree) -> Value {
    json!({
        "levels": t.levels().iter().map(|&r| rational_json(r)).collect::<Vec<_>>(),
        "root": node_json(t.root()),
    })
}
