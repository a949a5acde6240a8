//! Finite metric spaces over exact rationals.
//!
//! Points are addressed by position; labels are opaque strings carried along
//! for reporting. A [`Scale`] stores only the nonzero distances: the zero of
//! `d(X,X)` is implicit everywhere in this crate.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::Zero;

/// Exact distance value.
pub type Rational = Ratio<i64>;

/// Anything that can report pairwise distances between `len()` points.
pub trait Metric {
    fn len(&self) -> usize;

    fn dist(&self, i: usize, j: usize) -> Rational;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("negative distance at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("{labels} labels for a {points}-point matrix")]
    LabelCount { labels: usize, points: usize },
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("matrix is not a metric: {0}")]
    NotAMetric(MetricViolation),
    #[error("empty point set")]
    EmptySubset,
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("space is not ultrametric: {0}")]
    NotUltrametric(Triple),
    #[error("scale values must be positive and strictly increasing")]
    BadScale,
    #[error("partition does not cover the {0} points exactly once")]
    BadPartition(usize),
}

/// Points `x`, `y` and an intermediate `via`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub x: usize,
    pub y: usize,
    pub via: usize,
}

impl core::fmt::Display for Triple {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.via)
    }
}

/// First failing metric axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricViolation {
    NonZeroDiagonal { point: usize },
    ZeroDistance { x: usize, y: usize },
    Asymmetric { x: usize, y: usize },
    /// `d(x,y) > d(x,via) + d(via,y)`.
    Triangle(Triple),
}

impl core::fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MetricViolation::NonZeroDiagonal { point } => {
                write!(f, "d({point},{point}) is not zero")
            }
            MetricViolation::ZeroDistance { x, y } => write!(f, "d({x},{y}) = 0 for distinct points"),
            MetricViolation::Asymmetric { x, y } => write!(f, "d({x},{y}) != d({y},{x})"),
            MetricViolation::Triangle(t) => write!(f, "triangle inequality fails on {t}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    NotAMetric(MetricViolation),
    /// A metric whose strong triangle inequality fails on the given triple:
    /// `d(x,y) > max(d(x,via), d(via,y))`.
    Metric { ultrametric_violation: Triple },
    Ultrametric,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::NotAMetric(_) => "not-a-metric",
            Classification::Metric { .. } => "metric",
            Classification::Ultrametric => "ultrametric",
        }
    }

    pub fn is_metric(&self) -> bool {
        !matches!(self, Classification::NotAMetric(_))
    }
}

fn exceeds_sum(a: Rational, b: Rational, c: Rational) -> bool {
    let widen = |r: Rational| Ratio::new_raw(*r.numer() as i128, *r.denom() as i128);
    widen(a) > widen(b) + widen(c)
}

fn check_pairs<M: Metric + ?Sized>(m: &M) -> Option<MetricViolation> {
    let n = m.len();
    for i in 0..n {
        if !m.dist(i, i).is_zero() {
            return Some(MetricViolation::NonZeroDiagonal { point: i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if m.dist(i, j) != m.dist(j, i) {
                return Some(MetricViolation::Asymmetric { x: i, y: j });
            }
            if m.dist(i, j).is_zero() {
                return Some(MetricViolation::ZeroDistance { x: i, y: j });
            }
        }
    }
    None
}

/// Classifies the space over the given triples only; pair axioms are always
/// checked in full. Used for spaces too large for exhaustive triple scans.
pub fn classify_on_triples<M, I>(m: &M, triples: I) -> Classification
where
    M: Metric + ?Sized,
    I: IntoIterator<Item = (usize, usize, usize)>,
{
    if let Some(v) = check_pairs(m) {
        return Classification::NotAMetric(v);
    }
    let mut ultra: Option<Triple> = None;
    for (x, y, via) in triples {
        let (dxy, dxz, dzy) = (m.dist(x, y), m.dist(x, via), m.dist(via, y));
        if exceeds_sum(dxy, dxz, dzy) {
            return Classification::NotAMetric(MetricViolation::Triangle(Triple { x, y, via }));
        }
        if ultra.is_none() && dxy > dxz.max(dzy) {
            ultra = Some(Triple { x, y, via });
        }
    }
    match ultra {
        Some(t) => Classification::Metric {
            ultrametric_violation: t,
        },
        None => Classification::Ultrametric,
    }
}

/// Exhaustive classification over every ordered triple.
pub fn classify<M: Metric + ?Sized>(m: &M) -> Classification {
    let n = m.len();
    let triples = (0..n).flat_map(move |x| {
        (x + 1..n).flat_map(move |y| (0..n).filter(move |&z| z != x && z != y).map(move |z| (x, y, z)))
    });
    classify_on_triples(m, triples)
}

struct MatrixView<'a>(&'a [Vec<Rational>]);

impl Metric for MatrixView<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn dist(&self, i: usize, j: usize) -> Rational {
        self.0[i][j]
    }
}

fn check_shape(matrix: &[Vec<Rational>]) -> Result<(), MetricError> {
    let n = matrix.len();
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(MetricError::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        if let Some(col) = entries.iter().position(|d| *d < Rational::zero()) {
            return Err(MetricError::NegativeEntry { row, col });
        }
    }
    Ok(())
}

/// Classifies a raw distance matrix.
pub fn validate(matrix: &[Vec<Rational>]) -> Result<Classification, MetricError> {
    check_shape(matrix)?;
    Ok(classify(&MatrixView(matrix)))
}

/// Strictly increasing list of the positive distances realized in a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Scale {
    values: Vec<Rational>,
}

impl Scale {
    pub fn new(values: Vec<Rational>) -> Result<Self, MetricError> {
        let positive = values.iter().all(|v| *v > Rational::zero());
        let increasing = values.windows(2).all(|w| w[0] < w[1]);
        if positive && increasing {
            Ok(Scale { values })
        } else {
            Err(MetricError::BadScale)
        }
    }

    /// Collects, sorts and deduplicates; zero values are dropped.
    pub fn collect<I: IntoIterator<Item = Rational>>(values: I) -> Self {
        let set: BTreeSet<Rational> = values.into_iter().filter(|v| !v.is_zero()).collect();
        Scale {
            values: set.into_iter().collect(),
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn position(&self, r: Rational) -> Option<usize> {
        self.values.binary_search(&r).ok()
    }

    pub fn contains(&self, r: Rational) -> bool {
        self.position(r).is_some()
    }

    pub fn is_subset_of(&self, other: &Scale) -> bool {
        self.values.iter().all(|v| other.contains(*v))
    }
}

/// Disjoint blocks covering `0..n`, each sorted, blocks ordered by their least point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>, n: usize) -> Result<Self, MetricError> {
        let mut seen = alloc::vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(MetricError::BadPartition(n));
            }
            block.sort_unstable();
            for &p in block.iter() {
                if p >= n || seen[p] {
                    return Err(MetricError::BadPartition(n));
                }
                seen[p] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(MetricError::BadPartition(n));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|i| alloc::vec![i]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Block index of every point.
    pub fn block_index(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut index = alloc::vec![0; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &p in block {
                index[p] = b;
            }
        }
        index
    }

    /// Every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let outer = coarser.block_index();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&p| outer.get(p) == outer.get(b[0])))
    }
}

/// Points with an exact symmetric distance matrix satisfying the metric axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Rational>,
}

impl Metric for FiniteMetricSpace {
    fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> Rational {
        self.dist[i * self.labels.len() + j]
    }
}

impl FiniteMetricSpace {
    /// Builds a space, rejecting anything that is not a metric.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        check_shape(&matrix)?;
        if labels.len() != matrix.len() {
            return Err(MetricError::LabelCount {
                labels: labels.len(),
                points: matrix.len(),
            });
        }
        let mut unique = BTreeSet::new();
        for l in &labels {
            if !unique.insert(l.as_str()) {
                return Err(MetricError::DuplicateLabel(l.clone()));
            }
        }
        if let Classification::NotAMetric(v) = classify(&MatrixView(&matrix)) {
            return Err(MetricError::NotAMetric(v));
        }
        Ok(FiniteMetricSpace {
            labels,
            dist: matrix.into_iter().flatten().collect(),
        })
    }

    /// Builds from a distance function the caller guarantees to be a metric.
    pub(crate) fn from_fn_unchecked(labels: Vec<String>, d: impl Fn(usize, usize) -> Rational) -> Self {
        let n = labels.len();
        let mut dist = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                dist.push(if i == j { Rational::zero() } else { d(i, j) });
            }
        }
        FiniteMetricSpace { labels, dist }
    }

    /// Distinct integers with the metric `|x - y|`, labelled by their decimal value.
    pub fn from_integers(values: &[u64]) -> Result<Self, MetricError> {
        let mut seen = BTreeSet::new();
        for v in values {
            if !seen.insert(*v) {
                return Err(MetricError::DuplicateLabel(v.to_string()));
            }
        }
        if values.iter().any(|&v| v > i64::MAX as u64) {
            return Err(MetricError::BadScale);
        }
        let labels = values.iter().map(|v| v.to_string()).collect();
        Ok(Self::from_fn_unchecked(labels, |i, j| {
            Rational::from_integer(values[i].abs_diff(values[j]) as i64)
        }))
    }

    /// The integer window `{1, ..., n}` with `|x - y|`.
    pub fn window(n: u64) -> Self {
        let values: Vec<u64> = (1..=n).collect();
        Self::from_integers(&values).expect("window points are distinct")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        self.dist.chunks(self.len().max(1)).map(|r| r.to_vec()).take(self.len()).collect()
    }

    pub fn classification(&self) -> Classification {
        classify(self)
    }

    pub fn is_ultrametric(&self) -> bool {
        self.classification() == Classification::Ultrametric
    }

    pub fn scale(&self) -> Scale {
        let n = self.len();
        Scale::collect((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.dist(i, j)))
    }

    fn check_subset(&self, subset: &[usize]) -> Result<(), MetricError> {
        if subset.is_empty() {
            return Err(MetricError::EmptySubset);
        }
        match subset.iter().find(|&&p| p >= self.len()) {
            Some(&p) => Err(MetricError::PointOutOfRange(p)),
            None => Ok(()),
        }
    }

    /// Induced subspace, points kept in the order given.
    pub fn restrict(&self, subset: &[usize]) -> Result<FiniteMetricSpace, MetricError> {
        self.check_subset(subset)?;
        let mut seen = BTreeSet::new();
        for &p in subset {
            if !seen.insert(p) {
                return Err(MetricError::DuplicateLabel(self.labels[p].clone()));
            }
        }
        let labels = subset.iter().map(|&p| self.labels[p].clone()).collect();
        Ok(Self::from_fn_unchecked(labels, |i, j| self.dist(subset[i], subset[j])))
    }

    /// `{d(a,b) : a in A, b in B, a != b}`; zero never appears.
    pub fn distance_set(&self, a: &[usize], b: &[usize]) -> Result<BTreeSet<Rational>, MetricError> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        let mut out = BTreeSet::new();
        for &x in a {
            for &y in b {
                if x != y {
                    out.insert(self.dist(x, y));
                }
            }
        }
        Ok(out)
    }

    /// Classes of `x ~ y iff d(x,y) <= r`. Only ultrametric spaces are accepted;
    /// the error names a triple breaking transitivity of `~r` when one exists,
    /// otherwise the first strong-triangle failure.
    pub fn r_equivalence(&self, r: Rational) -> Result<Partition, MetricError> {
        if let Classification::Metric {
            ultrametric_violation,
        } = self.classification()
        {
            let n = self.len();
            for x in 0..n {
                for y in x + 1..n {
                    if self.dist(x, y) <= r {
                        continue;
                    }
                    if let Some(via) =
                        (0..n).find(|&z| z != x && z != y && self.dist(x, z) <= r && self.dist(z, y) <= r)
                    {
                        return Err(MetricError::NotUltrametric(Triple { x, y, via }));
                    }
                }
            }
            return Err(MetricError::NotUltrametric(ultrametric_violation));
        }
        Ok(self.r_classes_unchecked(r, &(0..self.len()).collect::<Vec<_>>()))
    }

    /// `~r` classes of `points` (in their order), assuming the ultrametric inequality.
    pub(crate) fn r_classes_unchecked(&self, r: Rational, points: &[usize]) -> Partition {
        let mut assigned = BTreeSet::new();
        let mut blocks = Vec::new();
        for &p in points {
            if assigned.contains(&p) {
                continue;
            }
            let block: Vec<usize> = points
                .iter()
                .copied()
                .filter(|&q| !assigned.contains(&q) && self.dist(p, q) <= r)
                .collect();
            assigned.extend(block.iter().copied());
            blocks.push(block);
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    pub fn describe(&self, subset: &[usize]) -> String {
        let names: Vec<&str> = subset.iter().map(|&p| self.label(p)).collect();
        format!("{{{}}}", names.join(", "))
    }
}
