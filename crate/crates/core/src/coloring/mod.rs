//! Isometric colorings and the exact searches run over them.
//!
//! An isometric coloring has two faces: a [`ScaleMap`] assigning a color to
//! every scale value, and the [`PairColoring`] it induces on `[X]^2`.

use alloc::vec;
use alloc::vec::Vec;

use crate::metric::{FiniteMetricSpace, Metric, Rational, Scale};

mod clique;
mod family;
pub(crate) mod sequence;

pub use clique::{find_max_equidistance, max_monochrome, Equidistance, Monochrome};
pub use family::{
    check_separation, family_coloring, family_scale_map, lift_coloring, lift_scale_map, pushforward,
    FamilyError, SeparatedFamily, SeparationFailure, SeparationLevel,
};
pub use sequence::{canonical_sequence, CanonicalSequence, SequenceKind, DEFAULT_SEQUENCE_BUDGET};

/// A color in `{0, 1}`.
pub type Color = u8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("color {0} is not 0 or 1")]
    BadColor(u8),
    #[error("{colors} colors for a scale of {scale} values")]
    LengthMismatch { scale: usize, colors: usize },
    #[error("scale map domain differs from the scale of the space")]
    DomainMismatch,
    #[error("coloring covers {coloring} points, space has {space}")]
    SizeMismatch { coloring: usize, space: usize },
    #[error("pair ({0}, {1}) is not a pair of distinct points in range")]
    BadPair(usize, usize),
    #[error("pair ({0}, {1}) colored twice")]
    DuplicatePair(usize, usize),
    #[error("pair ({0}, {1}) has no color")]
    MissingPair(usize, usize),
}

/// Total map from a scale to `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScaleMap {
    scale: Scale,
    colors: Vec<Color>,
}

impl ScaleMap {
    pub fn new(scale: Scale, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if colors.len() != scale.len() {
            return Err(ColoringError::LengthMismatch {
                scale: scale.len(),
                colors: colors.len(),
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c > 1) {
            return Err(ColoringError::BadColor(c));
        }
        Ok(ScaleMap { scale, colors })
    }

    pub fn constant(scale: Scale, color: Color) -> Self {
        let colors = vec![color & 1; scale.len()];
        ScaleMap { scale, colors }
    }

    pub fn from_fn(scale: Scale, f: impl Fn(Rational) -> Color) -> Self {
        let colors = scale.values().iter().map(|&r| f(r) & 1).collect();
        ScaleMap { scale, colors }
    }

    /// Map number `bits` in the enumeration of all `2^|scale|` maps: bit `i`
    /// is the color of the `i`-th smallest value.
    pub fn from_bits(scale: Scale, bits: u64) -> Self {
        let colors = (0..scale.len()).map(|i| ((bits >> i) & 1) as Color).collect();
        ScaleMap { scale, colors }
    }

    /// Every map on `scale`, in `from_bits` order.
    pub fn all(scale: &Scale) -> impl Iterator<Item = ScaleMap> + '_ {
        assert!(scale.len() < 64, "scale too large to enumerate");
        (0..1u64 << scale.len()).map(move |bits| ScaleMap::from_bits(scale.clone(), bits))
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_of(&self, r: Rational) -> Option<Color> {
        self.scale.position(r).map(|i| self.colors[i])
    }

    /// Restriction to a sub-scale.
    pub fn restrict(&self, scale: &Scale) -> Option<ScaleMap> {
        let colors = scale
            .values()
            .iter()
            .map(|&r| self.color_of(r))
            .collect::<Option<Vec<_>>>()?;
        Some(ScaleMap {
            scale: scale.clone(),
            colors,
        })
    }
}

/// Total 2-coloring of the pairs of `n` points, stored as an upper triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairColoring {
    n: usize,
    colors: Vec<Color>,
}

impl PairColoring {
    pub fn constant(n: usize, color: Color) -> Self {
        PairColoring {
            n,
            colors: vec![color & 1; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Color) -> Self {
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                colors.push(f(i, j) & 1);
            }
        }
        PairColoring { n, colors }
    }

    /// Builds from `(i, j, color)` triples, requiring every pair exactly once.
    pub fn from_triples(n: usize, triples: &[(usize, usize, Color)]) -> Result<Self, ColoringError> {
        let mut slots: Vec<Option<Color>> = vec![None; n * n.saturating_sub(1) / 2];
        for &(a, b, c) in triples {
            if a == b || a >= n || b >= n {
                return Err(ColoringError::BadPair(a, b));
            }
            if c > 1 {
                return Err(ColoringError::BadColor(c));
            }
            let (i, j) = (a.min(b), a.max(b));
            let slot = &mut slots[Self::slot(n, i, j)];
            if slot.is_some() {
                return Err(ColoringError::DuplicatePair(i, j));
            }
            *slot = Some(c);
        }
        let mut colors = Vec::with_capacity(slots.len());
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                colors.push(slots[k].ok_or(ColoringError::MissingPair(i, j))?);
                k += 1;
            }
        }
        Ok(PairColoring { n, colors })
    }

    #[inline]
    fn slot(n: usize, i: usize, j: usize) -> usize {
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Color {
        debug_assert!(a != b);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.colors[Self::slot(self.n, i, j)]
    }

    pub fn set(&mut self, a: usize, b: usize, color: Color) {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.colors[Self::slot(self.n, i, j)] = color & 1;
    }

    /// `(i, j, color)` for every `i < j`, in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    /// Coloring induced on `subset` (renumbered `0..subset.len()`).
    pub fn restrict(&self, subset: &[usize]) -> PairColoring {
        PairColoring::from_fn(subset.len(), |i, j| self.get(subset[i], subset[j]))
    }

    /// Common color of all pairs inside `subset`; `Some(0)` for sets with fewer
    /// than two points.
    pub fn monochrome_color(&self, subset: &[usize]) -> Option<Color> {
        let mut color = None;
        for (k, &a) in subset.iter().enumerate() {
            for &b in &subset[k + 1..] {
                let c = self.get(a, b);
                match color {
                    None => color = Some(c),
                    Some(prev) if prev != c => return None,
                    _ => {}
                }
            }
        }
        Some(color.unwrap_or(0))
    }

    pub fn is_monochrome(&self, subset: &[usize]) -> bool {
        self.monochrome_color(subset).is_some()
    }
}

/// `chi({x,y}) = f(d(x,y))`.
pub fn induce_coloring(space: &FiniteMetricSpace, map: &ScaleMap) -> Result<PairColoring, ColoringError> {
    if space.scale() != *map.scale() {
        return Err(ColoringError::DomainMismatch);
    }
    Ok(induce_unchecked(space, map))
}

/// Same as [`induce_coloring`] but only requires the space's scale to be a
/// subset of the map's domain.
pub(crate) fn induce_unchecked<M: Metric>(space: &M, map: &ScaleMap) -> PairColoring {
    PairColoring::from_fn(space.len(), |i, j| {
        map.color_of(space.dist(i, j))
            .expect("distance outside the scale map's domain")
    })
}

/// Outcome of [`recognize_isometric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isometry {
    Isometric(ScaleMap),
    /// Two pairs at the same distance with different colors.
    Violation {
        first: (usize, usize),
        second: (usize, usize),
        distance: Rational,
    },
}

/// Recovers the scale map a coloring factors through, or exhibits two
/// equidistant pairs colored differently.
pub fn recognize_isometric(space: &FiniteMetricSpace, chi: &PairColoring) -> Result<Isometry, ColoringError> {
    if chi.points() != space.len() {
        return Err(ColoringError::SizeMismatch {
            coloring: chi.points(),
            space: space.len(),
        });
    }
    let scale = space.scale();
    let mut seen: Vec<Option<((usize, usize), Color)>> = vec![None; scale.len()];
    for (i, j, c) in chi.triples() {
        let r = space.dist(i, j);
        let k = scale.position(r).expect("distance in own scale");
        match seen[k] {
            None => seen[k] = Some(((i, j), c)),
            Some((first, prev)) if prev != c => {
                return Ok(Isometry::Violation {
                    first,
                    second: (i, j),
                    distance: r,
                })
            }
            Some(_) => {}
        }
    }
    let colors = seen.into_iter().map(|s| s.map_or(0, |(_, c)| c)).collect();
    Ok(Isometry::Isometric(ScaleMap { scale, colors }))
}
