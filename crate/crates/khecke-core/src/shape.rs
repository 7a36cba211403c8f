//! Partitions, skew shapes, and compositions.
//!
//! Cells are addressed in matrix convention: `(row, col)`, both 1-indexed,
//! rows growing downward. A skew shape is a pair of partitions
//! `inner ⊆ outer`; a straight shape is a skew shape with empty inner part.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Errors raised while validating shapes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("partition parts must be positive (found 0 at index {0})")]
    ZeroPart(usize),
    #[error("partition parts must be weakly decreasing ({0} followed by {1})")]
    NotWeaklyDecreasing(u32, u32),
    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    InnerNotContained { inner: Partition, outer: Partition },
    #[error("composition parts must be positive (found 0 at index {0})")]
    ZeroCompositionPart(usize),
    #[error("descent set entry {entry} out of range for size {size}")]
    DescentOutOfRange { entry: usize, size: usize },
}

/// An integer partition: a weakly decreasing sequence of positive parts.
///
/// Serialized as a plain JSON array, e.g. `[3, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, rejecting zero or increasing parts.
    pub fn new(parts: Vec<u32>) -> Result<Self, ShapeError> {
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(ShapeError::ZeroPart(i));
            }
            if i > 0 && parts[i - 1] < p {
                return Err(ShapeError::NotWeaklyDecreasing(parts[i - 1], p));
            }
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Length of row `i` (1-indexed); zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// Whether `other` fits inside `self` row by row.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.row(i + 1) >= p)
    }

    /// Cells `(row, col)` in row-major order, 1-indexed.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// The partition obtained by sorting positive entries of `exponents`
    /// in weakly decreasing order.
    pub fn from_multiset(exponents: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = exponents.into_iter().filter(|&e| e > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// All partitions of `size`, in lexicographically decreasing order.
    pub fn all_of_size(size: usize) -> Vec<Partition> {
        fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            let mut p = max_part.min(remaining);
            while p >= 1 {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
                p -= 1;
            }
        }
        let mut out = Vec::new();
        rec(size as u32, size as u32, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = ShapeError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A skew shape `outer / inner` with `inner ⊆ outer`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        if !outer.contains(&inner) {
            return Err(ShapeError::InnerNotContained { inner, outer });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    /// Number of cells of the skew shape.
    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn num_rows(&self) -> usize {
        self.outer.len()
    }

    /// Columns occupied in row `i` (1-indexed): `inner_i + 1 ..= outer_i`.
    pub fn row_cols(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        (self.inner.row(i) as usize + 1)..=(self.outer.row(i) as usize)
    }

    /// Cells `(row, col)` in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for i in 1..=self.outer.len() {
            for j in self.row_cols(i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1
            && col >= 1
            && col <= self.outer.row(row) as usize
            && col > self.inner.row(row) as usize
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl fmt::Debug for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The direct sum `lambda ⊕ mu`: `lambda` in the lower left, `mu` in the
/// upper right, placed corner to corner inside the smallest containing
/// rectangle so the two blocks share no row or column.
pub fn direct_sum_shape(lambda: &Partition, mu: &Partition) -> SkewShape {
    let l1 = lambda.row(1);
    let mut outer = Vec::with_capacity(lambda.len() + mu.len());
    let mut inner = Vec::with_capacity(mu.len());
    for &m in mu.parts() {
        outer.push(l1 + m);
        if l1 > 0 {
            inner.push(l1);
        }
    }
    outer.extend_from_slice(lambda.parts());
    let outer = Partition::new(outer).expect("direct sum outer shape is a partition");
    let inner = Partition::new(inner).expect("direct sum inner shape is a partition");
    SkewShape::new(outer, inner).expect("direct sum inner fits in outer")
}

/// A composition: an ordered sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ShapeError> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(ShapeError::ZeroCompositionPart(i));
        }
        Ok(Composition { parts })
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// The subset of `{1, …, size-1}` of partial sums: the positions at
    /// which a sequence with this descent composition descends.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut acc = 0usize;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p as usize;
            out.insert(acc);
        }
        out
    }

    /// Inverse of [`Composition::descent_set`]: the composition of `size`
    /// whose partial sums are exactly `set`.
    pub fn from_descent_set(set: &BTreeSet<usize>, size: usize) -> Result<Self, ShapeError> {
        if size == 0 {
            return if set.is_empty() {
                Ok(Composition::empty())
            } else {
                Err(ShapeError::DescentOutOfRange {
                    entry: *set.iter().next().unwrap(),
                    size,
                })
            };
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0usize;
        for &s in set {
            if s == 0 || s >= size {
                return Err(ShapeError::DescentOutOfRange { entry: s, size });
            }
            parts.push((s - prev) as u32);
            prev = s;
        }
        parts.push((size - prev) as u32);
        Composition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = ShapeError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Vec<u32> {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
