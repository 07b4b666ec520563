//! Young diagrams (integer partitions) and the column-wise dot-action.
//!
//! Partitions are stored as weakly decreasing part vectors without trailing
//! zeros, so every diagram has exactly one representation and derived
//! equality is structural equality.  The canonical order used everywhere in
//! this crate is "smaller size first, then lexicographic on parts"; it
//! refines inclusion of diagrams, which downstream code relies on when it
//! walks a window from small members to large ones.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// An integer partition λ₁ ≥ λ₂ ≥ … ≥ λₖ ≥ 1, possibly empty.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty diagram.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from a weakly decreasing sequence.  Trailing zeros
    /// are stripped; an increasing step anywhere is an error.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self, Error> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Parts of the partition, without trailing zeros.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Row `i` (0-based), zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// Length of the first row.
    pub fn width(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Whether `self` fits inside `other` row by row.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.parts.iter().enumerate().all(|(i, &p)| p <= other.part(i))
    }

    /// Whether the diagram fits in a `height × width` box.
    pub fn fits_in_box(&self, height: usize, width: u32) -> bool {
        self.height() <= height && self.width() <= width
    }

    /// The conjugate (transposed) diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.width() as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: cols }
    }

    /// Column heights padded to exactly `n` entries.
    pub fn column_heights(&self, n: usize) -> Vec<u32> {
        let mut cols: Vec<u32> = self.conjugate().parts;
        cols.resize(n.max(cols.len()), 0);
        cols
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Canonical order: by size, then lexicographically on the part vectors.
/// λ ⊂ μ implies λ < μ, so sorting by this order refines inclusion.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions with at most `height` rows and parts at most `width`, in
/// canonical order.  The count is the binomial coefficient
/// `C(height + width, width)`.
pub fn enumerate_box(height: usize, width: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, rows_left: usize, max_part: u32) {
        out.push(current.clone());
        if rows_left == 0 {
            return;
        }
        for p in 1..=max_part {
            current.push(p);
            rec(out, current, rows_left - 1, p);
            current.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut current, height, width);
    for parts in raw {
        out.push(Partition { parts });
    }
    out.sort();
    out
}

/// The binomial coefficient C(n, k), exact in u64.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(r).expect("binomial overflow")
}

/// All partitions of exactly `n` boxes, in canonical order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, remaining: u32, max_part: u32) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            current.push(p);
            rec(out, current, remaining - p, p);
            current.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut current, n, n);
    for parts in raw {
        out.push(Partition { parts });
    }
    out.sort();
    out
}

/// Outcome of the column-wise dot-action: either the weight is singular, or
/// it sorts to a diagram with a well-defined permutation length.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum SigmaBulletResult {
    /// Two column values collided; the cohomology it models vanishes.
    Singular,
    /// Sorted outcome: the resulting diagram and the sorting-permutation
    /// length (number of transpositions = inversion count).
    Regular { diagram: Partition, length: usize },
}

/// The column-wise dot-action on a diagram `nu` of width < `d`:
///
/// 1. set column `d` of `nu` to `column_height`,
/// 2. add `(d, d−1, …, 1)` to the column heights,
/// 3. if two values tie the result is singular; otherwise sort strictly
///    decreasing and count the inversions,
/// 4. subtract `(d, d−1, …, 1)` and read the columns back as a diagram.
///
/// The permutation length is at most `d(d−1)/2`, and the outcome agrees with
/// the generic row-convention dot-action applied to the raw column vector
/// (the constant shift between the two rho vectors cancels).
pub fn sigma_bullet(nu: &Partition, d: usize, column_height: u32) -> Result<SigmaBulletResult, Error> {
    if d == 0 {
        return Err(Error::InvalidArgument("sigma_bullet requires d >= 1".into()));
    }
    if nu.width() as usize >= d {
        return Err(Error::InvalidArgument(format!(
            "sigma_bullet requires width({nu}) < d = {d}"
        )));
    }
    if column_height as usize > d {
        return Err(Error::InvalidArgument(format!(
            "column_height {column_height} exceeds d = {d}"
        )));
    }
    let mut cols: Vec<i64> = nu.column_heights(d).iter().map(|&c| i64::from(c)).collect();
    cols.truncate(d);
    cols[d - 1] = i64::from(column_height);
    // Add (d, d-1, ..., 1) columnwise.
    for (i, c) in cols.iter_mut().enumerate() {
        *c += (d - i) as i64;
    }
    // Ties mean the dotted weight is fixed by a reflection.
    let mut sorted = cols.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(SigmaBulletResult::Singular);
    }
    let length = count_inversions_desc(&cols);
    // Subtract (d, d-1, ..., 1); the result is weakly decreasing and >= 0.
    let heights: Vec<u32> = sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| (v - (d - i) as i64) as u32)
        .collect();
    let mut rows = vec![0u32; heights.first().copied().unwrap_or(0) as usize];
    for &h in &heights {
        for r in rows.iter_mut().take(h as usize) {
            *r += 1;
        }
    }
    Ok(SigmaBulletResult::Regular {
        diagram: Partition { parts: rows },
        length,
    })
}

/// Number of pairs out of order relative to strictly decreasing.
pub(crate) fn count_inversions_desc(values: &[i64]) -> usize {
    let mut inv = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] < values[j] {
                inv += 1;
            }
        }
    }
    inv
}
