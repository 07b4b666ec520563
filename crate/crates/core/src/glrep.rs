//! Rational representations of general linear groups at the character level.
//!
//! A dominant weight is a weakly decreasing integer vector of a fixed rank;
//! entries may be negative (dual directions).  Virtual representations are
//! finite integer combinations of dominant weights.  Products are computed
//! with the Littlewood–Richardson rule after shifting both factors into the
//! polynomial range by determinant powers, so arbitrary rational weights are
//! supported exactly.
//!
//! All multiplicity arithmetic is checked; an overflow aborts rather than
//! wrapping, because every verification in this crate leans on these counts.

use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::error::Error;
use crate::partitions::Partition;

/// A weakly decreasing integer vector; the highest weight of an irreducible
/// rational representation of GL(rank).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct DominantWeight {
    entries: Vec<i64>,
}

impl DominantWeight {
    pub fn new(entries: impl Into<Vec<i64>>) -> Result<Self, Error> {
        let entries = entries.into();
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!("{entries:?} is not weakly decreasing")));
        }
        Ok(DominantWeight { entries })
    }

    /// The zero weight (trivial representation) of the given rank.
    pub fn zero(rank: usize) -> Self {
        DominantWeight { entries: vec![0; rank] }
    }

    /// A partition read as a polynomial weight of the given rank.  Fails if
    /// the diagram has more than `rank` rows.
    pub fn from_partition(p: &Partition, rank: usize) -> Result<Self, Error> {
        if p.height() > rank {
            return Err(Error::RankMismatch(format!(
                "partition {p} has {} rows, rank is {rank}",
                p.height()
            )));
        }
        let mut entries: Vec<i64> = p.parts().iter().map(|&x| i64::from(x)).collect();
        entries.resize(rank, 0);
        Ok(DominantWeight { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// All entries nonnegative, i.e. the weight of a polynomial functor.
    pub fn is_polynomial(&self) -> bool {
        self.entries.last().map_or(true, |&e| e >= 0)
    }

    /// Reads a polynomial weight back as a partition.
    pub fn to_partition(&self) -> Result<Partition, Error> {
        if !self.is_polynomial() {
            return Err(Error::InvalidWeight(format!("{self:?} has negative entries")));
        }
        Partition::new(self.entries.iter().map(|&e| e as u32).collect::<Vec<_>>())
    }

    /// Highest weight of the dual representation: reverse and negate.
    /// Reversing a weakly decreasing vector and negating every entry keeps
    /// it weakly decreasing, so no re-validation is needed.
    pub fn dual(&self) -> DominantWeight {
        DominantWeight {
            entries: self.entries.iter().rev().map(|&e| -e).collect(),
        }
    }

    /// Sum of the entries: the weight's degree under the central torus.
    pub fn degree(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Tensor by the k-th power of the determinant character.
    pub fn twist(&self, k: i64) -> DominantWeight {
        DominantWeight {
            entries: self.entries.iter().map(|&e| e + k).collect(),
        }
    }

    /// Dimension by the Weyl formula: prod_{i<j} (a_i - a_j + j - i)/(j - i).
    pub fn dimension(&self) -> u64 {
        let n = self.entries.len();
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for i in 0..n {
            for j in i + 1..n {
                num = num
                    .checked_mul(self.entries[i] as i128 - self.entries[j] as i128 + (j - i) as i128)
                    .expect("dimension numerator overflow");
                den = den.checked_mul((j - i) as i128).expect("dimension denominator overflow");
                let g = gcd(num.unsigned_abs(), den.unsigned_abs());
                if g > 1 {
                    num /= g as i128;
                    den /= g as i128;
                }
            }
        }
        debug_assert_eq!(den, 1, "Weyl dimension must be an integer");
        u64::try_from(num / den).expect("dimension does not fit in u64")
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A finite integer combination of dominant weights of a common rank.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VirtualRep {
    rank: usize,
    terms: BTreeMap<DominantWeight, i64>,
}

impl VirtualRep {
    pub fn zero(rank: usize) -> Self {
        VirtualRep { rank, terms: BTreeMap::new() }
    }

    pub fn single(weight: DominantWeight, mult: i64) -> Self {
        let mut v = VirtualRep::zero(weight.rank());
        v.add_term(weight, mult);
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DominantWeight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn multiplicity(&self, weight: &DominantWeight) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, weight: DominantWeight, mult: i64) {
        assert_eq!(weight.rank(), self.rank, "rank mismatch in add_term");
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(weight).or_insert(0);
        *entry = entry.checked_add(mult).expect("multiplicity overflow");
        if *entry == 0 {
            let key = self
                .terms
                .iter()
                .find(|(_, &m)| m == 0)
                .map(|(w, _)| w.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn add(&mut self, other: &VirtualRep) {
        assert_eq!(self.rank, other.rank, "rank mismatch in add");
        for (w, m) in other.terms() {
            self.add_term(w.clone(), m);
        }
    }

    pub fn scale(&mut self, factor: i64) {
        if factor == 0 {
            self.terms.clear();
            return;
        }
        for m in self.terms.values_mut() {
            *m = m.checked_mul(factor).expect("multiplicity overflow");
        }
    }

    /// Signed dimension: sum of multiplicity times Weyl dimension.
    pub fn dimension(&self) -> i64 {
        let mut total: i128 = 0;
        for (w, m) in self.terms() {
            total += (m as i128) * (w.dimension() as i128);
        }
        i64::try_from(total).expect("dimension overflow")
    }

    /// Tensor product, extended bilinearly from `tensor_decompose`.
    pub fn tensor(&self, other: &VirtualRep) -> VirtualRep {
        assert_eq!(self.rank, other.rank, "rank mismatch in tensor");
        let mut out = VirtualRep::zero(self.rank);
        for (a, ma) in self.terms() {
            for (b, mb) in other.terms() {
                let prod = tensor_decompose(a, b).expect("ranks already checked");
                let coeff = ma.checked_mul(mb).expect("multiplicity overflow");
                for (w, m) in prod.terms() {
                    out.add_term(w.clone(), m.checked_mul(coeff).expect("multiplicity overflow"));
                }
            }
        }
        out
    }
}

/// Littlewood–Richardson coefficients: the decomposition of the product of
/// two Schur functions, `s_lambda * s_mu = sum_nu c^nu (s_nu)`.
///
/// Implementation: depth-first search over chains of horizontal strips, one
/// strip per row of `mu`, with the lattice condition enforced as the prefix
/// inequality "entries `i` in rows `1..=r` never exceed entries `i−1` in
/// rows `1..r`".  Results are cached process-wide; the cache is a pure
/// memo and never alters a result.
pub fn lr_coefficients(lambda: &Partition, mu: &Partition) -> Arc<BTreeMap<Partition, u64>> {
    static CACHE: RwLock<Option<HashMap<(Partition, Partition), Arc<BTreeMap<Partition, u64>>>>> =
        RwLock::new(None);

    let key = (lambda.clone(), mu.clone());
    if let Some(cache) = CACHE.read().unwrap().as_ref() {
        if let Some(hit) = cache.get(&key) {
            return Arc::clone(hit);
        }
    }
    let result = Arc::new(lr_compute(lambda, mu));
    let mut guard = CACHE.write().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .entry(key)
        .or_insert_with(|| Arc::clone(&result));
    result
}

fn lr_compute(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if mu.is_empty() {
        out.insert(lambda.clone(), 1);
        return out;
    }
    // Any component of the product fits in height(lambda) + height(mu) rows.
    let rows = lambda.height() + mu.height();
    let mut search = LrSearch {
        mu,
        rows,
        shape: (0..rows).map(|i| lambda.part(i)).collect(),
        out,
    };
    search.strip(0, None);
    search.out
}

struct LrSearch<'a> {
    mu: &'a Partition,
    rows: usize,
    shape: Vec<u32>,
    out: BTreeMap<Partition, u64>,
}

impl LrSearch<'_> {
    /// Adds the horizontal strip of entry `e` in all admissible ways.
    /// `prev_counts[r]` is how many cells of entry `e - 1` sit in row `r`
    /// (`None` for the first entry, which is unconstrained).
    fn strip(&mut self, e: usize, prev_counts: Option<&[u32]>) {
        let before = self.shape.clone();
        let mut cur = vec![0u32; self.rows];
        self.place(e, 0, self.mu.part(e), &before, prev_counts, &mut cur, 0, 0);
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &mut self,
        e: usize,
        row: usize,
        left: u32,
        before: &[u32],
        prev_counts: Option<&[u32]>,
        cur: &mut Vec<u32>,
        placed: u32,
        prev_prefix: u32,
    ) {
        if left == 0 {
            if e + 1 < self.mu.height() {
                let snapshot = cur.clone();
                self.strip(e + 1, Some(&snapshot));
            } else {
                let p = Partition::new(self.shape.clone()).expect("shapes stay partitions");
                *self.out.entry(p).or_insert(0) += 1;
            }
            return;
        }
        if row >= self.rows {
            return;
        }
        // Cap on cells of entry `e` in this row:
        //  - horizontal strip against the shape before this strip started,
        //  - ballot reading: entries `e` in rows 0..=row may not outnumber
        //    entries `e - 1` in rows 0..row.
        let cap_strip = if row == 0 { left } else { before[row - 1] - before[row] };
        let cap_lattice = match prev_counts {
            None => left,
            Some(_) => prev_prefix.saturating_sub(placed),
        };
        let cap = left.min(cap_strip).min(cap_lattice);
        let next_prev_prefix = prev_prefix + prev_counts.map_or(0, |p| p[row]);
        for c in 0..=cap {
            self.shape[row] += c;
            cur[row] = c;
            self.place(e, row + 1, left - c, before, prev_counts, cur, placed + c, next_prev_prefix);
            self.shape[row] -= c;
            cur[row] = 0;
        }
    }
}

/// Decomposes the tensor product of two irreducibles with arbitrary
/// (possibly negative) dominant weights of a common rank.  Both factors are
/// shifted into the polynomial range by determinant powers, multiplied with
/// the Littlewood–Richardson rule, restricted to diagrams of height at most
/// the rank, and shifted back.
pub fn tensor_decompose(a: &DominantWeight, b: &DominantWeight) -> Result<VirtualRep, Error> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(format!(
            "tensor_decompose: ranks {} and {}",
            a.rank(),
            b.rank()
        )));
    }
    let n = a.rank();
    let shift_a = -a.entries().last().copied().unwrap_or(0).min(0);
    let shift_b = -b.entries().last().copied().unwrap_or(0).min(0);
    let pa = a.twist(shift_a).to_partition().expect("shifted weight is polynomial");
    let pb = b.twist(shift_b).to_partition().expect("shifted weight is polynomial");
    let mut out = VirtualRep::zero(n);
    for (nu, &mult) in lr_coefficients(&pa, &pb).iter() {
        if nu.height() > n {
            continue;
        }
        let w = DominantWeight::from_partition(nu, n)
            .expect("height checked")
            .twist(-(shift_a + shift_b));
        out.add_term(w, i64::try_from(mult).expect("multiplicity overflow"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn w(entries: &[i64]) -> DominantWeight {
        DominantWeight::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn weyl_dimension_examples() {
        // Rank 3, weight (2,1,0): the adjoint-adjacent example of dimension 8.
        assert_eq!(w(&[2, 1, 0]).dimension(), 8);
        assert_eq!(w(&[0, 0, 0]).dimension(), 1);
        assert_eq!(w(&[1, 0, 0]).dimension(), 3);
        assert_eq!(w(&[0, 0, -1]).dimension(), 3);
        // Sym^2 of rank 4 has dimension 10, wedge^2 has 6.
        assert_eq!(w(&[2, 0, 0, 0]).dimension(), 10);
        assert_eq!(w(&[1, 1, 0, 0]).dimension(), 6);
        // Dimension is invariant under determinant twists.
        assert_eq!(w(&[3, 1, -2]).dimension(), w(&[5, 3, 0]).dimension());
    }

    #[test]
    fn dual_reverses_and_negates() {
        assert_eq!(w(&[2, 1, 0]).dual(), w(&[0, -1, -2]));
        assert_eq!(w(&[1, -1]).dual(), w(&[1, -1]));
        let x = w(&[4, 2, 1, -3]);
        assert_eq!(x.dual().dual(), x);
        assert_eq!(x.dual().dimension(), x.dimension());
    }

    #[test]
    fn lr_single_box_is_pieri() {
        let c = lr_coefficients(&p(&[2, 1]), &p(&[1]));
        let expected: Vec<(Partition, u64)> =
            vec![(p(&[2, 1, 1]), 1), (p(&[2, 2]), 1), (p(&[3, 1]), 1)];
        assert_eq!(c.iter().map(|(a, &b)| (a.clone(), b)).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn lr_first_nontrivial_coefficient() {
        // c^{(3,2,1)}_{(2,1),(2,1)} = 2 is the smallest coefficient above 1.
        let c = lr_coefficients(&p(&[2, 1]), &p(&[2, 1]));
        assert_eq!(c.get(&p(&[3, 2, 1])).copied(), Some(2));
        assert_eq!(c.get(&p(&[4, 2])).copied(), Some(1));
        assert_eq!(c.get(&p(&[2, 2, 1, 1])).copied(), Some(1));
        let total: u64 = c.values().sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn lr_is_symmetric_and_size_additive() {
        let small: Vec<Partition> = (0..=4).flat_map(partitions_of).collect();
        for lam in &small {
            for mu in &small {
                let ab = lr_coefficients(lam, mu);
                let ba = lr_coefficients(mu, lam);
                assert_eq!(*ab, *ba, "symmetry failed at {lam}, {mu}");
                for nu in ab.keys() {
                    assert_eq!(nu.size(), lam.size() + mu.size());
                    assert!(lam.contained_in(nu) && mu.contained_in(nu));
                }
            }
        }
    }

    #[test]
    fn lr_dimension_sum_oracle() {
        // Summing multiplicities times Weyl dimensions must reproduce the
        // product of dimensions, for every GL(n) with n in 3..=4.
        let small: Vec<Partition> = (0..=5).flat_map(partitions_of).collect();
        for n in 3..=4usize {
            for lam in small.iter().filter(|l| l.height() <= n) {
                for mu in small.iter().filter(|m| m.height() <= n) {
                    let a = DominantWeight::from_partition(lam, n).unwrap();
                    let b = DominantWeight::from_partition(mu, n).unwrap();
                    let product = tensor_decompose(&a, &b).unwrap();
                    assert_eq!(
                        product.dimension(),
                        (a.dimension() * b.dimension()) as i64,
                        "dimension mismatch for {lam} x {mu} at rank {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_decompose_with_negative_entries() {
        // Rank 2: (1,0) ⊗ (0,−1) = (1,−1) + (0,0).
        let product = tensor_decompose(&w(&[1, 0]), &w(&[0, -1])).unwrap();
        let mut expected = VirtualRep::zero(2);
        expected.add_term(w(&[1, -1]), 1);
        expected.add_term(w(&[0, 0]), 1);
        assert_eq!(product, expected);
    }

    #[test]
    fn tensor_respects_determinant_twists() {
        let a = w(&[2, 0, -1]);
        let b = w(&[1, 1, -2]);
        let direct = tensor_decompose(&a, &b).unwrap();
        let twisted = tensor_decompose(&a.twist(3), &b.twist(-1)).unwrap();
        let mut shifted = VirtualRep::zero(3);
        for (weight, m) in twisted.terms() {
            shifted.add_term(weight.twist(-2), m);
        }
        assert_eq!(direct, shifted);
    }

    #[test]
    fn complement_identity_in_boxes() {
        // Inside an h x w box, duals shifted by det^w are exactly the
        // reversed complements (w - lam_h, ..., w - lam_1).
        for h in 1..=4usize {
            for wd in 1..=4u32 {
                for lam in crate::partitions::enumerate_box(h, wd) {
                    let a = DominantWeight::from_partition(&lam, h).unwrap();
                    let complement: Vec<i64> = (0..h)
                        .map(|i| i64::from(wd) - i64::from(lam.part(h - 1 - i)))
                        .collect();
                    assert_eq!(a.dual().twist(i64::from(wd)), w(&complement));
                }
            }
        }
    }
}
