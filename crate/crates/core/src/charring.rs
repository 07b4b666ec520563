//! Graded virtual characters of products of general linear groups.
//!
//! A `GradedMultiCharacter` stores, per polynomial degree, integer
//! multiplicities of tuples of dominant weights — one weight per group slot.
//! The standard profile has three slots (V, W, W′), which is the shape every
//! verification reports in; intermediate identities (e.g. splitting W as
//! S ⊕ Q inside the Koszul check) use profiles with other slot counts, so
//! the profile is a list of ranks rather than a fixed triple.
//!
//! Symmetric and exterior algebras of Hom-spaces are produced by the Cauchy
//! formula: Sym(A⊗B) = ⊕_μ S_μ(A)⊗S_μ(B) and Λⁱ(A⊗B) = ⊕_{|λ|=i}
//! S_λ(A)⊗S_{λ′}(B).  Duals are folded into weight signs, never flags.
//!
//! Every character carries an explicit degree cutoff; no operation extends
//! it.  Products take the minimum of the operands' cutoffs, which keeps the
//! degree filtration sound: a truncated layer is always the complete layer.

use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::error::Error;
use crate::glrep::{tensor_decompose, DominantWeight};
use crate::partitions::{enumerate_box, Partition};

/// Ranks of the general linear groups acting on a character.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupProfile {
    ranks: Vec<usize>,
}

impl GroupProfile {
    /// The three-slot profile GL(V) × GL(W) × GL(W′) with ranks (d, m, m′).
    /// Requires d ≥ 1 and m, m′ ≥ d, the standing dimension assumption.
    pub fn standard(d: usize, m: usize, mprime: usize) -> Result<Self, Error> {
        if d < 1 || m < d || mprime < d {
            return Err(Error::InvalidArgument(format!(
                "profile ({d}, {m}, {mprime}) violates d >= 1, m >= d, m' >= d"
            )));
        }
        Ok(GroupProfile { ranks: vec![d, m, mprime] })
    }

    /// A profile with arbitrary slots, for intermediate identities.
    pub fn custom(ranks: Vec<usize>) -> Self {
        GroupProfile { ranks }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn slot_count(&self) -> usize {
        self.ranks.len()
    }

    pub fn rank(&self, slot: usize) -> usize {
        self.ranks[slot]
    }

    /// The profile with one slot removed (for invariant extraction).
    pub fn without_slot(&self, slot: usize) -> GroupProfile {
        let mut ranks = self.ranks.clone();
        ranks.remove(slot);
        GroupProfile { ranks }
    }

    fn trivial_tuple(&self) -> Vec<DominantWeight> {
        self.ranks.iter().map(|&r| DominantWeight::zero(r)).collect()
    }
}

/// One tensor factor of a Hom-space: a profile slot, possibly dualized.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SlotFactor {
    pub slot: usize,
    pub dual: bool,
}

impl SlotFactor {
    pub fn plain(slot: usize) -> Self {
        SlotFactor { slot, dual: false }
    }

    pub fn dualized(slot: usize) -> Self {
        SlotFactor { slot, dual: true }
    }

    fn weight(&self, mu: &Partition, rank: usize) -> Result<DominantWeight, Error> {
        let w = DominantWeight::from_partition(mu, rank)?;
        Ok(if self.dual { w.dual() } else { w })
    }
}

/// A degree-indexed integer combination of weight tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMultiCharacter {
    profile: GroupProfile,
    cutoff: i64,
    layers: BTreeMap<i64, BTreeMap<Vec<DominantWeight>, i64>>,
}

impl GradedMultiCharacter {
    pub fn zero(profile: GroupProfile, cutoff: i64) -> Self {
        GradedMultiCharacter { profile, cutoff, layers: BTreeMap::new() }
    }

    /// The multiplicative unit: the trivial tuple in degree 0.
    pub fn unit(profile: GroupProfile, cutoff: i64) -> Self {
        let tuple = profile.trivial_tuple();
        let mut c = GradedMultiCharacter::zero(profile, cutoff);
        c.add_term(0, tuple, 1);
        c
    }

    pub fn profile(&self) -> &GroupProfile {
        &self.profile
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layer(&self, degree: i64) -> Option<&BTreeMap<Vec<DominantWeight>, i64>> {
        self.layers.get(&degree)
    }

    pub fn layers(&self) -> impl Iterator<Item = (i64, &BTreeMap<Vec<DominantWeight>, i64>)> {
        self.layers.iter().map(|(&d, l)| (d, l))
    }

    pub fn multiplicity(&self, degree: i64, weights: &[DominantWeight]) -> i64 {
        self.layers
            .get(&degree)
            .and_then(|l| l.get(weights))
            .copied()
            .unwrap_or(0)
    }

    /// Multiplicity of the all-trivial tuple in the given degree.
    pub fn trivial_multiplicity(&self, degree: i64) -> i64 {
        self.multiplicity(degree, &self.profile.trivial_tuple())
    }

    /// Adds one term.  Terms beyond the cutoff are dropped: the cutoff is
    /// the truncation contract, not an error condition.  Rank mismatches
    /// are programming errors and panic.
    pub fn add_term(&mut self, degree: i64, weights: Vec<DominantWeight>, mult: i64) {
        assert_eq!(weights.len(), self.profile.slot_count(), "slot count mismatch");
        for (w, &r) in weights.iter().zip(self.profile.ranks()) {
            assert_eq!(w.rank(), r, "slot rank mismatch");
        }
        if mult == 0 || degree > self.cutoff {
            return;
        }
        let layer = self.layers.entry(degree).or_default();
        let entry = layer.entry(weights.clone()).or_insert(0);
        *entry = entry.checked_add(mult).expect("multiplicity overflow");
        if *entry == 0 {
            layer.remove(&weights);
            if layer.is_empty() {
                self.layers.remove(&degree);
            }
        }
    }

    /// Sum of characters.  The result's cutoff is the minimum of the two;
    /// layers beyond it are discarded so the truncation stays sound.
    pub fn add(&mut self, other: &GradedMultiCharacter) -> Result<(), Error> {
        if self.profile != other.profile {
            return Err(Error::ProfileMismatch(format!(
                "{:?} vs {:?}",
                self.profile, other.profile
            )));
        }
        let cutoff = self.cutoff.min(other.cutoff);
        self.cutoff = cutoff;
        self.layers.retain(|&d, _| d <= cutoff);
        for (d, layer) in other.layers() {
            if d > cutoff {
                continue;
            }
            for (tuple, &m) in layer {
                self.add_term(d, tuple.clone(), m);
            }
        }
        Ok(())
    }

    pub fn scale(&mut self, factor: i64) {
        if factor == 0 {
            self.layers.clear();
            return;
        }
        for layer in self.layers.values_mut() {
            for m in layer.values_mut() {
                *m = m.checked_mul(factor).expect("multiplicity overflow");
            }
        }
    }

    /// Graded tensor product.  Layer n of the result is Σ_{p+q=n} of the
    /// componentwise tensor decomposition of layer p with layer q; the
    /// result's cutoff is the minimum of the operands'.
    pub fn multiply(&self, other: &GradedMultiCharacter) -> Result<GradedMultiCharacter, Error> {
        if self.profile != other.profile {
            return Err(Error::ProfileMismatch(format!(
                "{:?} vs {:?}",
                self.profile, other.profile
            )));
        }
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = GradedMultiCharacter::zero(self.profile.clone(), cutoff);
        for (p, layer_x) in self.layers() {
            for (q, layer_y) in other.layers() {
                let degree = p.checked_add(q).expect("degree overflow");
                if degree > cutoff {
                    continue;
                }
                for (tx, &mx) in layer_x {
                    for (ty, &my) in layer_y {
                        let coeff = mx.checked_mul(my).expect("multiplicity overflow");
                        let slot_products: Vec<_> = tx
                            .iter()
                            .zip(ty.iter())
                            .map(|(a, b)| tensor_decompose(a, b).expect("ranks match"))
                            .collect();
                        expand_tuple_product(&slot_products, coeff, &mut |tuple, m| {
                            out.add_term(degree, tuple, m)
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Extracts, per degree, the terms whose weight in the chosen slot is
    /// zero, projecting them onto the remaining slots.
    pub fn invariant_multiplicity(&self, slot: usize) -> GradedMultiCharacter {
        let mut out = GradedMultiCharacter::zero(self.profile.without_slot(slot), self.cutoff);
        for (d, layer) in self.layers() {
            for (tuple, &m) in layer {
                if tuple[slot].is_zero() {
                    let mut rest = tuple.clone();
                    rest.remove(slot);
                    out.add_term(d, rest, m);
                }
            }
        }
        out
    }

    /// Keeps exactly the terms whose weight in the chosen slot has all
    /// entries ≥ 0.  Idempotent and additive.
    pub fn truncate_polynomial(&self, slot: usize) -> GradedMultiCharacter {
        let mut out = GradedMultiCharacter::zero(self.profile.clone(), self.cutoff);
        for (d, layer) in self.layers() {
            for (tuple, &m) in layer {
                if tuple[slot].is_polynomial() {
                    out.add_term(d, tuple.clone(), m);
                }
            }
        }
        out
    }

    /// Forgets one slot's group action, scaling each term by the Weyl
    /// dimension of its weight there.
    pub fn collapse_dimension(&self, slot: usize) -> GradedMultiCharacter {
        let mut out = GradedMultiCharacter::zero(self.profile.without_slot(slot), self.cutoff);
        for (d, layer) in self.layers() {
            for (tuple, &m) in layer {
                let dim = i64::try_from(tuple[slot].dimension()).expect("dimension overflow");
                let mut rest = tuple.clone();
                rest.remove(slot);
                out.add_term(d, rest, m.checked_mul(dim).expect("multiplicity overflow"));
            }
        }
        out
    }

    /// Total dimension of each layer: Σ mult · ∏ slot dimensions.
    pub fn dimension_series(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (d, layer) in self.layers() {
            let mut total: i128 = 0;
            for (tuple, &m) in layer {
                let mut dim: i128 = m as i128;
                for w in tuple {
                    dim = dim
                        .checked_mul(w.dimension() as i128)
                        .expect("dimension overflow");
                }
                total = total.checked_add(dim).expect("dimension overflow");
            }
            out.insert(d, i64::try_from(total).expect("dimension overflow"));
        }
        out
    }

    /// JSON rendering.  Three-slot profiles use the (d, m, mprime) /
    /// (wV, wW, wWp) key names; other profiles fall back to a rank list
    /// and a weight array per term.
    pub fn to_json(&self) -> Value {
        let standard = self.profile.slot_count() == 3;
        let profile = if standard {
            json!({
                "d": self.profile.rank(0),
                "m": self.profile.rank(1),
                "mprime": self.profile.rank(2),
            })
        } else {
            json!({ "ranks": self.profile.ranks() })
        };
        let mut layers = serde_json::Map::new();
        for (d, layer) in self.layers() {
            let terms: Vec<Value> = layer
                .iter()
                .map(|(tuple, &m)| {
                    if standard {
                        json!({
                            "wV": tuple[0].entries(),
                            "wW": tuple[1].entries(),
                            "wWp": tuple[2].entries(),
                            "mult": m,
                        })
                    } else {
                        json!({
                            "weights": tuple.iter().map(|w| w.entries()).collect::<Vec<_>>(),
                            "mult": m,
                        })
                    }
                })
                .collect();
            layers.insert(d.to_string(), Value::Array(terms));
        }
        json!({ "profile": profile, "cutoff": self.cutoff, "layers": layers })
    }
}

/// Distributes a per-slot list of virtual representations into weight
/// tuples with multiplied coefficients.
fn expand_tuple_product(
    slots: &[crate::glrep::VirtualRep],
    coeff: i64,
    emit: &mut impl FnMut(Vec<DominantWeight>, i64),
) {
    fn go(
        slots: &[crate::glrep::VirtualRep],
        idx: usize,
        acc: &mut Vec<DominantWeight>,
        coeff: i64,
        emit: &mut impl FnMut(Vec<DominantWeight>, i64),
    ) {
        if idx == slots.len() {
            emit(acc.clone(), coeff);
            return;
        }
        for (w, m) in slots[idx].terms() {
            acc.push(w.clone());
            go(slots, idx + 1, acc, coeff.checked_mul(m).expect("multiplicity overflow"), emit);
            acc.pop();
        }
    }
    go(slots, 0, &mut Vec::new(), coeff, emit);
}

/// The symmetric algebra of a Hom-space between two slots, as a graded
/// character: Sym(A⊗B) = ⊕_μ S_μ(A)⊗S_μ(B), degree |μ|, truncated at the
/// cutoff.  Writing Hom(X, Y) = X^∨ ⊗ Y, pass the source dualized; the
/// coordinate ring k[Hom(X,Y)] = Sym(X ⊗ Y^∨) takes the target dualized.
pub fn sym_hom_character(
    profile: &GroupProfile,
    a: SlotFactor,
    b: SlotFactor,
    cutoff: i64,
) -> Result<GradedMultiCharacter, Error> {
    if cutoff < 0 {
        return Err(Error::InvalidArgument("cutoff must be nonnegative".into()));
    }
    if a.slot >= profile.slot_count() || b.slot >= profile.slot_count() || a.slot == b.slot {
        return Err(Error::InvalidArgument(format!(
            "invalid slot pair ({}, {})",
            a.slot, b.slot
        )));
    }
    let rank_a = profile.rank(a.slot);
    let rank_b = profile.rank(b.slot);
    let height = rank_a.min(rank_b);
    let mut out = GradedMultiCharacter::zero(profile.clone(), cutoff);
    let width = u32::try_from(cutoff).expect("cutoff fits in u32");
    for mu in enumerate_box(height, width) {
        let degree = i64::from(u32::try_from(mu.size()).expect("size fits"));
        if degree > cutoff {
            continue;
        }
        let mut tuple = profile.trivial_tuple();
        tuple[a.slot] = a.weight(&mu, rank_a)?;
        tuple[b.slot] = b.weight(&mu, rank_b)?;
        out.add_term(degree, tuple, 1);
    }
    Ok(out)
}

/// The degree-i layer of the exterior algebra of a tensor product:
/// all pairs (λ, conjugate(λ)) with |λ| = i, height ≤ a, width ≤ b,
/// in canonical order.
pub fn exterior_cauchy(
    i: usize,
    rank_a: usize,
    rank_b: usize,
) -> Result<Vec<(Partition, Partition)>, Error> {
    if i > rank_a * rank_b {
        return Err(Error::InvalidArgument(format!(
            "exterior degree {i} exceeds {rank_a}*{rank_b}"
        )));
    }
    let width = u32::try_from(rank_b).expect("rank fits in u32");
    Ok(enumerate_box(rank_a, width)
        .into_iter()
        .filter(|p| p.size() == i as u64)
        .map(|p| {
            let conj = p.conjugate();
            (p, conj)
        })
        .collect())
}

/// The alternating sum Σᵢ (−1)ⁱ Λⁱ(A⊗B) with Λⁱ placed in degree i — the
/// K-theory class of a Koszul complex on the Hom-space.  Multiplying it by
/// the matching symmetric algebra gives the unit character.
pub fn alternating_exterior_character(
    profile: &GroupProfile,
    a: SlotFactor,
    b: SlotFactor,
    cutoff: i64,
) -> Result<GradedMultiCharacter, Error> {
    if cutoff < 0 {
        return Err(Error::InvalidArgument("cutoff must be nonnegative".into()));
    }
    if a.slot >= profile.slot_count() || b.slot >= profile.slot_count() || a.slot == b.slot {
        return Err(Error::InvalidArgument(format!(
            "invalid slot pair ({}, {})",
            a.slot, b.slot
        )));
    }
    let rank_a = profile.rank(a.slot);
    let rank_b = profile.rank(b.slot);
    let top = rank_a * rank_b;
    let mut out = GradedMultiCharacter::zero(profile.clone(), cutoff);
    for i in 0..=top.min(cutoff.max(0) as usize) {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (lam, conj) in exterior_cauchy(i, rank_a, rank_b)? {
            let mut tuple = profile.trivial_tuple();
            tuple[a.slot] = a.weight(&lam, rank_a)?;
            tuple[b.slot] = b.weight(&conj, rank_b)?;
            out.add_term(i as i64, tuple, sign);
        }
    }
    Ok(out)
}
