//! Verification of the kernel ring presentation: the ideal-containment
//! witness, agreement of the two module structures on the invariant
//! subring, the first-fundamental-theorem pinch at character level, and
//! the Koszul resolution identity.
//!
//! The symbolic side works with five generic matrices over ℤ: A^L and A^R
//! of shape d × m′, B^L and B^R of shape m × d, and the d × d clutching
//! matrix C.  Identities are checked by exact expansion, then re-checked
//! under seeded integer specializations as an independent oracle.

mod matrix;
mod poly;

pub use matrix::PolyMatrix;
pub use poly::{MPoly, MatrixFamily, Monomial, Var};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::charring::{
    alternating_exterior_character, sym_hom_character, GradedMultiCharacter, GroupProfile,
    SlotFactor,
};
use crate::error::Error;
use crate::glrep::DominantWeight;
use crate::partitions::enumerate_box;

/// Outcome of one kernel verification.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KernelReport {
    pub pass: bool,
    pub first_failure: Option<KernelFailure>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum KernelFailure {
    /// Two symbolic matrices differ at an entry.
    Entry { check: String, row: usize, col: usize },
    /// A numeric specialization separated two sides.
    Trial { check: String, trial: usize, row: usize, col: usize },
    /// Two graded characters differ at a degree.
    Degree { check: String, degree: i64 },
}

impl KernelReport {
    fn passed() -> Self {
        KernelReport { pass: true, first_failure: None }
    }

    fn failed(failure: KernelFailure) -> Self {
        KernelReport { pass: false, first_failure: Some(failure) }
    }
}

struct Presentation {
    a_left: PolyMatrix,
    a_right: PolyMatrix,
    b_left: PolyMatrix,
    b_right: PolyMatrix,
    c: PolyMatrix,
}

impl Presentation {
    fn new(d: usize, m: usize, mprime: usize) -> Self {
        assert!(d >= 1 && m >= 1 && mprime >= 1, "matrix sizes must be positive");
        Presentation {
            a_left: PolyMatrix::symbolic(MatrixFamily::ALeft, d, mprime),
            a_right: PolyMatrix::symbolic(MatrixFamily::ARight, d, mprime),
            b_left: PolyMatrix::symbolic(MatrixFamily::BLeft, m, d),
            b_right: PolyMatrix::symbolic(MatrixFamily::BRight, m, d),
            c: PolyMatrix::symbolic(MatrixFamily::C, d, d),
        }
    }

    /// (B^L − B^R·C)·A^L + B^R·(C·A^L − A^R), expanded.
    fn witness_combination(&self) -> PolyMatrix {
        let first = self.b_left.sub(&self.b_right.mul(&self.c)).mul(&self.a_left);
        let second = self.b_right.mul(&self.c.mul(&self.a_left).sub(&self.a_right));
        first.add(&second)
    }

    /// B^L·A^L − B^R·A^R, the difference of the two sides' products.
    fn product_difference(&self) -> PolyMatrix {
        self.b_left.mul(&self.a_left).sub(&self.b_right.mul(&self.a_right))
    }
}

/// Checks that the witness combination of the two ideal generators expands
/// to exactly B^L·A^L − B^R·A^R, entry by entry.
pub fn verify_ideal_identity(d: usize, m: usize, mprime: usize) -> KernelReport {
    let pres = Presentation::new(d, m, mprime);
    match pres.witness_combination().first_difference(&pres.product_difference()) {
        None => KernelReport::passed(),
        Some((row, col)) => KernelReport::failed(KernelFailure::Entry {
            check: "witness combination".into(),
            row,
            col,
        }),
    }
}

/// Checks that the two module structures agree on the subring generated by
/// the product matrix: both send B·A to B^R·C·A^L.  Also checks that the
/// substitution B^L ↦ B^R·C, A^R ↦ C·A^L kills both ideal generators and
/// their witnessed combination, and that it distributes over the matrix
/// product (it is a ring map applied entrywise).
pub fn verify_bimodule_maps(d: usize, m: usize, mprime: usize) -> KernelReport {
    let pres = Presentation::new(d, m, mprime);
    let brc = pres.b_right.mul(&pres.c);
    let cal = pres.c.mul(&pres.a_left);

    let via_first = brc.mul(&pres.a_left);
    let via_second = pres.b_right.mul(&cal);
    if let Some((row, col)) = via_first.first_difference(&via_second) {
        return KernelReport::failed(KernelFailure::Entry {
            check: "module structures on the product".into(),
            row,
            col,
        });
    }

    let image = |var: &Var| match var.family {
        MatrixFamily::BLeft => Some(brc.entry(var.row, var.col).clone()),
        MatrixFamily::ARight => Some(cal.entry(var.row, var.col).clone()),
        _ => None,
    };
    let substitute = |mat: &PolyMatrix| mat.map(&|p| p.substitute(&image));

    for (name, generators) in [
        ("first generator", pres.b_left.sub(&brc)),
        ("second generator", pres.a_right.sub(&cal)),
        ("witnessed combination", pres.product_difference()),
    ] {
        let killed = substitute(&generators);
        if !killed.is_zero() {
            let (row, col) = killed.first_difference(&PolyMatrix::zero(killed.rows(), killed.cols()))
                .expect("nonzero matrix has a nonzero entry");
            return KernelReport::failed(KernelFailure::Entry {
                check: format!("substitution does not kill the {name}"),
                row,
                col,
            });
        }
    }

    let product_then_sub = substitute(&pres.b_left.mul(&pres.a_left));
    let sub_then_product = substitute(&pres.b_left).mul(&substitute(&pres.a_left));
    if let Some((row, col)) = product_then_sub.first_difference(&sub_then_product) {
        return KernelReport::failed(KernelFailure::Entry {
            check: "substitution versus product".into(),
            row,
            col,
        });
    }
    KernelReport::passed()
}

fn random_point(pres_dims: &[(MatrixFamily, usize, usize)], rng: &mut ChaCha8Rng) -> BTreeMap<Var, i64> {
    let mut point = BTreeMap::new();
    for &(family, rows, cols) in pres_dims {
        for row in 0..rows {
            for col in 0..cols {
                point.insert(Var { family, row, col }, rng.random_range(-9..=9));
            }
        }
    }
    point
}

/// Re-checks the symbolic identities numerically: all variables are
/// specialized to seeded random integers and both sides evaluated.
pub fn specialization_oracle(
    d: usize,
    m: usize,
    mprime: usize,
    trials: usize,
    seed: u64,
) -> KernelReport {
    let pres = Presentation::new(d, m, mprime);
    let dims = [
        (MatrixFamily::ALeft, d, mprime),
        (MatrixFamily::ARight, d, mprime),
        (MatrixFamily::BLeft, m, d),
        (MatrixFamily::BRight, m, d),
        (MatrixFamily::C, d, d),
    ];
    let checks: [(&str, PolyMatrix, PolyMatrix); 2] = [
        ("witness combination", pres.witness_combination(), pres.product_difference()),
        (
            "module structures on the product",
            pres.b_right.mul(&pres.c).mul(&pres.a_left),
            pres.b_right.mul(&pres.c.mul(&pres.a_left)),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let point = random_point(&dims, &mut rng);
        let at = |var: &Var| point[var];
        for (name, lhs, rhs) in &checks {
            for row in 0..lhs.rows() {
                for col in 0..lhs.cols() {
                    if lhs.entry(row, col).evaluate(&at) != rhs.entry(row, col).evaluate(&at) {
                        return KernelReport::failed(KernelFailure::Trial {
                            check: (*name).into(),
                            trial,
                            row,
                            col,
                        });
                    }
                }
            }
        }
    }
    KernelReport::passed()
}

/// Checks the first fundamental theorem at character level: the middle-slot
/// invariants of Sym(V_L ⊗ H^∨) · Sym(H ⊗ V_R^∨) occur only in even degrees,
/// and the degree-2n invariant layer equals the degree-n Cauchy layer
/// ⊕_{|λ|=n} S_λ(V_L) ⊗ S_λ(V_R)^∨ of functions on Hom(V_R, V_L).
pub fn verify_pinch_character(d: usize, cutoff: i64) -> Result<KernelReport, Error> {
    if d < 1 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if cutoff < 0 {
        return Err(Error::InvalidArgument("cutoff must be nonnegative".into()));
    }
    let profile = GroupProfile::custom(vec![d, d, d]);
    let doubled = 2 * cutoff;
    let left = sym_hom_character(&profile, SlotFactor::plain(0), SlotFactor::dualized(1), doubled)?;
    let right = sym_hom_character(&profile, SlotFactor::plain(1), SlotFactor::dualized(2), doubled)?;
    let invariants = left.multiply(&right)?.invariant_multiplicity(1);

    for degree in 0..=doubled {
        if degree % 2 == 1 {
            if invariants.layer(degree).is_some() {
                return Ok(KernelReport::failed(KernelFailure::Degree {
                    check: "odd-degree invariants".into(),
                    degree,
                }));
            }
            continue;
        }
        let n = degree / 2;
        let mut expected: BTreeMap<Vec<DominantWeight>, i64> = BTreeMap::new();
        for lambda in enumerate_box(d, u32::try_from(n).expect("cutoff fits")) {
            if lambda.size() != n as u64 {
                continue;
            }
            let w = DominantWeight::from_partition(&lambda, d)?;
            expected.insert(vec![w.clone(), w.dual()], 1);
        }
        let found = invariants.layer(degree).cloned().unwrap_or_default();
        if found != expected {
            return Ok(KernelReport::failed(KernelFailure::Degree {
                check: "invariant layer".into(),
                degree,
            }));
        }
    }
    Ok(KernelReport::passed())
}

/// Checks the Koszul resolution identity in the graded character ring of
/// GL(V) × GL(S) × GL(Q) × GL(W′): tensoring the full coordinate-ring
/// character Sym(V⊗S^∨) · Sym(V⊗Q^∨) · Sym(W′⊗V^∨) with the alternating
/// exterior class of V⊗Q^∨ leaves exactly Sym(V⊗S^∨) · Sym(W′⊗V^∨),
/// degree by degree up to the cutoff.
pub fn verify_koszul_resolution(
    d: usize,
    m: usize,
    mprime: usize,
    cutoff: i64,
) -> Result<KernelReport, Error> {
    if d < 1 || mprime < 1 {
        return Err(Error::InvalidArgument("ranks must be positive".into()));
    }
    if m <= d {
        return Err(Error::InvalidArgument(format!(
            "m must exceed d for a positive-rank quotient, got ({d}, {m})"
        )));
    }
    if cutoff < 0 {
        return Err(Error::InvalidArgument("cutoff must be nonnegative".into()));
    }
    let profile = GroupProfile::custom(vec![d, d, m - d, mprime]);
    let sym_vs = sym_hom_character(&profile, SlotFactor::plain(0), SlotFactor::dualized(1), cutoff)?;
    let sym_vq = sym_hom_character(&profile, SlotFactor::plain(0), SlotFactor::dualized(2), cutoff)?;
    let sym_wv = sym_hom_character(&profile, SlotFactor::plain(3), SlotFactor::dualized(0), cutoff)?;
    let alt_vq =
        alternating_exterior_character(&profile, SlotFactor::plain(0), SlotFactor::dualized(2), cutoff)?;

    // The exterior class against its own symmetric algebra resolves to the
    // unit; the resolution identity is this fact tensored with the spectator
    // factors.  Checking it separately localizes any failure.
    let bracket = alt_vq.multiply(&sym_vq)?;
    let unit = GradedMultiCharacter::unit(profile.clone(), cutoff);
    if bracket != unit {
        let degree = first_layer_difference(&bracket, &unit, cutoff);
        return Ok(KernelReport::failed(KernelFailure::Degree {
            check: "exterior class against its symmetric algebra".into(),
            degree,
        }));
    }

    let lhs = alt_vq.multiply(&sym_vs)?.multiply(&sym_vq)?.multiply(&sym_wv)?;
    let rhs = sym_vs.multiply(&sym_wv)?;
    if lhs != rhs {
        let degree = first_layer_difference(&lhs, &rhs, cutoff);
        return Ok(KernelReport::failed(KernelFailure::Degree {
            check: "resolution identity".into(),
            degree,
        }));
    }
    Ok(KernelReport::passed())
}

fn first_layer_difference(
    a: &GradedMultiCharacter,
    b: &GradedMultiCharacter,
    cutoff: i64,
) -> i64 {
    for degree in 0..=cutoff {
        if a.layer(degree) != b.layer(degree) {
            return degree;
        }
    }
    unreachable!("called on equal characters")
}
