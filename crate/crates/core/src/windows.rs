//! Kapranov windows on Grassmannians: enumeration, Ext tables, duality of
//! windows, and the fixed-point property of the kernel transform.
//!
//! The window for Gr(d, m) is the set of Schur functors L_λ indexed by the
//! C(m, d) diagrams with height ≤ d and width ≤ m − d, in the canonical
//! order (size, then lexicographic), which refines inclusion.  Ext tables
//! between window members are computed by Borel–Weil–Bott; the collection
//! is strong exceptional, and the degree-zero Hom matrix is unitriangular
//! with respect to the canonical order.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::bwb::window_ext;
use crate::error::Error;
use crate::glrep::{lr_coefficients, DominantWeight, VirtualRep};
use crate::partitions::{enumerate_box, partitions_of, Partition};

/// Cohomology of one ordered pair, by degree.
pub type CohomologyTable = BTreeMap<usize, VirtualRep>;

/// The window collection for Gr(d, m).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WindowSpec {
    d: usize,
    m: usize,
    members: Vec<Partition>,
}

impl WindowSpec {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        lambda.fits_in_box(self.d, (self.m - self.d) as u32)
    }
}

/// Enumerates the window diagrams for Gr(d, m) in canonical order.
pub fn kapranov_collection(d: usize, m: usize) -> Result<WindowSpec, Error> {
    if d < 1 || m < d {
        return Err(Error::InvalidArgument(format!(
            "kapranov_collection requires 1 <= d <= m, got ({d}, {m})"
        )));
    }
    let members = enumerate_box(d, (m - d) as u32);
    Ok(WindowSpec { d, m, members })
}

/// Every ordered pair's Ext groups, with full GL(m)-content per degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtTable {
    d: usize,
    m: usize,
    members: Vec<Partition>,
    pairs: BTreeMap<(Partition, Partition), CohomologyTable>,
}

/// Which triangle of the Hom matrix vanishes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum TriangularDirection {
    /// Hom(α → β) ≠ 0 only when α comes no later than β in the order.
    Upper,
    /// Hom(α → β) ≠ 0 only when α comes no earlier than β.
    Lower,
}

/// A violation of strong exceptionality.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ExtFailure {
    PositiveDegree { source: Partition, target: Partition, degree: usize },
    DiagonalMultiplicity { member: Partition, multiplicity: i64 },
}

impl ExtTable {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn entry(&self, source: &Partition, target: &Partition) -> Option<&CohomologyTable> {
        self.pairs.get(&(source.clone(), target.clone()))
    }

    pub fn pairs(
        &self,
    ) -> impl Iterator<Item = (&(Partition, Partition), &CohomologyTable)> {
        self.pairs.iter()
    }

    /// Dimension of the degree-zero maps from source to target.
    pub fn hom_dimension(&self, source: &Partition, target: &Partition) -> i64 {
        self.entry(source, target)
            .and_then(|t| t.get(&0))
            .map_or(0, VirtualRep::dimension)
    }

    /// First violation of strong exceptionality: a nonzero positive-degree
    /// entry anywhere, or a diagonal trivial multiplicity other than 1.
    pub fn strong_exceptionality_failure(&self) -> Option<ExtFailure> {
        for ((source, target), table) in &self.pairs {
            for (&degree, content) in table {
                if degree > 0 && !content.is_zero() {
                    return Some(ExtFailure::PositiveDegree {
                        source: source.clone(),
                        target: target.clone(),
                        degree,
                    });
                }
            }
        }
        for member in &self.members {
            let mult = self
                .entry(member, member)
                .and_then(|t| t.get(&0))
                .map_or(0, |v| v.multiplicity(&DominantWeight::zero(self.m)));
            if mult != 1 {
                return Some(ExtFailure::DiagonalMultiplicity {
                    member: member.clone(),
                    multiplicity: mult,
                });
            }
        }
        None
    }

    /// Checks that the Hom matrix is unitriangular in the member order and
    /// reports which triangle vanishes.  The canonical order refines
    /// inclusion, so either answer certifies one-directional vanishing.
    pub fn unitriangularity_witness(&self) -> Result<TriangularDirection, Error> {
        let n = self.members.len();
        let mut strictly_lower_zero = true;
        let mut strictly_upper_zero = true;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let dim = self.hom_dimension(&self.members[i], &self.members[j]);
                if dim != 0 {
                    if i > j {
                        strictly_lower_zero = false;
                    } else {
                        strictly_upper_zero = false;
                    }
                }
            }
        }
        for member in &self.members {
            let mult = self
                .entry(member, member)
                .and_then(|t| t.get(&0))
                .map_or(0, |v| v.multiplicity(&DominantWeight::zero(self.m)));
            if mult != 1 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry at {member} has trivial multiplicity {mult}"
                )));
            }
        }
        if strictly_lower_zero {
            Ok(TriangularDirection::Upper)
        } else if strictly_upper_zero {
            Ok(TriangularDirection::Lower)
        } else {
            Err(Error::InvalidArgument(
                "Hom matrix is not triangular in the canonical order".into(),
            ))
        }
    }
}

/// Computes the full Ext table of a window.  Pairs are processed in
/// parallel and assembled in canonical order, so the result is
/// schedule-independent.
pub fn ext_table(spec: &WindowSpec) -> Result<ExtTable, Error> {
    let mut jobs = Vec::new();
    for a in spec.members() {
        for b in spec.members() {
            jobs.push((a.clone(), b.clone()));
        }
    }
    let computed: Result<Vec<_>, Error> = jobs
        .into_par_iter()
        .map(|(a, b)| {
            let table = window_ext(&a, &b, spec.d(), spec.m())?;
            Ok(((a, b), table))
        })
        .collect();
    Ok(ExtTable {
        d: spec.d(),
        m: spec.m(),
        members: spec.members().to_vec(),
        pairs: computed?.into_iter().collect(),
    })
}

/// The dual weights of a window, verified against the determinant-twist
/// description: as a set, {dual(λ)} = {λ − (m′−d)·(1,…,1)} over the box.
pub fn dual_window_weights(d: usize, mprime: usize) -> Result<Vec<DominantWeight>, Error> {
    let spec = kapranov_collection(d, mprime)?;
    let duals: Vec<DominantWeight> = spec
        .members()
        .iter()
        .map(|p| Ok(DominantWeight::from_partition(p, d)?.dual()))
        .collect::<Result<_, Error>>()?;
    let twist = -((mprime - d) as i64);
    let mut twisted: Vec<DominantWeight> = spec
        .members()
        .iter()
        .map(|p| Ok(DominantWeight::from_partition(p, d)?.twist(twist)))
        .collect::<Result<_, Error>>()?;
    let mut sorted = duals.clone();
    sorted.sort();
    twisted.sort();
    if sorted != twisted {
        return Err(Error::InvalidArgument(format!(
            "dual window weights disagree with the determinant twist for (d, m') = ({d}, {mprime})"
        )));
    }
    Ok(duals)
}

/// Outcome of the fixed-point verification for one diagram.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FixedPointReport {
    pub pass: bool,
    pub first_failure: Option<FixedPointFailure>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum FixedPointFailure {
    /// The transform acquired higher cohomology: the object left the window.
    PositiveDegreeCohomology { beta: Partition, degree: usize },
    /// Isotypic contents of the two sides differ at some GL(V) weight.
    ContentMismatch {
        gamma: Partition,
        weight: Vec<i64>,
        transform_side: i64,
        module_side: i64,
    },
}

/// Verifies that the kernel transform fixes L_α(V): the polynomial part of
/// the pushforward, read off degree-zero cohomology per polynomial weight
/// β, must match Sym(Hom(W, V)) ⊗ L_α(V) isotypically.  Both sides are
/// compared as GL(W)-contents for every GL(V) weight γ with |γ| ≤ cutoff.
/// The auxiliary rank m′ completes the flop datum and is validated, but
/// the identity itself lives entirely on the Gr(d, m) side.
pub fn verify_window_fixed_point(
    alpha: &Partition,
    d: usize,
    m: usize,
    mprime: usize,
    weight_cutoff: u32,
) -> Result<FixedPointReport, Error> {
    if d < 1 || m < d || mprime < d {
        return Err(Error::InvalidArgument(format!(
            "ranks ({d}, {m}, {mprime}) violate d >= 1, m >= d, m' >= d"
        )));
    }
    if alpha.height() > d {
        return Err(Error::InvalidArgument(format!(
            "{alpha} has more than {d} rows"
        )));
    }
    let alpha_size = alpha.size();
    for gamma in enumerate_box(d, weight_cutoff) {
        // Transform side: degree-zero GL(W)-content of the pair (α, γ),
        // with the window-exit test on higher degrees.
        let table = window_ext(alpha, &gamma, d, m)?;
        for (&degree, content) in &table {
            if degree > 0 && !content.is_zero() {
                return Ok(FixedPointReport {
                    pass: false,
                    first_failure: Some(FixedPointFailure::PositiveDegreeCohomology {
                        beta: gamma,
                        degree,
                    }),
                });
            }
        }
        let transform = table.get(&0).cloned().unwrap_or_else(|| VirtualRep::zero(m));
        // Module side: coefficient of L_γ(V) in Sym(W^∨ ⊗ V) ⊗ L_α(V),
        // expanded by the Cauchy formula.
        let mut module = VirtualRep::zero(m);
        if gamma.size() >= alpha_size {
            let strip = u32::try_from(gamma.size() - alpha_size).expect("small sizes");
            for mu in partitions_of(strip) {
                if mu.height() > d {
                    continue;
                }
                let coeff = lr_coefficients(alpha, &mu).get(&gamma).copied().unwrap_or(0);
                if coeff > 0 {
                    module.add_term(
                        DominantWeight::from_partition(&mu, m)?.dual(),
                        i64::try_from(coeff).expect("coefficient fits"),
                    );
                }
            }
        }
        if transform != module {
            let weight = first_differing_weight(&transform, &module);
            let t = transform.multiplicity(&weight);
            let s = module.multiplicity(&weight);
            return Ok(FixedPointReport {
                pass: false,
                first_failure: Some(FixedPointFailure::ContentMismatch {
                    gamma,
                    weight: weight.entries().to_vec(),
                    transform_side: t,
                    module_side: s,
                }),
            });
        }
    }
    Ok(FixedPointReport { pass: true, first_failure: None })
}

fn first_differing_weight(a: &VirtualRep, b: &VirtualRep) -> DominantWeight {
    for (w, m) in a.terms() {
        if b.multiplicity(w) != m {
            return w.clone();
        }
    }
    for (w, m) in b.terms() {
        if a.multiplicity(w) != m {
            return w.clone();
        }
    }
    unreachable!("called on equal virtual representations")
}
