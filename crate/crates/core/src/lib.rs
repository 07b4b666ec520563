//! Character-level combinatorics of Grassmann flops.
//!
//! The crate computes with integer partitions, rational GL-representations,
//! graded multi-group characters, and sheaf cohomology on Grassmannians, and
//! uses them to verify window categories, staircase complexes, and
//! semiorthogonal decompositions for Grassmann flop kernels — all as exact
//! bookkeeping of weight multiplicities, with no floating point anywhere.

pub mod bwb;
pub mod charring;
pub mod error;
pub mod flopkernel;
pub mod glrep;
pub mod partitions;
pub mod sod;
pub mod windows;

pub use bwb::{bott_dot, euler_characteristic, grassmann_cohomology, window_ext, BwbOutcome};
pub use charring::{
    alternating_exterior_character, exterior_cauchy, sym_hom_character, GradedMultiCharacter,
    GroupProfile, SlotFactor,
};
pub use error::Error;
pub use flopkernel::{
    specialization_oracle, verify_bimodule_maps, verify_ideal_identity, verify_koszul_resolution,
    verify_pinch_character, KernelReport, MPoly, MatrixFamily, PolyMatrix,
};
pub use glrep::{lr_coefficients, tensor_decompose, DominantWeight, VirtualRep};
pub use partitions::{binomial, enumerate_box, partitions_of, sigma_bullet, Partition, SigmaBulletResult};
pub use sod::{
    ds_staircase, generation_witness, hstar_euler_character, o_generators, orthogonality_pair,
    rank_accounting, verify_ds_euler, verify_ds_euler_for, verify_orthogonality, DSComplexSpec,
    EulerReport, FastVerdict, GeneratorId, KTheoryExpression, OGenerator, OrthReport,
    OrthogonalityCell, RankAccounting,
};
pub use windows::{
    dual_window_weights, ext_table, kapranov_collection, verify_window_fixed_point, ExtTable,
    FixedPointReport, TriangularDirection, WindowSpec,
};
