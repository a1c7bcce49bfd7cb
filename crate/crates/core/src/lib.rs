//! Arithmetic invariants of finite-index subgroups `Γ ≤ SL2(Z)` with
//! `-1 ∉ Γ`, the singular fibres and numerical invariants of their elliptic
//! modular surfaces, and exact checks of the graded dimension identities
//! between weight-`3m` modular forms and log-pluricanonical sections.
//!
//! The pipeline is
//! [`subgroup`] → [`curve`] → [`surface`] → [`dimensions`], with
//! [`oracle`] recomputing the curve data by brute force in `SL2(Z/N)`.

pub mod curve;
pub mod dimensions;
mod error;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod perm;
pub mod sl2;
pub mod subgroup;
pub mod surface;

pub use curve::{curve_invariants, cusps, elliptic_count, genus, CurveInvariants, Cusp};
pub use dimensions::{
    dim_canonical_ring, dim_even_weight, dim_geometric, dim_m3m_formula, rr_h0, verify_group,
    verify_group_range, DimensionReport, WeightEntry,
};
pub use error::{Error, Result};
pub use sl2::{multiply, reduce_mod, word_to_matrix, Generator, GeneratorWord, MatModN, MatZ};
pub use subgroup::{
    build_congruence, builtin_spec, contains_minus_one, export_permutation, load_permutation,
    validate, CongruenceSpec, PermutationDocument, PermutationRep, Subgroup, Violation,
};
pub use surface::{
    euler_number, fiber_configuration, surface_invariants, FiberConfiguration, FiberType,
    SurfaceInvariants,
};
