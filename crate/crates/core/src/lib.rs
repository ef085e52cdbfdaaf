//! Exact verification of left-invariant contact pair structures.
//!
//! Everything is modelled on a finite-dimensional Lie algebra with rational
//! structure constants: invariant forms are alternating forms on the algebra,
//! invariant tensor fields are endomorphisms of it, and the exterior derivative
//! is the Chevalley–Eilenberg differential. All arithmetic is exact.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod linalg;
pub mod normality;
pub mod pairs;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod tensor;

pub use algebra::{Endomorphism, LieAlgebra};
pub use error::{Error, Result};
pub use forms::{exterior_derivative, form_power, interior_product, lie_derivative_form, wedge, AltForm};
pub use linalg::{Matrix, Vector};
pub use report::{CheckOutcome, Residual, VerificationReport, Witness};
pub use scalar::{frac, int, parse_scalar, Scalar};
pub use tensor::{lie_derivative_endo, nijenhuis_endo, VectorValuedTwoForm};
pub use pairs::{
    acss_decomposable, classify_contact_pair, classify_contact_symplectic, classify_symplectic_pair,
    construct_decomposable_phi, construct_decomposable_psi, darboux_basis, is_decomposable, reeb_field,
    reeb_pair, splitting_bases, verify_acss, verify_cps, AlmostContactStructure,
    AlmostContactSymplecticStructure, ContactPair, ContactPairStructure, ContactSymplecticPair,
    PairDefect, SplittingBases,
};
pub use normality::{
    almost_contact_normality, analyze, build_j, build_t, induced_normality, k_contact_flags, nj_expanded,
    normality_tensor, nt_expanded, nijenhuis_of_complex, split_system_check, theorem_checks, NormalityReport,
};
pub use constructions::{
    boothby_wang_extend, bw_base_conditions, central_extension, direct_sum, double_extension, eta_invariance,
    symplectic_pair_extend, BwBaseConditions, ProductSpec,
};
pub use fixtures::{load_fixture, run_expectations, Fixture, Value, FIXTURE_NAMES};
