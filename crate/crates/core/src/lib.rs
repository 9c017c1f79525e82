//! Exact algebraic torsion, Koszul homology and joint torsion over the
//! Gaussian rationals, with exact and floating-point Toeplitz layers.

pub mod complex;
pub mod error;
pub mod factorization;
pub mod joint;
pub mod koszul;
pub mod matrix;
pub mod random;
pub mod scalar;
pub mod subquotient;
pub mod toeplitz;
pub mod verify;

pub use complex::{BasedExactSequence, ChainComplex, TorsionScalar};
pub use error::{Error, Result};
pub use factorization::{factorization_identities, Identity};
pub use joint::{
    build_eps_sequences, commuting_pair_sequences, det_commutator, joint_torsion_pair,
    joint_torsion_quad, lefschetz_ratio, perturbation_sigma, pseudoinv_formula,
    restriction_sequences, JointTorsionReport, QuadHomology, RestrictionData,
};
pub use koszul::{build_koszul, build_quad_complex, CommutingTuple, KoszulQuadruple};
pub use matrix::{ExactMatrix, Rref};
pub use scalar::{qi_arith, qi_modulus_cmp_one, ArithOp, QiScalar};
pub use subquotient::{build_subquotient, induced_map, Subquotient};
pub use toeplitz::{
    closed_form_di, coker_action, exp_symbol_coeffs, make_symbol, numeric_det_invariant,
    tame_symbol, toeplitz_joint_torsion, AnalyticSymbol, CokernelModel, TrigPoly,
};
