//! Toeplitz operators: an exact layer for analytic symbols in factored form
//! and a floating-point layer for exponential symbols.

pub mod exact;
pub mod numeric;

pub use exact::{
    coker_action, make_symbol, tame_symbol, toeplitz_joint_torsion, toeplitz_pseudoinverse_formula,
    toeplitz_restriction_data, AnalyticSymbol, CokernelModel,
};
pub use numeric::{
    closed_form_di, convergence_table, default_buffer, exp_symbol_coeffs, numeric_det_invariant,
    ConvergenceRow, TrigPoly,
};
