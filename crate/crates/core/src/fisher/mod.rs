//! Quantum and classical Fisher information of the interferometer.

pub mod closed;
pub mod limits;
pub mod measurement;
pub mod numeric;

pub use closed::{
    f0_closed, qfi_closed, qfi_modemix_closed, qfi_phaseshift_closed, qfi_squeezing_closed,
    small_param_statistics, ClosedFormContext,
};
pub use limits::{
    argmax_theta, golden_section_max, qfi_asymptotic, theta_bound, tritter_populations,
    turning_point_theta, Regime, TurningPoint,
};
pub use measurement::{
    evaluate, f0_number_sum, fisher_vs_f0_identity, F0Report, FisherIdentity, FisherResult,
    SMALL_PARAM_LIMIT,
};
pub use numeric::{
    gaussian_qfi, gaussian_qfi_pure, qfi_numeric, qfi_numeric_at, qfi_numeric_with, QfiFormula,
    QfiOptions,
};
