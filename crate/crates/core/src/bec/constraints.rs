//! Regime checks for a detector design.

use std::fmt;

use super::constants::PhysicalConstants;
use super::params::{BecDetectorParams, DerivedBecQuantities, QUASI_1D_ASPECT};
use crate::fisher::theta_bound;

pub const PHONONIC_LIMIT: f64 = 0.1;
pub const DILUTE_LIMIT: f64 = 1e-3;
/// δ: largest phonon fraction N_p/N₀ treated as a weak perturbation of the pump.
pub const PUMP_FRACTION: f64 = 0.1;
/// Relative overshoot still reported as marginal rather than failed.
pub const MARGINAL_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstraintStatus {
    Pass,
    Marginal,
    Fail,
}

impl fmt::Display for ConstraintStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Marginal => "marginal",
            Self::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub value: f64,
    pub limit: f64,
    /// (limit − value)/limit; negative when the limit is exceeded.
    pub margin: f64,
    pub status: ConstraintStatus,
}

impl ConstraintCheck {
    /// Upper-limit check with a marginal band.
    fn upper(name: &'static str, value: f64, limit: f64, strict: bool) -> Self {
        let margin = (limit - value) / limit;
        let ok = if strict {
            value < limit
        } else {
            value <= limit
        };
        let status = if ok {
            ConstraintStatus::Pass
        } else if value.is_finite() && -margin <= MARGINAL_TOLERANCE {
            ConstraintStatus::Marginal
        } else {
            ConstraintStatus::Fail
        };
        Self {
            name,
            value,
            limit,
            margin,
            status,
        }
    }

    fn boolean(name: &'static str, value: f64, ok: bool) -> Self {
        Self {
            name,
            value,
            limit: 0.0,
            margin: if ok { 0.0 } else { -1.0 },
            status: if ok {
                ConstraintStatus::Pass
            } else {
                ConstraintStatus::Fail
            },
        }
    }
}

/// Phononic, dilute, pump-dominance, θ-bound, parity, coupling and quasi-1D checks.
pub fn validate_constraints(
    p: &BecDetectorParams,
    q: &DerivedBecQuantities,
    c: &PhysicalConstants,
) -> Vec<ConstraintCheck> {
    let w_max = q.mode_frequencies.0.max(q.mode_frequencies.1);
    let kinetic = p.atom_mass * q.sound_speed * q.sound_speed;
    let phononic = if kinetic > 0.0 {
        c.hbar * w_max / kinetic
    } else {
        f64::INFINITY
    };
    let gamma = p.phonon_number / p.atom_number;

    let theta = match theta_bound(gamma, PUMP_FRACTION) {
        Ok(bound) => ConstraintCheck::upper("theta-bound", p.tritter_theta, bound, false),
        // No admissible θ once the phonons exceed the pump fraction.
        Err(_) => ConstraintCheck {
            name: "theta-bound",
            value: p.tritter_theta,
            limit: 0.0,
            margin: f64::NEG_INFINITY,
            status: ConstraintStatus::Fail,
        },
    };

    let mut quasi = ConstraintCheck::upper("quasi-1d", p.aspect, QUASI_1D_ASPECT, false);
    if quasi.status == ConstraintStatus::Fail {
        // A thick trap weakens the model, it does not forbid the design.
        quasi.status = ConstraintStatus::Marginal;
    }

    vec![
        ConstraintCheck::upper("phononic", phononic, PHONONIC_LIMIT, true),
        ConstraintCheck::upper(
            "dilute",
            q.density * p.scattering_length.powi(3),
            DILUTE_LIMIT,
            true,
        ),
        ConstraintCheck::upper("pump-dominance", gamma, PUMP_FRACTION, false),
        theta,
        ConstraintCheck::boolean(
            "parity",
            ((p.mode_l + p.mode_n) % 2) as f64,
            (p.mode_l + p.mode_n).is_multiple_of(2),
        ),
        ConstraintCheck::boolean("coupling", q.coupling, q.coupling > 0.0),
        quasi,
    ]
}

/// Worst status over a set of checks.
pub fn overall_status(checks: &[ConstraintCheck]) -> ConstraintStatus {
    checks
        .iter()
        .map(|c| c.status)
        .max()
        .unwrap_or(ConstraintStatus::Pass)
}
