//! Strain sensitivity of the condensate detector.

use std::f64::consts::PI;

use super::constants::PhysicalConstants;
use super::constraints::{validate_constraints, ConstraintStatus};
use super::params::{derive_quantities, BecDetectorParams, DerivedBecQuantities};
use crate::error::{Error, Result};

/// What to do when a design violates a regime constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstraintPolicy {
    #[default]
    Enforce,
    Override,
}

/// V₀ = mΩ²/4 for a wave of angular frequency Ω seen in the proper detector frame.
pub fn gw_potential_amplitude(mass: f64, omega: f64) -> f64 {
    mass * omega * omega / 4.0
}

fn check(
    p: &BecDetectorParams,
    q: &DerivedBecQuantities,
    c: &PhysicalConstants,
    policy: ConstraintPolicy,
) -> Result<()> {
    p.validate()?;
    if policy == ConstraintPolicy::Override {
        return Ok(());
    }
    let failed: Vec<_> = validate_constraints(p, q, c)
        .into_iter()
        .filter(|k| k.status == ConstraintStatus::Fail)
        .map(|k| k.name)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::ConstraintViolation(failed.join(", ")))
    }
}

fn mode_factor(p: &BecDetectorParams) -> (f64, f64) {
    (p.mode_l as f64, p.mode_n as f64)
}

/// Frequency-interferometry Δε for the quadratic GW potential:
/// ħ²π√(2nl)(l−n)² / [m²c_s³θL√(τtN₀N_pN_d)(l²+n²)].
pub fn gw_sensitivity_fi(
    p: &BecDetectorParams,
    c: &PhysicalConstants,
    policy: ConstraintPolicy,
) -> Result<f64> {
    let q = derive_quantities(p, c);
    check(p, &q, c, policy)?;
    Ok(fi_reduced(p, &q, c))
}

pub(crate) fn fi_reduced(
    p: &BecDetectorParams,
    q: &DerivedBecQuantities,
    c: &PhysicalConstants,
) -> f64 {
    let (l, n) = mode_factor(p);
    if (p.mode_l + p.mode_n) % 2 == 1 {
        return f64::INFINITY;
    }
    let num = c.hbar * c.hbar * PI * (2.0 * n * l).sqrt() * (l - n).powi(2);
    let den = p.atom_mass.powi(2)
        * q.sound_speed.powi(3)
        * p.tritter_theta
        * p.box_length
        * resources(p).sqrt()
        * (l * l + n * n);
    num / den
}

/// τ t N₀ N_p N_d
fn resources(p: &BecDetectorParams) -> f64 {
    p.integration_time * p.phonon_lifetime * p.atom_number * p.phonon_number * p.detectors as f64
}

/// The same Δε in trap parameters:
/// (mπ/(4√2ħ)) α³/(θN₀²√(N_pN_dτt)) √(L⁷/a³) √(nl)(l−n)²/(l²+n²).
pub fn gw_sensitivity_fi_expanded(p: &BecDetectorParams, c: &PhysicalConstants) -> f64 {
    let (l, n) = mode_factor(p);
    if (p.mode_l + p.mode_n) % 2 == 1 {
        return f64::INFINITY;
    }
    let pre = p.atom_mass * PI / (4.0 * 2f64.sqrt() * c.hbar);
    let rest = p.phonon_number * p.detectors as f64 * p.integration_time * p.phonon_lifetime;
    pre * p.aspect.powi(3) / (p.tritter_theta * p.atom_number.powi(2) * rest.sqrt())
        * (p.box_length.powi(7) / p.scattering_length.powi(3)).sqrt()
        * (n * l).sqrt()
        * (l - n).powi(2)
        / (l * l + n * n)
}

/// Δε = √2ħ / (8|M_ln V|tθ√(M N₀N_pN_d)) with M = τ/t. Equivalently √2/(Bθ√(M N₀N_pN_d)).
pub fn delta_eps_chain(coupling_b: f64, p: &BecDetectorParams) -> f64 {
    let r = p.repetitions() * p.atom_number * p.phonon_number * p.detectors as f64;
    let d = coupling_b * p.tritter_theta * r.sqrt();
    if d > 0.0 {
        2f64.sqrt() / d
    } else {
        f64::INFINITY
    }
}

/// Δε for a general potential amplitude V:
/// ħ²π³√(2nl)(l²−n²)² / [4mc_sVθL³√(τtN₀N_pN_d)(l²+n²)].
pub fn gw_sensitivity_generic(
    p: &BecDetectorParams,
    q: &DerivedBecQuantities,
    c: &PhysicalConstants,
    v: f64,
) -> f64 {
    let (l, n) = mode_factor(p);
    let num = c.hbar * c.hbar * PI.powi(3) * (2.0 * n * l).sqrt() * (l * l - n * n).powi(2);
    let den = 4.0
        * p.atom_mass
        * q.sound_speed
        * v.abs()
        * p.tritter_theta
        * p.box_length.powi(3)
        * resources(p).sqrt()
        * (l * l + n * n);
    num / den
}

/// Single-detector form without N_d and without the factor 4 (comparison only).
pub fn gw_sensitivity_fi_single(p: &BecDetectorParams, c: &PhysicalConstants) -> f64 {
    let q = derive_quantities(p, c);
    let v0 = gw_potential_amplitude(p.atom_mass, q.resonance);
    gw_sensitivity_generic(p, &q, c, v0) * 4.0 * (p.detectors as f64).sqrt()
}

/// Earlier resonant-phonon scheme: (m/(√π ħ)) α/(√(N₀N_dτt)N_p) √(L⁵/a) / √(nl).
pub fn gw_sensitivity_old(p: &BecDetectorParams, c: &PhysicalConstants) -> Result<f64> {
    p.validate()?;
    let (l, n) = mode_factor(p);
    let pre = p.atom_mass / (PI.sqrt() * c.hbar);
    let res = p.atom_number * p.detectors as f64 * p.integration_time * p.phonon_lifetime;
    Ok(pre * p.aspect / (res.sqrt() * p.phonon_number)
        * (p.box_length.powi(5) / p.scattering_length).sqrt()
        / (n * l).sqrt())
}

/// Earlier scheme as 2/(√(M'ω_nω_l)N_p t) with M' = τN_d/t.
pub fn gw_sensitivity_old_frequency(p: &BecDetectorParams, q: &DerivedBecQuantities) -> f64 {
    let m = p.repetitions() * p.detectors as f64;
    let (wl, wn) = q.mode_frequencies;
    2.0 / ((m * wl * wn).sqrt() * p.phonon_number * p.phonon_lifetime)
}

/// Δε/√Ω with Ω in rad/s.
pub fn strain_figure(delta_eps: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::InvalidParameter("Ω must be positive".into()));
    }
    Ok(delta_eps / omega.sqrt())
}
