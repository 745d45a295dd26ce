use std::f64::consts::PI;

use super::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Box-trapped quasi-1D condensate used as a detector. SI units throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct BecDetectorParams {
    /// kg
    pub atom_mass: f64,
    /// m
    pub scattering_length: f64,
    /// m
    pub box_length: f64,
    /// Radius over length, R = αL.
    pub aspect: f64,
    pub atom_number: f64,
    pub phonon_number: f64,
    pub mode_l: u32,
    pub mode_n: u32,
    /// Phonon lifetime, s.
    pub phonon_lifetime: f64,
    /// Integration time, s.
    pub integration_time: f64,
    pub detectors: u32,
    pub tritter_theta: f64,
}

/// Aspect ratio above which the quasi-1D premise is flagged.
pub const QUASI_1D_ASPECT: f64 = 0.1;

impl BecDetectorParams {
    /// Rejects non-physical inputs. A zero scattering length is allowed (degenerate coupling).
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("atom_mass", self.atom_mass),
            ("box_length", self.box_length),
            ("aspect", self.aspect),
            ("atom_number", self.atom_number),
            ("phonon_number", self.phonon_number),
            ("phonon_lifetime", self.phonon_lifetime),
            ("integration_time", self.integration_time),
            ("tritter_theta", self.tritter_theta),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.scattering_length.is_finite() && self.scattering_length >= 0.0) {
            return Err(Error::InvalidParameter(
                "scattering_length must be non-negative".into(),
            ));
        }
        if self.mode_l == 0 || self.mode_n == 0 {
            return Err(Error::InvalidParameter("mode numbers start at 1".into()));
        }
        if self.mode_l == self.mode_n {
            return Err(Error::InvalidParameter(
                "mode_l and mode_n must differ".into(),
            ));
        }
        if self.detectors == 0 {
            return Err(Error::InvalidParameter("need at least one detector".into()));
        }
        Ok(())
    }

    /// Trap cross-section πR².
    pub fn cross_section(&self) -> f64 {
        PI * (self.aspect * self.box_length).powi(2)
    }

    /// Repetitions M = τ/t.
    pub fn repetitions(&self) -> f64 {
        self.integration_time / self.phonon_lifetime
    }

    pub fn is_quasi_1d(&self) -> bool {
        self.aspect <= QUASI_1D_ASPECT
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedBecQuantities {
    /// g = 4πħ²a/m, J·m³.
    pub coupling: f64,
    /// m⁻³
    pub density: f64,
    pub sound_speed: f64,
    pub healing_length: f64,
    /// (ω_l, ω_n), rad/s.
    pub mode_frequencies: (f64, f64),
    /// Ω = ω_l + ω_n.
    pub resonance: f64,
    /// (k_l, k_n), m⁻¹.
    pub wavenumbers: (f64, f64),
}

impl DerivedBecQuantities {
    /// nπc_s/L for an arbitrary mode.
    pub fn mode_frequency(&self, p: &BecDetectorParams, n: u32) -> f64 {
        n as f64 * PI * self.sound_speed / p.box_length
    }

    /// Density in cm⁻³, as tabulated.
    pub fn density_cm3(&self) -> f64 {
        self.density * 1e-6
    }
}

pub fn derive_quantities(p: &BecDetectorParams, c: &PhysicalConstants) -> DerivedBecQuantities {
    let m = p.atom_mass;
    let l = p.box_length;
    let coupling = 4.0 * PI * c.hbar * c.hbar * p.scattering_length / m;
    let density = p.atom_number / (PI * p.aspect * p.aspect * l.powi(3));
    let sound_speed = (coupling * density / m).sqrt();
    let healing_length = c.hbar / (2f64.sqrt() * m * sound_speed);
    let k = |n: u32| n as f64 * PI / l;
    let (kl, kn) = (k(p.mode_l), k(p.mode_n));
    let omega = (kl * sound_speed, kn * sound_speed);
    DerivedBecQuantities {
        coupling,
        density,
        sound_speed,
        healing_length,
        mode_frequencies: omega,
        resonance: omega.0 + omega.1,
        wavenumbers: (kl, kn),
    }
}

/// Bogoliubov amplitudes (u_k, v_k) of a box mode with wavenumber `k`, using the
/// linear phonon dispersion ω = c_s k.
pub fn bogoliubov_amplitudes(k: f64, mass: f64, sound_speed: f64, hbar: f64) -> (f64, f64) {
    let kinetic = hbar * hbar * k * k / (2.0 * mass);
    let a = kinetic.sqrt();
    let b = (2.0 * mass * sound_speed * sound_speed + kinetic).sqrt();
    let norm = 2.0 * (hbar * sound_speed * k).sqrt();
    ((a + b) / norm, (a - b) / norm)
}
