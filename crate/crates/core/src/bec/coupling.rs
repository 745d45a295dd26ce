//! Phonon coupling coefficients of a driven box-trapped condensate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::params::{BecDetectorParams, DerivedBecQuantities};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialKind {
    /// V₀x², e.g. a gravitational wave in the proper detector frame.
    Quadratic,
    /// V₀x/L.
    Linear,
}

impl PotentialKind {
    /// Matrix element V_ln in units of V₀ (for linear, in units of V₀/L).
    pub fn parity_factor(self, l: u32, n: u32) -> f64 {
        let even = (l + n).is_multiple_of(2);
        match (self, even) {
            (Self::Quadratic, true) => 2.0,
            (Self::Linear, false) => -2.0,
            _ => 0.0,
        }
    }

    pub fn matrix_element(self, l: u32, n: u32, v0: f64, box_length: f64) -> f64 {
        match self {
            Self::Quadratic => self.parity_factor(l, n) * v0,
            Self::Linear => self.parity_factor(l, n) * v0 / box_length,
        }
    }
}

/// Two-phonon coefficients for a pair (l, n). `m_ln`, `a_ln` and `b_ln` are per unit
/// potential amplitude; `v_ln` is the parity-selected matrix element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingCoefficients {
    pub m_ln: Complex64,
    pub a_ln: Complex64,
    pub b_ln: Complex64,
    pub v_ln: f64,
    pub parity_allowed: bool,
}

impl CouplingCoefficients {
    /// Potential amplitude entering B = 8|M_ln V|t/ħ: half the parity-selected
    /// matrix element, so V₀ for an allowed quadratic pair.
    pub fn effective_potential(&self) -> f64 {
        0.5 * self.v_ln.abs()
    }
}

/// 𝓜_ln = i L³(l²+n²) / [2√(2nl)(l²−n²)²π³ζ].
pub fn m_ln(p: &BecDetectorParams, q: &DerivedBecQuantities) -> Complex64 {
    let (l, n) = (p.mode_l as f64, p.mode_n as f64);
    let num = p.box_length.powi(3) * (l * l + n * n);
    let den = 2.0 * (2.0 * n * l).sqrt() * (l * l - n * n).powi(2) * PI.powi(3) * q.healing_length;
    Complex64::new(0.0, num / den)
}

pub fn squeeze_coupling(
    p: &BecDetectorParams,
    q: &DerivedBecQuantities,
    kind: PotentialKind,
    v0: f64,
) -> CouplingCoefficients {
    let m = m_ln(p, q);
    let v_ln = kind.matrix_element(p.mode_l, p.mode_n, v0, p.box_length);
    CouplingCoefficients {
        m_ln: m,
        a_ln: -m,
        b_ln: -m,
        v_ln,
        parity_allowed: v_ln != 0.0,
    }
}

/// M_0n = −i L^{3/2} √(N₀ζ/(√2 nπ)³) (1+(−1)ⁿ) V₀: displacement of mode n when Ω = ω_n.
pub fn displacement_resonance_info(
    p: &BecDetectorParams,
    q: &DerivedBecQuantities,
    mode: u32,
    v0: f64,
) -> Complex64 {
    let parity = if mode.is_multiple_of(2) { 2.0 } else { 0.0 };
    let n = mode as f64;
    let root = (p.atom_number * q.healing_length / (2f64.sqrt() * n * PI).powi(3)).sqrt();
    Complex64::new(0.0, -p.box_length.powf(1.5) * root * parity * v0)
}

/// Channel coupling derived from the coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelStrength {
    /// B (squeezing, sum resonance) or A (mode mixing, difference resonance).
    pub coupling: f64,
    /// s = εB/4 or m = εA/4.
    pub magnitude: f64,
}

/// B = 8|M_ln V|t/ħ and s = εB/4; the same expression gives A for the difference resonance.
pub fn channel_strength(
    coeffs: &CouplingCoefficients,
    t: f64,
    eps: f64,
    hbar: f64,
) -> ChannelStrength {
    let coupling = 8.0 * coeffs.m_ln.norm() * coeffs.effective_potential() * t / hbar;
    ChannelStrength {
        coupling,
        magnitude: eps * coupling / 4.0,
    }
}

/// Drive frequencies of the tritter potential εV₀cos(Ωt)cos(Ω′t) for a mode pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TritterDrive {
    /// ω_l + ω_n
    pub omega_sum: f64,
    /// |ω_l − ω_n|
    pub omega_diff: f64,
}

pub fn tritter_potential_spec(
    p: &BecDetectorParams,
    q: &DerivedBecQuantities,
) -> crate::Result<TritterDrive> {
    if p.mode_l == p.mode_n {
        return Err(crate::Error::InvalidParameter(
            "tritter needs two distinct modes".into(),
        ));
    }
    let (wl, wn) = q.mode_frequencies;
    Ok(TritterDrive {
        omega_sum: wl + wn,
        omega_diff: (wl - wn).abs(),
    })
}
