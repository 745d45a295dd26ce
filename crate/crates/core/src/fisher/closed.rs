//! Closed-form QFI of the three channels and the small-parameter number-sum statistics.

use crate::error::{Error, Result};
use crate::interferometer::InterferometerConfig;
use crate::scalar::{lit, Real};
use crate::symplectic::ChannelKind;

/// Combined phases and auxiliary functions entering the closed forms.
///
/// `phi` is the channel phase (φ_B or φ_A, whichever the channel uses). The phase-shift
/// origin is `ϑ_P = ϑ₀ − π/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormContext<T: Real> {
    pub r: T,
    pub theta: T,
    pub alpha0_sq: T,
    pub n_bar: T,
    pub theta_sq: T,
    pub phi: T,
    pub coupling: T,
    pub nu_b: T,
    pub nu_a: T,
    pub nu_p: T,
    pub eta1: T,
    pub eta2: T,
    pub eta3: T,
    pub eta4: T,
    pub eta5: T,
    pub eta_p: T,
    pub phi1: T,
    pub phi2: T,
}

fn sq<T: Real>(x: T) -> T {
    x * x
}

impl<T: Real> ClosedFormContext<T> {
    pub fn from_config(cfg: &InterferometerConfig<T>) -> Result<Self> {
        let two = lit::<T>(2.0);
        let r = cfg.squeezer.r;
        let theta = cfg.tritter.theta;
        let v = cfg.tritter.vartheta;
        let v0 = cfg.pump.vartheta0;
        let tsq = cfg.squeezer.theta_sq;
        let phi = cfg.channel.phase;
        let alpha0_sq = cfg.alpha0_sq()?;
        let (sh2, ch2) = ((two * r).sinh(), (two * r).cosh());
        let vartheta_p = v0 - T::FRAC_PI_2();

        let nu_b = two * v - two * v0 - tsq + two * phi;
        let nu_a = two * v - two * v0 + tsq;
        let nu_p = two * (v - vartheta_p) + tsq;
        let eta1 = sh2 * nu_b.cos() + ch2;
        let eta2 = sq((tsq - phi).sin());
        let eta3 = sh2 * nu_a.cos() - ch2;
        let s2t = sq(theta.sin());
        Ok(Self {
            r,
            theta,
            alpha0_sq,
            n_bar: cfg.pump.n_bar,
            theta_sq: tsq,
            phi,
            coupling: cfg.channel.coupling,
            nu_b,
            nu_a,
            nu_p,
            eta1,
            eta2,
            eta3,
            eta4: alpha0_sq * eta1 + sq(r.cosh()),
            eta5: sq(sh2) * eta2 + T::one(),
            eta_p: sh2 * nu_p.cos() + ch2,
            phi1: s2t * sq(phi.sin()) - T::one(),
            phi2: s2t * sq(phi.cos()) - T::one(),
        })
    }

    /// `N = 2 sinh² r`.
    pub fn n_squeezed(&self) -> T {
        lit::<T>(2.0) * sq(self.r.sinh())
    }

    /// Squeezing-channel QFI.
    pub fn qfi_squeezing(&self) -> T {
        let (t, r, n0) = (self.theta, self.r, self.alpha0_sq);
        let s2 = sq((lit::<T>(2.0) * t).sin());
        let c4 = sq(sq(t.cos()));
        let s4 = sq(sq(t.sin()));
        sq(self.coupling) / lit(16.0)
            * (lit::<T>(4.0)
                + s2 * sq(r.sinh())
                + lit::<T>(2.0) * (T::one() + c4) * self.eta2 * sq((lit::<T>(2.0) * r).sinh())
                + n0 * (lit::<T>(4.0) * s4 + self.eta1 * s2))
    }

    /// Mode-mixing-channel QFI.
    pub fn qfi_modemix(&self) -> T {
        let (t, r, n0) = (self.theta, self.r, self.alpha0_sq);
        let st2 = sq(t.sin());
        let sh2sq = sq((lit::<T>(2.0) * r).sinh());
        sq(self.coupling) / lit(8.0)
            * ((T::one() + sq(t.cos())) * sh2sq
                + st2 * self.phi1 * (sh2sq - lit::<T>(2.0) * sq(r.sinh()))
                + lit::<T>(2.0) * n0 * st2 * (st2 * sq(self.phi.sin()) + self.phi1 * self.eta3))
    }

    /// Phase-shift-channel QFI, per unit φ² times the coupling squared.
    pub fn qfi_phaseshift(&self) -> T {
        let (t, r, n0) = (self.theta, self.r, self.alpha0_sq);
        let s2 = sq((lit::<T>(2.0) * t).sin());
        let c4 = sq(sq(t.cos()));
        let s4 = sq(sq(t.sin()));
        sq(self.coupling) / lit(4.0)
            * (s2 * sq(r.sinh())
                + lit::<T>(2.0) * (T::one() + c4) * sq((lit::<T>(2.0) * r).sinh())
                + n0 * (lit::<T>(4.0) * s4 + self.eta_p * s2))
    }

    /// Leading coefficients `X₁, X₂` with `⟨Ŝ⟩ = ¼s²X₁`, `Var(Ŝ) = ¼s²X₂`.
    pub fn squeeze_stat_coefficients(&self) -> (T, T) {
        let t = self.theta;
        let s2 = sq((lit::<T>(2.0) * t).sin());
        let c = T::one() + sq(sq(t.cos()));
        let base = self.eta4 * s2;
        (
            base + lit::<T>(4.0) * c * self.eta5,
            base + lit::<T>(8.0) * c * self.eta5,
        )
    }

    /// Leading coefficients `Y₁, Y₂` with `⟨Ŝ⟩ = m²Y₁`, `Var(Ŝ) = m²Y₂`.
    pub fn modemix_stat_coefficients(&self) -> (T, T) {
        let (t, r, n0) = (self.theta, self.r, self.alpha0_sq);
        let st2 = sq(t.sin());
        let shr = sq(r.sinh());
        let sh2sq = sq((lit::<T>(2.0) * r).sinh());
        let p1 = self.phi1;
        let two = lit::<T>(2.0);
        let y1 = st2 * (p1 * n0 * self.eta3 - p1 * shr + (p1 - T::one()) * sh2sq) + two * sh2sq;
        let y2 = p1 * st2 * (n0 * self.eta3 - shr + two * sh2sq)
            + two * (T::one() + sq(t.cos())) * sh2sq;
        (y1, y2)
    }
}

fn context_for<T: Real>(
    cfg: &InterferometerConfig<T>,
    kind: ChannelKind,
) -> Result<ClosedFormContext<T>> {
    if cfg.channel.kind != kind {
        return Err(Error::Kind {
            expected: kind.name(),
            found: cfg.channel.kind.name(),
        });
    }
    ClosedFormContext::from_config(cfg)
}

pub fn qfi_squeezing_closed<T: Real>(cfg: &InterferometerConfig<T>) -> Result<T> {
    Ok(context_for(cfg, ChannelKind::TwoModeSqueeze)?.qfi_squeezing())
}

pub fn qfi_modemix_closed<T: Real>(cfg: &InterferometerConfig<T>) -> Result<T> {
    Ok(context_for(cfg, ChannelKind::ModeMix)?.qfi_modemix())
}

pub fn qfi_phaseshift_closed<T: Real>(cfg: &InterferometerConfig<T>) -> Result<T> {
    Ok(context_for(cfg, ChannelKind::PhaseShift)?.qfi_phaseshift())
}

/// Closed-form QFI for whichever channel `cfg` carries.
pub fn qfi_closed<T: Real>(cfg: &InterferometerConfig<T>) -> Result<T> {
    let ctx = ClosedFormContext::from_config(cfg)?;
    Ok(match cfg.channel.kind {
        ChannelKind::TwoModeSqueeze => ctx.qfi_squeezing(),
        ChannelKind::ModeMix => ctx.qfi_modemix(),
        ChannelKind::PhaseShift => ctx.qfi_phaseshift(),
    })
}

/// Leading-order number-sum mean and variance at channel magnitude `s` or `m`.
/// `None` for the phase-shift channel, which has no small-parameter form.
pub fn small_param_statistics<T: Real>(
    cfg: &InterferometerConfig<T>,
    magnitude: T,
) -> Result<Option<(T, T)>> {
    let ctx = ClosedFormContext::from_config(cfg)?;
    let m2 = magnitude * magnitude;
    Ok(match cfg.channel.kind {
        ChannelKind::TwoModeSqueeze => {
            let (x1, x2) = ctx.squeeze_stat_coefficients();
            Some((m2 * x1 / lit(4.0), m2 * x2 / lit(4.0)))
        }
        ChannelKind::ModeMix => {
            let (y1, y2) = ctx.modemix_stat_coefficients();
            Some((m2 * y1, m2 * y2))
        }
        ChannelKind::PhaseShift => None,
    })
}

/// ε → 0 limit of `(∂_ε⟨Ŝ⟩)²/Var(Ŝ)`: `B²X₁²/(16X₂)` or `A²Y₁²/(4Y₂)`.
pub fn f0_closed<T: Real>(cfg: &InterferometerConfig<T>) -> Result<Option<T>> {
    let ctx = ClosedFormContext::from_config(cfg)?;
    let c2 = ctx.coupling * ctx.coupling;
    let ratio = |a: T, b: T, k: f64| {
        if b <= T::zero() {
            T::zero()
        } else {
            c2 * a * a / (lit::<T>(k) * b)
        }
    };
    Ok(match cfg.channel.kind {
        ChannelKind::TwoModeSqueeze => {
            let (x1, x2) = ctx.squeeze_stat_coefficients();
            Some(ratio(x1, x2, 16.0))
        }
        ChannelKind::ModeMix => {
            let (y1, y2) = ctx.modemix_stat_coefficients();
            Some(ratio(y1, y2, 4.0))
        }
        ChannelKind::PhaseShift => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interferometer::figure4;
    use approx::assert_abs_diff_eq;

    #[test]
    fn figure4_spot_values() {
        let c = figure4::<f64>(ChannelKind::TwoModeSqueeze, 0.0);
        let h0 = qfi_squeezing_closed(&c).unwrap();
        assert_abs_diff_eq!(h0, 1.0 + 0.8f64.sinh().powi(2), epsilon = 1e-14);
        let h = qfi_squeezing_closed(&c.with_theta(std::f64::consts::FRAC_PI_2)).unwrap();
        assert_abs_diff_eq!(h, 1.0 + 3.4 + 0.5 * 0.8f64.sinh().powi(2), epsilon = 1e-13);
        let p = qfi_phaseshift_closed(&figure4::<f64>(ChannelKind::PhaseShift, 0.0)).unwrap();
        assert!(h0 > p);
    }

    #[test]
    fn modemix_limits() {
        let c = figure4::<f64>(ChannelKind::ModeMix, 0.0);
        let h = qfi_modemix_closed(&c).unwrap();
        assert_abs_diff_eq!(h, 0.8f64.sinh().powi(2), epsilon = 1e-14);
        let mut c = c.with_theta(std::f64::consts::FRAC_PI_2);
        c.channel.phase = std::f64::consts::FRAC_PI_2;
        let h = qfi_modemix_closed(&c).unwrap();
        assert_abs_diff_eq!(h, 3.4 + 0.5 * 0.8f64.sinh().powi(2), epsilon = 1e-13);
    }

    #[test]
    fn kind_checked() {
        let c = figure4::<f64>(ChannelKind::ModeMix, 0.3);
        assert!(matches!(qfi_squeezing_closed(&c), Err(Error::Kind { .. })));
        assert!(matches!(qfi_phaseshift_closed(&c), Err(Error::Kind { .. })));
        assert!(qfi_modemix_closed(&c).is_ok());
    }

    #[test]
    fn vacuum_phase_is_blind() {
        // r → 0 and α₀ → 0: no phase information at all.
        let mut c = figure4::<f64>(ChannelKind::PhaseShift, 0.9);
        c.squeezer.r = 0.0;
        c.pump.n_bar = 1e-300;
        assert!(qfi_phaseshift_closed(&c).unwrap().abs() < 1e-290);
    }

    #[test]
    fn zero_coupling_gives_zero() {
        let mut c = figure4::<f64>(ChannelKind::TwoModeSqueeze, 0.5);
        c.channel.coupling = 0.0;
        assert_eq!(qfi_closed(&c).unwrap(), 0.0);
        assert_eq!(f0_closed(&c).unwrap(), Some(0.0));
    }
}
