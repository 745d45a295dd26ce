//! Number-sum measurement: F₀ = (∂_ε⟨Ŝ⟩)²/Var(Ŝ) and the classical Fisher information F.

use crate::error::{Error, Result};
use crate::fisher::closed::{f0_closed, qfi_closed};
use nalgebra::DMatrix;

use crate::interferometer::{
    build_upstream, channel_matrix, downstream, side_statistics, InterferometerConfig,
};
use crate::scalar::{lit, to_f64, Real};
use crate::symplectic::{ChannelKind, ChannelSpec};

/// Largest `s`, `m` or `φ` accepted by the small-parameter routines.
pub const SMALL_PARAM_LIMIT: f64 = 0.01;

/// Relative finite-difference step used around `ε_probe`.
const REL_STEP: f64 = 1e-3;

fn check_small<T: Real>(cfg: &InterferometerConfig<T>, eps: T) -> Result<()> {
    if eps == T::zero() || !eps.is_finite() {
        return Err(Error::InvalidParameter(
            "ε_probe must be finite and non-zero".into(),
        ));
    }
    let mag = cfg.channel.at_epsilon(eps).magnitude.abs() * lit(1.0 + 2.0 * REL_STEP);
    if mag > lit(SMALL_PARAM_LIMIT) {
        return Err(Error::SmallParamViolation {
            magnitude: to_f64(mag),
            limit: SMALL_PARAM_LIMIT,
        });
    }
    Ok(())
}

/// Channel magnitude per unit ε.
fn magnitude_per_eps<T: Real>(spec: &ChannelSpec<T>) -> T {
    match spec.kind {
        ChannelKind::PhaseShift => spec.coupling.abs(),
        _ => spec.coupling.abs() / lit(4.0),
    }
}

const GENERATOR_STEP: f64 = 1e-3;

/// Generator `G` of the channel group, `S(ε) = exp(εG)`.
///
/// Central differences at a fixed channel magnitude of 1e-3, so the accuracy does not
/// depend on the probe ε.
fn generator<T: Real>(spec: &ChannelSpec<T>) -> DMatrix<T> {
    let dim = 2 * 3;
    if spec.coupling == T::zero() {
        return DMatrix::zeros(dim, dim);
    }
    let per_eps = magnitude_per_eps(spec);
    let h = lit::<T>(GENERATOR_STEP) / per_eps;
    let d = |h: T| -> DMatrix<T> {
        (channel_matrix(spec, h).matrix() - channel_matrix(spec, -h).matrix()) / (h + h)
    };
    let third = T::one() / lit(3.0);
    (d(h * lit(0.5)) * lit::<T>(4.0) - d(h)) * third
}

/// Mean, variance and their exact ε-derivatives at `eps`.
///
/// With `∂_ε S(ε) = G S(ε)` the output moments differentiate in closed form, which keeps
/// F₀ free of step-size roundoff down to very small probes.
fn moments<T: Real>(cfg: &InterferometerConfig<T>, eps: T) -> Result<[T; 4]> {
    let up = build_upstream(cfg)?;
    let down = downstream(cfg)?;
    let se = channel_matrix(&cfg.channel, eps);
    let g = generator(&cfg.channel);
    let (dn, sn) = (down.matrix(), se.matrix());
    let d_mid = sn * up.state.d().as_vector();
    let s_mid = sn * up.state.sigma().as_matrix() * sn.transpose();
    let gs = &g * &s_mid;
    let d = dn * &d_mid;
    let dd = dn * (&g * &d_mid);
    let s = dn * &s_mid * dn.transpose();
    let ds = dn * (&gs + gs.transpose()) * dn.transpose();

    // Side quadratures are 2..6.
    let (d, dd) = (d.rows(2, 4), dd.rows(2, 4));
    let (s, ds) = (s.view((2, 2), (4, 4)), ds.view((2, 2), (4, 4)));
    let sd = s * d;
    let four: T = lit(4.0);
    let mean = (s.trace() + d.dot(&d) - four) / four;
    let var = (s.component_mul(&s).sum() + lit::<T>(2.0) * d.dot(&sd) - four) / lit(8.0);
    let dmean = (ds.trace() + lit::<T>(2.0) * d.dot(&dd)) / four;
    let dvar = (lit::<T>(2.0) * s.component_mul(&ds).sum()
        + four * dd.dot(&sd)
        + lit::<T>(2.0) * d.dot(&(ds * d)))
        / lit(8.0);
    Ok([mean, var, dmean, dvar])
}

fn f0_at<T: Real>(cfg: &InterferometerConfig<T>, eps: T) -> Result<T> {
    let [_, v, dm, _] = moments(cfg, eps)?;
    Ok(if v > T::zero() {
        dm * dm / v
    } else {
        T::zero()
    })
}

/// F₀ computed numerically and, where available, from the small-parameter closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F0Report<T: Real> {
    /// `(∂_ε⟨Ŝ⟩)²/Var(Ŝ)` at ε_probe.
    pub at_probe: T,
    /// ε → 0 estimate `2F₀(ε/2) − F₀(ε)`.
    pub extrapolated: T,
    pub closed_form: Option<T>,
}

impl<T: Real> F0Report<T> {
    /// Closed form when one exists, otherwise the extrapolated numeric value.
    pub fn value(&self) -> T {
        self.closed_form.unwrap_or(self.extrapolated)
    }

    /// `|numeric − closed| / closed`, if a closed form exists.
    pub fn relative_gap(&self) -> Option<T> {
        self.closed_form.map(|c| {
            if c == T::zero() {
                self.extrapolated.abs()
            } else {
                ((self.extrapolated - c) / c).abs()
            }
        })
    }
}

pub fn f0_number_sum<T: Real>(cfg: &InterferometerConfig<T>, eps_probe: T) -> Result<F0Report<T>> {
    check_small(cfg, eps_probe)?;
    let at_probe = f0_at(cfg, eps_probe)?;
    let half = f0_at(cfg, eps_probe * lit(0.5))?;
    Ok(F0Report {
        at_probe,
        extrapolated: half * lit(2.0) - at_probe,
        closed_form: f0_closed(cfg)?,
    })
}

/// Both sides of `F = F₀ + 2(∂_ε√Var)²/Var` at ε_probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherIdentity<T: Real> {
    /// Fisher information of the Gaussian outcome law N(⟨Ŝ⟩, Var), by quadrature.
    pub f: T,
    pub f0: T,
    /// `F − F₀`.
    pub gap: T,
    /// `2(∂_ε√Var)²/Var` from the moment derivatives.
    pub variance_term: T,
}

impl<T: Real> FisherIdentity<T> {
    /// `|F − (F₀ + variance_term)| / F`.
    pub fn identity_residual(&self) -> T {
        let rhs = self.f0 + self.variance_term;
        if self.f == T::zero() {
            rhs.abs()
        } else {
            ((self.f - rhs) / self.f).abs()
        }
    }
}

pub fn fisher_vs_f0_identity<T: Real>(
    cfg: &InterferometerConfig<T>,
    eps_probe: T,
) -> Result<FisherIdentity<T>> {
    check_small(cfg, eps_probe)?;
    let [m, v, dm, dv] = moments(cfg, eps_probe)?;
    let tiny = T::min_value().unwrap_or(T::zero()) * lit(1e10);
    if v <= tiny {
        return Ok(FisherIdentity {
            f: T::zero(),
            f0: T::zero(),
            gap: T::zero(),
            variance_term: T::zero(),
        });
    }
    let f0 = dm * dm / v;
    let variance_term = dv * dv / (lit::<T>(2.0) * v * v);

    // F = ∫ p (∂_ε log p)² dx over x = μ + √v z, with ∂_ε log p differenced directly.
    // Step sized in channel magnitude, not relative to the probe, to bound roundoff.
    let per_eps = magnitude_per_eps(&cfg.channel);
    let mut h = eps_probe.abs() * lit(REL_STEP);
    if per_eps > T::zero() {
        h = h.max(lit::<T>(1e-5) / per_eps);
    }
    let stats = |e: T| side_statistics(cfg, e);
    let shifted = [
        stats(eps_probe + h)?,
        stats(eps_probe - h)?,
        stats(eps_probe + h * lit(0.5))?,
        stats(eps_probe - h * lit(0.5))?,
    ];
    let log_p = |x: T, (mu, var): (T, T)| -> T {
        -(var.ln()) * lit(0.5) - (x - mu) * (x - mu) / (lit::<T>(2.0) * var)
    };
    let sd = v.sqrt();
    let (z_max, steps) = (10.0, 4000usize);
    let dz = lit::<T>(2.0 * z_max / steps as f64);
    let norm = T::one() / (T::two_pi()).sqrt();
    let mut f = T::zero();
    for k in 0..=steps {
        let z = lit::<T>(-z_max) + dz * lit(k as f64);
        let x = m + sd * z;
        let d1 = (log_p(x, shifted[0]) - log_p(x, shifted[1])) / (h + h);
        let d2 = (log_p(x, shifted[2]) - log_p(x, shifted[3])) / h;
        let score = (d2 * lit(4.0) - d1) / lit(3.0);
        let w = if k == 0 || k == steps {
            T::one()
        } else if k % 2 == 1 {
            lit(4.0)
        } else {
            lit(2.0)
        };
        f += w * norm * (-(z * z) * lit(0.5)).exp() * score * score;
    }
    f *= dz / lit(3.0);
    Ok(FisherIdentity {
        f,
        f0,
        gap: f - f0,
        variance_term,
    })
}

/// QFI, measurement information and the resulting sensitivity for M repetitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherResult<T: Real> {
    pub qfi: T,
    pub f0: T,
    /// `Δε = 1/√(M F₀)`; infinite when F₀ = 0.
    pub delta_eps: T,
}

impl<T: Real> FisherResult<T> {
    pub fn new(qfi: T, f0: T, repetitions: T) -> Self {
        let mf = repetitions * f0;
        let delta_eps = if mf > T::zero() {
            T::one() / mf.sqrt()
        } else {
            lit(f64::INFINITY)
        };
        Self { qfi, f0, delta_eps }
    }

    /// `F₀ / H`, or 0 when the QFI vanishes.
    pub fn optimality(&self) -> T {
        if self.qfi > T::zero() {
            self.f0 / self.qfi
        } else {
            T::zero()
        }
    }
}

/// Closed-form QFI plus number-sum F₀ at `eps_probe`.
pub fn evaluate<T: Real>(
    cfg: &InterferometerConfig<T>,
    eps_probe: T,
    repetitions: T,
) -> Result<FisherResult<T>> {
    let qfi = qfi_closed(cfg)?;
    let f0 = if cfg.channel.coupling == T::zero() {
        T::zero()
    } else {
        f0_number_sum(cfg, eps_probe)?.value()
    };
    Ok(FisherResult::new(qfi, f0, repetitions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interferometer::{figure4, PhasePreset};
    use crate::symplectic::ChannelKind;

    #[test]
    fn small_param_guard() {
        let c = figure4::<f64>(ChannelKind::TwoModeSqueeze, 0.5);
        assert!(matches!(
            f0_number_sum(&c, 0.1),
            Err(Error::SmallParamViolation { .. })
        ));
        assert!(f0_number_sum(&c, 0.0).is_err());
        assert!(f0_number_sum(&c, 2e-3).is_ok());
    }

    #[test]
    fn numeric_f0_tracks_closed_form() {
        for kind in [ChannelKind::TwoModeSqueeze, ChannelKind::ModeMix] {
            let c = figure4::<f64>(kind, 0.6).with_phase_preset(match kind {
                ChannelKind::ModeMix => PhasePreset::ModeMixOptimal,
                _ => PhasePreset::SqueezeOptimal,
            });
            let rep = f0_number_sum(&c, 2e-3).unwrap();
            assert!(rep.relative_gap().unwrap() < 1e-4, "{kind:?}: {rep:?}");
        }
    }

    #[test]
    fn eq10_identity() {
        let c = figure4::<f64>(ChannelKind::ModeMix, 0.8);
        let id = fisher_vs_f0_identity(&c, 3e-3).unwrap();
        assert!(id.identity_residual() < 1e-6, "{id:?}");
        assert!(id.gap >= 0.0);
    }

    #[test]
    fn no_coupling_no_information() {
        let mut c = figure4::<f64>(ChannelKind::TwoModeSqueeze, 0.8);
        c.channel.coupling = 0.0;
        let id = fisher_vs_f0_identity(&c, 1e-3).unwrap();
        assert_eq!((id.f, id.f0, id.gap), (0.0, 0.0, 0.0));
        let r = evaluate(&c, 1e-3, 100.0).unwrap();
        assert!(r.delta_eps.is_infinite());
    }
}
