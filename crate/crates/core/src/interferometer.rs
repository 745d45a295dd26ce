//! The pumped-up SU(1,1) circuit: squeezer, tritter, estimation channel, and their inverses.
//!
//! Mode 0 is the pump, modes 1 and 2 are the side modes. The full circuit is
//! `S = S₋ S_ε S₊` with `S₊ = S_t(θ) S_s(r)` and `S₋ = S_s(−r) S_t(−θ)`.

use crate::error::{Error, Result};
use crate::gaussian::{
    coherent_pump_state, number_sum_mean, number_sum_variance, reduce, GaussianState, ModeSubset,
    PumpSpec,
};
use crate::scalar::{lit, Real};
use crate::symplectic::{
    channel_op, compose, tritter, two_mode_squeezer, ChannelKind, ChannelSpec, SqueezerParams,
    SymplecticOp, TritterParams,
};

pub const MODES: usize = 3;
pub const PUMP: usize = 0;
pub const SIDES: (usize, usize) = (1, 2);

#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerConfig<T: Real> {
    pub pump: PumpSpec<T>,
    pub squeezer: SqueezerParams<T>,
    pub tritter: TritterParams<T>,
    pub channel: ChannelSpec<T>,
}

/// Pump population left after the first squeezer, `N₀ = N̄ − 2 sinh² r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpRenormalization<T: Real> {
    pub alpha0_sq: T,
    pub applied: bool,
}

impl<T: Real> InterferometerConfig<T> {
    pub fn new(
        pump: PumpSpec<T>,
        squeezer: SqueezerParams<T>,
        tritter: TritterParams<T>,
        channel: ChannelSpec<T>,
    ) -> Result<Self> {
        let cfg = Self {
            pump,
            squeezer,
            tritter,
            channel,
        };
        cfg.renormalization()?;
        Ok(cfg)
    }

    /// Builds a configuration from the pump population `N₀` after squeezing instead of `N̄`.
    pub fn from_alpha0_sq(
        alpha0_sq: T,
        vartheta0: T,
        squeezer: SqueezerParams<T>,
        tritter: TritterParams<T>,
        channel: ChannelSpec<T>,
    ) -> Result<Self> {
        let n_bar = alpha0_sq + squeezer.n_squeezed();
        Self::new(PumpSpec::new(n_bar, vartheta0)?, squeezer, tritter, channel)
    }

    /// `N = 2 sinh² r`.
    pub fn n_squeezed(&self) -> T {
        self.squeezer.n_squeezed()
    }

    pub fn renormalization(&self) -> Result<PumpRenormalization<T>> {
        let n = self.n_squeezed();
        let alpha0_sq = self.pump.n_bar - n;
        if alpha0_sq <= T::zero() {
            return Err(Error::PumpDepleted {
                n_bar: crate::scalar::to_f64(self.pump.n_bar),
                squeezed: crate::scalar::to_f64(n),
            });
        }
        Ok(PumpRenormalization {
            alpha0_sq,
            applied: true,
        })
    }

    /// `N₀ = |α₀|²`.
    pub fn alpha0_sq(&self) -> Result<T> {
        Ok(self.renormalization()?.alpha0_sq)
    }

    pub fn with_theta(&self, theta: T) -> Self {
        let mut c = self.clone();
        c.tritter.theta = theta;
        c
    }

    pub fn with_channel(&self, channel: ChannelSpec<T>) -> Self {
        let mut c = self.clone();
        c.channel = channel;
        c
    }

    /// Sets the phases named by `preset`, keeping ϑ₀ and (where free) the channel phase.
    pub fn with_phase_preset(&self, preset: PhasePreset) -> Self {
        let mut c = self.clone();
        let pi = T::PI();
        let half = lit::<T>(0.5);
        let v0 = c.pump.vartheta0;
        match preset {
            PhasePreset::SqueezeOptimal | PhasePreset::Caption => {
                let nu = if preset == PhasePreset::Caption {
                    pi * half
                } else {
                    T::zero()
                };
                match c.channel.kind {
                    ChannelKind::TwoModeSqueeze => {
                        let phi_b = c.channel.phase;
                        c.squeezer.theta_sq = phi_b + pi * half;
                        // ν_B = 2ϑ − 2ϑ₀ − ϑ_sq + 2φ_B
                        c.tritter.vartheta = (nu + lit::<T>(2.0) * v0 + c.squeezer.theta_sq
                            - lit::<T>(2.0) * phi_b)
                            * half;
                    }
                    ChannelKind::ModeMix => {
                        c.channel.phase = T::zero();
                        c.tritter.vartheta = (nu + lit::<T>(2.0) * v0 - c.squeezer.theta_sq) * half;
                    }
                    ChannelKind::PhaseShift => {
                        // ν_P = 2ϑ − 2ϑ₀ + ϑ_sq + π
                        c.tritter.vartheta =
                            (nu + lit::<T>(2.0) * v0 - c.squeezer.theta_sq - pi) * half;
                    }
                }
            }
            PhasePreset::ModeMixOptimal => {
                c.channel.phase = T::zero();
                c.tritter.vartheta = v0 - c.squeezer.theta_sq * half + pi * half;
            }
        }
        c
    }
}

/// Named phase relations.
///
/// * `SqueezeOptimal`: ϑ_sq = φ_B + π/2 and ν_B = 0 (maximises the squeezing-channel QFI).
/// * `ModeMixOptimal`: φ_A = 0 and ν_A = π.
/// * `Caption`: the figure setting, ϑ_sq = φ_B + π/2 with ν = π/2 for the active channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhasePreset {
    SqueezeOptimal,
    ModeMixOptimal,
    Caption,
}

impl std::str::FromStr for PhasePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squeeze-optimal" => Ok(Self::SqueezeOptimal),
            "modemix-optimal" => Ok(Self::ModeMixOptimal),
            "caption" => Ok(Self::Caption),
            other => Err(Error::InvalidParameter(format!(
                "unknown phase preset `{other}`"
            ))),
        }
    }
}

/// Figure parameter set: r = 0.4, N₀ = 3.4, A = B = 2, unit phase coupling.
///
/// All three channels share one physical phase choice, ϑ₀ = ϑ = φ = 0 and ϑ_sq = π/2,
/// which gives cos ν_B = cos ν_P = 0 and ν_A = π/2.
pub fn figure4<T: Real>(kind: ChannelKind, theta: T) -> InterferometerConfig<T> {
    let channel = match kind {
        ChannelKind::TwoModeSqueeze => ChannelSpec::squeeze(T::zero(), lit(2.0)),
        ChannelKind::ModeMix => ChannelSpec::mode_mix(T::zero(), lit(2.0)),
        ChannelKind::PhaseShift => ChannelSpec::phase_shift(T::one()),
    };
    InterferometerConfig::from_alpha0_sq(
        lit(3.4),
        T::zero(),
        SqueezerParams {
            r: lit(0.4),
            theta_sq: T::FRAC_PI_2(),
        },
        TritterParams {
            theta,
            vartheta: T::zero(),
        },
        channel,
    )
    .expect("figure parameters are valid")
}

/// `S₊` together with the state it produces from the renormalised input.
#[derive(Debug, Clone)]
pub struct Upstream<T: Real> {
    pub s_plus: SymplecticOp<T>,
    pub state: GaussianState<T>,
    pub renormalization: PumpRenormalization<T>,
}

/// Input after the first squeezer with the pump amplitude replaced by `α₀`.
pub fn renormalized_input<T: Real>(cfg: &InterferometerConfig<T>) -> Result<GaussianState<T>> {
    let renorm = cfg.renormalization()?;
    let squeezer = two_mode_squeezer(&cfg.squeezer, SIDES, MODES)?;
    let squeezed = squeezer.apply(&coherent_pump_state(&cfg.pump, MODES)?)?;
    let (q, p) = cfg.pump.quadratures(renorm.alpha0_sq);
    squeezed.with_mode_displacement(PUMP, q, p)
}

pub fn build_upstream<T: Real>(cfg: &InterferometerConfig<T>) -> Result<Upstream<T>> {
    let renormalization = cfg.renormalization()?;
    let squeezer = two_mode_squeezer(&cfg.squeezer, SIDES, MODES)?;
    let mix = tritter(&cfg.tritter, PUMP, SIDES, MODES)?;
    let state = mix.apply(&renormalized_input(cfg)?)?;
    Ok(Upstream {
        s_plus: compose(&[squeezer, mix])?,
        state,
        renormalization,
    })
}

/// `S₋ = S_s(−r) S_t(−θ)`.
pub fn downstream<T: Real>(cfg: &InterferometerConfig<T>) -> Result<SymplecticOp<T>> {
    let unmix = tritter(
        &TritterParams {
            theta: -cfg.tritter.theta,
            vartheta: cfg.tritter.vartheta,
        },
        PUMP,
        SIDES,
        MODES,
    )?;
    let unsqueeze = two_mode_squeezer(
        &SqueezerParams {
            r: -cfg.squeezer.r,
            theta_sq: cfg.squeezer.theta_sq,
        },
        SIDES,
        MODES,
    )?;
    compose(&[unmix, unsqueeze])
}

/// Channel operator with magnitude set from ε.
pub fn channel_matrix<T: Real>(spec: &ChannelSpec<T>, eps: T) -> SymplecticOp<T> {
    channel_op(&spec.at_epsilon(eps), SIDES, MODES).expect("fixed side modes are valid")
}

/// State right after the channel, `S_ε S₊` applied to the renormalised input.
pub fn probe_state<T: Real>(cfg: &InterferometerConfig<T>, eps: T) -> Result<GaussianState<T>> {
    let up = build_upstream(cfg)?;
    channel_matrix(&cfg.channel, eps).apply(&up.state)
}

/// Output of the whole circuit.
pub fn run_full<T: Real>(cfg: &InterferometerConfig<T>, eps: T) -> Result<GaussianState<T>> {
    downstream(cfg)?.apply(&probe_state(cfg, eps)?)
}

/// Number-sum mean and variance of the side modes at the output.
pub fn side_statistics<T: Real>(cfg: &InterferometerConfig<T>, eps: T) -> Result<(T, T)> {
    let sides = reduce(&run_full(cfg, eps)?, &ModeSubset::sides())?;
    Ok((number_sum_mean(&sides), number_sum_variance(&sides)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    fn cfg(kind: ChannelKind) -> InterferometerConfig<f64> {
        let channel = match kind {
            ChannelKind::TwoModeSqueeze => ChannelSpec::squeeze(0.4, 2.0),
            ChannelKind::ModeMix => ChannelSpec::mode_mix(1.1, 2.0),
            ChannelKind::PhaseShift => ChannelSpec::phase_shift(1.0),
        };
        InterferometerConfig::new(
            PumpSpec::new(12.0, 0.3).unwrap(),
            SqueezerParams::new(0.5, 0.9).unwrap(),
            TritterParams::new(0.7, 1.9).unwrap(),
            channel,
        )
        .unwrap()
    }

    #[test]
    fn figure4_pump_population() {
        let c = figure4::<f64>(ChannelKind::TwoModeSqueeze, 0.0);
        assert_abs_diff_eq!(c.alpha0_sq().unwrap(), 3.4, epsilon = 1e-14);
    }

    #[test]
    fn trivial_circuit_is_coherent_input() {
        let c = InterferometerConfig::new(
            PumpSpec::new(5.0, 0.6).unwrap(),
            SqueezerParams::new(0.0, 0.0).unwrap(),
            TritterParams::new(0.0, 0.0).unwrap(),
            ChannelSpec::squeeze(0.0, 2.0),
        )
        .unwrap();
        let up = build_upstream(&c).unwrap();
        assert_eq!(up.state, coherent_pump_state(&c.pump, 3).unwrap());
    }

    #[test]
    fn half_pi_tritter_empties_pump_amplitude() {
        let c = InterferometerConfig::new(
            PumpSpec::new(5.0, 0.0).unwrap(),
            SqueezerParams::new(0.0, 0.0).unwrap(),
            TritterParams::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap(),
            ChannelSpec::squeeze(0.0, 2.0),
        )
        .unwrap();
        let d = build_upstream(&c).unwrap().state.d().as_vector().clone();
        assert_abs_diff_eq!(d[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d[3], -(10f64.sqrt()), epsilon = 1e-12);
        assert_abs_diff_eq!(d[5], -(10f64.sqrt()), epsilon = 1e-12);
    }

    #[test]
    fn particle_number_conserved_upstream() {
        for kind in ChannelKind::ALL {
            let c = cfg(kind);
            let up = build_upstream(&c).unwrap();
            assert_abs_diff_eq!(up.state.total_number(), c.pump.n_bar, epsilon = 1e-10);
        }
    }

    #[test]
    fn zero_epsilon_round_trips() {
        for kind in ChannelKind::ALL {
            let c = cfg(kind);
            let out = run_full(&c, 0.0).unwrap();
            let input = renormalized_input(&c).unwrap();
            // S_s(r) acted on σ₀ = 1; the inverse pair undoes it.
            assert!((out.sigma().as_matrix() - DMatrix::identity(6, 6)).amax() < 1e-10);
            assert!((out.d().as_vector() - input.d().as_vector()).amax() < 1e-10);
            let (m, v) = side_statistics(&c, 0.0).unwrap();
            assert_abs_diff_eq!(m, 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn circuit_without_channel_is_identity() {
        let c = cfg(ChannelKind::ModeMix);
        let up = build_upstream(&c).unwrap();
        let total = compose(&[up.s_plus, downstream(&c).unwrap()]).unwrap();
        assert!((total.matrix() - DMatrix::identity(6, 6)).amax() < 1e-10);
    }

    #[test]
    fn epsilon_to_magnitude() {
        let s = ChannelSpec::squeeze(0.0, 2.0).at_epsilon(0.02);
        assert_abs_diff_eq!(s.magnitude, 0.01, epsilon = 1e-17);
        let m = ChannelSpec::mode_mix(0.0, 2.0).at_epsilon(0.02);
        assert_abs_diff_eq!(m.magnitude, 0.01, epsilon = 1e-17);
        for spec in [
            ChannelSpec::squeeze(0.3, 2.0),
            ChannelSpec::phase_shift(1.0),
        ] {
            assert_eq!(
                channel_matrix(&spec, 0.0).matrix(),
                &DMatrix::identity(6, 6)
            );
        }
    }

    #[test]
    fn phase_period_leaves_statistics() {
        // φ = 2π flips the sign of both side blocks: side statistics right after the
        // channel are unchanged, and so is the output when the tritter is off.
        let two_pi = 2.0 * std::f64::consts::PI;
        let c = cfg(ChannelKind::PhaseShift);
        let at = |eps| {
            let s = reduce(&probe_state(&c, eps).unwrap(), &ModeSubset::sides()).unwrap();
            (number_sum_mean(&s), number_sum_variance(&s))
        };
        let (a, b) = (at(0.0), at(two_pi));
        assert_abs_diff_eq!(a.0, b.0, epsilon = 1e-10);
        assert_abs_diff_eq!(a.1, b.1, epsilon = 1e-10);
        let c = c.with_theta(0.0);
        let (m, v) = side_statistics(&c, two_pi).unwrap();
        assert_abs_diff_eq!(m, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn depleted_pump_rejected() {
        let err = InterferometerConfig::new(
            PumpSpec::new(0.1, 0.0).unwrap(),
            SqueezerParams::new(1.0, 0.0).unwrap(),
            TritterParams::new(0.0, 0.0).unwrap(),
            ChannelSpec::squeeze(0.0, 1.0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PumpDepleted { .. }));
    }
}
