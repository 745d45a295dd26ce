//! Turning points, published asymptotic limits and the undepleted-pump angle bound.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fisher::closed::ClosedFormContext;
use crate::interferometer::InterferometerConfig;
use crate::scalar::{lit, Real};
use crate::symplectic::ChannelKind;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoint<T: Real> {
    /// `θ_t = ½ arccos z_t`.
    pub theta: T,
    /// Large-N̄ form `π/4 + ½ arcsin[1/(N + √(N(N+2)))]`.
    pub large_pump: T,
}

/// Interior maximum of the squeezing-channel QFI at optimal phases.
pub fn turning_point_theta<T: Real>(n: T, n_bar: T) -> Result<TurningPoint<T>> {
    if !(n > T::zero() && n_bar > n) {
        return Err(Error::Domain("turning point needs N̄ > N > 0".into()));
    }
    let (one, two, three, four) = (T::one(), lit::<T>(2.0), lit::<T>(3.0), lit::<T>(4.0));
    let root = (n * (n + two)).sqrt();
    let z = (n * (n + four) - two * n_bar)
        / (n * (two * n_bar - three * n - one) + two * (n_bar - n) * root);
    if !(z.abs() <= one) {
        return Err(Error::Domain("|z_t| > 1".into()));
    }
    Ok(TurningPoint {
        theta: z.acos() / two,
        large_pump: T::FRAC_PI_4() + (one / (n + root)).asin() / two,
    })
}

/// Golden-section search for the maximiser of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> T {
    let inv_phi = (lit::<T>(5.0).sqrt() - T::one()) / lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) / lit(2.0)
}

/// Maximises `f(θ)` over `[1e-6, π/2 − 1e-6]` to 1e-9.
pub fn argmax_theta<T: Real>(f: impl Fn(T) -> T) -> T {
    let edge = lit::<T>(1e-6);
    golden_section_max(f, edge, T::FRAC_PI_2() - edge, lit(1e-9))
}

/// Published limiting forms of the QFI and of F₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `B² sin²(2θ) N N̄ / 8` (N̄ ≫ 1, N ≫ 2, ν_B = 0).
    SqueezeLargePump,
    /// `(B²/4)(1 + sin²(ϑ_sq−φ_B) sinh² 2r)` at θ = 0.
    SqueezeThetaZero,
    /// `(B²/4)(1 + N₀ + ½ sin²(ϑ_sq−φ_B) sinh² 2r)` at θ = π/2.
    SqueezeThetaHalfPi,
    /// `(B²/32) N̄ e^{2r} (1 + coth r)` at θ_t.
    SqueezeTurningPoint,
    /// `B² N̄ N / 8` at θ_t, r ≫ 1.
    SqueezeTurningPointLargeR,
    /// `(B²/4)(1 + sinh² 2r + θ²(N₀e^{2r} + N/2 − sinh² 2r))`.
    SqueezeSmallTheta,
    /// `½ B² θ² N₀ N`.
    SqueezeSmallThetaLargeR,
    /// `A² sin²θ (1 − sin²θ sin²φ_A) N̄ N / 2` (ν_A = π).
    ModeMixLargePump,
    /// `(A²/4) sinh² 2r` at θ = 0.
    ModeMixThetaZero,
    /// `(A²/4)(N₀ + ½ sinh² 2r)` at θ = π/2, φ_A = π/2.
    ModeMixHalfPiPhiHalfPi,
    /// `(A²/4)(N̄ e^{2r} + N)` at θ = π/2, φ_A = 0.
    ModeMixHalfPiPhiZero,
    /// `½ A² N̄ N` at θ = π/2, φ_A = 0, r ≫ 1.
    ModeMixHalfPiPhiZeroLargeR,
    /// `(A²/4)(sinh² 2r + θ²(N₀e^{2r} + N/2 − sinh² 2r))`.
    ModeMixSmallTheta,
    /// `½ A² θ² N₀ N`.
    ModeMixSmallThetaLargeR,
    /// F₀ leading term `(B²/16) sin²(2θ) η₁ N̄`.
    F0SqueezeLeading,
    /// F₀ leading term `(A²/4) sin²θ Φ₁ η₃ N̄`.
    F0ModeMixLeading,
}

impl Regime {
    pub const ALL: [Regime; 16] = [
        Self::SqueezeLargePump,
        Self::SqueezeThetaZero,
        Self::SqueezeThetaHalfPi,
        Self::SqueezeTurningPoint,
        Self::SqueezeTurningPointLargeR,
        Self::SqueezeSmallTheta,
        Self::SqueezeSmallThetaLargeR,
        Self::ModeMixLargePump,
        Self::ModeMixThetaZero,
        Self::ModeMixHalfPiPhiHalfPi,
        Self::ModeMixHalfPiPhiZero,
        Self::ModeMixHalfPiPhiZeroLargeR,
        Self::ModeMixSmallTheta,
        Self::ModeMixSmallThetaLargeR,
        Self::F0SqueezeLeading,
        Self::F0ModeMixLeading,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SqueezeLargePump => "squeeze-large-pump",
            Self::SqueezeThetaZero => "squeeze-theta-zero",
            Self::SqueezeThetaHalfPi => "squeeze-theta-half-pi",
            Self::SqueezeTurningPoint => "squeeze-turning-point",
            Self::SqueezeTurningPointLargeR => "squeeze-turning-point-large-r",
            Self::SqueezeSmallTheta => "squeeze-small-theta",
            Self::SqueezeSmallThetaLargeR => "squeeze-small-theta-large-r",
            Self::ModeMixLargePump => "modemix-large-pump",
            Self::ModeMixThetaZero => "modemix-theta-zero",
            Self::ModeMixHalfPiPhiHalfPi => "modemix-half-pi-phi-half-pi",
            Self::ModeMixHalfPiPhiZero => "modemix-half-pi-phi-zero",
            Self::ModeMixHalfPiPhiZeroLargeR => "modemix-half-pi-phi-zero-large-r",
            Self::ModeMixSmallTheta => "modemix-small-theta",
            Self::ModeMixSmallThetaLargeR => "modemix-small-theta-large-r",
            Self::F0SqueezeLeading => "f0-squeeze-leading",
            Self::F0ModeMixLeading => "f0-modemix-leading",
        }
    }

    pub fn channel(self) -> ChannelKind {
        match self {
            Self::SqueezeLargePump
            | Self::SqueezeThetaZero
            | Self::SqueezeThetaHalfPi
            | Self::SqueezeTurningPoint
            | Self::SqueezeTurningPointLargeR
            | Self::SqueezeSmallTheta
            | Self::SqueezeSmallThetaLargeR
            | Self::F0SqueezeLeading => ChannelKind::TwoModeSqueeze,
            _ => ChannelKind::ModeMix,
        }
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Regime(s.to_string()))
    }
}

/// Evaluates the limiting form named by `regime` at `cfg`.
pub fn qfi_asymptotic<T: Real>(cfg: &InterferometerConfig<T>, regime: Regime) -> Result<T> {
    if cfg.channel.kind != regime.channel() {
        return Err(Error::Kind {
            expected: regime.channel().name(),
            found: cfg.channel.kind.name(),
        });
    }
    let ctx = ClosedFormContext::from_config(cfg)?;
    let (two, four) = (lit::<T>(2.0), lit::<T>(4.0));
    let c2 = ctx.coupling * ctx.coupling;
    let (r, t, n0, nb) = (ctx.r, ctx.theta, ctx.alpha0_sq, ctx.n_bar);
    let n = ctx.n_squeezed();
    let sh2sq = (two * r).sinh().powi(2);
    let e2r = (two * r).exp();
    let st2 = t.sin().powi(2);
    let s2t2 = (two * t).sin().powi(2);
    let small = |offset: T| c2 / four * (offset + sh2sq + t * t * (n0 * e2r + n / two - sh2sq));
    Ok(match regime {
        Regime::SqueezeLargePump => c2 * s2t2 * n * nb / lit(8.0),
        Regime::SqueezeThetaZero => c2 / four * (T::one() + ctx.eta2 * sh2sq),
        Regime::SqueezeThetaHalfPi => c2 / four * (T::one() + n0 + ctx.eta2 * sh2sq / two),
        Regime::SqueezeTurningPoint => c2 / lit(32.0) * nb * e2r * (T::one() + T::one() / r.tanh()),
        Regime::SqueezeTurningPointLargeR => c2 * nb * n / lit(8.0),
        Regime::SqueezeSmallTheta => small(T::one()),
        Regime::SqueezeSmallThetaLargeR | Regime::ModeMixSmallThetaLargeR => {
            c2 * t * t * n0 * n / two
        }
        Regime::ModeMixLargePump => {
            c2 * st2 * (T::one() - st2 * ctx.phi.sin().powi(2)) * nb * n / two
        }
        Regime::ModeMixThetaZero => c2 / four * sh2sq,
        Regime::ModeMixHalfPiPhiHalfPi => c2 / four * (n0 + sh2sq / two),
        Regime::ModeMixHalfPiPhiZero => c2 / four * (nb * e2r + n),
        Regime::ModeMixHalfPiPhiZeroLargeR => c2 * nb * n / two,
        Regime::ModeMixSmallTheta => small(T::zero()),
        Regime::F0SqueezeLeading => c2 / lit(16.0) * s2t2 * ctx.eta1 * nb,
        Regime::F0ModeMixLeading => c2 / four * st2 * ctx.phi1 * ctx.eta3 * nb,
    })
}

/// Largest tritter angle keeping `N(θ) ≤ δ N₀(θ)` when `N = γ N₀`.
///
/// `γ = 0` is accepted as the γ → 0 limit.
pub fn theta_bound<T: Real>(gamma: T, delta: T) -> Result<T> {
    if !(gamma >= T::zero() && gamma <= delta && delta < T::one()) {
        return Err(Error::Domain("theta bound needs 0 ≤ γ ≤ δ < 1".into()));
    }
    let two = lit::<T>(2.0);
    let z = (delta * gamma + two * delta - lit::<T>(3.0) * gamma - two)
        / (delta * gamma - two * delta + gamma - two);
    if !(z.abs() <= T::one() + T::default_epsilon() * lit(8.0)) {
        return Err(Error::Domain("bound argument outside [−1, 1]".into()));
    }
    Ok(z.min(T::one()).acos() / two)
}

/// Pump and side populations after the tritter: `(N₀(θ), N(θ))`.
pub fn tritter_populations<T: Real>(n0: T, n: T, theta: T) -> (T, T) {
    let (s2, c2) = (theta.sin().powi(2), theta.cos().powi(2));
    let half = lit::<T>(0.5);
    (
        n0 * c2 + half * n * s2,
        n0 * s2 + half * n * (T::one() + c2),
    )
}
