//! QFI of the ε-family of Gaussian states by finite differences.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::interferometer::{build_upstream, channel_matrix, InterferometerConfig};
use crate::scalar::{lit, to_f64, Real};
use crate::symplectic::omega;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiOptions<T: Real> {
    /// Central-difference step, Richardson-combined with `step / 2`.
    pub step: T,
    /// Offset δ of the thermal regularisation σ → (1+δ)σ, extrapolated to δ → 0.
    pub regularization: T,
    /// Relative disagreement between the two step sizes that counts as unstable.
    pub instability_tol: T,
}

impl<T: Real> Default for QfiOptions<T> {
    fn default() -> Self {
        let eps = T::default_epsilon();
        Self {
            step: lit::<T>(1e-5).max(eps.powf(lit(1.0 / 3.0))),
            regularization: lit::<T>(1e-6).max(eps.sqrt()),
            instability_tol: lit(1e-4),
        }
    }
}

fn regularized<T: Real>(sigma: &DMatrix<T>, v: &DVector<T>, om: &DMatrix<T>, nu: T) -> Result<T> {
    let s = sigma * nu;
    let m = s.kronecker(&s) - om.kronecker(om);
    let chol = m
        .cholesky()
        .ok_or_else(|| Error::Domain("covariance violates the uncertainty principle".into()))?;
    let v = v * nu;
    Ok(v.dot(&chol.solve(&v)) * lit(0.5))
}

/// Gaussian QFI `½ vec(σ')ᵀ (σ⊗σ − Ω⊗Ω)⁻¹ vec(σ') + d'ᵀ σ⁻¹ d'`.
///
/// The matrix is singular for pure states, and a pseudo-inverse drops a finite part of
/// the limit. Instead σ is replaced by νσ with ν = 1 + δ and ν = 1 + δ/2, and the
/// linear term in δ is extrapolated away.
pub fn gaussian_qfi<T: Real>(
    sigma: &DMatrix<T>,
    d_sigma: &DMatrix<T>,
    d_d: &DVector<T>,
    regularization: T,
) -> Result<T> {
    let om = omega::<T>(sigma.nrows() / 2);
    let v = DVector::from_column_slice(d_sigma.as_slice());
    let one = T::one();
    let h1 = regularized(sigma, &v, &om, one + regularization)?;
    let h2 = regularized(sigma, &v, &om, one + regularization * lit(0.5))?;
    let inv = sigma
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Domain("covariance not positive definite".into()))?;
    Ok(h2 * lit(2.0) - h1 + d_d.dot(&inv.solve(d_d)))
}

/// Pure-state form `¼ Tr[(σ⁻¹σ')²] + d'ᵀ σ⁻¹ d'`.
pub fn gaussian_qfi_pure<T: Real>(
    sigma: &DMatrix<T>,
    d_sigma: &DMatrix<T>,
    d_d: &DVector<T>,
) -> Result<T> {
    let inv = sigma
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Domain("covariance not positive definite".into()))?;
    let x = inv.solve(d_sigma);
    Ok((&x * &x).trace() / lit(4.0) + d_d.dot(&inv.solve(d_d)))
}

/// Which QFI expression to feed the finite-difference derivatives into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfiFormula {
    General,
    Pure,
}

/// QFI with respect to ε at ε = 0 of `d(ε) = S_ε S₊ d₀`, `σ(ε) = S_ε S₊ σ₀ (S_ε S₊)ᵀ`.
pub fn qfi_numeric<T: Real>(cfg: &InterferometerConfig<T>) -> Result<T> {
    qfi_numeric_with(cfg, &QfiOptions::default(), QfiFormula::General)
}

pub fn qfi_numeric_with<T: Real>(
    cfg: &InterferometerConfig<T>,
    opts: &QfiOptions<T>,
    formula: QfiFormula,
) -> Result<T> {
    qfi_numeric_at(cfg, T::zero(), opts, formula)
}

/// QFI of the same family at a non-zero ε.
pub fn qfi_numeric_at<T: Real>(
    cfg: &InterferometerConfig<T>,
    eps0: T,
    opts: &QfiOptions<T>,
    formula: QfiFormula,
) -> Result<T> {
    let up = build_upstream(cfg)?;
    let base = channel_matrix(&cfg.channel, eps0);
    let d0 = &(base.matrix() * up.state.d().as_vector());
    let s0 = &(base.matrix() * up.state.sigma().as_matrix() * base.matrix().transpose());
    // Channels are one-parameter groups, so S(ε₀ + h) = S(h) S(ε₀).
    let at = |eps: T| {
        let s = channel_matrix(&cfg.channel, eps);
        let s = s.matrix();
        (s * d0, s * s0 * s.transpose())
    };
    let central = |h: T| {
        let (dp, sp) = at(h);
        let (dm, sm) = at(-h);
        let k = lit::<T>(0.5) / h;
        ((dp - dm) * k, (sp - sm) * k)
    };
    let (dd1, ds1) = central(opts.step);
    let (dd2, ds2) = central(opts.step * lit(0.5));
    let third = T::one() / lit(3.0);
    let dd = (&dd2 * lit::<T>(4.0) - &dd1) * third;
    let ds = (&ds2 * lit::<T>(4.0) - &ds1) * third;
    let eval = |dd: &DVector<T>, ds: &DMatrix<T>| {
        let ds = (ds + ds.transpose()) * lit::<T>(0.5);
        match formula {
            QfiFormula::General => gaussian_qfi(s0, &ds, dd, opts.regularization),
            QfiFormula::Pure => gaussian_qfi_pure(s0, &ds, dd),
        }
    };
    let fine = eval(&dd, &ds)?;
    let coarse = eval(&dd1, &ds1)?;
    let scale = fine.abs().max(coarse.abs());
    if (fine - coarse).abs() > opts.instability_tol * scale {
        return Err(Error::NumericalInstability {
            coarse: to_f64(coarse),
            fine: to_f64(fine),
        });
    }
    Ok(fine)
}
