//! Gaussian states, the coherent pump input, subsystem reduction and photon-number statistics.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::symplectic::{CovarianceMatrix, QuadratureVector};

/// Displacement and covariance of an n-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T: Real> {
    d: QuadratureVector<T>,
    sigma: CovarianceMatrix<T>,
}

impl<T: Real> GaussianState<T> {
    /// Checks dimensions and `σ + iΩ ⪰ 0`.
    pub fn new(d: QuadratureVector<T>, sigma: CovarianceMatrix<T>) -> Result<Self> {
        if d.modes() != sigma.modes() {
            return Err(Error::DimensionMismatch {
                expected: sigma.modes() * 2,
                found: d.modes() * 2,
            });
        }
        let scale = sigma.as_matrix().amax().max(T::one());
        let tol = lit::<T>(1e-9).max(T::default_epsilon() * lit(1e3)) * scale;
        if !sigma.is_physical(tol) {
            return Err(Error::InvalidParameter(
                "covariance violates the uncertainty relation".into(),
            ));
        }
        Ok(Self { d, sigma })
    }

    pub(crate) fn from_parts_unchecked(d: DVector<T>, sigma: DMatrix<T>) -> Self {
        Self {
            d: QuadratureVector::new(d).expect("finite displacement"),
            sigma: CovarianceMatrix::new(sigma).expect("symmetric covariance"),
        }
    }

    pub fn vacuum(n: usize) -> Self {
        Self {
            d: QuadratureVector::zeros(n),
            sigma: CovarianceMatrix::vacuum(n),
        }
    }

    pub fn modes(&self) -> usize {
        self.d.modes()
    }

    pub fn d(&self) -> &QuadratureVector<T> {
        &self.d
    }

    pub fn sigma(&self) -> &CovarianceMatrix<T> {
        &self.sigma
    }

    /// Replaces the displacement of mode `k` by `(q, p)`.
    pub fn with_mode_displacement(&self, k: usize, q: T, p: T) -> Result<Self> {
        if k >= self.modes() {
            return Err(Error::ModeOutOfRange {
                index: k,
                modes: self.modes(),
            });
        }
        let mut d = self.d.as_vector().clone();
        d[2 * k] = q;
        d[2 * k + 1] = p;
        Ok(Self {
            d: QuadratureVector::new(d)?,
            sigma: self.sigma.clone(),
        })
    }

    /// Mean particle number summed over all modes.
    pub fn total_number(&self) -> T {
        number_sum_mean(self)
    }
}

/// Coherent pump of amplitude `α = √N̄ e^{iϑ₀}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PumpSpec<T: Real> {
    pub n_bar: T,
    pub vartheta0: T,
}

impl<T: Real> PumpSpec<T> {
    pub fn new(n_bar: T, vartheta0: T) -> Result<Self> {
        if !(n_bar.is_finite() && vartheta0.is_finite()) || n_bar <= T::zero() {
            return Err(Error::InvalidParameter("pump needs finite N̄ > 0".into()));
        }
        Ok(Self { n_bar, vartheta0 })
    }

    /// Pump quadratures `√n (2 cos ϑ₀, 2 sin ϑ₀)` for mean number `n`.
    pub fn quadratures(&self, n: T) -> (T, T) {
        let amp = lit::<T>(2.0) * n.sqrt();
        let (s, c) = self.vartheta0.sin_cos();
        (amp * c, amp * s)
    }
}

/// Pump in mode 0, vacuum elsewhere.
pub fn coherent_pump_state<T: Real>(p: &PumpSpec<T>, n: usize) -> Result<GaussianState<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one mode".into()));
    }
    let (q, pp) = p.quadratures(p.n_bar);
    GaussianState::vacuum(n).with_mode_displacement(0, q, pp)
}

/// Ordered list of distinct mode indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSubset(Vec<usize>);

impl ModeSubset {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        for (k, i) in indices.iter().enumerate() {
            if indices[..k].contains(i) {
                return Err(Error::DuplicateMode(*i));
            }
        }
        if indices.is_empty() {
            return Err(Error::InvalidParameter("empty mode subset".into()));
        }
        Ok(Self(indices))
    }

    /// Side modes `(1, 2)` of the pump-first three-mode layout.
    pub fn sides() -> Self {
        Self(vec![1, 2])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// Restricts `state` to the modes in `keep`, in that order.
pub fn reduce<T: Real>(state: &GaussianState<T>, keep: &ModeSubset) -> Result<GaussianState<T>> {
    let n = state.modes();
    let rows: Vec<usize> = keep
        .0
        .iter()
        .map(|&k| {
            if k >= n {
                Err(Error::ModeOutOfRange { index: k, modes: n })
            } else {
                Ok([2 * k, 2 * k + 1])
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let d = state.d.as_vector().select_rows(rows.iter());
    let s = state
        .sigma
        .as_matrix()
        .select_rows(rows.iter())
        .select_columns(rows.iter());
    Ok(GaussianState::from_parts_unchecked(d, s))
}

/// `⟨Ŝ⟩ = ¼[Tr σ + dᵀd − 2n]`, the mean total particle number.
pub fn number_sum_mean<T: Real>(state: &GaussianState<T>) -> T {
    let d = state.d.as_vector();
    let n: T = lit(state.modes() as f64);
    (state.sigma.as_matrix().trace() + d.dot(d) - lit::<T>(2.0) * n) / lit(4.0)
}

/// `Var(Ŝ) = ⅛[Tr σ² + 2dᵀσd − 2n]`.
pub fn number_sum_variance<T: Real>(state: &GaussianState<T>) -> T {
    let d = state.d.as_vector();
    let s = state.sigma.as_matrix();
    let n: T = lit(state.modes() as f64);
    let tr2 = s.component_mul(s).sum();
    (tr2 + lit::<T>(2.0) * d.dot(&(s * d)) - lit::<T>(2.0) * n) / lit(8.0)
}

fn jz<T: Real>(state: &GaussianState<T>) -> Result<DMatrix<T>> {
    if state.modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: 2 * state.modes(),
        });
    }
    Ok(DMatrix::from_diagonal(&DVector::from_vec(vec![
        T::one(),
        T::one(),
        -T::one(),
        -T::one(),
    ])))
}

/// Number difference of a two-mode state: `¼[Tr(σJ_z) + dᵀJ_z d]`.
pub fn heterodyne_mean<T: Real>(state: &GaussianState<T>) -> Result<T> {
    let j = jz(state)?;
    let d = state.d.as_vector();
    let s = state.sigma.as_matrix();
    Ok(((s * &j).trace() + d.dot(&(&j * d))) / lit(4.0))
}

/// `⅛[Tr((σJ_z)²) + 2dᵀJ_zσJ_z d − 2n]`.
pub fn heterodyne_variance<T: Real>(state: &GaussianState<T>) -> Result<T> {
    let j = jz(state)?;
    let d = state.d.as_vector();
    let sj = state.sigma.as_matrix() * &j;
    let jd = &j * d;
    let tr = (&sj * &sj).trace();
    Ok((tr + lit::<T>(2.0) * jd.dot(&(state.sigma.as_matrix() * &jd)) - lit(4.0)) / lit(8.0))
}

/// `⟨Ŝ²⟩` of the number difference. When the mean vanishes this is the only first-order signal.
pub fn heterodyne_second_moment<T: Real>(state: &GaussianState<T>) -> Result<T> {
    let m = heterodyne_mean(state)?;
    Ok(heterodyne_variance(state)? + m * m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{phase_channel, two_mode_squeezer, SqueezerParams};
    use approx::assert_abs_diff_eq;

    #[test]
    fn pump_displacements() {
        let s = coherent_pump_state(&PumpSpec::new(1.0, 0.0).unwrap(), 3).unwrap();
        assert_eq!(
            s.d().as_vector().as_slice(),
            &[2.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        );
        let s = coherent_pump_state(&PumpSpec::new(4.0, std::f64::consts::FRAC_PI_2).unwrap(), 3)
            .unwrap();
        assert_abs_diff_eq!(s.d().as_vector()[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.d().as_vector()[1], 4.0, epsilon = 1e-15);
        assert_eq!(s.sigma().as_matrix(), &DMatrix::identity(6, 6));
        assert!(PumpSpec::new(0.0, 0.0).is_err());
    }

    #[test]
    fn coherent_number_statistics() {
        // |α|² = 5 in one mode: Poissonian.
        let d = QuadratureVector::new(DVector::from_vec(vec![2.0 * 5f64.sqrt(), 0.0, 0.0, 0.0]))
            .unwrap();
        let s = GaussianState::new(d, CovarianceMatrix::vacuum(2)).unwrap();
        assert_abs_diff_eq!(number_sum_mean(&s), 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(number_sum_variance(&s), 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(heterodyne_mean(&s).unwrap(), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn squeezed_sides() {
        let r: f64 = 0.4;
        let op = two_mode_squeezer(&SqueezerParams::new(r, 0.3).unwrap(), (1, 2), 3).unwrap();
        let out = op.apply(&GaussianState::vacuum(3)).unwrap();
        let sides = reduce(&out, &ModeSubset::sides()).unwrap();
        assert_abs_diff_eq!(
            sides.sigma().as_matrix()[(0, 0)],
            (2.0 * r).cosh(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            number_sum_mean(&sides),
            2.0 * r.sinh().powi(2),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            number_sum_variance(&sides),
            (2.0 * r).sinh().powi(2),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(heterodyne_mean(&sides).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(heterodyne_variance(&sides).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn reduce_identity_and_errors() {
        let s = coherent_pump_state(&PumpSpec::new(2.0, 0.4).unwrap(), 3).unwrap();
        let all = reduce(&s, &ModeSubset::new(vec![0, 1, 2]).unwrap()).unwrap();
        assert_eq!(all, s);
        assert!(matches!(
            reduce(&s, &ModeSubset::new(vec![3]).unwrap()),
            Err(Error::ModeOutOfRange { .. })
        ));
        assert!(ModeSubset::new(vec![1, 1]).is_err());
        let v = reduce(&GaussianState::<f64>::vacuum(3), &ModeSubset::sides()).unwrap();
        assert_eq!(v, GaussianState::vacuum(2));
        assert_eq!(number_sum_mean(&v), 0.0);
        assert_eq!(number_sum_variance(&v), 0.0);
    }

    #[test]
    fn equal_coherent_difference_vanishes() {
        let d = QuadratureVector::new(DVector::from_vec(vec![1.0, 2.0, 1.0, 2.0])).unwrap();
        let s = GaussianState::new(d, CovarianceMatrix::vacuum(2)).unwrap();
        assert_abs_diff_eq!(heterodyne_mean(&s).unwrap(), 0.0, epsilon = 1e-15);
        assert!(heterodyne_mean(&GaussianState::<f64>::vacuum(3)).is_err());
    }

    #[test]
    fn phase_rotation_keeps_number() {
        let op = two_mode_squeezer(&SqueezerParams::new(0.5, 0.0).unwrap(), (1, 2), 3).unwrap();
        let s = op
            .apply(&coherent_pump_state(&PumpSpec::new(3.0, 0.0).unwrap(), 3).unwrap())
            .unwrap();
        let s = s.with_mode_displacement(1, 0.7, -0.2).unwrap();
        let rotated = phase_channel(1.3, (1, 2), 3).unwrap().apply(&s).unwrap();
        assert_abs_diff_eq!(
            number_sum_mean(&s),
            number_sum_mean(&rotated),
            epsilon = 1e-12
        );
    }

    #[test]
    fn unphysical_state_rejected() {
        let sigma = CovarianceMatrix::new(DMatrix::<f64>::identity(2, 2) * 0.9).unwrap();
        assert!(GaussianState::new(QuadratureVector::zeros(1), sigma).is_err());
    }
}
