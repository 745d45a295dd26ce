//! Symplectic matrices of the interferometer elements in the real q,p representation.
//!
//! Quadratures are `x₂ᵢ₋₁ = a + a†`, `x₂ᵢ = i(a† − a)`, so the vacuum covariance is the
//! identity and `[x₂ᵢ₋₁, x₂ᵢ] = 2i`. Modes are interleaved `(q₁, p₁, q₂, p₂, …)` and the
//! symplectic form is `Ω = ⊕ [[0, 1], [−1, 0]]`.

use nalgebra::{DMatrix, DVector, Matrix2};

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;
use crate::scalar::{lit, Real};

/// Symmetry tolerance for covariance matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Tolerance for `S Ω Sᵀ = Ω` on constructed operators.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// Displacement vector `d = ⟨x⟩` of an n-mode state.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureVector<T: Real>(DVector<T>);

impl<T: Real> QuadratureVector<T> {
    pub fn new(entries: DVector<T>) -> Result<Self> {
        let len = entries.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "quadrature vector length {len} is not 2n with n ≥ 1"
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite displacement".into()));
        }
        Ok(Self(entries))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DVector::zeros(2 * n))
    }

    pub fn modes(&self) -> usize {
        self.0.len() / 2
    }

    pub fn as_vector(&self) -> &DVector<T> {
        &self.0
    }

    pub fn into_inner(self) -> DVector<T> {
        self.0
    }
}

/// Covariance matrix `σᵢⱼ = ½⟨{xᵢ, xⱼ}⟩ − ⟨xᵢ⟩⟨xⱼ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T: Real>(DMatrix<T>);

impl<T: Real> CovarianceMatrix<T> {
    /// Checks shape, finiteness and symmetry. The uncertainty bound is checked separately
    /// by [`CovarianceMatrix::is_physical`] because it needs an eigendecomposition.
    pub fn new(entries: DMatrix<T>) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: c,
            });
        }
        if r == 0 || r % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "covariance side {r} is not 2n with n ≥ 1"
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite covariance".into()));
        }
        let scale = entries.amax().max(T::one());
        let tol = lit::<T>(SYMMETRY_TOL).max(T::default_epsilon() * lit(64.0)) * scale;
        for i in 0..r {
            for j in (i + 1)..r {
                if (entries[(i, j)] - entries[(j, i)]).abs() > tol {
                    return Err(Error::InvalidParameter(format!(
                        "covariance not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self(entries))
    }

    pub fn vacuum(n: usize) -> Self {
        Self(DMatrix::identity(2 * n, 2 * n))
    }

    pub fn modes(&self) -> usize {
        self.0.nrows() / 2
    }

    pub fn as_matrix(&self) -> &DMatrix<T> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<T> {
        self.0
    }

    /// Smallest eigenvalue of the Hermitian matrix `σ + iΩ`, via its real 2×2-block embedding.
    pub fn uncertainty_margin(&self) -> T {
        let dim = self.0.nrows();
        let om = omega::<T>(dim / 2);
        let mut h = DMatrix::zeros(2 * dim, 2 * dim);
        h.view_mut((0, 0), (dim, dim)).copy_from(&self.0);
        h.view_mut((dim, dim), (dim, dim)).copy_from(&self.0);
        h.view_mut((0, dim), (dim, dim)).copy_from(&(-&om));
        h.view_mut((dim, 0), (dim, dim)).copy_from(&om);
        h.symmetric_eigen().eigenvalues.min()
    }

    /// `σ + iΩ ⪰ 0` up to `tol`.
    pub fn is_physical(&self, tol: T) -> bool {
        self.uncertainty_margin() >= -tol
    }

    /// Symplectic eigenvalues in ascending order (each listed once). All equal 1 for pure states.
    pub fn symplectic_eigenvalues(&self) -> Vec<T> {
        let n = self.modes();
        let om = omega::<T>(n);
        let eig = self.0.clone().symmetric_eigen();
        let sqrt_vals = eig.eigenvalues.map(|l| l.max(T::zero()).sqrt());
        let root =
            &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();
        // σ^½ Ωᵀ σ Ω σ^½ is symmetric with eigenvalues ν² (each doubled).
        let k = &root * om.transpose() * &self.0 * &om * &root;
        let k = (&k + k.transpose()) * lit::<T>(0.5);
        let mut nu: Vec<T> = k
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|v| v.max(T::zero()).sqrt())
            .collect();
        nu.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        nu.into_iter().step_by(2).collect()
    }
}

/// Block-diagonal symplectic form with 2×2 blocks `[[0, 1], [−1, 0]]`.
pub fn omega<T: Real>(n: usize) -> DMatrix<T> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(2 * i, 2 * i + 1)] = T::one();
        m[(2 * i + 1, 2 * i)] = -T::one();
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqueezerParams<T: Real> {
    pub r: T,
    pub theta_sq: T,
}

impl<T: Real> SqueezerParams<T> {
    pub fn new(r: T, theta_sq: T) -> Result<Self> {
        if !(r.is_finite() && theta_sq.is_finite()) || r < T::zero() {
            return Err(Error::InvalidParameter(
                "squeezing needs finite r ≥ 0".into(),
            ));
        }
        Ok(Self { r, theta_sq })
    }

    /// Mean number of squeezed particles `N = 2 sinh² r`.
    pub fn n_squeezed(&self) -> T {
        let s = self.r.sinh();
        lit::<T>(2.0) * s * s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TritterParams<T: Real> {
    pub theta: T,
    pub vartheta: T,
}

impl<T: Real> TritterParams<T> {
    pub fn new(theta: T, vartheta: T) -> Result<Self> {
        if !(theta.is_finite() && vartheta.is_finite()) {
            return Err(Error::InvalidParameter(
                "tritter angles must be finite".into(),
            ));
        }
        Ok(Self { theta, vartheta })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    TwoModeSqueeze,
    ModeMix,
    PhaseShift,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [Self::TwoModeSqueeze, Self::ModeMix, Self::PhaseShift];

    pub fn name(self) -> &'static str {
        match self {
            Self::TwoModeSqueeze => "two-mode squeeze",
            Self::ModeMix => "mode-mix",
            Self::PhaseShift => "phase-shift",
        }
    }
}

/// Estimation channel on the side modes.
///
/// `coupling` is B (squeeze) or A (mode mix), with `s = εB/4` and `m = εA/4`.
/// For the phase shift, `φ = coupling · ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec<T: Real> {
    pub kind: ChannelKind,
    pub magnitude: T,
    pub phase: T,
    pub coupling: T,
}

impl<T: Real> ChannelSpec<T> {
    pub fn new(kind: ChannelKind, magnitude: T, phase: T, coupling: T) -> Result<Self> {
        if !(magnitude.is_finite() && phase.is_finite() && coupling.is_finite()) {
            return Err(Error::InvalidParameter(
                "channel parameters must be finite".into(),
            ));
        }
        if kind != ChannelKind::PhaseShift && magnitude < T::zero() {
            return Err(Error::InvalidParameter(format!(
                "{} magnitude must be ≥ 0",
                kind.name()
            )));
        }
        Ok(Self {
            kind,
            magnitude,
            phase,
            coupling,
        })
    }

    /// Two-mode squeezing channel with phase φ_B and coupling B, magnitude zero.
    pub fn squeeze(phi_b: T, b: T) -> Self {
        Self {
            kind: ChannelKind::TwoModeSqueeze,
            magnitude: T::zero(),
            phase: phi_b,
            coupling: b,
        }
    }

    /// Mode-mixing channel with phase φ_A and coupling A, magnitude zero.
    pub fn mode_mix(phi_a: T, a: T) -> Self {
        Self {
            kind: ChannelKind::ModeMix,
            magnitude: T::zero(),
            phase: phi_a,
            coupling: a,
        }
    }

    /// Phase-shift channel, `φ = κε`.
    pub fn phase_shift(kappa: T) -> Self {
        Self {
            kind: ChannelKind::PhaseShift,
            magnitude: T::zero(),
            phase: T::zero(),
            coupling: kappa,
        }
    }

    /// Channel magnitude implied by ε: `s = εB/4`, `m = εA/4`, `φ = κε`.
    ///
    /// A negative `s` or `m` is folded into a phase shift of π, which gives the same matrix.
    pub fn at_epsilon(&self, eps: T) -> Self {
        let mut out = self.clone();
        match self.kind {
            ChannelKind::PhaseShift => out.magnitude = self.coupling * eps,
            _ => {
                let mag = eps * self.coupling / lit(4.0);
                if mag < T::zero() {
                    out.magnitude = -mag;
                    out.phase = self.phase + T::PI();
                } else {
                    out.magnitude = mag;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OpLabel<T: Real> {
    Identity,
    TwoModeSqueezer {
        r: T,
        theta_sq: T,
        modes: (usize, usize),
    },
    Tritter {
        theta: T,
        vartheta: T,
        pump: usize,
        sides: (usize, usize),
    },
    SqueezeChannel {
        s: T,
        phi_b: T,
        sides: (usize, usize),
    },
    ModeMixChannel {
        m: T,
        phi_a: T,
        sides: (usize, usize),
    },
    PhaseChannel {
        phi: T,
        sides: (usize, usize),
    },
    Inverse(Box<OpLabel<T>>),
    Composite(Vec<OpLabel<T>>),
    Matrix,
}

/// A symplectic matrix tagged with the generator that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticOp<T: Real> {
    matrix: DMatrix<T>,
    label: OpLabel<T>,
}

impl<T: Real> SymplecticOp<T> {
    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * n, 2 * n),
            label: OpLabel::Identity,
        }
    }

    /// Wraps an arbitrary matrix, checking `S Ω Sᵀ = Ω` to [`SYMPLECTIC_TOL`].
    pub fn from_matrix(matrix: DMatrix<T>) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: c,
            });
        }
        let op = Self {
            matrix,
            label: OpLabel::Matrix,
        };
        let tol = lit::<T>(SYMPLECTIC_TOL).max(T::default_epsilon() * lit(1e3));
        if op.symplectic_defect() > tol {
            return Err(Error::InvalidParameter("matrix is not symplectic".into()));
        }
        Ok(op)
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn label(&self) -> &OpLabel<T> {
        &self.label
    }

    pub fn modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// `max |S Ω Sᵀ − Ω|`.
    pub fn symplectic_defect(&self) -> T {
        let om = omega::<T>(self.modes());
        (&self.matrix * &om * self.matrix.transpose() - om).amax()
    }

    /// `S⁻¹ = −Ω Sᵀ Ω`.
    pub fn inverse(&self) -> Self {
        let om = omega::<T>(self.modes());
        Self {
            matrix: -(&om * self.matrix.transpose() * &om),
            label: OpLabel::Inverse(Box::new(self.label.clone())),
        }
    }

    /// `d' = S d`, `σ' = S σ Sᵀ`.
    pub fn apply(&self, state: &GaussianState<T>) -> Result<GaussianState<T>> {
        if state.modes() != self.modes() {
            return Err(Error::DimensionMismatch {
                expected: self.modes(),
                found: state.modes(),
            });
        }
        let d = &self.matrix * state.d().as_vector();
        let s = &self.matrix * state.sigma().as_matrix() * self.matrix.transpose();
        let s = (&s + s.transpose()) * lit::<T>(0.5);
        Ok(GaussianState::from_parts_unchecked(d, s))
    }

    /// `self` applied after `first`, i.e. the matrix `self · first`.
    pub fn after(&self, first: &Self) -> Result<Self> {
        compose(&[first.clone(), self.clone()])
    }
}

fn check_modes(indices: &[usize], n: usize) -> Result<()> {
    for (k, &i) in indices.iter().enumerate() {
        if i >= n {
            return Err(Error::ModeOutOfRange { index: i, modes: n });
        }
        if indices[..k].contains(&i) {
            return Err(Error::DuplicateMode(i));
        }
    }
    Ok(())
}

fn set_block<T: Real>(m: &mut DMatrix<T>, row_mode: usize, col_mode: usize, b: &Matrix2<T>) {
    m.view_mut((2 * row_mode, 2 * col_mode), (2, 2))
        .copy_from(b);
}

/// Embeds a two-mode operator given as 2×2 blocks `[[a, b], [c, d]]` on `modes`.
fn embed_pair<T: Real>(
    n: usize,
    modes: (usize, usize),
    a: Matrix2<T>,
    b: Matrix2<T>,
    c: Matrix2<T>,
    d: Matrix2<T>,
) -> DMatrix<T> {
    let mut m = DMatrix::identity(2 * n, 2 * n);
    set_block(&mut m, modes.0, modes.0, &a);
    set_block(&mut m, modes.0, modes.1, &b);
    set_block(&mut m, modes.1, modes.0, &c);
    set_block(&mut m, modes.1, modes.1, &d);
    m
}

/// Reflection-type block `[[cos φ, sin φ], [sin φ, −cos φ]]` used by the active elements.
fn reflection<T: Real>(phi: T) -> Matrix2<T> {
    let (s, c) = phi.sin_cos();
    Matrix2::new(c, s, s, -c)
}

fn rotation<T: Real>(phi: T) -> Matrix2<T> {
    let (s, c) = phi.sin_cos();
    Matrix2::new(c, s, -s, c)
}

/// `exp{χ(a₁†a₂† − a₁a₂)}` with `χ = r e^{iϑ_sq}` on `modes`.
pub fn two_mode_squeezer<T: Real>(
    p: &SqueezerParams<T>,
    modes: (usize, usize),
    n: usize,
) -> Result<SymplecticOp<T>> {
    check_modes(&[modes.0, modes.1], n)?;
    Ok(SymplecticOp {
        matrix: active_pair(n, modes, p.r, p.theta_sq),
        label: OpLabel::TwoModeSqueezer {
            r: p.r,
            theta_sq: p.theta_sq,
            modes,
        },
    })
}

fn active_pair<T: Real>(n: usize, modes: (usize, usize), r: T, phase: T) -> DMatrix<T> {
    let diag = Matrix2::identity() * r.cosh();
    let off = reflection(phase) * r.sinh();
    embed_pair(n, modes, diag, off, off, diag)
}

/// Tritter mixing `pump` with both `sides`. Passive: the matrix is orthogonal.
///
/// θ = π/2 does not swap the pump into the side modes; half the side-mode amplitude stays put.
pub fn tritter<T: Real>(
    p: &TritterParams<T>,
    pump: usize,
    sides: (usize, usize),
    n: usize,
) -> Result<SymplecticOp<T>> {
    check_modes(&[pump, sides.0, sides.1], n)?;
    let (st, ct) = p.theta.sin_cos();
    let (sv, cv) = p.vartheta.sin_cos();
    let k = st / lit::<T>(2.0).sqrt();
    let half = lit::<T>(0.5);
    let c2 = half * (T::one() + ct);
    let h = half * (ct - T::one());
    let z = T::zero();
    // Rows of pump-first 6×6 form; blocks [pump, side1, side2].
    let pump_pump = Matrix2::new(ct, z, z, ct);
    let pump_side = Matrix2::new(k * sv, k * cv, -k * cv, k * sv);
    let side_pump = Matrix2::new(-k * sv, k * cv, -k * cv, -k * sv);
    let same = Matrix2::identity() * c2;
    let cross = Matrix2::identity() * h;

    let mut m = DMatrix::identity(2 * n, 2 * n);
    let idx = [pump, sides.0, sides.1];
    let block = |i: usize, j: usize| -> Matrix2<T> {
        match (i, j) {
            (0, 0) => pump_pump,
            (0, _) => pump_side,
            (_, 0) => side_pump,
            (a, b) if a == b => same,
            _ => cross,
        }
    };
    for i in 0..3 {
        for j in 0..3 {
            set_block(&mut m, idx[i], idx[j], &block(i, j));
        }
    }
    Ok(SymplecticOp {
        matrix: m,
        label: OpLabel::Tritter {
            theta: p.theta,
            vartheta: p.vartheta,
            pump,
            sides,
        },
    })
}

/// Two-mode squeezing estimation channel `exp{ξ a₁†a₂† − ξ* a₁a₂}`, `ξ = s e^{iφ_B}`.
pub fn squeeze_channel<T: Real>(
    spec: &ChannelSpec<T>,
    sides: (usize, usize),
    n: usize,
) -> Result<SymplecticOp<T>> {
    expect_kind(spec, ChannelKind::TwoModeSqueeze)?;
    check_modes(&[sides.0, sides.1], n)?;
    Ok(SymplecticOp {
        matrix: active_pair(n, sides, spec.magnitude, spec.phase),
        label: OpLabel::SqueezeChannel {
            s: spec.magnitude,
            phi_b: spec.phase,
            sides,
        },
    })
}

/// Mode-mixing estimation channel. Orthogonal in this representation.
pub fn modemix_channel<T: Real>(
    spec: &ChannelSpec<T>,
    sides: (usize, usize),
    n: usize,
) -> Result<SymplecticOp<T>> {
    expect_kind(spec, ChannelKind::ModeMix)?;
    check_modes(&[sides.0, sides.1], n)?;
    let (sm, cm) = spec.magnitude.sin_cos();
    let rot = rotation(spec.phase);
    let diag = Matrix2::identity() * cm;
    Ok(SymplecticOp {
        matrix: embed_pair(n, sides, diag, rot * sm, -rot.transpose() * sm, diag),
        label: OpLabel::ModeMixChannel {
            m: spec.magnitude,
            phi_a: spec.phase,
            sides,
        },
    })
}

/// Phase shift φ split evenly: each side mode rotates by φ/2.
pub fn phase_channel<T: Real>(phi: T, sides: (usize, usize), n: usize) -> Result<SymplecticOp<T>> {
    check_modes(&[sides.0, sides.1], n)?;
    let rot = rotation(phi / lit(2.0));
    let z = Matrix2::zeros();
    Ok(SymplecticOp {
        matrix: embed_pair(n, sides, rot, z, z, rot),
        label: OpLabel::PhaseChannel { phi, sides },
    })
}

fn expect_kind<T: Real>(spec: &ChannelSpec<T>, kind: ChannelKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::Kind {
            expected: kind.name(),
            found: spec.kind.name(),
        });
    }
    if kind != ChannelKind::PhaseShift && spec.magnitude < T::zero() {
        return Err(Error::InvalidParameter("negative channel magnitude".into()));
    }
    Ok(())
}

/// Builds the channel operator for `spec` on `sides`, dispatching on kind.
pub fn channel_op<T: Real>(
    spec: &ChannelSpec<T>,
    sides: (usize, usize),
    n: usize,
) -> Result<SymplecticOp<T>> {
    match spec.kind {
        ChannelKind::TwoModeSqueeze => squeeze_channel(spec, sides, n),
        ChannelKind::ModeMix => modemix_channel(spec, sides, n),
        ChannelKind::PhaseShift => phase_channel(spec.magnitude, sides, n),
    }
}

/// Product in application order: `compose([S₁, S₂, …, S_k]) = S_k ⋯ S₂ S₁`.
pub fn compose<T: Real>(ops: &[SymplecticOp<T>]) -> Result<SymplecticOp<T>> {
    let first = ops
        .first()
        .ok_or_else(|| Error::InvalidParameter("compose needs at least one operator".into()))?;
    let dim = first.matrix.nrows();
    let mut m = DMatrix::identity(dim, dim);
    for op in ops {
        if op.matrix.nrows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.matrix.nrows(),
            });
        }
        m = &op.matrix * m;
    }
    Ok(SymplecticOp {
        matrix: m,
        label: OpLabel::Composite(ops.iter().map(|o| o.label.clone()).collect()),
    })
}
