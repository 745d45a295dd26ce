#![allow(dead_code)]

pub mod fock;

use gaussmeter::interferometer::InterferometerConfig;
use gaussmeter::symplectic::{ChannelKind, ChannelSpec, SqueezerParams, TritterParams};
use gaussmeter::GaussianStateF64;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random interferometer with N < N̄, θ ∈ [0, π] and all phases free.
pub fn random_config(rng: &mut ChaCha8Rng, kind: ChannelKind) -> InterferometerConfig<f64> {
    let r = rng.gen_range(0.05..1.2);
    let squeezer = SqueezerParams::new(r, rng.gen_range(0.0..TAU)).unwrap();
    let alpha0_sq = rng.gen_range(0.2..50.0);
    let tritter = TritterParams::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU)).unwrap();
    let coupling = rng.gen_range(0.5..3.0);
    let channel = match kind {
        ChannelKind::TwoModeSqueeze => ChannelSpec::squeeze(rng.gen_range(0.0..TAU), coupling),
        ChannelKind::ModeMix => ChannelSpec::mode_mix(rng.gen_range(0.0..TAU), coupling),
        ChannelKind::PhaseShift => ChannelSpec::phase_shift(coupling),
    };
    InterferometerConfig::from_alpha0_sq(
        alpha0_sq,
        rng.gen_range(0.0..TAU),
        squeezer,
        tritter,
        channel,
    )
    .unwrap()
}

/// Gaussian state from Fock-basis moments.
pub fn state_from_moments(d: [f64; 4], s: [[f64; 4]; 4]) -> GaussianStateF64 {
    use gaussmeter::symplectic::{CovarianceMatrix, QuadratureVector};
    let d = QuadratureVector::new(DVector::from_row_slice(&d)).unwrap();
    let s = DMatrix::from_fn(4, 4, |i, j| 0.5 * (s[i][j] + s[j][i]));
    GaussianStateF64::new(d, CovarianceMatrix::new(s).unwrap()).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}
