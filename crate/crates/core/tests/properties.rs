mod common;

use std::f64::consts::{PI, TAU};

use common::{random_config, rel, rng};
use gaussmeter::fisher::{
    f0_number_sum, fisher_vs_f0_identity, qfi_closed, qfi_numeric, qfi_numeric_at, QfiFormula,
    QfiOptions,
};
use gaussmeter::interferometer::{build_upstream, downstream, run_full, MODES, PUMP, SIDES};
use gaussmeter::symplectic::{
    compose, modemix_channel, phase_channel, squeeze_channel, tritter, two_mode_squeezer,
    ChannelKind, ChannelSpec, SqueezerParams, SymplecticOp, TritterParams, SYMPLECTIC_TOL,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = ChannelKind> {
    prop_oneof![
        Just(ChannelKind::TwoModeSqueeze),
        Just(ChannelKind::ModeMix),
        Just(ChannelKind::PhaseShift),
    ]
}

fn sq_ch(mag: f64, phase: f64) -> SymplecticOp<f64> {
    let spec = ChannelSpec::new(ChannelKind::TwoModeSqueeze, mag, phase, 1.0).unwrap();
    squeeze_channel(&spec, SIDES, MODES).unwrap()
}

fn mm_ch(mag: f64, phase: f64) -> SymplecticOp<f64> {
    let spec = ChannelSpec::new(ChannelKind::ModeMix, mag, phase, 1.0).unwrap();
    modemix_channel(&spec, SIDES, MODES).unwrap()
}

fn orthogonality_defect(s: &SymplecticOp<f64>) -> f64 {
    let m = s.matrix();
    (m * m.transpose() - DMatrix::identity(m.nrows(), m.ncols())).amax()
}

fn max_diff(a: &SymplecticOp<f64>, b: &SymplecticOp<f64>) -> f64 {
    (a.matrix() - b.matrix()).amax()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_matrices_are_symplectic(
        r in 0.0..2.0f64, ph in 0.0..TAU, th in -PI..PI, vt in 0.0..TAU, mag in 0.0..1.0f64,
    ) {
        let ops = [
            two_mode_squeezer(&SqueezerParams::new(r, ph).unwrap(), SIDES, MODES).unwrap(),
            tritter(&TritterParams::new(th, vt).unwrap(), PUMP, SIDES, MODES).unwrap(),
            sq_ch(mag, ph),
            mm_ch(mag, ph),
            phase_channel(th, SIDES, MODES).unwrap(),
        ];
        for op in &ops {
            prop_assert!(op.symplectic_defect() < SYMPLECTIC_TOL, "{:?}", op.label());
        }
        let whole = compose(&ops).unwrap();
        prop_assert!(whole.symplectic_defect() < SYMPLECTIC_TOL * (1.0 + whole.matrix().amax().powi(2)));
    }

    #[test]
    fn passive_operations_are_orthogonal(th in -PI..PI, vt in 0.0..TAU, mag in 0.0..3.0f64) {
        let ops = [
            tritter(&TritterParams::new(th, vt).unwrap(), PUMP, SIDES, MODES).unwrap(),
            mm_ch(mag, vt),
            phase_channel(th, SIDES, MODES).unwrap(),
        ];
        for op in &ops {
            prop_assert!(orthogonality_defect(op) < 1e-12);
        }
    }

    #[test]
    fn one_parameter_groups(a in -1.5..1.5f64, b in -1.5..1.5f64, ph in 0.0..TAU) {
        let t = |x: f64| tritter(&TritterParams::new(x, ph).unwrap(), PUMP, SIDES, MODES).unwrap();
        prop_assert!(max_diff(&t(a).after(&t(b)).unwrap(), &t(a + b)) < 1e-12);
        let m = |x: f64| mm_ch(x.abs(), ph + if x < 0.0 { PI } else { 0.0 });
        prop_assert!(max_diff(&m(a).after(&m(b)).unwrap(), &m(a + b)) < 1e-12);
        let p = |x: f64| phase_channel(x, SIDES, MODES).unwrap();
        prop_assert!(max_diff(&p(a).after(&p(b)).unwrap(), &p(a + b)) < 1e-12);
        let (a, b) = (a.abs() * 0.5, b.abs() * 0.5);
        let s = |x: f64| sq_ch(x, ph);
        let scale = s(a + b).matrix().amax();
        prop_assert!(max_diff(&s(a).after(&s(b)).unwrap(), &s(a + b)) < 1e-12 * scale);
        let sq = |x: f64| SymplecticOp::inverse(&s(x));
        prop_assert!(max_diff(&sq(a).after(&s(a)).unwrap(), &SymplecticOp::identity(MODES)) < 1e-12 * scale * scale);
    }

    #[test]
    fn full_circuit_preserves_purity(seed in any::<u64>(), k in kind(), eps in -0.05..0.05f64) {
        let cfg = random_config(&mut rng(seed), k);
        let out = run_full(&cfg, eps).unwrap();
        for nu in out.sigma().symplectic_eigenvalues() {
            prop_assert!((nu - 1.0).abs() < 1e-8, "ν = {nu}");
        }
        let up = build_upstream(&cfg).unwrap();
        let down = downstream(&cfg).unwrap();
        prop_assert!(down.symplectic_defect() < SYMPLECTIC_TOL * (1.0 + down.matrix().amax().powi(2)));
        prop_assert!(up.s_plus.symplectic_defect() < SYMPLECTIC_TOL * (1.0 + up.s_plus.matrix().amax().powi(2)));
    }

    #[test]
    fn qfi_symmetric_about_half_pi(seed in any::<u64>(), k in kind(), th in 0.0..PI) {
        let cfg = random_config(&mut rng(seed), k);
        let a = qfi_closed(&cfg.with_theta(th)).unwrap();
        let b = qfi_closed(&cfg.with_theta(PI - th)).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{a} vs {b}");
        let na = qfi_numeric(&cfg.with_theta(th)).unwrap();
        let nb = qfi_numeric(&cfg.with_theta(PI - th)).unwrap();
        prop_assert!(rel(na, nb) < 1e-8, "{na} vs {nb}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cramer_rao(seed in any::<u64>(), k in kind()) {
        let cfg = random_config(&mut rng(seed), k);
        let h = qfi_closed(&cfg).unwrap();
        let probe = match k {
            ChannelKind::PhaseShift => 1e-3 / cfg.channel.coupling,
            _ => 4e-3 / cfg.channel.coupling,
        };
        let rep = f0_number_sum(&cfg, probe).unwrap();
        if let Some(c) = rep.closed_form {
            prop_assert!(c <= h * (1.0 + 1e-12), "closed F₀ = {c} > H = {h}");
        }
        // Exact inequality at the probe point itself.
        let h_probe = qfi_numeric_at(&cfg, probe, &QfiOptions::default(), QfiFormula::General).unwrap();
        prop_assert!(rep.at_probe <= h_probe * (1.0 + 1e-9), "F₀(ε) = {} > H(ε) = {h_probe}", rep.at_probe);
    }

    #[test]
    fn fisher_identity(seed in any::<u64>(), k in kind()) {
        let cfg = random_config(&mut rng(seed), k);
        let probe = match k {
            ChannelKind::PhaseShift => 2e-3 / cfg.channel.coupling,
            _ => 8e-3 / cfg.channel.coupling,
        };
        let id = fisher_vs_f0_identity(&cfg, probe).unwrap();
        prop_assert!(id.identity_residual() < 1e-6, "{id:?}");
        prop_assert!(id.f >= id.f0 * (1.0 - 1e-9));
    }
}
