//! Number-sum F₀ against the QFI, and the resulting Δε for M repetitions.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use gaussmeter::fisher::{f0_number_sum, qfi_closed, qfi_numeric, FisherResult, SMALL_PARAM_LIMIT};
use gaussmeter::gaussian::{heterodyne_mean, heterodyne_variance, reduce, ModeSubset};
use gaussmeter::interferometer::{run_full, InterferometerConfig};
use gaussmeter::symplectic::ChannelKind;

use super::{engine_failure, rel_dev, Context};
use crate::config::{channel_slug, SensitivityConfig};
use crate::output::{num, opt_num, Failure, OrExit, Outcome, Table, EXIT_CONFIG, EXIT_ORACLE};

/// "≫ 1" is read as at least an order of magnitude.
pub const ASYMPTOTIC_FACTOR: f64 = 10.0;

const HEADER: [&str; 15] = [
    "theta",
    "channel",
    "n_bar",
    "n",
    "qfi",
    "qfi_numeric",
    "qfi_rel_dev",
    "f0",
    "f0_numeric",
    "f0_rel_dev",
    "f0_over_qfi",
    "repetitions",
    "delta_eps",
    "large_pump",
    "large_squeezing",
];

const HETERODYNE_HEADER: [&str; 3] = ["heterodyne_mean", "heterodyne_variance", "heterodyne_f0"];

struct Row {
    theta: f64,
    n_bar: f64,
    n: f64,
    qfi: f64,
    qfi_numeric: f64,
    f0: f64,
    f0_numeric: f64,
    /// Only when a closed-form F₀ exists.
    f0_dev: Option<f64>,
    result: FisherResult<f64>,
    heterodyne: Option<[f64; 3]>,
}

/// ε such that the channel magnitude (s, m or φ) equals `probe`.
fn probe_eps(c: &InterferometerConfig<f64>, probe: f64) -> f64 {
    match c.channel.kind {
        ChannelKind::PhaseShift => probe / c.channel.coupling,
        _ => 4.0 * probe / c.channel.coupling,
    }
}

/// Number-difference mean and variance of the side modes, and `(∂_ε⟨D⟩)²/Var(D)` at `eps`.
fn heterodyne_stats(c: &InterferometerConfig<f64>, eps: f64) -> Result<[f64; 3]> {
    let at = |e: f64| -> Result<(f64, f64)> {
        let s = reduce(&run_full(c, e)?, &ModeSubset::sides())?;
        Ok((heterodyne_mean(&s)?, heterodyne_variance(&s)?))
    };
    let (m, v) = at(eps)?;
    if c.channel.coupling == 0.0 {
        return Ok([m, v, 0.0]);
    }
    let h = eps.abs() * 1e-3;
    let d = |h: f64| -> Result<f64> { Ok((at(eps + h)?.0 - at(eps - h)?.0) / (2.0 * h)) };
    let dm = (4.0 * d(h / 2.0)? - d(h)?) / 3.0;
    Ok([m, v, if v > 0.0 { dm * dm / v } else { 0.0 }])
}

fn evaluate(cfg: &SensitivityConfig, theta: f64) -> Result<Row> {
    let spec = cfg.channel_spec()?;
    let c = cfg.circuit.build(theta, spec)?;
    let probe = cfg.probe.unwrap_or(1e-5);
    let repetitions = cfg.repetitions.unwrap_or(1.0);
    let qfi = qfi_closed(&c)?;
    let qfi_numeric = qfi_numeric(&c)?;
    let (f0, f0_numeric, f0_dev, eps) = if c.channel.coupling == 0.0 {
        (0.0, 0.0, Some(0.0), 0.0)
    } else {
        let eps = probe_eps(&c, probe);
        let rep = f0_number_sum(&c, eps)?;
        match rep.closed_form {
            Some(closed) => (
                closed,
                rep.at_probe,
                Some(rel_dev(rep.at_probe, closed)),
                eps,
            ),
            None => (rep.extrapolated, rep.extrapolated, None, eps),
        }
    };
    let heterodyne = match cfg.heterodyne {
        Some(true) => Some(heterodyne_stats(&c, eps)?),
        _ => None,
    };
    Ok(Row {
        theta,
        n_bar: c.pump.n_bar,
        n: c.n_squeezed(),
        qfi,
        qfi_numeric,
        f0,
        f0_numeric,
        f0_dev,
        result: FisherResult::new(qfi, f0, repetitions),
        heterodyne,
    })
}

fn check_guards(cfg: &SensitivityConfig) -> Result<()> {
    let probe = cfg.probe.unwrap_or(1e-5);
    if !(probe > 0.0 && probe <= SMALL_PARAM_LIMIT) {
        bail!(
            "probe magnitude {probe} must lie in (0, {SMALL_PARAM_LIMIT}] (small-parameter guard)"
        );
    }
    let m = cfg.repetitions.unwrap_or(1.0);
    if !(m.is_finite() && m > 0.0) {
        bail!("repetitions must be finite and positive");
    }
    Ok(())
}

pub fn run(cfg: &SensitivityConfig, ctx: &Context) -> Result<Outcome, Failure> {
    check_guards(cfg).or_exit(EXIT_CONFIG)?;
    let thetas = cfg.thetas().or_exit(EXIT_CONFIG)?;
    let kind = cfg.kind().or_exit(EXIT_CONFIG)?;
    cfg.circuit
        .build(thetas[0], cfg.channel_spec().or_exit(EXIT_CONFIG)?)
        .or_exit(EXIT_CONFIG)?;
    let rows = ctx
        .map(&thetas, |&t| evaluate(cfg, t))?
        .into_iter()
        .collect::<Result<Vec<_>>>()
        .map_err(engine_failure)?;

    let qfi_tol = cfg.qfi_tolerance.unwrap_or(1e-6);
    let f0_tol = cfg.f0_tolerance.unwrap_or(1e-3);
    let heterodyne = cfg.heterodyne == Some(true);
    let mut header: Vec<&str> = HEADER.to_vec();
    if heterodyne {
        header.extend(HETERODYNE_HEADER);
    }
    let mut table = Table::new(&header);
    let mut report = String::new();
    let mut agree = true;
    let _ = writeln!(
        report,
        "sensitivity: {} channel, probe magnitude {:.1e}, M = {}",
        channel_slug(kind),
        cfg.probe.unwrap_or(1e-5),
        cfg.repetitions.unwrap_or(1.0)
    );
    for r in &rows {
        let qfi_dev = rel_dev(r.qfi_numeric, r.qfi);
        let large_pump = r.n_bar >= ASYMPTOTIC_FACTOR;
        let large_sq = r.n >= ASYMPTOTIC_FACTOR;
        let row_ok = qfi_dev <= qfi_tol && r.f0_dev.is_none_or(|d| d <= f0_tol);
        agree &= row_ok;
        let mut line = vec![
            num(r.theta),
            channel_slug(kind).to_string(),
            num(r.n_bar),
            num(r.n),
            num(r.qfi),
            num(r.qfi_numeric),
            num(qfi_dev),
            num(r.f0),
            num(r.f0_numeric),
            opt_num(r.f0_dev),
            num(r.result.optimality()),
            num(cfg.repetitions.unwrap_or(1.0)),
            num(r.result.delta_eps),
            large_pump.to_string(),
            large_sq.to_string(),
        ];
        if let Some(h) = r.heterodyne {
            line.extend(h.iter().copied().map(num));
        }
        table.push(line);

        let _ = writeln!(
            report,
            "θ = {:.9}: H = {:.6e}, F₀ = {:.6e}, F₀/H = {:.5}, Δε = {:.6e}",
            r.theta,
            r.qfi,
            r.f0,
            r.result.optimality(),
            r.result.delta_eps
        );
        let _ = writeln!(
            report,
            "  oracle: QFI rel dev {qfi_dev:.2e} (≤ {qfi_tol:.0e}), F₀ rel dev {} (≤ {f0_tol:.0e}) {}",
            r.f0_dev.map_or("n/a".to_string(), |d| format!("{d:.2e}")),
            if row_ok { "ok" } else { "DISAGREE" }
        );
        let _ = writeln!(
            report,
            "  asymptotic regime: N̄ = {:.4e} ≫ 1 {}, N = {:.4e} ≫ 1 {}",
            r.n_bar,
            if large_pump { "yes" } else { "no" },
            r.n,
            if large_sq { "yes" } else { "no" }
        );
        if let Some([m, v, f]) = r.heterodyne {
            let _ = writeln!(
                report,
                "  heterodyne: ⟨D⟩ = {m:.6e}, Var(D) = {v:.6e}, F_het = {f:.6e}"
            );
        }
    }
    Ok(Outcome {
        table,
        report,
        code: if agree { 0 } else { EXIT_ORACLE },
    })
}
