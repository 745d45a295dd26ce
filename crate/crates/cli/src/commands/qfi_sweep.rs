//! QFI of the three channels over a tritter-angle grid, with a finite-difference cross-check.

use std::fmt::Write as _;

use anyhow::Result;
use gaussmeter::fisher::{qfi_closed, qfi_numeric};
use gaussmeter::symplectic::ChannelKind;

use super::{engine_failure, rel_dev, Context};
use crate::config::QfiSweepConfig;
use crate::grid::Grid;
use crate::output::{num, Failure, OrExit, Outcome, Table, EXIT_CONFIG, EXIT_ORACLE};

const KINDS: [ChannelKind; 3] = [
    ChannelKind::PhaseShift,
    ChannelKind::TwoModeSqueeze,
    ChannelKind::ModeMix,
];

pub const HEADER: [&str; 8] = [
    "theta",
    "qfi_phase",
    "qfi_squeeze",
    "qfi_modemix",
    "qfi_phase_numeric",
    "qfi_squeeze_numeric",
    "qfi_modemix_numeric",
    "max_rel_dev",
];

struct Row {
    theta: f64,
    closed: [f64; 3],
    numeric: [f64; 3],
}

impl Row {
    fn max_dev(&self) -> f64 {
        (0..3)
            .map(|k| rel_dev(self.numeric[k], self.closed[k]))
            .fold(0.0, f64::max)
    }
}

pub fn run(cfg: &QfiSweepConfig, ctx: &Context) -> Result<Outcome, Failure> {
    let grid = cfg.grid.as_deref().unwrap_or_default();
    let thetas = Grid::parse(grid)
        .and_then(|g| g.points())
        .or_exit(EXIT_CONFIG)?;
    let tol = cfg.tolerance.unwrap_or(1e-6);
    let mut specs = Vec::new();
    for kind in KINDS {
        let spec = cfg.channel(kind).or_exit(EXIT_CONFIG)?;
        // Fail on configuration before spending time on the sweep.
        cfg.circuit
            .build(thetas[0], spec.clone())
            .or_exit(EXIT_CONFIG)?;
        specs.push(spec);
    }

    let eval = |&theta: &f64| -> Result<Row> {
        let mut row = Row {
            theta,
            closed: [0.0; 3],
            numeric: [0.0; 3],
        };
        for (k, spec) in specs.iter().enumerate() {
            let c = cfg.circuit.build(theta, spec.clone())?;
            row.closed[k] = qfi_closed(&c)?;
            row.numeric[k] = qfi_numeric(&c)?;
        }
        Ok(row)
    };
    let rows = ctx
        .map(&thetas, eval)?
        .into_iter()
        .collect::<Result<Vec<_>>>()
        .map_err(engine_failure)?;

    let mut table = Table::new(&HEADER);
    let mut worst = (0.0, 0.0);
    for r in &rows {
        let dev = r.max_dev();
        if !(dev <= worst.0) {
            worst = (dev, r.theta);
        }
        let mut line = vec![num(r.theta)];
        line.extend(r.closed.iter().copied().map(num));
        line.extend(r.numeric.iter().copied().map(num));
        line.push(num(dev));
        table.push(line);
    }

    let ok = worst.0 <= tol;
    let mut report = String::new();
    let (first, last) = (thetas[0], thetas[thetas.len() - 1]);
    let _ = writeln!(
        report,
        "qfi-sweep: {} points, θ from {first:.6} to {last:.6}",
        thetas.len()
    );
    let _ = writeln!(
        report,
        "closed form vs numeric QFI: max rel dev {:.3e} at θ = {:.6} (tolerance {tol:.1e}) {}",
        worst.0,
        worst.1,
        if ok { "ok" } else { "DISAGREE" }
    );
    if let Some(r) = rows.iter().find(|r| r.theta == 0.0) {
        let _ = writeln!(
            report,
            "θ = 0: H_squeeze = {:.6}, H_phase = {:.6}, H_modemix = {:.6}",
            r.closed[1], r.closed[0], r.closed[2]
        );
    }
    Ok(Outcome {
        table,
        report,
        code: if ok { 0 } else { EXIT_ORACLE },
    })
}
