//! Regime checks for one detector design.

use std::fmt::Write as _;

use gaussmeter::bec::{derive_quantities, overall_status, validate_constraints, ConstraintStatus};

use super::Context;
use crate::config::ValidateConfig;
use crate::output::{num, Failure, OrExit, Outcome, Table, EXIT_CONFIG, EXIT_CONSTRAINT};

pub fn run(cfg: &ValidateConfig, ctx: &Context) -> Result<Outcome, Failure> {
    let row = cfg.row().or_exit(EXIT_CONFIG)?;
    let (fi, _) = row.params(&ctx.constants).or_exit(EXIT_CONFIG)?;
    let q = derive_quantities(&fi, &ctx.constants);
    let checks = validate_constraints(&fi, &q, &ctx.constants);

    let mut table = Table::new(&["check", "value", "limit", "margin", "status"]);
    let mut report = String::new();
    let _ = writeln!(report, "validate {}:", row.name());
    for k in &checks {
        table.push(vec![
            k.name.to_string(),
            num(k.value),
            num(k.limit),
            num(k.margin),
            k.status.to_string(),
        ]);
        let note = match (k.name, k.status) {
            ("coupling", ConstraintStatus::Fail) => " (g = 0: degenerate, no interaction)",
            ("parity", ConstraintStatus::Fail) => " (l + n odd: pair does not couple)",
            ("theta-bound", ConstraintStatus::Marginal) => {
                " (θ slightly above the undepleted-pump bound)"
            }
            ("quasi-1d", ConstraintStatus::Marginal) => " (trap too thick for the 1D model)",
            _ => "",
        };
        let _ = writeln!(
            report,
            "  {:<15} value {:.4e}  limit {:.4e}  margin {:+.4}  {}{note}",
            k.name, k.value, k.limit, k.margin, k.status
        );
    }
    let status = overall_status(&checks);
    let _ = writeln!(report, "overall: {status}");
    Ok(Outcome {
        table,
        report,
        code: if status == ConstraintStatus::Fail {
            EXIT_CONSTRAINT
        } else {
            0
        },
    })
}
