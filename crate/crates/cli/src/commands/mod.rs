pub mod gw_table;
pub mod qfi_sweep;
pub mod sensitivity;
pub mod validate;

use gaussmeter::bec::PhysicalConstants;
use rayon::prelude::*;

use crate::output::{Failure, OrExit, EXIT_CONFIG, EXIT_ORACLE};

pub struct Context {
    pub constants: PhysicalConstants,
    pub parallel: usize,
}

impl Context {
    /// `f` over `items` on `parallel` workers; results stay in input order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Result<Vec<R>, Failure>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        if self.parallel <= 1 {
            return Ok(items.iter().map(f).collect());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallel)
            .build()
            .or_exit(EXIT_CONFIG)?;
        Ok(pool.install(|| items.par_iter().map(f).collect()))
    }
}

/// Engine errors are configuration problems, except an unstable finite difference,
/// which is a disagreement between independent evaluations.
pub fn engine_failure(e: anyhow::Error) -> Failure {
    let code = match e.downcast_ref::<gaussmeter::Error>() {
        Some(gaussmeter::Error::NumericalInstability { .. }) => EXIT_ORACLE,
        _ => EXIT_CONFIG,
    };
    Failure { code, error: e }
}

/// `|a − b| / |b|`, or `|a − b|` when `b` is zero.
pub fn rel_dev(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if b == 0.0 {
        d
    } else {
        d / b.abs()
    }
}
