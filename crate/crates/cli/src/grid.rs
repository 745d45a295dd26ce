//! Angle expressions (`0.31`, `pi/2`, `-3pi/4`, `2*pi`) and `start:stop:count` grids.

use std::f64::consts::PI;

use anyhow::{anyhow, bail, Result};

pub fn parse_angle(text: &str) -> Result<f64> {
    let t: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    let t = t.replace('π', "pi");
    let bad = || anyhow!("cannot read `{text}` as an angle");
    let Some(at) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let head = t[..at].trim_end_matches('*');
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let tail = &t[at + 2..];
    let den = match tail {
        "" => 1.0,
        _ => tail
            .strip_prefix('/')
            .ok_or_else(bad)?
            .parse::<f64>()
            .map_err(|_| bad())?,
    };
    let v = coef * PI / den;
    if !v.is_finite() {
        bail!("angle `{text}` is not finite");
    }
    Ok(v)
}

/// Evenly spaced points, both ends included.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    /// `start:stop:count`, or a single value for a one-point grid.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            [one] => {
                let v = parse_angle(one)?;
                Ok(Self {
                    start: v,
                    stop: v,
                    count: 1,
                })
            }
            [a, b, n] => {
                let count = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| anyhow!("grid count `{n}` is not a non-negative integer"))?;
                Ok(Self {
                    start: parse_angle(a)?,
                    stop: parse_angle(b)?,
                    count,
                })
            }
            _ => bail!("grid `{spec}` is not of the form start:stop:count"),
        }
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        match self.count {
            0 => bail!("empty grid"),
            1 => Ok(vec![self.start]),
            n => {
                let step = (self.stop - self.start) / (n - 1) as f64;
                Ok((0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.stop
                        } else {
                            self.start + step * i as f64
                        }
                    })
                    .collect())
            }
        }
    }
}
