//! Unit-suffixed quantities such as `"5 mm"`, `"99 a0"` or `"1 yr"`.
//!
//! Dimensional inputs must carry a unit. Conversions are a single multiplication by the
//! scale below, so a value written in the unit of a built-in preset lands on the same `f64`.

use anyhow::{anyhow, bail, Result};
use gaussmeter::bec::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Time,
}

impl Dimension {
    fn name(self) -> &'static str {
        match self {
            Self::Length => "length",
            Self::Time => "time",
        }
    }
}

fn scale(unit: &str, dim: Dimension, c: &PhysicalConstants) -> Option<f64> {
    let s = match (dim, unit) {
        (Dimension::Length, "m") => 1.0,
        (Dimension::Length, "cm") => 1e-2,
        (Dimension::Length, "mm") => 1e-3,
        (Dimension::Length, "um" | "µm" | "μm") => 1e-6,
        (Dimension::Length, "nm") => 1e-9,
        (Dimension::Length, "a0") => c.bohr_radius,
        (Dimension::Time, "s") => 1.0,
        (Dimension::Time, "ms") => 1e-3,
        (Dimension::Time, "us" | "µs" | "μs") => 1e-6,
        (Dimension::Time, "ns") => 1e-9,
        (Dimension::Time, "min") => 60.0,
        (Dimension::Time, "h") => 3600.0,
        (Dimension::Time, "day" | "d") => 86400.0,
        (Dimension::Time, "yr" | "year") => c.year,
        _ => return None,
    };
    Some(s)
}

/// Splits `"99 a0"` into its number and unit. The space is optional (`"5mm"`).
fn split(text: &str) -> Result<(f64, &str)> {
    let text = text.trim();
    let end = text
        .char_indices()
        .find(|&(i, ch)| {
            ch.is_alphabetic()
                && !(matches!(ch, 'e' | 'E')
                    && text[i + 1..]
                        .starts_with(|d: char| d.is_ascii_digit() || d == '-' || d == '+'))
        })
        .map(|(i, _)| i)
        .ok_or_else(|| anyhow!("`{text}` has no unit"))?;
    let number = text[..end].trim();
    let value: f64 = number
        .parse()
        .map_err(|_| anyhow!("`{number}` is not a number in `{text}`"))?;
    Ok((value, text[end..].trim()))
}

pub fn parse_quantity(text: &str, dim: Dimension, c: &PhysicalConstants) -> Result<f64> {
    let (value, unit) = split(text)?;
    let s = scale(unit, dim, c)
        .ok_or_else(|| anyhow!("`{unit}` is not a {} unit (in `{text}`)", dim.name()))?;
    let v = value * s;
    if !v.is_finite() {
        bail!("`{text}` is not finite");
    }
    Ok(v)
}
