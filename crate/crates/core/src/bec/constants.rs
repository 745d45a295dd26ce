use serde::{Deserialize, Serialize};

/// Current constants-file format version.
pub const CONSTANTS_VERSION: u32 = 1;

/// Physical constants in SI units. Masses are in atomic mass units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConstants {
    pub version: u32,
    /// J·s
    pub hbar: f64,
    /// m
    pub bohr_radius: f64,
    /// kg
    pub atomic_mass_unit: f64,
    pub mass_li7_u: f64,
    pub mass_rb87_u: f64,
    /// s
    pub year: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            version: CONSTANTS_VERSION,
            hbar: 1.054_571_817e-34,
            bohr_radius: 5.291_772_109_03e-11,
            atomic_mass_unit: 1.660_539_066_60e-27,
            mass_li7_u: 7.016_003_436_6,
            mass_rb87_u: 86.909_180_531,
            year: 3.155_76e7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Species {
    Li7,
    Rb87,
}

impl Species {
    pub fn mass(self, c: &PhysicalConstants) -> f64 {
        let u = match self {
            Self::Li7 => c.mass_li7_u,
            Self::Rb87 => c.mass_rb87_u,
        };
        u * c.atomic_mass_unit
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Li7 => "Li-7",
            Self::Rb87 => "Rb-87",
        }
    }
}

impl std::str::FromStr for Species {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "li7" | "7li" => Ok(Self::Li7),
            "rb87" | "87rb" => Ok(Self::Rb87),
            _ => Err(crate::Error::InvalidParameter(format!(
                "unknown species `{s}`"
            ))),
        }
    }
}
