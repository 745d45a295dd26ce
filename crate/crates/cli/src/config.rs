//! TOML run configuration. One optional section per subcommand; unknown keys are rejected.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use gaussmeter::bec::{
    find_preset, BecDetectorParams, PhysicalConstants, Scheme, Species, TablePreset,
    CONSTANTS_VERSION, DETECTORS, TRITTER_THETA,
};
use gaussmeter::fisher::turning_point_theta;
use gaussmeter::gaussian::PumpSpec;
use gaussmeter::interferometer::{InterferometerConfig, PhasePreset};
use gaussmeter::symplectic::{ChannelKind, ChannelSpec, SqueezerParams, TritterParams};
use serde::{Deserialize, Serialize};

use crate::grid::parse_angle;
use crate::units::{parse_quantity, Dimension};

pub const CONSTANTS_ENV: &str = "GAUSSMETER_CONSTANTS";

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "qfi-sweep")]
    pub qfi_sweep: Option<QfiSweepConfig>,
    pub sensitivity: Option<SensitivityConfig>,
    #[serde(rename = "gw-table")]
    pub gw_table: Option<GwTableConfig>,
    pub validate: Option<ValidateConfig>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Constants from `$GAUSSMETER_CONSTANTS` if set, otherwise the built-in values.
pub fn load_constants() -> Result<PhysicalConstants> {
    let Some(path) = std::env::var_os(CONSTANTS_ENV) else {
        return Ok(PhysicalConstants::default());
    };
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading {CONSTANTS_ENV} file {path:?}"))?;
    let c: PhysicalConstants =
        toml::from_str(&text).with_context(|| format!("parsing constants file {path:?}"))?;
    if c.version != CONSTANTS_VERSION {
        bail!(
            "constants file version {} is not supported (expected {CONSTANTS_VERSION})",
            c.version
        );
    }
    let values = [
        c.hbar,
        c.bohr_radius,
        c.atomic_mass_unit,
        c.mass_li7_u,
        c.mass_rb87_u,
        c.year,
    ];
    if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        bail!("constants must be finite and positive");
    }
    Ok(c)
}

/// A number, or a string such as `"pi/2"`.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Angle {
    Value(f64),
    Text(String),
}

impl Angle {
    pub fn radians(&self) -> Result<f64> {
        match self {
            Self::Value(v) if v.is_finite() => Ok(*v),
            Self::Value(v) => bail!("angle {v} is not finite"),
            Self::Text(t) => parse_angle(t),
        }
    }
}

fn angle_or_zero(a: &Option<Angle>) -> Result<f64> {
    a.as_ref().map_or(Ok(0.0), Angle::radians)
}

/// Pump, squeezer and tritter settings shared by the interferometer commands.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitConfig {
    /// Mean pump population before squeezing, N̄.
    pub n_bar: Option<f64>,
    /// Pump population after squeezing, N₀ = N̄ − N. Alternative to `n_bar`.
    pub alpha0_sq: Option<f64>,
    pub r: Option<f64>,
    /// Squeezed population N = 2 sinh² r. Alternative to `r`.
    pub n: Option<f64>,
    pub vartheta0: Option<Angle>,
    pub theta_sq: Option<Angle>,
    /// Tritter phase ϑ.
    pub vartheta: Option<Angle>,
    /// `squeeze-optimal`, `modemix-optimal` or `caption`.
    pub phases: Option<String>,
}

impl CircuitConfig {
    /// Fills unset fields from `base`.
    fn or(self, base: Self) -> Self {
        Self {
            n_bar: self.n_bar.or(base.n_bar),
            alpha0_sq: self.alpha0_sq.or(base.alpha0_sq),
            r: self.r.or(base.r),
            n: self.n.or(base.n),
            vartheta0: self.vartheta0.or(base.vartheta0),
            theta_sq: self.theta_sq.or(base.theta_sq),
            vartheta: self.vartheta.or(base.vartheta),
            phases: self.phases.or(base.phases),
        }
    }

    /// Both members of an alternative pair may come from different layers; the explicit one wins.
    fn or_exclusive(self, base: Self) -> Self {
        let mut base = base;
        if self.n_bar.is_some() || self.alpha0_sq.is_some() {
            base.n_bar = None;
            base.alpha0_sq = None;
        }
        if self.r.is_some() || self.n.is_some() {
            base.r = None;
            base.n = None;
        }
        self.or(base)
    }

    pub fn squeezing_r(&self) -> Result<f64> {
        match (self.r, self.n) {
            (Some(r), None) => Ok(r),
            (None, Some(n)) if n >= 0.0 => Ok((n / 2.0).sqrt().asinh()),
            (None, Some(n)) => bail!("n = {n} must be ≥ 0"),
            (Some(_), Some(_)) => bail!("give either r or n, not both"),
            (None, None) => bail!("missing squeezing: set r or n"),
        }
    }

    pub fn squeezed_population(&self) -> Result<f64> {
        let r = self.squeezing_r()?;
        Ok(2.0 * r.sinh().powi(2))
    }

    pub fn phase_preset(&self) -> Result<Option<PhasePreset>> {
        self.phases
            .as_deref()
            .map(|p| p.parse().map_err(|e| anyhow!("{e}")))
            .transpose()
    }

    /// Interferometer at tritter angle `theta` with `channel`, phase preset applied last.
    pub fn build(
        &self,
        theta: f64,
        channel: ChannelSpec<f64>,
    ) -> Result<InterferometerConfig<f64>> {
        let squeezer = SqueezerParams::new(self.squeezing_r()?, angle_or_zero(&self.theta_sq)?)?;
        let tritter = TritterParams::new(theta, angle_or_zero(&self.vartheta)?)?;
        let v0 = angle_or_zero(&self.vartheta0)?;
        let cfg = match (self.n_bar, self.alpha0_sq) {
            (Some(nb), None) => {
                InterferometerConfig::new(PumpSpec::new(nb, v0)?, squeezer, tritter, channel)?
            }
            (None, Some(a)) => {
                InterferometerConfig::from_alpha0_sq(a, v0, squeezer, tritter, channel)?
            }
            (Some(_), Some(_)) => bail!("give either n_bar or alpha0_sq, not both"),
            (None, None) => bail!("missing pump: set n_bar or alpha0_sq"),
        };
        Ok(match self.phase_preset()? {
            Some(p) => cfg.with_phase_preset(p),
            None => cfg,
        })
    }

    fn figure4() -> Self {
        Self {
            alpha0_sq: Some(3.4),
            r: Some(0.4),
            vartheta0: Some(Angle::Value(0.0)),
            theta_sq: Some(Angle::Text("pi/2".into())),
            vartheta: Some(Angle::Value(0.0)),
            ..Self::default()
        }
    }

    fn optimality() -> Self {
        Self {
            n_bar: Some(1e4),
            n: Some(100.0),
            ..Self::default()
        }
    }
}

pub fn parse_channel_kind(s: &str) -> Result<ChannelKind> {
    match s.to_ascii_lowercase().replace('_', "-").as_str() {
        "squeeze" | "squeezing" | "two-mode-squeeze" => Ok(ChannelKind::TwoModeSqueeze),
        "mode-mix" | "modemix" | "mode-mixing" => Ok(ChannelKind::ModeMix),
        "phase" | "phase-shift" => Ok(ChannelKind::PhaseShift),
        other => bail!("unknown channel `{other}` (squeeze, mode-mix or phase-shift)"),
    }
}

pub fn channel_slug(kind: ChannelKind) -> &'static str {
    match kind {
        ChannelKind::TwoModeSqueeze => "squeeze",
        ChannelKind::ModeMix => "mode-mix",
        ChannelKind::PhaseShift => "phase-shift",
    }
}

pub const QFI_SWEEP_PRESETS: [&str; 1] = ["figure4"];

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct QfiSweepConfig {
    pub preset: Option<String>,
    /// θ grid, `start:stop:count`.
    pub grid: Option<String>,
    /// Largest accepted relative gap between closed-form and numeric QFI.
    pub tolerance: Option<f64>,
    /// φ_B and B of the squeezing channel.
    pub squeeze_phase: Option<Angle>,
    pub squeeze_coupling: Option<f64>,
    /// φ_A and A of the mode-mixing channel.
    pub modemix_phase: Option<Angle>,
    pub modemix_coupling: Option<f64>,
    /// κ of the phase-shift channel.
    pub phase_coupling: Option<f64>,
    #[serde(default)]
    pub circuit: CircuitConfig,
}

impl QfiSweepConfig {
    /// Applies a named preset underneath the explicit settings.
    pub fn resolve(self, preset: Option<&str>, grid: Option<&str>) -> Result<Self> {
        let mut c = self;
        if let Some(p) = preset {
            c.preset = Some(p.to_string());
        }
        if let Some(g) = grid {
            c.grid = Some(g.to_string());
        }
        match c.preset.as_deref() {
            None => {}
            Some("figure4") => {
                c.circuit = c.circuit.or_exclusive(CircuitConfig::figure4());
                c.squeeze_coupling = c.squeeze_coupling.or(Some(2.0));
                c.modemix_coupling = c.modemix_coupling.or(Some(2.0));
                c.phase_coupling = c.phase_coupling.or(Some(1.0));
            }
            Some(other) => bail!(
                "unknown qfi-sweep preset `{other}` (known: {})",
                QFI_SWEEP_PRESETS.join(", ")
            ),
        }
        c.grid.get_or_insert_with(|| "0:pi:101".into());
        c.tolerance.get_or_insert(1e-6);
        Ok(c)
    }

    pub fn channel(&self, kind: ChannelKind) -> Result<ChannelSpec<f64>> {
        let missing = |k: &str| anyhow!("missing {k}");
        Ok(match kind {
            ChannelKind::TwoModeSqueeze => ChannelSpec::squeeze(
                angle_or_zero(&self.squeeze_phase)?,
                self.squeeze_coupling
                    .ok_or_else(|| missing("squeeze_coupling"))?,
            ),
            ChannelKind::ModeMix => ChannelSpec::mode_mix(
                angle_or_zero(&self.modemix_phase)?,
                self.modemix_coupling
                    .ok_or_else(|| missing("modemix_coupling"))?,
            ),
            ChannelKind::PhaseShift => ChannelSpec::phase_shift(
                self.phase_coupling
                    .ok_or_else(|| missing("phase_coupling"))?,
            ),
        })
    }
}

pub const SENSITIVITY_PRESETS: [&str; 2] = ["figure4", "optimality"];

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityConfig {
    pub preset: Option<String>,
    /// `squeeze`, `mode-mix` or `phase-shift`.
    pub channel: Option<String>,
    /// B, A or κ.
    pub coupling: Option<f64>,
    /// φ_B or φ_A.
    pub channel_phase: Option<Angle>,
    /// Tritter angle, or `"theta_t"` for the turning point.
    pub theta: Option<Angle>,
    /// Optional θ grid; overrides `theta`.
    pub grid: Option<String>,
    /// Channel magnitude (s, m or φ) at which F₀ is probed.
    pub probe: Option<f64>,
    pub repetitions: Option<f64>,
    pub heterodyne: Option<bool>,
    pub qfi_tolerance: Option<f64>,
    pub f0_tolerance: Option<f64>,
    #[serde(default)]
    pub circuit: CircuitConfig,
}

impl SensitivityConfig {
    pub fn resolve(
        self,
        preset: Option<&str>,
        grid: Option<&str>,
        heterodyne: bool,
    ) -> Result<Self> {
        let mut c = self;
        if let Some(p) = preset {
            c.preset = Some(p.to_string());
        }
        if let Some(g) = grid {
            c.grid = Some(g.to_string());
        }
        if heterodyne {
            c.heterodyne = Some(true);
        }
        let kind = parse_channel_kind(c.channel.as_deref().unwrap_or("squeeze"))?;
        c.channel = Some(channel_slug(kind).to_string());
        match c.preset.as_deref() {
            None => {}
            Some("figure4") => {
                c.circuit = c.circuit.or_exclusive(CircuitConfig::figure4());
                c.coupling = c.coupling.or(Some(if kind == ChannelKind::PhaseShift {
                    1.0
                } else {
                    2.0
                }));
                c.theta = c.theta.or(Some(Angle::Value(0.0)));
            }
            Some("optimality") => {
                c.circuit = c.circuit.or_exclusive(CircuitConfig::optimality());
                let phases = match kind {
                    ChannelKind::ModeMix => "modemix-optimal",
                    _ => "squeeze-optimal",
                };
                c.circuit.phases = c.circuit.phases.or(Some(phases.into()));
                c.circuit.theta_sq = c.circuit.theta_sq.or(Some(Angle::Text("pi/2".into())));
                c.coupling = c.coupling.or(Some(if kind == ChannelKind::PhaseShift {
                    1.0
                } else {
                    2.0
                }));
                c.theta = c.theta.or(Some(Angle::Text("theta_t".into())));
            }
            Some(other) => bail!(
                "unknown sensitivity preset `{other}` (known: {})",
                SENSITIVITY_PRESETS.join(", ")
            ),
        }
        c.probe.get_or_insert(1e-5);
        c.repetitions.get_or_insert(1.0);
        c.heterodyne.get_or_insert(false);
        c.qfi_tolerance.get_or_insert(1e-6);
        c.f0_tolerance.get_or_insert(1e-3);
        Ok(c)
    }

    pub fn kind(&self) -> Result<ChannelKind> {
        parse_channel_kind(self.channel.as_deref().unwrap_or("squeeze"))
    }

    pub fn channel_spec(&self) -> Result<ChannelSpec<f64>> {
        let coupling = self.coupling.ok_or_else(|| anyhow!("missing coupling"))?;
        if !coupling.is_finite() || coupling < 0.0 {
            bail!("coupling must be finite and ≥ 0");
        }
        let phase = angle_or_zero(&self.channel_phase)?;
        Ok(match self.kind()? {
            ChannelKind::TwoModeSqueeze => ChannelSpec::squeeze(phase, coupling),
            ChannelKind::ModeMix => ChannelSpec::mode_mix(phase, coupling),
            ChannelKind::PhaseShift => ChannelSpec::phase_shift(coupling),
        })
    }

    /// Tritter angles to evaluate.
    pub fn thetas(&self) -> Result<Vec<f64>> {
        if let Some(g) = &self.grid {
            return crate::grid::Grid::parse(g)?.points();
        }
        let theta = match &self.theta {
            None => bail!("missing theta"),
            Some(Angle::Text(t)) if t.trim() == "theta_t" => {
                let n = self.circuit.squeezed_population()?;
                let n_bar = match (self.circuit.n_bar, self.circuit.alpha0_sq) {
                    (Some(nb), _) => nb,
                    (None, Some(a)) => a + n,
                    (None, None) => bail!("missing pump: set n_bar or alpha0_sq"),
                };
                turning_point_theta(n, n_bar)?.theta
            }
            Some(a) => a.radians()?,
        };
        Ok(vec![theta])
    }
}

/// One detector design. Dimensional values carry units, e.g. `length = "5 mm"`.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorConfig {
    pub name: String,
    pub species: String,
    pub length: String,
    /// R/L.
    pub aspect: f64,
    pub atoms: f64,
    pub phonons: f64,
    /// (l, n)
    pub modes: [u32; 2],
    pub lifetime: String,
    /// Phonon lifetime for the earlier scheme; defaults to `lifetime`.
    pub lifetime_old: Option<String>,
    pub scattering: String,
    pub integration: Option<String>,
    pub detectors: Option<u32>,
    pub theta: Option<Angle>,
}

impl DetectorConfig {
    /// Interferometric and earlier-scheme parameter sets.
    pub fn params(&self, c: &PhysicalConstants) -> Result<(BecDetectorParams, BecDetectorParams)> {
        let species: Species = self.species.parse()?;
        let ctx = |what: &str| format!("row `{}`: {what}", self.name);
        let length =
            parse_quantity(&self.length, Dimension::Length, c).with_context(|| ctx("length"))?;
        let lifetime =
            parse_quantity(&self.lifetime, Dimension::Time, c).with_context(|| ctx("lifetime"))?;
        let lifetime_old = match &self.lifetime_old {
            Some(t) => {
                parse_quantity(t, Dimension::Time, c).with_context(|| ctx("lifetime_old"))?
            }
            None => lifetime,
        };
        let fi = BecDetectorParams {
            atom_mass: species.mass(c),
            scattering_length: parse_quantity(&self.scattering, Dimension::Length, c)
                .with_context(|| ctx("scattering"))?,
            box_length: length,
            aspect: self.aspect,
            atom_number: self.atoms,
            phonon_number: self.phonons,
            mode_l: self.modes[0],
            mode_n: self.modes[1],
            phonon_lifetime: lifetime,
            integration_time: match &self.integration {
                Some(t) => {
                    parse_quantity(t, Dimension::Time, c).with_context(|| ctx("integration"))?
                }
                None => c.year,
            },
            detectors: self.detectors.unwrap_or(DETECTORS),
            tritter_theta: match &self.theta {
                Some(a) => a.radians()?,
                None => TRITTER_THETA,
            },
        };
        fi.validate().with_context(|| ctx("parameters"))?;
        let old = BecDetectorParams {
            phonon_lifetime: lifetime_old,
            ..fi.clone()
        };
        old.validate().with_context(|| ctx("parameters"))?;
        Ok((fi, old))
    }
}

/// Built-in row, or a user-defined one.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum TableRow {
    Preset(&'static TablePreset),
    Custom(DetectorConfig),
}

impl TableRow {
    pub fn name(&self) -> &str {
        match self {
            Self::Preset(p) => p.name,
            Self::Custom(d) => &d.name,
        }
    }

    pub fn params(&self, c: &PhysicalConstants) -> Result<(BecDetectorParams, BecDetectorParams)> {
        match self {
            Self::Preset(p) => Ok((
                p.params(Scheme::Interferometric, c),
                p.params(Scheme::Earlier, c),
            )),
            Self::Custom(d) => d.params(c),
        }
    }
}

fn lookup_preset(name: &str) -> Result<&'static TablePreset> {
    find_preset(name).ok_or_else(|| {
        let known: Vec<&str> = gaussmeter::bec::TABLE_PRESETS
            .iter()
            .map(|p| p.name)
            .collect();
        anyhow!(
            "unknown detector preset `{name}` (known: {})",
            known.join(", ")
        )
    })
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GwTableConfig {
    /// Built-in rows to include. Defaults to all five when no custom rows are given.
    pub presets: Option<Vec<String>>,
    #[serde(default)]
    pub rows: Vec<DetectorConfig>,
}

impl GwTableConfig {
    /// `--preset` selects a single built-in row, or `all`.
    pub fn resolve(self, preset: Option<&str>) -> Result<Self> {
        let mut c = self;
        if let Some(p) = preset {
            c.presets = Some(vec![p.to_string()]);
        }
        if c.presets.is_none() && c.rows.is_empty() {
            c.presets = Some(vec!["all".into()]);
        }
        let mut seen = std::collections::HashSet::new();
        for r in &c.rows {
            if !seen.insert(r.name.as_str()) {
                bail!("duplicate row name `{}`", r.name);
            }
        }
        Ok(c)
    }

    pub fn table_rows(&self) -> Result<Vec<TableRow>> {
        let mut out = Vec::new();
        for name in self.presets.iter().flatten() {
            if name.eq_ignore_ascii_case("all") {
                out.extend(gaussmeter::bec::TABLE_PRESETS.iter().map(TableRow::Preset));
            } else {
                out.push(TableRow::Preset(lookup_preset(name)?));
            }
        }
        out.extend(self.rows.iter().cloned().map(TableRow::Custom));
        if out.is_empty() {
            bail!("gw-table has no rows");
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateConfig {
    pub preset: Option<String>,
    pub detector: Option<DetectorConfig>,
}

impl ValidateConfig {
    pub fn resolve(self, preset: Option<&str>) -> Result<Self> {
        let mut c = self;
        if let Some(p) = preset {
            c.preset = Some(p.to_string());
            c.detector = None;
        }
        match (&c.preset, &c.detector) {
            (Some(_), Some(_)) => {
                bail!("validate: give either preset or [validate.detector], not both")
            }
            (None, None) => {
                bail!("validate: nothing to check (use --preset or [validate.detector])")
            }
            _ => Ok(c),
        }
    }

    pub fn row(&self) -> Result<TableRow> {
        match (&self.preset, &self.detector) {
            (Some(p), _) => Ok(TableRow::Preset(lookup_preset(p)?)),
            (None, Some(d)) => Ok(TableRow::Custom(d.clone())),
            (None, None) => bail!("validate: nothing to check"),
        }
    }
}
