//! Experiment configuration: a JSON document whose every field has a default,
//! so `{}` reproduces the reference setup.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::channel::{AcousticChannel, DelayMode, MultipathTap};
use crate::dsp::{ChirpSpec, FskConfig};
use crate::energy::{
    default_efficiency_curve, read_efficiency_curve, ComponentPower, HarvesterSpec, SplitOverlap,
    StartupMode, StartupPlan,
};
use crate::error::Error;
use crate::protocol::{RangingMode, RangingTimeline};
use crate::wpt::{ArraySpec, ChargeKind, RfLink, SweepSchedule};

/// A rejected configuration: which field, and which constraint it broke.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("config error in `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            message: message.into(),
        }
    }

    fn from_core(section: &str, err: Error) -> Self {
        match err {
            Error::InvalidParameter { name, reason } => {
                ConfigError::new(format!("{section}.{name}"), reason)
            }
            other => ConfigError::new(section, other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChirpConfig {
    pub f_start_hz: f64,
    pub f_stop_hz: f64,
    pub tau_tx_s: f64,
    pub sample_rate_hz: f64,
    pub amplitude: f64,
}

impl Default for ChirpConfig {
    fn default() -> Self {
        let c = ChirpSpec::<f64>::default();
        ChirpConfig {
            f_start_hz: c.f_start,
            f_stop_hz: c.f_stop,
            tau_tx_s: c.tau_tx,
            sample_rate_hz: c.sample_rate,
            amplitude: c.amplitude,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TapConfig {
    pub extra_delay_s: f64,
    pub relative_gain: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DelayModeConfig {
    #[default]
    Nearest,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelConfig {
    pub speed_of_sound_m_s: f64,
    pub attenuation_exponent: f64,
    pub noise_std: f64,
    pub multipath: Vec<TapConfig>,
    pub delay_mode: DelayModeConfig,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        let c = AcousticChannel::<f64>::default();
        ChannelConfig {
            speed_of_sound_m_s: c.speed_of_sound,
            attenuation_exponent: c.attenuation_exponent,
            noise_std: c.noise_std,
            multipath: Vec::new(),
            delay_mode: DelayModeConfig::Nearest,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimelineConfig {
    pub t0_s: f64,
    pub t_wake_s: f64,
    pub tau_rx_s: f64,
}

impl Default for TimelineConfig {
    fn default() -> Self {
        let t = RangingTimeline::<f64>::default();
        TimelineConfig {
            t0_s: t.t0,
            t_wake_s: t.t_wake,
            tau_rx_s: t.tau_rx,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FskSection {
    pub f_osc0_hz: f64,
    pub f_osc1_hz: f64,
    pub rf_sample_rate_hz: f64,
}

impl Default for FskSection {
    fn default() -> Self {
        let f = FskConfig::<f64>::default();
        FskSection {
            f_osc0_hz: f.f_osc0,
            f_osc1_hz: f.f_osc1,
            rf_sample_rate_hz: f.rf_sample_rate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum StartupModeConfig {
    Simultaneous,
    #[default]
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OverlapConfig {
    #[default]
    FullWindow,
    OwnTurnOn,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergyConfig {
    pub startup_mode: StartupModeConfig,
    pub overlap: OverlapConfig,
    pub operate_time_s: f64,
    pub lead_window_s: f64,
    pub final_window_s: f64,
    /// CSV component table; the built-in table when absent.
    pub components_file: Option<PathBuf>,
    /// Overrides the computed per-measurement energy (J).
    pub e_tag_j: Option<f64>,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        let p = StartupPlan::<f64>::default();
        EnergyConfig {
            startup_mode: StartupModeConfig::Split,
            overlap: OverlapConfig::FullWindow,
            operate_time_s: p.operate_time,
            lead_window_s: p.lead_window,
            final_window_s: p.final_window,
            components_file: None,
            e_tag_j: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarvesterConfig {
    pub v_chrdy: f64,
    pub v_ovdis: f64,
    pub v_out: f64,
    pub eta_ldo_worst: f64,
    pub p_in_min_dbm: f64,
    pub p_in_max_dbm: f64,
    pub eta_antenna: f64,
    pub eta_storage: f64,
    /// CSV efficiency curve; the calibrated built-in curve when absent.
    pub efficiency_curve_file: Option<PathBuf>,
    /// E-buffer capacitance (F).
    pub capacitance_f: f64,
}

impl Default for HarvesterConfig {
    fn default() -> Self {
        let h = HarvesterSpec::<f64>::default();
        HarvesterConfig {
            v_chrdy: h.v_chrdy,
            v_ovdis: h.v_ovdis,
            v_out: h.v_out,
            eta_ldo_worst: h.eta_ldo_worst,
            p_in_min_dbm: h.p_in_min_dbm,
            p_in_max_dbm: h.p_in_max_dbm,
            eta_antenna: h.eta_antenna,
            eta_storage: h.eta_storage,
            efficiency_curve_file: None,
            capacitance_f: 68e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LinkPreset {
    /// Isotropic transmitter at the full EIRP.
    #[default]
    Simulation,
    /// 6.15 dBi patch, conducted power trimmed to the EIRP limit.
    Measurement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkConfig {
    pub preset: LinkPreset,
    pub f_carrier_hz: f64,
    pub p_t_dbm: f64,
    pub g_t_dbi: f64,
    pub g_r_dbi: f64,
    pub duty_cycle: f64,
    pub eirp_limit_dbm: f64,
}

impl Default for LinkConfig {
    fn default() -> Self {
        let l = RfLink::<f64>::default();
        LinkConfig {
            preset: LinkPreset::Simulation,
            f_carrier_hz: l.f_carrier,
            p_t_dbm: l.p_t,
            g_t_dbi: l.g_t,
            g_r_dbi: l.g_r,
            duty_cycle: l.duty_cycle,
            eirp_limit_dbm: l.eirp_limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrayConfig {
    pub spacing_wavelengths: f64,
    pub element_gain_dbi: f64,
}

impl Default for ArrayConfig {
    fn default() -> Self {
        let a = ArraySpec::<f64>::default();
        ArrayConfig {
            spacing_wavelengths: a.spacing,
            element_gain_dbi: a.element_gain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub distance_m: f64,
    pub tag_angles_deg: Vec<f64>,
    pub n_elements: Vec<usize>,
    pub dwell_s: f64,
    pub step_deg: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let s = SweepSchedule::<f64>::default();
        SweepConfig {
            distance_m: 6.0,
            tag_angles_deg: vec![0.0, 25.0, 50.0],
            n_elements: vec![1, 2, 4, 8],
            dwell_s: s.dwell,
            step_deg: s.step,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub min_m: f64,
    pub max_m: f64,
    pub step_m: f64,
}

impl GridConfig {
    /// Grid points `min + i*step` up to `max`; empty when `max < min`.
    pub fn points(&self) -> Vec<f64> {
        if !(self.max_m >= self.min_m) {
            return Vec::new();
        }
        let count = ((self.max_m - self.min_m) / self.step_m + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.min_m + i as f64 * self.step_m)
            .collect()
    }

    fn validate(&self, field: &str) -> Result<(), ConfigError> {
        if !(self.step_m > 0.0) || !self.step_m.is_finite() {
            return Err(ConfigError::new(format!("{field}.step_m"), "must be > 0"));
        }
        if !self.min_m.is_finite() || !self.max_m.is_finite() {
            return Err(ConfigError::new(field, "bounds must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeConfig {
    IdealAudio,
    OneBitBackscatter,
}

impl From<ModeConfig> for RangingMode {
    fn from(m: ModeConfig) -> Self {
        match m {
            ModeConfig::IdealAudio => RangingMode::IdealAudio,
            ModeConfig::OneBitBackscatter => RangingMode::OneBitBackscatter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RangingConfig {
    pub modes: Vec<ModeConfig>,
}

impl Default for RangingConfig {
    fn default() -> Self {
        RangingConfig {
            modes: vec![ModeConfig::IdealAudio, ModeConfig::OneBitBackscatter],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Initial,
    Update,
}

impl From<ScenarioKind> for ChargeKind {
    fn from(k: ScenarioKind) -> Self {
        match k {
            ScenarioKind::Initial => ChargeKind::Initial,
            ScenarioKind::Update => ChargeKind::Update,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UpdateConfig {
    pub measurement_overhead_s: f64,
    pub scenarios: Vec<ScenarioKind>,
}

impl Default for UpdateConfig {
    fn default() -> Self {
        UpdateConfig {
            measurement_overhead_s: 0.0,
            scenarios: vec![ScenarioKind::Initial, ScenarioKind::Update],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub chirp: ChirpConfig,
    pub channel: ChannelConfig,
    pub timeline: TimelineConfig,
    pub fsk: FskSection,
    pub energy: EnergyConfig,
    pub harvester: HarvesterConfig,
    pub link: LinkConfig,
    pub array: ArrayConfig,
    pub sweep: SweepConfig,
    /// Distances for `charge-curve` and `update-rate`.
    pub charge_grid: GridConfig,
    /// Distances for `range`.
    pub range_grid: GridConfig,
    pub ranging: RangingConfig,
    pub update: UpdateConfig,
    pub rng_seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            chirp: Default::default(),
            channel: Default::default(),
            timeline: Default::default(),
            fsk: Default::default(),
            energy: Default::default(),
            harvester: Default::default(),
            link: Default::default(),
            array: Default::default(),
            sweep: Default::default(),
            charge_grid: GridConfig {
                min_m: 1.0,
                max_m: 7.0,
                step_m: 0.5,
            },
            range_grid: GridConfig {
                min_m: 0.5,
                max_m: 6.0,
                step_m: 0.5,
            },
            ranging: Default::default(),
            update: Default::default(),
            rng_seed: 0,
            output: None,
        }
    }
}

fn merge(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                match b.get_mut(&k) {
                    Some(slot) if slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (b, p) => *b = p,
    }
}

/// Applies `a.b.c=value`; the value is parsed as JSON, falling back to a string.
fn apply_override(root: &mut Value, assignment: &str) -> Result<(), ConfigError> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| ConfigError::new(assignment, "override must look like key=value"))?;
    let path = path.trim();
    if path.is_empty() {
        return Err(ConfigError::new(assignment, "empty key"));
    }
    let value =
        serde_json::from_str(raw.trim()).unwrap_or_else(|_| Value::String(raw.trim().to_owned()));
    let mut node = root;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        if node.is_null() {
            *node = Value::Object(Default::default());
        }
        let obj = node
            .as_object_mut()
            .ok_or_else(|| ConfigError::new(keys[..i].join("."), "is not an object"))?;
        if i + 1 == keys.len() {
            obj.insert((*key).to_owned(), value);
            return Ok(());
        }
        node = obj.entry((*key).to_owned()).or_insert(Value::Null);
    }
    Ok(())
}

impl ScenarioConfig {
    /// Defaults, overlaid with the optional file, then the `key=value` overrides, then the seed.
    pub fn load(
        path: Option<&Path>,
        overrides: &[String],
        seed: Option<u64>,
    ) -> Result<Self, ConfigError> {
        let mut root =
            serde_json::to_value(ScenarioConfig::default()).expect("default config serializes");
        if let Some(path) = path {
            let text = fs::read_to_string(path).map_err(|e| {
                ConfigError::new("--config", format!("cannot read {}: {e}", path.display()))
            })?;
            let file: Value = serde_json::from_str(&text).map_err(|e| {
                ConfigError::new(
                    "--config",
                    format!("invalid JSON in {}: {e}", path.display()),
                )
            })?;
            if !file.is_object() {
                return Err(ConfigError::new(
                    "--config",
                    "top level must be a JSON object",
                ));
            }
            merge(&mut root, file);
        }
        for o in overrides {
            apply_override(&mut root, o)?;
        }
        let mut cfg: ScenarioConfig =
            serde_json::from_value(root).map_err(|e| ConfigError::new("config", e.to_string()))?;
        if let Some(seed) = seed {
            cfg.rng_seed = seed;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn chirp_spec(&self) -> ChirpSpec<f64> {
        ChirpSpec {
            f_start: self.chirp.f_start_hz,
            f_stop: self.chirp.f_stop_hz,
            tau_tx: self.chirp.tau_tx_s,
            sample_rate: self.chirp.sample_rate_hz,
            amplitude: self.chirp.amplitude,
        }
    }

    pub fn channel_at(&self, distance: f64, seed: u64) -> AcousticChannel<f64> {
        AcousticChannel {
            distance,
            speed_of_sound: self.channel.speed_of_sound_m_s,
            attenuation_exponent: self.channel.attenuation_exponent,
            noise_std: self.channel.noise_std,
            multipath: self
                .channel
                .multipath
                .iter()
                .map(|t| MultipathTap {
                    extra_delay: t.extra_delay_s,
                    relative_gain: t.relative_gain,
                })
                .collect(),
            rng_seed: seed,
            delay_mode: match self.channel.delay_mode {
                DelayModeConfig::Nearest => DelayMode::Nearest,
                DelayModeConfig::Linear => DelayMode::Linear,
            },
        }
    }

    pub fn timeline(&self) -> RangingTimeline<f64> {
        RangingTimeline {
            t0: self.timeline.t0_s,
            t_wake: self.timeline.t_wake_s,
            tau_rx: self.timeline.tau_rx_s,
        }
    }

    pub fn fsk_config(&self) -> FskConfig<f64> {
        FskConfig {
            f_osc0: self.fsk.f_osc0_hz,
            f_osc1: self.fsk.f_osc1_hz,
            rf_sample_rate: self.fsk.rf_sample_rate_hz,
        }
    }

    pub fn startup_plan(&self) -> StartupPlan<f64> {
        StartupPlan {
            mode: match self.energy.startup_mode {
                StartupModeConfig::Simultaneous => StartupMode::Simultaneous,
                StartupModeConfig::Split => StartupMode::Split,
            },
            overlap: match self.energy.overlap {
                OverlapConfig::FullWindow => SplitOverlap::FullWindow,
                OverlapConfig::OwnTurnOn => SplitOverlap::OwnTurnOn,
            },
            operate_time: self.energy.operate_time_s,
            lead_window: self.energy.lead_window_s,
            final_window: self.energy.final_window_s,
        }
    }

    pub fn components(&self) -> Result<Vec<ComponentPower<f64>>, ConfigError> {
        match &self.energy.components_file {
            None => Ok(ComponentPower::default_table()),
            Some(path) => {
                let file = fs::File::open(path).map_err(|e| {
                    ConfigError::new(
                        "energy.components_file",
                        format!("cannot open {}: {e}", path.display()),
                    )
                })?;
                ComponentPower::read_csv(file)
                    .map_err(|e| ConfigError::from_core("energy.components_file", e))
            }
        }
    }

    pub fn harvester_spec(&self) -> Result<HarvesterSpec<f64>, ConfigError> {
        let h = &self.harvester;
        let curve = match &h.efficiency_curve_file {
            None => default_efficiency_curve(),
            Some(path) => {
                let file = fs::File::open(path).map_err(|e| {
                    ConfigError::new(
                        "harvester.efficiency_curve_file",
                        format!("cannot open {}: {e}", path.display()),
                    )
                })?;
                read_efficiency_curve(file)
                    .map_err(|e| ConfigError::from_core("harvester.efficiency_curve_file", e))?
            }
        };
        Ok(HarvesterSpec {
            v_chrdy: h.v_chrdy,
            v_ovdis: h.v_ovdis,
            v_out: h.v_out,
            eta_ldo_worst: h.eta_ldo_worst,
            p_in_min_dbm: h.p_in_min_dbm,
            p_in_max_dbm: h.p_in_max_dbm,
            efficiency_curve: curve,
            eta_antenna: h.eta_antenna,
            eta_storage: h.eta_storage,
        })
    }

    /// The RF link at `distance`, preset applied.
    pub fn link_at(&self, distance: f64) -> RfLink<f64> {
        let l = &self.link;
        let (p_t, g_t) = match l.preset {
            LinkPreset::Simulation => (l.p_t_dbm, l.g_t_dbi),
            LinkPreset::Measurement => {
                let patch = RfLink::<f64>::patch_antenna(distance);
                (l.eirp_limit_dbm - patch.g_t, patch.g_t)
            }
        };
        RfLink {
            f_carrier: l.f_carrier_hz,
            p_t,
            g_t,
            g_r: l.g_r_dbi,
            distance,
            duty_cycle: l.duty_cycle,
            eirp_limit: l.eirp_limit_dbm,
        }
    }

    pub fn array_spec(&self, n_elements: usize) -> ArraySpec<f64> {
        ArraySpec {
            n_elements,
            spacing: self.array.spacing_wavelengths,
            element_gain: self.array.element_gain_dbi,
            steer_angle: 0.0,
        }
    }

    pub fn sweep_schedule(&self) -> SweepSchedule<f64> {
        SweepSchedule {
            dwell: self.sweep.dwell_s,
            step: self.sweep.step_deg,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.chirp_spec()
            .validate()
            .map_err(|e| ConfigError::from_core("chirp", e))?;
        self.channel_at(0.0, 0)
            .validate()
            .map_err(|e| ConfigError::from_core("channel", e))?;
        self.timeline()
            .validate()
            .map_err(|e| ConfigError::from_core("timeline", e))?;
        self.fsk_config()
            .validate()
            .map_err(|e| ConfigError::from_core("fsk", e))?;
        self.startup_plan()
            .validate()
            .map_err(|e| ConfigError::from_core("energy", e))?;
        if let Some(e) = self.energy.e_tag_j {
            if !(e >= 0.0) {
                return Err(ConfigError::new("energy.e_tag_j", "must be >= 0"));
            }
        }
        self.components()?;
        self.harvester_spec()?
            .validate()
            .map_err(|e| ConfigError::from_core("harvester", e))?;
        if !(self.harvester.capacitance_f > 0.0) {
            return Err(ConfigError::new("harvester.capacitance_f", "must be > 0"));
        }
        match self.link_at(1.0).validate() {
            Err(Error::EirpViolation { eirp_dbm, limit_dbm }) => {
                return Err(ConfigError::new(
                    "link.p_t_dbm",
                    format!(
                        "p_t + g_t = {eirp_dbm} dBm exceeds the regulatory EIRP limit of {limit_dbm} dBm"
                    ),
                ))
            }
            Err(e) => return Err(ConfigError::from_core("link", e)),
            Ok(()) => {}
        }
        if self.link.eirp_limit_dbm > 27.0 {
            return Err(ConfigError::new(
                "link.eirp_limit_dbm",
                "the 869.4-869.65 MHz band allows at most 27 dBm EIRP",
            ));
        }
        for &n in &self.sweep.n_elements {
            self.array_spec(n)
                .validate()
                .map_err(|e| ConfigError::from_core("sweep", e))?;
        }
        self.sweep_schedule()
            .validate()
            .map_err(|e| ConfigError::from_core("sweep", e))?;
        if !(self.sweep.distance_m > 0.0) {
            return Err(ConfigError::new("sweep.distance_m", "must be > 0"));
        }
        self.charge_grid.validate("charge_grid")?;
        self.range_grid.validate("range_grid")?;
        if self.charge_grid.min_m <= 0.0 && self.charge_grid.max_m >= self.charge_grid.min_m {
            return Err(ConfigError::new(
                "charge_grid.min_m",
                "link distances must be > 0",
            ));
        }
        if !(self.update.measurement_overhead_s >= 0.0) {
            return Err(ConfigError::new(
                "update.measurement_overhead_s",
                "must be >= 0",
            ));
        }
        Ok(())
    }

    /// SHA-256 over the effective configuration and the data tables it resolves to.
    pub fn hash(&self) -> String {
        let components: Vec<(String, f64, f64, u32, bool)> = self
            .components()
            .unwrap_or_default()
            .into_iter()
            .map(|c| (c.name, c.power, c.turn_on_time, c.count, c.lead))
            .collect();
        let curve = self
            .harvester_spec()
            .map(|h| h.efficiency_curve)
            .unwrap_or_default();
        let doc = serde_json::json!({
            "config": self,
            "components": components,
            "efficiency_curve": curve,
        });
        let mut hasher = Sha256::new();
        hasher.update(doc.to_string().as_bytes());
        hex::encode(hasher.finalize())
    }
}
