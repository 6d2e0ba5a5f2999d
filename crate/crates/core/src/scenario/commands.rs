use rayon::prelude::*;

use crate::energy::{
    buffer_energy, harvester_output, min_capacitance, next_standard_capacitance, tag_energy,
};
use crate::error::Error;
use crate::protocol::{simulate_ranging, RangingMode};
use crate::wpt::{
    beam_sweep_precharge, charge_time, friis_received_power, seconds_per_update, ChargeKind,
    ChargeScenario,
};

use super::config::{ConfigError, ScenarioConfig};
use super::table::{Cell, ResultTable};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failure of a command: bad configuration, or a fault while running it.
#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Runtime(e.to_string())
    }
}

fn with_metadata(mut table: ResultTable, command: &str, cfg: &ScenarioConfig) -> ResultTable {
    let c = &cfg.chirp;
    table.metadata = vec![
        ("tool".into(), format!("sonotag {TOOL_VERSION}")),
        ("command".into(), command.into()),
        ("config_sha256".into(), cfg.hash()),
        ("seed".into(), cfg.rng_seed.to_string()),
        (
            "chirp".into(),
            format!(
                "f_start_hz={} f_stop_hz={} tau_tx_s={} sample_rate_hz={}",
                c.f_start_hz, c.f_stop_hz, c.tau_tx_s, c.sample_rate_hz
            ),
        ),
    ];
    table
}

/// Initial and update charge time over the charge grid.
pub fn cmd_charge_curve(cfg: &ScenarioConfig) -> Result<ResultTable, CommandError> {
    let h = cfg.harvester_spec()?;
    let c = cfg.harvester.capacitance_f;
    let initial = ChargeScenario::initial(&h);
    let update = ChargeScenario::update(&h);
    let mut table = ResultTable::new(vec![
        "distance_m",
        "t_initial_s",
        "t_update_s",
        "p_harvest_w",
        "p_in_dbm",
    ]);
    for d in cfg.charge_grid.points() {
        let p_in = friis_received_power(&cfg.link_at(d))?;
        let p = harvester_output(p_in, &h);
        table.push(vec![
            d.into(),
            charge_time(c, &initial, p).into(),
            charge_time(c, &update, p).into(),
            p.into(),
            p_in.into(),
        ]);
    }
    Ok(with_metadata(table, "charge-curve", cfg))
}

/// Per-row noise seed derived from the run seed.
fn row_seed(seed: u64, row: usize) -> u64 {
    seed.wrapping_add((row as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// End-to-end ranging over the range grid in every configured mode.
pub fn cmd_range(cfg: &ScenarioConfig) -> Result<ResultTable, CommandError> {
    let chirp = cfg.chirp_spec();
    let tl = cfg.timeline();
    let fsk = cfg.fsk_config();
    let modes: Vec<RangingMode> = cfg.ranging.modes.iter().map(|&m| m.into()).collect();
    let jobs: Vec<(f64, RangingMode)> = cfg
        .range_grid
        .points()
        .into_iter()
        .flat_map(|d| modes.iter().map(move |&m| (d, m)))
        .collect();

    let rows: Vec<Result<Vec<Cell>, CommandError>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, &(d, mode))| {
            let ch = cfg.channel_at(d, row_seed(cfg.rng_seed, i / modes.len().max(1)));
            match simulate_ranging(&chirp, &ch, &tl, mode, Some(&fsk)) {
                Ok(r) => Ok(vec![
                    d.into(),
                    r.distance.into(),
                    (r.distance - d).abs().into(),
                    r.peak.into(),
                    mode.label().into(),
                    if r.clamped { "clamped" } else { "ok" }.into(),
                ]),
                Err(Error::OutOfRange { .. }) => Ok(vec![
                    d.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    mode.label().into(),
                    "out-of-range".into(),
                ]),
                Err(e) => Err(e.into()),
            }
        })
        .collect();

    let mut table = ResultTable::new(vec![
        "true_distance_m",
        "est_distance_m",
        "abs_error_m",
        "corr_peak",
        "mode",
        "status",
    ]);
    for row in rows {
        table.push(row?);
    }
    Ok(with_metadata(table, "range", cfg))
}

/// Per-measurement energy, minimum and standard E-buffer size, and the energy to harvest.
pub fn cmd_size_buffer(cfg: &ScenarioConfig) -> Result<ResultTable, CommandError> {
    let h = cfg.harvester_spec()?;
    let e_tag = match cfg.energy.e_tag_j {
        Some(e) => e,
        None => tag_energy(&cfg.components()?, &cfg.startup_plan()),
    };
    let c_min = min_capacitance(e_tag, &h)?;
    let c_std = next_standard_capacitance(c_min);
    let e_cap = buffer_energy(c_std, h.v_chrdy, h.v_ovdis);
    let e_initial = buffer_energy(c_std, h.v_chrdy, 0.0);

    let mut table = ResultTable::new(vec!["quantity", "value", "unit"]);
    for (name, value, unit) in [
        ("e_tag", e_tag, "J"),
        ("c_min", c_min, "F"),
        ("c_standard", c_std, "F"),
        ("e_cap", e_cap, "J"),
        ("e_initial", e_initial, "J"),
    ] {
        table.push(vec![name.into(), value.into(), unit.into()]);
    }
    Ok(with_metadata(table, "size-buffer", cfg))
}

/// Duty-cycle-limited position update rate per distance and charge scenario.
pub fn cmd_update_rate(cfg: &ScenarioConfig) -> Result<ResultTable, CommandError> {
    let h = cfg.harvester_spec()?;
    let c = cfg.harvester.capacitance_f;
    let overhead = cfg.update.measurement_overhead_s;
    let mut table = ResultTable::new(vec![
        "distance_m",
        "scenario",
        "charge_time_s",
        "duty_cycle",
        "updates_per_hour",
        "seconds_per_update",
    ]);
    for d in cfg.charge_grid.points() {
        let link = cfg.link_at(d);
        let p = harvester_output(friis_received_power(&link)?, &h);
        for &kind in &cfg.update.scenarios {
            let kind: ChargeKind = kind.into();
            let t = charge_time(c, &ChargeScenario::of_kind(kind, &h), p);
            let spu = seconds_per_update(t, link.duty_cycle, overhead);
            let per_hour = if spu.is_finite() { 3600.0 / spu } else { 0.0 };
            table.push(vec![
                d.into(),
                kind.label().into(),
                t.into(),
                link.duty_cycle.into(),
                per_hour.into(),
                spu.into(),
            ]);
        }
    }
    Ok(with_metadata(table, "update-rate", cfg))
}

/// Beam-sweep pre-charge time per tag bearing and array size.
pub fn cmd_sweep(cfg: &ScenarioConfig) -> Result<ResultTable, CommandError> {
    let h = cfg.harvester_spec()?;
    let link = cfg.link_at(cfg.sweep.distance_m);
    let schedule = cfg.sweep_schedule();
    let mut table = ResultTable::new(vec!["tag_angle_deg", "n_elements", "precharge_time_s"]);
    for &n in &cfg.sweep.n_elements {
        let peak_eirp = link.p_t + cfg.array_spec(n).peak_gain();
        if peak_eirp > link.eirp_limit + 1e-9 {
            log::warn!(
                "{n}-element array peaks at {peak_eirp:.2} dBm EIRP, above the {} dBm limit",
                link.eirp_limit
            );
        }
    }
    for &angle in &cfg.sweep.tag_angles_deg {
        for &n in &cfg.sweep.n_elements {
            let arr = cfg.array_spec(n);
            let t = match beam_sweep_precharge(
                &arr,
                angle,
                &schedule,
                &link,
                &h,
                cfg.harvester.capacitance_f,
            ) {
                Ok(t) => t,
                Err(Error::Unreachable(_)) => f64::INFINITY,
                Err(e) => return Err(e.into()),
            };
            table.push(vec![angle.into(), Cell::Int(n as u64), t.into()]);
        }
    }
    Ok(with_metadata(table, "sweep", cfg))
}
