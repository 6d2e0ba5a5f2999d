//! Configuration-driven experiments producing CSV tables.

mod commands;
mod config;
mod table;

pub use commands::{
    cmd_charge_curve, cmd_range, cmd_size_buffer, cmd_sweep, cmd_update_rate, CommandError,
    TOOL_VERSION,
};
pub use config::{
    ArrayConfig, ChannelConfig, ChirpConfig, ConfigError, DelayModeConfig, EnergyConfig,
    FskSection, GridConfig, HarvesterConfig, LinkConfig, LinkPreset, ModeConfig, OverlapConfig,
    RangingConfig, ScenarioConfig, ScenarioKind, StartupModeConfig, SweepConfig, TapConfig,
    TimelineConfig, UpdateConfig,
};
pub use table::{Cell, ResultTable};

/// The CLI subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    ChargeCurve,
    Range,
    SizeBuffer,
    UpdateRate,
    Sweep,
}

impl Command {
    pub fn run(self, cfg: &ScenarioConfig) -> Result<ResultTable, CommandError> {
        match self {
            Command::ChargeCurve => cmd_charge_curve(cfg),
            Command::Range => cmd_range(cfg),
            Command::SizeBuffer => cmd_size_buffer(cfg),
            Command::UpdateRate => cmd_update_rate(cfg),
            Command::Sweep => cmd_sweep(cfg),
        }
    }
}
