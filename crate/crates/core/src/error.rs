use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The receive window does not land inside the chirp for the simulated distance.
    #[error(
        "distance {distance_m} m is out of range for this timeline: supported range is \
         [{min_distance_m}, {max_distance_m}] m (T_A - T0 = {wake_offset_s} s, tau_rx = {tau_rx_s} s, tau_tx = {tau_tx_s} s)"
    )]
    OutOfRange {
        distance_m: f64,
        min_distance_m: f64,
        max_distance_m: f64,
        wake_offset_s: f64,
        tau_rx_s: f64,
        tau_tx_s: f64,
    },

    #[error("degenerate beacon geometry: {0}")]
    Geometry(String),

    #[error("solver did not converge after {iterations} iterations (residual rms {residual_rms} m, last iterate {last:?})")]
    NoConvergence {
        iterations: usize,
        residual_rms: f64,
        last: Vec<f64>,
    },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("singular link geometry: {0}")]
    Singularity(&'static str),

    #[error("target unreachable: {0}")]
    Unreachable(String),

    #[error("regulatory limit exceeded: EIRP {eirp_dbm} dBm > {limit_dbm} dBm")]
    EirpViolation { eirp_dbm: f64, limit_dbm: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
