//! Simulator for battery-free tags located by a hybrid RF-acoustic beacon.
//!
//! A beacon broadcasts an ultrasonic chirp and wakes the tag over RF; the tag
//! captures a slice of the chirp, quantizes it with a comparator and reflects
//! it back by toggling its antenna load between two subcarrier rates. The
//! beacon locates the slice in its reference chirp to obtain the time of
//! flight. The tag runs from a capacitor filled by a steered RF power beam,
//! whose charge time under regulatory duty-cycle limits bounds the position
//! update rate.
//!
//! Numeric modules are generic over [`num::Real`] (`f32` or `f64`); the
//! aliases below fix the common `f64` instantiation.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0)` also rejects NaN

pub mod channel;
pub mod dsp;
pub mod energy;
pub mod error;
pub mod num;
pub mod protocol;
pub mod scenario;
pub mod wpt;

pub use error::{Error, Result};
pub use num::Real;

pub type ChirpSpec = dsp::ChirpSpec<f64>;
pub type Waveform = dsp::Waveform<f64>;
pub type BitStream = dsp::BitStream<f64>;
pub type FskConfig = dsp::FskConfig<f64>;
pub type AcousticChannel = channel::AcousticChannel<f64>;
pub type ReceiveWindow = channel::ReceiveWindow<f64>;
pub type RangingTimeline = protocol::RangingTimeline<f64>;
pub type RangingResult = protocol::RangingResult<f64>;
pub type BeaconSet = protocol::BeaconSet<f64>;
pub type PositionFix = protocol::PositionFix<f64>;
pub type ComponentPower = energy::ComponentPower<f64>;
pub type StartupPlan = energy::StartupPlan<f64>;
pub type HarvesterSpec = energy::HarvesterSpec<f64>;
pub type CapacitorState = energy::CapacitorState<f64>;
pub type RfLink = wpt::RfLink<f64>;
pub type ArraySpec = wpt::ArraySpec<f64>;
pub type ChargeScenario = wpt::ChargeScenario<f64>;
pub type SweepSchedule = wpt::SweepSchedule<f64>;
