//! One ranging measurement end to end, and position fixes from several ranges.
//!
//! The beacon starts the chirp at `t0` and wakes the tag over RF at `t_wake`.
//! The tag captures `tau_rx` of whatever part of the chirp is passing it at
//! that moment; the further away it sits, the earlier in the chirp that part
//! was emitted. Locating the capture inside the reference chirp therefore
//! yields the time of flight.

mod trilateration;

use log::warn;

use crate::channel::{propagate_acoustic, sample_window, AcousticChannel, ReceiveWindow};
use crate::dsp::{
    fsk_demodulate, fsk_modulate, gen_chirp, one_bit_quantize, xcorr_offset, ChirpSpec, FskConfig,
};
use crate::error::{Error, Result};
use crate::num::Real;

pub use trilateration::{trilaterate, trilaterate_from, BeaconSet, PositionFix, MAX_ITERATIONS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangingTimeline<T: Real> {
    /// Chirp emission start (s).
    pub t0: T,
    /// RF wake-up instant T_A (s).
    pub t_wake: T,
    /// Acoustic capture duration (s).
    pub tau_rx: T,
}

impl<T: Real> Default for RangingTimeline<T> {
    fn default() -> Self {
        RangingTimeline {
            t0: T::zero(),
            t_wake: T::lit(0.020),
            tau_rx: T::lit(0.001),
        }
    }
}

impl<T: Real> RangingTimeline<T> {
    pub fn wake_offset(&self) -> T {
        self.t_wake - self.t0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_wake >= self.t0) {
            return Err(Error::param(
                "t_wake",
                format!("must be >= t0 ({}), got {}", self.t0, self.t_wake),
            ));
        }
        if !(self.tau_rx > T::zero()) {
            return Err(Error::param("tau_rx", "must be > 0"));
        }
        Ok(())
    }

    /// Distances for which the capture window lies entirely inside the chirp.
    pub fn supported_range(&self, tau_tx: T, speed_of_sound: T) -> (T, T) {
        let max = speed_of_sound * self.wake_offset();
        let min = (speed_of_sound * (self.wake_offset() + self.tau_rx - tau_tx)).max(T::zero());
        (min, max)
    }

    pub fn window(&self, sample_rate: T) -> ReceiveWindow<T> {
        ReceiveWindow::new(self.t_wake, self.tau_rx, sample_rate)
    }
}

/// What the beacon correlates against the reference chirp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum RangingMode {
    /// The raw captured audio.
    #[default]
    IdealAudio,
    /// Comparator bits carried over the FSK backscatter link and demodulated.
    OneBitBackscatter,
}

impl RangingMode {
    pub fn label(&self) -> &'static str {
        match self {
            RangingMode::IdealAudio => "ideal-audio",
            RangingMode::OneBitBackscatter => "one-bit-backscatter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceEstimate<T: Real> {
    pub distance: T,
    /// Set when the lag implied a negative distance and the result was clamped to 0.
    pub clamped: bool,
}

/// The capture starting at chirp offset `lag` was emitted at `t0 + lag` and
/// heard at `t_wake`, so `distance = c ((t_wake - t0) - lag)`.
pub fn estimate_distance<T: Real>(
    lag: T,
    tl: &RangingTimeline<T>,
    speed_of_sound: T,
) -> Result<DistanceEstimate<T>> {
    if !(lag >= T::zero()) || !lag.is_finite() {
        return Err(Error::param(
            "lag",
            format!("must be finite and >= 0, got {lag}"),
        ));
    }
    let raw = speed_of_sound * (tl.wake_offset() - lag);
    if raw < T::zero() {
        warn!(
            "lag {lag} s exceeds wake offset {} s; clamping distance to 0",
            tl.wake_offset()
        );
        return Ok(DistanceEstimate {
            distance: T::zero(),
            clamped: true,
        });
    }
    Ok(DistanceEstimate {
        distance: raw,
        clamped: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangingResult<T: Real> {
    /// Offset of the capture inside the reference chirp (s).
    pub lag: T,
    pub peak: T,
    pub tof: T,
    pub distance: T,
    pub clamped: bool,
}

/// Chirp, propagation, capture, optional 1-bit backscatter link, correlation.
pub fn simulate_ranging<T: Real>(
    chirp: &ChirpSpec<T>,
    ch: &AcousticChannel<T>,
    tl: &RangingTimeline<T>,
    mode: RangingMode,
    fsk: Option<&FskConfig<T>>,
) -> Result<RangingResult<T>> {
    chirp.validate()?;
    ch.validate()?;
    tl.validate()?;

    let c = ch.speed_of_sound;
    let (min_d, max_d) = tl.supported_range(chirp.tau_tx, c);
    if ch.distance > max_d || ch.distance < min_d {
        return Err(Error::OutOfRange {
            distance_m: ch.distance.as_f64(),
            min_distance_m: min_d.as_f64(),
            max_distance_m: max_d.as_f64(),
            wake_offset_s: tl.wake_offset().as_f64(),
            tau_rx_s: tl.tau_rx.as_f64(),
            tau_tx_s: chirp.tau_tx.as_f64(),
        });
    }

    let mut reference = gen_chirp(chirp)?;
    reference.t_origin = tl.t0;
    let received = propagate_acoustic(&reference, ch)?;
    let mut win = tl.window(chirp.sample_rate);
    win.delay_mode = ch.delay_mode;
    let captured = sample_window(&received, &win)?;

    let corr = match mode {
        RangingMode::IdealAudio => xcorr_offset(&reference, &captured)?,
        RangingMode::OneBitBackscatter => {
            let default_fsk = FskConfig::default();
            let cfg = fsk.unwrap_or(&default_fsk);
            let bits = one_bit_quantize(&captured, T::zero());
            let reflected = fsk_modulate(&bits, cfg)?;
            let recovered = fsk_demodulate(&reflected, cfg, bits.bit_rate)?;
            let reference_bits = one_bit_quantize(&reference, T::zero());
            // Where the chirp period is close to a whole number of samples the
            // hard-limited capture repeats exactly; ties then resolve to the
            // smallest lag (farther distance). A longer tau_rx removes them.
            xcorr_offset(&reference_bits, &recovered)?
        }
    };

    let est = estimate_distance(corr.lag, tl, c)?;
    Ok(RangingResult {
        lag: corr.lag,
        peak: corr.peak,
        tof: est.distance / c,
        distance: est.distance,
        clamped: est.clamped,
    })
}
