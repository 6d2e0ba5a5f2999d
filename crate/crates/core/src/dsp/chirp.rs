use crate::error::{Error, Result};
use crate::num::Real;

use super::Waveform;

/// Parameters of the broadcast linear up-chirp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpSpec<T: Real> {
    /// Start frequency (Hz).
    pub f_start: T,
    /// Stop frequency (Hz). Equal to `f_start` gives a pure tone.
    pub f_stop: T,
    /// Chirp duration (s).
    pub tau_tx: T,
    pub sample_rate: T,
    /// Peak amplitude.
    pub amplitude: T,
}

impl<T: Real> Default for ChirpSpec<T> {
    fn default() -> Self {
        ChirpSpec {
            f_start: T::lit(20_000.0),
            f_stop: T::lit(40_000.0),
            tau_tx: T::lit(0.050),
            sample_rate: T::lit(192_000.0),
            amplitude: T::one(),
        }
    }
}

impl<T: Real> ChirpSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.f_start > T::zero()) {
            return Err(Error::param(
                "f_start",
                format!("must be > 0, got {}", self.f_start),
            ));
        }
        if !(self.f_stop >= self.f_start) {
            return Err(Error::param(
                "f_stop",
                format!("must be >= f_start ({}), got {}", self.f_start, self.f_stop),
            ));
        }
        if !(self.sample_rate > T::lit(2.0) * self.f_stop) {
            return Err(Error::param(
                "sample_rate",
                format!(
                    "must exceed the Nyquist rate 2*f_stop = {}, got {}",
                    T::lit(2.0) * self.f_stop,
                    self.sample_rate
                ),
            ));
        }
        if !(self.tau_tx > T::zero()) {
            return Err(Error::param(
                "tau_tx",
                format!("must be > 0, got {}", self.tau_tx),
            ));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::param("amplitude", "must be finite"));
        }
        Ok(())
    }

    /// Number of samples in the synthesized chirp.
    pub fn num_samples(&self) -> usize {
        (self.tau_tx * self.sample_rate)
            .round()
            .to_usize()
            .unwrap_or(0)
    }

    /// Sweep rate in Hz/s.
    pub fn sweep_rate(&self) -> T {
        (self.f_stop - self.f_start) / self.tau_tx
    }

    /// Instantaneous frequency at time `t` after the chirp start.
    pub fn instantaneous_frequency(&self, t: T) -> T {
        self.f_start + self.sweep_rate() * t
    }
}

/// Synthesizes `A sin(2π (f_start t + k t²/2))` with `k` the sweep rate, `t_origin = 0`.
pub fn gen_chirp<T: Real>(spec: &ChirpSpec<T>) -> Result<Waveform<T>> {
    spec.validate()?;
    let n = spec.num_samples();
    let two_pi = T::TAU();
    let half_k = spec.sweep_rate() / T::lit(2.0);
    let samples = (0..n)
        .map(|i| {
            let t = T::from_usize_lossy(i) / spec.sample_rate;
            spec.amplitude * (two_pi * (spec.f_start * t + half_k * t * t)).sin()
        })
        .collect();
    Ok(Waveform {
        samples,
        sample_rate: spec.sample_rate,
        t_origin: T::zero(),
    })
}
