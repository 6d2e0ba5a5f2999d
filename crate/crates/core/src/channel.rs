//! Acoustic propagation between beacon and tag, and the tag's capture window.
//!
//! RF wake-up and backscatter are treated as instantaneous: at indoor ranges
//! the RF delay is six orders of magnitude below the acoustic one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dsp::Waveform;
use crate::error::{Error, Result};
use crate::num::Real;

pub const SPEED_OF_SOUND: f64 = 343.0;

/// How a fractional-sample time offset is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DelayMode {
    #[default]
    Nearest,
    Linear,
}

/// One reflected path, relative to the direct path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipathTap<T: Real> {
    pub extra_delay: T,
    pub relative_gain: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcousticChannel<T: Real> {
    pub distance: T,
    pub speed_of_sound: T,
    /// Amplitude falls as `d^-exponent` beyond 1 m.
    pub attenuation_exponent: T,
    /// Standard deviation of additive white Gaussian noise, applied after attenuation.
    pub noise_std: T,
    pub multipath: Vec<MultipathTap<T>>,
    pub rng_seed: u64,
    pub delay_mode: DelayMode,
}

impl<T: Real> Default for AcousticChannel<T> {
    fn default() -> Self {
        AcousticChannel {
            distance: T::one(),
            speed_of_sound: T::lit(SPEED_OF_SOUND),
            attenuation_exponent: T::one(),
            noise_std: T::zero(),
            multipath: Vec::new(),
            rng_seed: 0,
            delay_mode: DelayMode::Nearest,
        }
    }
}

impl<T: Real> AcousticChannel<T> {
    pub fn at_distance(distance: T) -> Self {
        AcousticChannel {
            distance,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.distance >= T::zero()) || !self.distance.is_finite() {
            return Err(Error::param(
                "distance",
                format!("must be >= 0, got {}", self.distance),
            ));
        }
        if !(self.speed_of_sound > T::zero()) {
            return Err(Error::param("speed_of_sound", "must be > 0"));
        }
        if !(self.noise_std >= T::zero()) {
            return Err(Error::param("noise_std", "must be >= 0"));
        }
        if !self.attenuation_exponent.is_finite() {
            return Err(Error::param("attenuation_exponent", "must be finite"));
        }
        for tap in &self.multipath {
            if !(tap.extra_delay > T::zero()) {
                return Err(Error::param("multipath", "extra_delay must be > 0"));
            }
            if !(tap.relative_gain.abs() <= T::one()) {
                return Err(Error::param("multipath", "|relative_gain| must be <= 1"));
            }
        }
        Ok(())
    }

    /// One-way acoustic time of flight (s).
    pub fn delay(&self) -> T {
        self.distance / self.speed_of_sound
    }

    /// Amplitude gain of the direct path, floored at unity within 1 m.
    pub fn gain(&self) -> T {
        if self.distance <= T::one() {
            T::one()
        } else {
            self.distance.powf(-self.attenuation_exponent)
        }
    }
}

/// Adds seeded zero-mean Gaussian noise in place.
pub fn add_gaussian_noise<T: Real>(samples: &mut [T], std: T, seed: u64) {
    if !(std > T::zero()) {
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, std.as_f64()).expect("finite positive std");
    for s in samples.iter_mut() {
        *s = *s + T::lit(normal.sample(&mut rng));
    }
}

/// Reads `w` at a fractional sample position, silence outside the support.
fn sample_at<T: Real>(w: &[T], pos: T, mode: DelayMode) -> T {
    let len = T::from_usize_lossy(w.len());
    match mode {
        DelayMode::Nearest => {
            let idx = pos.round();
            if idx < T::zero() || idx >= len {
                T::zero()
            } else {
                w[idx.to_usize().unwrap_or(0)]
            }
        }
        DelayMode::Linear => {
            let base = pos.floor();
            let frac = pos - base;
            let at = |i: T| {
                if i < T::zero() || i >= len {
                    T::zero()
                } else {
                    w[i.to_usize().unwrap_or(0)]
                }
            };
            at(base) * (T::one() - frac) + at(base + T::one()) * frac
        }
    }
}

/// Delays, attenuates and corrupts the emitted waveform.
///
/// The direct-path delay is carried exactly in `t_origin`; multipath taps are
/// shifted onto the sample grid according to the channel's delay mode and the
/// output grows to hold the latest tap.
pub fn propagate_acoustic<T: Real>(
    tx: &Waveform<T>,
    ch: &AcousticChannel<T>,
) -> Result<Waveform<T>> {
    ch.validate()?;
    let fs = tx.sample_rate;
    let gain = ch.gain();
    let max_shift = ch
        .multipath
        .iter()
        .map(|tap| (tap.extra_delay * fs).ceil().to_usize().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let len = tx.len() + max_shift;

    let mut out: Vec<T> = (0..len)
        .map(|i| {
            if i < tx.len() {
                tx.samples[i] * gain
            } else {
                T::zero()
            }
        })
        .collect();
    for tap in &ch.multipath {
        let shift = tap.extra_delay * fs;
        let g = gain * tap.relative_gain;
        for (i, o) in out.iter_mut().enumerate() {
            let pos = T::from_usize_lossy(i) - shift;
            *o = *o + g * sample_at(&tx.samples, pos, ch.delay_mode);
        }
    }
    add_gaussian_noise(&mut out, ch.noise_std, ch.rng_seed);

    Ok(Waveform {
        samples: out,
        sample_rate: fs,
        t_origin: tx.t_origin + ch.delay(),
    })
}

/// The tag's acoustic capture: opens at the wake-up instant for `tau_rx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiveWindow<T: Real> {
    /// Absolute wake-up instant T_A (s).
    pub t_wake: T,
    pub tau_rx: T,
    pub sample_rate: T,
    pub delay_mode: DelayMode,
}

impl<T: Real> ReceiveWindow<T> {
    pub fn new(t_wake: T, tau_rx: T, sample_rate: T) -> Self {
        ReceiveWindow {
            t_wake,
            tau_rx,
            sample_rate,
            delay_mode: DelayMode::Nearest,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau_rx > T::zero()) {
            return Err(Error::param("tau_rx", "must be > 0"));
        }
        if !(self.t_wake >= T::zero()) {
            return Err(Error::param("t_wake", "must be >= 0"));
        }
        if !(self.sample_rate > T::zero()) {
            return Err(Error::param("sample_rate", "must be > 0"));
        }
        Ok(())
    }

    pub fn num_samples(&self) -> usize {
        (self.tau_rx * self.sample_rate)
            .round()
            .to_usize()
            .unwrap_or(0)
    }
}

/// Captures `round(tau_rx * fs)` samples starting at absolute time `t_wake`.
/// Regions outside the received waveform read as silence.
pub fn sample_window<T: Real>(rx: &Waveform<T>, win: &ReceiveWindow<T>) -> Result<Waveform<T>> {
    win.validate()?;
    if win.sample_rate != rx.sample_rate {
        return Err(Error::param(
            "sample_rate",
            format!(
                "window rate {} differs from waveform rate {}",
                win.sample_rate, rx.sample_rate
            ),
        ));
    }
    let start = (win.t_wake - rx.t_origin) * rx.sample_rate;
    let samples = (0..win.num_samples())
        .map(|i| sample_at(&rx.samples, start + T::from_usize_lossy(i), win.delay_mode))
        .collect();
    Ok(Waveform {
        samples,
        sample_rate: rx.sample_rate,
        t_origin: win.t_wake,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp::{gen_chirp, ChirpSpec};

    fn chirp() -> Waveform<f64> {
        gen_chirp(&ChirpSpec::default()).unwrap()
    }

    #[test]
    fn zero_distance_is_identity() {
        let tx = chirp();
        let rx = propagate_acoustic(&tx, &AcousticChannel::at_distance(0.0)).unwrap();
        assert_eq!(rx, tx);
    }

    #[test]
    fn delay_is_distance_over_speed() {
        let rx = propagate_acoustic(&chirp(), &AcousticChannel::at_distance(3.43)).unwrap();
        assert!((rx.t_origin - 0.010).abs() < 1e-15);
    }

    #[test]
    fn attenuation_floors_at_one_meter() {
        assert_eq!(AcousticChannel::at_distance(0.5_f64).gain(), 1.0);
        assert!((AcousticChannel::at_distance(4.0_f64).gain() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn multipath_superposes() {
        let tx = chirp();
        let fs = tx.sample_rate;
        let ch = AcousticChannel {
            distance: 0.5,
            multipath: vec![MultipathTap {
                extra_delay: 25.0 / fs,
                relative_gain: -0.4,
            }],
            ..Default::default()
        };
        let rx = propagate_acoustic(&tx, &ch).unwrap();
        assert_eq!(rx.len(), tx.len() + 25);
        for i in 0..rx.len() {
            let direct = tx.samples.get(i).copied().unwrap_or(0.0);
            let echo = if i >= 25 {
                tx.samples.get(i - 25).copied().unwrap_or(0.0)
            } else {
                0.0
            };
            assert!((rx.samples[i] - (direct - 0.4 * echo)).abs() < 1e-12);
        }
    }

    #[test]
    fn noise_is_reproducible() {
        let ch = AcousticChannel {
            noise_std: 0.1,
            rng_seed: 7,
            ..AcousticChannel::at_distance(2.0)
        };
        let a = propagate_acoustic(&chirp(), &ch).unwrap();
        let b = propagate_acoustic(&chirp(), &ch).unwrap();
        assert_eq!(a, b);
        let other = propagate_acoustic(&chirp(), &AcousticChannel { rng_seed: 8, ..ch }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn window_before_arrival_is_silent() {
        let rx = propagate_acoustic(&chirp(), &AcousticChannel::at_distance(3.43)).unwrap();
        let w = sample_window(&rx, &ReceiveWindow::new(0.002, 0.001, 192_000.0)).unwrap();
        assert_eq!(w.len(), 192);
        assert!(w.samples.iter().all(|&s| s == 0.0));
        assert_eq!(w.t_origin, 0.002);
    }

    #[test]
    fn full_window_at_arrival_recovers_chirp() {
        let tx = chirp();
        let rx = propagate_acoustic(&tx, &AcousticChannel::at_distance(0.686)).unwrap();
        let w = sample_window(&rx, &ReceiveWindow::new(rx.t_origin, 0.050, 192_000.0)).unwrap();
        assert_eq!(w.samples, tx.samples);
    }

    #[test]
    fn window_offset_into_chirp() {
        let tx = chirp();
        let rx = propagate_acoustic(&tx, &AcousticChannel::at_distance(1.0)).unwrap();
        let w = sample_window(
            &rx,
            &ReceiveWindow::new(rx.t_origin + 0.010, 0.001, 192_000.0),
        )
        .unwrap();
        // 10 ms at 192 kHz = 1920 samples
        assert_eq!(w.samples[..], tx.samples[1920..2112]);
    }

    #[test]
    fn linear_mode_interpolates_half_sample() {
        let rx = Waveform::new(vec![0.0_f64, 2.0, 4.0, 6.0], 1.0, 0.0).unwrap();
        let win = ReceiveWindow {
            delay_mode: DelayMode::Linear,
            ..ReceiveWindow::new(0.5, 3.0, 1.0)
        };
        let w = sample_window(&rx, &win).unwrap();
        assert_eq!(w.samples, vec![1.0, 3.0, 5.0]);
    }

    #[test]
    fn rejects_invalid_channel() {
        let tx = chirp();
        assert!(propagate_acoustic(&tx, &AcousticChannel::at_distance(-1.0)).is_err());
        let bad_tap = AcousticChannel {
            multipath: vec![MultipathTap {
                extra_delay: 0.0,
                relative_gain: 0.5,
            }],
            ..Default::default()
        };
        assert!(propagate_acoustic(&tx, &bad_tap).is_err());
    }
}
