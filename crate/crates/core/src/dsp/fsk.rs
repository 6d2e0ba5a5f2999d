use crate::error::{Error, Result};
use crate::num::Real;

use super::{BitStream, Waveform};

/// Largest accepted `|f_osc1 - f_osc0| / min(f_osc0, f_osc1)`.
pub const MAX_SHIFT_RATIO: f64 = 0.10;

/// Two-oscillator backscatter subcarrier configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FskConfig<T: Real> {
    /// Load toggle rate while the comparator outputs 0 (Hz).
    pub f_osc0: T,
    /// Load toggle rate while the comparator outputs 1 (Hz).
    pub f_osc1: T,
    /// Beacon-side sample rate of the reflected wave (Hz).
    pub rf_sample_rate: T,
}

impl<T: Real> Default for FskConfig<T> {
    fn default() -> Self {
        FskConfig {
            f_osc0: T::lit(1.0e6),
            f_osc1: T::lit(1.1e6),
            rf_sample_rate: T::lit(10.0e6),
        }
    }
}

impl<T: Real> FskConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.f_osc0 > T::zero()) || !(self.f_osc1 > T::zero()) {
            return Err(Error::param("f_osc", "oscillator frequencies must be > 0"));
        }
        if self.f_osc0 == self.f_osc1 {
            return Err(Error::param("f_osc1", "must differ from f_osc0"));
        }
        let shift = (self.f_osc1 - self.f_osc0).abs() / self.f_osc0.min(self.f_osc1);
        if shift > T::lit(MAX_SHIFT_RATIO) {
            return Err(Error::param(
                "f_osc1",
                format!("relative shift {shift} exceeds {MAX_SHIFT_RATIO}"),
            ));
        }
        if !(self.rf_sample_rate > T::lit(4.0) * self.f_osc0.max(self.f_osc1)) {
            return Err(Error::param(
                "rf_sample_rate",
                format!(
                    "must exceed 4*max(f_osc0, f_osc1), got {}",
                    self.rf_sample_rate
                ),
            ));
        }
        Ok(())
    }
}

/// First RF sample index belonging to bit `i`.
fn bit_boundary<T: Real>(i: usize, samples_per_bit: T) -> usize {
    (T::from_usize_lossy(i) * samples_per_bit)
        .round()
        .to_usize()
        .unwrap_or(0)
}

/// Toggles the antenna load as a ±1 square wave whose rate follows the bit
/// stream. The phase accumulator runs across bit boundaries, so switching
/// between oscillators is phase-continuous.
pub fn fsk_modulate<T: Real>(bits: &BitStream<T>, cfg: &FskConfig<T>) -> Result<Waveform<T>> {
    cfg.validate()?;
    if !(bits.bit_rate > T::zero()) {
        return Err(Error::param("bit_rate", "must be > 0"));
    }
    let fs = cfg.rf_sample_rate;
    let samples_per_bit = fs / bits.bit_rate;
    let total = bit_boundary(bits.len(), samples_per_bit);
    let step0 = cfg.f_osc0 / fs;
    let step1 = cfg.f_osc1 / fs;
    let half = T::lit(0.5);

    let mut out = Vec::with_capacity(total);
    let mut phase = T::zero();
    for (i, &bit) in bits.bits.iter().enumerate() {
        let step = if bit { step1 } else { step0 };
        for _ in bit_boundary(i, samples_per_bit)..bit_boundary(i + 1, samples_per_bit) {
            out.push(if phase < half { T::one() } else { -T::one() });
            phase = phase + step;
            if phase >= T::one() {
                phase = phase - T::one();
            }
        }
    }
    Ok(Waveform {
        samples: out,
        sample_rate: fs,
        t_origin: T::zero(),
    })
}

/// Non-coherent two-tone detector: per bit period, picks the oscillator whose
/// quadrature correlation carries more energy.
pub fn fsk_demodulate<T: Real>(
    w: &Waveform<T>,
    cfg: &FskConfig<T>,
    bit_rate: T,
) -> Result<BitStream<T>> {
    cfg.validate()?;
    if w.sample_rate != cfg.rf_sample_rate {
        return Err(Error::param(
            "sample_rate",
            format!(
                "waveform rate {} does not match rf_sample_rate {}",
                w.sample_rate, cfg.rf_sample_rate
            ),
        ));
    }
    if !(bit_rate > T::zero()) {
        return Err(Error::param("bit_rate", "must be > 0"));
    }
    let cycles_per_bit = cfg.f_osc0.min(cfg.f_osc1) / bit_rate;
    if cycles_per_bit < T::lit(2.0) {
        return Err(Error::param(
            "bit_rate",
            format!("bit period spans only {cycles_per_bit} carrier cycles, need at least 2"),
        ));
    }

    let fs = cfg.rf_sample_rate;
    let samples_per_bit = fs / bit_rate;
    let n_bits = (T::from_usize_lossy(w.len()) / samples_per_bit)
        .round()
        .to_usize()
        .unwrap_or(0);
    let w0 = T::TAU() * cfg.f_osc0 / fs;
    let w1 = T::TAU() * cfg.f_osc1 / fs;

    let tone_energy = |range: std::ops::Range<usize>, omega: T| {
        let (mut re, mut im) = (T::zero(), T::zero());
        let start = range.start;
        for n in range {
            let x = w.samples[n];
            // magnitude is phase invariant, so index relative to the bit start
            let arg = omega * T::from_usize_lossy(n - start);
            re = re + x * arg.cos();
            im = im - x * arg.sin();
        }
        re * re + im * im
    };

    let bits = (0..n_bits)
        .map(|i| {
            let lo = bit_boundary(i, samples_per_bit).min(w.len());
            let hi = bit_boundary(i + 1, samples_per_bit).min(w.len());
            tone_energy(lo..hi, w1) > tone_energy(lo..hi, w0)
        })
        .collect();
    Ok(BitStream { bits, bit_rate })
}
