//! Acoustic and backscatter signal processing.
//!
//! Covers the chain a tag and beacon apply to the captured chirp: synthesis of
//! the reference up-chirp, the comparator's 1-bit quantization, the two-tone FSK
//! load toggling on the reflected RF wave and its demodulation, and the
//! normalized cross-correlation used to locate the captured segment inside the
//! reference.

mod chirp;
mod fsk;
mod xcorr;

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::num::Real;

pub use chirp::{gen_chirp, ChirpSpec};
pub use fsk::{fsk_demodulate, fsk_modulate, FskConfig, MAX_SHIFT_RATIO};
pub use xcorr::{xcorr_offset, Correlation};

/// A uniformly sampled real signal anchored at an absolute time.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform<T: Real> {
    pub samples: Vec<T>,
    pub sample_rate: T,
    /// Absolute time (s) of sample 0.
    pub t_origin: T,
}

impl<T: Real> Waveform<T> {
    pub fn new(samples: Vec<T>, sample_rate: T, t_origin: T) -> Result<Self> {
        if !(sample_rate > T::zero()) || !sample_rate.is_finite() {
            return Err(Error::param(
                "sample_rate",
                format!("must be positive and finite, got {sample_rate}"),
            ));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::param("samples", format!("sample {i} is not finite")));
        }
        Ok(Waveform {
            samples,
            sample_rate,
            t_origin,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Duration covered by the samples, in seconds.
    pub fn duration(&self) -> T {
        T::from_usize_lossy(self.samples.len()) / self.sample_rate
    }

    pub fn energy(&self) -> T {
        self.samples.iter().map(|&s| s * s).sum()
    }

    pub fn scaled(&self, gain: T) -> Self {
        Waveform {
            samples: self.samples.iter().map(|&s| s * gain).collect(),
            ..self.clone()
        }
    }
}

/// Comparator output: one bit per input sample.
#[derive(Debug, Clone, PartialEq)]
pub struct BitStream<T: Real> {
    pub bits: Vec<bool>,
    pub bit_rate: T,
}

impl<T: Real> BitStream<T> {
    pub fn new(bits: Vec<bool>, bit_rate: T) -> Self {
        BitStream { bits, bit_rate }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Maps 1 to +1 and 0 to -1.
    pub fn to_levels(&self) -> Vec<T> {
        self.bits
            .iter()
            .map(|&b| if b { T::one() } else { -T::one() })
            .collect()
    }

    /// The ±1 mapping as a waveform anchored at `t_origin`.
    pub fn to_waveform(&self, t_origin: T) -> Waveform<T> {
        Waveform {
            samples: self.to_levels(),
            sample_rate: self.bit_rate,
            t_origin,
        }
    }

    pub fn bit_errors(&self, other: &BitStream<T>) -> usize {
        let common = self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count();
        common + self.bits.len().abs_diff(other.bits.len())
    }
}

/// Anything that can be correlated: a real waveform or a ±1 bit stream.
pub trait Signal<T: Real> {
    fn levels(&self) -> Cow<'_, [T]>;
    fn rate(&self) -> T;
}

impl<T: Real> Signal<T> for Waveform<T> {
    fn levels(&self) -> Cow<'_, [T]> {
        Cow::Borrowed(&self.samples)
    }

    fn rate(&self) -> T {
        self.sample_rate
    }
}

impl<T: Real> Signal<T> for BitStream<T> {
    fn levels(&self) -> Cow<'_, [T]> {
        Cow::Owned(self.to_levels())
    }

    fn rate(&self) -> T {
        self.bit_rate
    }
}

/// Comparator: bit `i` is set iff sample `i` is at or above `threshold`.
pub fn one_bit_quantize<T: Real>(w: &Waveform<T>, threshold: T) -> BitStream<T> {
    BitStream {
        bits: w.samples.iter().map(|&s| s >= threshold).collect(),
        bit_rate: w.sample_rate,
    }
}
