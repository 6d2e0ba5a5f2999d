use crate::error::{Error, Result};
use crate::num::Real;

use super::Signal;

/// Best alignment of a segment inside a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlation<T: Real> {
    /// Offset of the segment start inside the reference (s).
    pub lag: T,
    pub lag_samples: usize,
    /// Normalized correlation at `lag`, in [-1, 1].
    pub peak: T,
}

/// Sliding Pearson correlation of `segment` against every full-overlap window of
/// `reference`. Each window is mean-removed and energy-normalized, so amplitude
/// scaling of either input leaves the result unchanged. Zero-variance windows
/// score 0. Ties go to the smallest lag.
pub fn xcorr_offset<T, R, S>(reference: &R, segment: &S) -> Result<Correlation<T>>
where
    T: Real,
    R: Signal<T> + ?Sized,
    S: Signal<T> + ?Sized,
{
    if reference.rate() != segment.rate() {
        return Err(Error::param(
            "sample_rate",
            format!(
                "reference rate {} differs from segment rate {}",
                reference.rate(),
                segment.rate()
            ),
        ));
    }
    let r = reference.levels();
    let s = segment.levels();
    let (n, m) = (r.len(), s.len());
    if m > n {
        return Err(Error::param(
            "segment",
            format!("segment length {m} exceeds reference length {n}"),
        ));
    }
    if m == 0 {
        return Err(Error::param("segment", "empty segment"));
    }

    let mf = T::from_usize_lossy(m);
    let s_mean = s.iter().copied().sum::<T>() / mf;
    let centered: Vec<T> = s.iter().map(|&x| x - s_mean).collect();
    let s_energy: T = centered.iter().map(|&x| x * x).sum();

    let mut best_lag = 0;
    let mut best = T::neg_infinity();
    if s_energy > T::zero() {
        for lag in 0..=(n - m) {
            let window = &r[lag..lag + m];
            let (mut sum, mut sum_sq, mut dot) = (T::zero(), T::zero(), T::zero());
            for (&x, &c) in window.iter().zip(&centered) {
                sum = sum + x;
                sum_sq = sum_sq + x * x;
                dot = dot + c * x;
            }
            let w_energy = sum_sq - sum * sum / mf;
            let score = if w_energy > T::zero() {
                dot / (s_energy * w_energy).sqrt()
            } else {
                T::zero()
            };
            if score > best {
                best = score;
                best_lag = lag;
            }
        }
    }

    let peak = pearson(&r[best_lag..best_lag + m], &centered, s_energy);
    Ok(Correlation {
        lag: T::from_usize_lossy(best_lag) / reference.rate(),
        lag_samples: best_lag,
        peak,
    })
}

/// Two-pass correlation of one window against an already centered segment.
fn pearson<T: Real>(window: &[T], centered: &[T], s_energy: T) -> T {
    let mean = window.iter().copied().sum::<T>() / T::from_usize_lossy(window.len());
    let (mut dot, mut w_energy) = (T::zero(), T::zero());
    for (&x, &c) in window.iter().zip(centered) {
        let d = x - mean;
        dot = dot + d * c;
        w_energy = w_energy + d * d;
    }
    let denom = (s_energy * w_energy).sqrt();
    if denom > T::zero() {
        (dot / denom).max(-T::one()).min(T::one())
    } else {
        T::zero()
    }
}
