//! Independent reference computations used only by the tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

/// Direct sliding correlation: two-pass Pearson coefficient at every full-overlap lag.
/// Returns (lag, coefficient) with ties going to the smallest lag.
pub fn brute_xcorr(reference: &[f64], segment: &[f64]) -> (usize, f64) {
    let m = segment.len();
    let mut best = (0, f64::NEG_INFINITY);
    for lag in 0..=(reference.len() - m) {
        let w = &reference[lag..lag + m];
        let mw = w.iter().sum::<f64>() / m as f64;
        let ms = segment.iter().sum::<f64>() / m as f64;
        let mut num = 0.0;
        let mut ew = 0.0;
        let mut es = 0.0;
        for i in 0..m {
            let a = w[i] - mw;
            let b = segment[i] - ms;
            num += a * b;
            ew += a * a;
            es += b * b;
        }
        let r = if ew > 0.0 && es > 0.0 {
            num / (ew * es).sqrt()
        } else {
            0.0
        };
        if r > best.1 {
            best = (lag, r);
        }
    }
    best
}

fn cost(p: &[f64], beacons: &[Vec<f64>], d: &[f64]) -> f64 {
    beacons
        .iter()
        .zip(d)
        .map(|(b, &di)| {
            let r = b
                .iter()
                .zip(p)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
                - di;
            r * r
        })
        .sum()
}

/// Exhaustive grid minimization of the range residuals, coarse-to-fine down to
/// `final_res` metres, inside the box `[lo, hi]` per axis.
pub fn grid_search(
    beacons: &[Vec<f64>],
    d: &[f64],
    lo: &[f64],
    hi: &[f64],
    final_res: f64,
) -> Vec<f64> {
    let dims = lo.len();
    let mut lo = lo.to_vec();
    let mut hi = hi.to_vec();
    let mut res = 0.1;
    let mut best = vec![0.0; dims];
    loop {
        let counts: Vec<usize> = (0..dims)
            .map(|k| ((hi[k] - lo[k]) / res).round() as usize + 1)
            .collect();
        let total: usize = counts.iter().product();
        let mut best_cost = f64::INFINITY;
        let mut p = vec![0.0; dims];
        for flat in 0..total {
            let mut rem = flat;
            for k in 0..dims {
                p[k] = lo[k] + (rem % counts[k]) as f64 * res;
                rem /= counts[k];
            }
            let c = cost(&p, beacons, d);
            if c < best_cost {
                best_cost = c;
                best.copy_from_slice(&p);
            }
        }
        if res <= final_res * 1.0001 {
            return best;
        }
        let next = (res / 10.0).max(final_res);
        for k in 0..dims {
            lo[k] = best[k] - 1.5 * res;
            hi[k] = best[k] + 1.5 * res;
        }
        res = next;
    }
}

/// Power array factor `|Σ e^{j k i s (sin θ − sin θ_s)}|² / n` by summing phasors.
pub fn phasor_array_factor(n: usize, spacing: f64, target_deg: f64, steer_deg: f64) -> f64 {
    let psi = 2.0
        * std::f64::consts::PI
        * spacing
        * (target_deg.to_radians().sin() - steer_deg.to_radians().sin());
    let sum: Complex64 = (0..n)
        .map(|i| Complex64::from_polar(1.0, psi * i as f64))
        .sum();
    sum.norm_sqr() / n as f64
}

/// Free-space received power in linear units: G_t G_r P_t λ² / (4 π d)².
pub fn friis_linear_watts(p_t_dbm: f64, g_t_dbi: f64, g_r_dbi: f64, f_hz: f64, d: f64) -> f64 {
    let lambda = 299_792_458.0 / f_hz;
    let p_t = 1e-3 * 10f64.powf(p_t_dbm / 10.0);
    let gt = 10f64.powf(g_t_dbi / 10.0);
    let gr = 10f64.powf(g_r_dbi / 10.0);
    gt * gr * p_t * lambda * lambda / (4.0 * std::f64::consts::PI * d).powi(2)
}

#[derive(Debug, PartialEq)]
struct Event {
    time: f64,
    seq: u64,
    kind: EventKind,
}

#[derive(Debug, PartialEq)]
enum EventKind {
    BurstStart(usize),
    BurstEnd(usize),
}

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on time, then insertion order
        other
            .time
            .partial_cmp(&self.time)
            .unwrap()
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Discrete-event replay of a beam sweep. `power_at(i)` is the harvested power
/// (W) while the beam dwells on steering index `i`. Returns the time the stored
/// energy first reaches `needed`, or `None` if it never does within `max_bursts`.
pub fn replay_sweep(
    n_angles: usize,
    power_at: impl Fn(usize) -> f64,
    dwell: f64,
    duty: f64,
    needed: f64,
    max_bursts: usize,
) -> Option<f64> {
    let mut queue = BinaryHeap::new();
    let mut seq = 0;
    queue.push(Event {
        time: 0.0,
        seq,
        kind: EventKind::BurstStart(0),
    });
    let mut stored = 0.0;
    let mut bursts = 0;
    let mut on_since = 0.0;
    while let Some(ev) = queue.pop() {
        seq += 1;
        match ev.kind {
            EventKind::BurstStart(i) => {
                bursts += 1;
                if bursts > max_bursts {
                    return None;
                }
                on_since = ev.time;
                let p = power_at(i);
                // buffer would fill mid-burst: report that instant
                if p > 0.0 && stored + p * dwell >= needed {
                    return Some(on_since + (needed - stored) / p);
                }
                queue.push(Event {
                    time: ev.time + dwell,
                    seq,
                    kind: EventKind::BurstEnd(i),
                });
            }
            EventKind::BurstEnd(i) => {
                stored += power_at(i) * (ev.time - on_since);
                let off = dwell / duty - dwell;
                queue.push(Event {
                    time: ev.time + off,
                    seq,
                    kind: EventKind::BurstStart((i + 1) % n_angles),
                });
            }
        }
    }
    None
}

/// Piecewise-linear interpolation of the efficiency curve, zero outside `[lo, hi]`.
pub fn interp_eta(curve: &[(f64, f64)], lo: f64, hi: f64, p: f64) -> f64 {
    if p < lo || p > hi {
        return 0.0;
    }
    if p <= curve[0].0 {
        return curve[0].1;
    }
    for w in curve.windows(2) {
        if p <= w[1].0 {
            let t = (p - w[0].0) / (w[1].0 - w[0].0);
            return w[0].1 + t * (w[1].1 - w[0].1);
        }
    }
    curve[curve.len() - 1].1
}
