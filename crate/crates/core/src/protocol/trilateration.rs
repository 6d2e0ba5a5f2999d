//! Gauss–Newton multilateration from beacon ranges.

use crate::error::{Error, Result};
use crate::num::Real;

pub const MAX_ITERATIONS: usize = 50;
/// Convergence threshold on the step norm (m).
const STEP_TOLERANCE: f64 = 1e-9;
const MAX_HALVINGS: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct BeaconSet<T: Real> {
    /// Beacon coordinates (m), all of the same dimension.
    pub positions: Vec<Vec<T>>,
}

impl<T: Real> BeaconSet<T> {
    pub fn new(positions: Vec<Vec<T>>) -> Self {
        BeaconSet { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn centroid(&self, dims: usize) -> Vec<T> {
        let n = T::from_usize_lossy(self.positions.len());
        (0..dims)
            .map(|k| self.positions.iter().map(|p| p[k]).sum::<T>() / n)
            .collect()
    }

    /// Checks count and spread: at least `dims + 1` beacons that span `dims` dimensions.
    pub fn validate(&self, dims: usize) -> Result<()> {
        if dims != 2 && dims != 3 {
            return Err(Error::param("dims", format!("must be 2 or 3, got {dims}")));
        }
        if self.positions.len() < dims + 1 {
            return Err(Error::Geometry(format!(
                "{} beacons given, a {dims}D fix needs at least {}",
                self.positions.len(),
                dims + 1
            )));
        }
        if self.positions.iter().any(|p| p.len() != dims) {
            return Err(Error::param(
                "positions",
                format!("every beacon needs {dims} coordinates"),
            ));
        }
        let c = self.centroid(dims);
        let mut scatter = vec![vec![T::zero(); dims]; dims];
        for p in &self.positions {
            for i in 0..dims {
                for j in 0..dims {
                    scatter[i][j] = scatter[i][j] + (p[i] - c[i]) * (p[j] - c[j]);
                }
            }
        }
        if solve(&scatter, &vec![T::zero(); dims]).is_none() {
            let shape = if dims == 2 { "collinear" } else { "coplanar" };
            return Err(Error::Geometry(format!("beacons are {shape}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositionFix<T: Real> {
    pub coordinates: Vec<T>,
    pub residual_rms: T,
    pub iterations: usize,
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` when a pivot falls below a relative tolerance.
fn solve<T: Real>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = b.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let scale = (0..n).map(|i| m[i][i].abs()).fold(T::zero(), T::max);
    if !(scale > T::zero()) {
        return None;
    }
    let tol = scale * T::epsilon().sqrt() * T::lit(1e-3);
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if !(m[pivot][col].abs() > tol) {
            return None;
        }
        m.swap(col, pivot);
        let (top, below) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in below {
            let f = row[col] / pivot_row[col];
            for (a, &b) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *a = *a - f * b;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let s = (i + 1..n).fold(m[i][n], |acc, k| acc - m[i][k] * x[k]);
        x[i] = s / m[i][i];
    }
    Some(x)
}

fn residuals<T: Real>(x: &[T], beacons: &BeaconSet<T>, distances: &[T]) -> Vec<T> {
    beacons
        .positions
        .iter()
        .zip(distances)
        .map(|(b, &d)| norm_diff(x, b) - d)
        .collect()
}

fn norm_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&p, &q)| (p - q) * (p - q))
        .sum::<T>()
        .sqrt()
}

fn cost<T: Real>(r: &[T]) -> T {
    r.iter().map(|&v| v * v).sum()
}

fn rms<T: Real>(r: &[T]) -> T {
    (cost(r) / T::from_usize_lossy(r.len())).sqrt()
}

/// Least-squares position minimizing `Σ (‖x − bᵢ‖ − dᵢ)²`, started from the beacon centroid.
pub fn trilaterate<T: Real>(
    beacons: &BeaconSet<T>,
    distances: &[T],
    dims: usize,
) -> Result<PositionFix<T>> {
    beacons.validate(dims)?;
    let start = beacons.centroid(dims);
    trilaterate_from(beacons, distances, dims, &start)
}

/// As [`trilaterate`], from an explicit initial guess.
pub fn trilaterate_from<T: Real>(
    beacons: &BeaconSet<T>,
    distances: &[T],
    dims: usize,
    initial: &[T],
) -> Result<PositionFix<T>> {
    beacons.validate(dims)?;
    if distances.len() != beacons.len() {
        return Err(Error::param(
            "distances",
            format!(
                "{} distances for {} beacons",
                distances.len(),
                beacons.len()
            ),
        ));
    }
    if initial.len() != dims {
        return Err(Error::param("initial", format!("needs {dims} coordinates")));
    }

    let mut x = initial.to_vec();
    let mut r = residuals(&x, beacons, distances);
    for iteration in 1..=MAX_ITERATIONS {
        // normal equations JᵀJ δ = −Jᵀr
        let mut jtj = vec![vec![T::zero(); dims]; dims];
        let mut jtr = vec![T::zero(); dims];
        for (b, &ri) in beacons.positions.iter().zip(&r) {
            let range = norm_diff(&x, b);
            if !(range > T::zero()) {
                continue;
            }
            let row: Vec<T> = x.iter().zip(b).map(|(&p, &q)| (p - q) / range).collect();
            for i in 0..dims {
                jtr[i] = jtr[i] - row[i] * ri;
                for j in 0..dims {
                    jtj[i][j] = jtj[i][j] + row[i] * row[j];
                }
            }
        }
        let step = solve(&jtj, &jtr)
            .ok_or_else(|| Error::Geometry(format!("rank-deficient Jacobian at iterate {x:?}")))?;
        let step_norm = step.iter().map(|&s| s * s).sum::<T>().sqrt();
        let scale = T::one() + x.iter().map(|&v| v * v).sum::<T>().sqrt();
        let tol = T::lit(STEP_TOLERANCE).max(T::lit(8.0) * T::epsilon() * scale);

        // halve the step until the cost drops
        let current = cost(&r);
        let mut t = T::one();
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let cand: Vec<T> = x.iter().zip(&step).map(|(&p, &s)| p + t * s).collect();
            let rc = residuals(&cand, beacons, distances);
            if cost(&rc) <= current {
                accepted = Some((cand, rc));
                break;
            }
            t = t / T::lit(2.0);
        }
        match accepted {
            Some((cand, rc)) => {
                x = cand;
                r = rc;
                if t * step_norm < tol {
                    return Ok(PositionFix {
                        coordinates: x,
                        residual_rms: rms(&r),
                        iterations: iteration,
                    });
                }
            }
            // no descent along the Gauss–Newton direction: already at a minimum
            None => {
                return Ok(PositionFix {
                    coordinates: x,
                    residual_rms: rms(&r),
                    iterations: iteration,
                })
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual_rms: rms(&r).as_f64(),
        last: x.iter().map(|v| v.as_f64()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(a: &[f64], b: &[f64]) -> f64 {
        norm_diff(a, b)
    }

    #[test]
    fn exact_2d() {
        let beacons = BeaconSet::new(vec![vec![0.0, 0.0], vec![5.0, 0.0], vec![0.0, 4.0]]);
        let truth = [1.3, 2.2];
        let d: Vec<f64> = beacons.positions.iter().map(|b| dist(&truth, b)).collect();
        let fix = trilaterate(&beacons, &d, 2).unwrap();
        assert!(dist(&fix.coordinates, &truth) < 1e-6);
        assert!(fix.residual_rms < 1e-9);
    }

    #[test]
    fn exact_3d() {
        let beacons = BeaconSet::new(vec![
            vec![0.0, 0.0, 0.0],
            vec![6.0, 0.0, 0.5],
            vec![0.0, 5.0, 0.2],
            vec![3.0, 3.0, 3.0],
        ]);
        let truth = [2.0, 1.5, 1.0];
        let d: Vec<f64> = beacons.positions.iter().map(|b| dist(&truth, b)).collect();
        let fix = trilaterate(&beacons, &d, 3).unwrap();
        assert!(dist(&fix.coordinates, &truth) < 1e-6);
    }

    #[test]
    fn collinear_beacons_rejected() {
        let beacons = BeaconSet::new(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]);
        assert!(matches!(
            trilaterate(&beacons, &[1.0, 1.0, 1.0], 2),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn coplanar_beacons_rejected() {
        let beacons = BeaconSet::new(vec![
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![1.0, 1.0, 1.0],
        ]);
        assert!(matches!(
            trilaterate(&beacons, &[1.0; 4], 3),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn too_few_beacons_or_bad_counts() {
        let two = BeaconSet::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        assert!(trilaterate(&two, &[1.0, 1.0], 2).is_err());
        let three = BeaconSet::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(trilaterate(&three, &[1.0, 1.0], 2).is_err());
        assert!(trilaterate(&three, &[1.0, 1.0, 1.0], 4).is_err());
    }

    #[test]
    fn single_precision_fix() {
        let beacons = BeaconSet::new(vec![
            vec![0.0_f32, 0.0],
            vec![5.0, 0.0],
            vec![0.0, 4.0],
            vec![5.0, 4.0],
        ]);
        let truth = [3.0_f32, 1.0];
        let d: Vec<f32> = beacons
            .positions
            .iter()
            .map(|b| norm_diff(&truth, b))
            .collect();
        let fix = trilaterate(&beacons, &d, 2).unwrap();
        assert!(norm_diff(&fix.coordinates, &truth) < 1e-4);
    }
}
