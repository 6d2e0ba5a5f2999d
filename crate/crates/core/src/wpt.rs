//! RF power beaming: free-space link budget, harvested power, charge times,
//! phased-array gain, beam-sweep pre-charge and duty-cycle-limited update rates.

use crate::energy::{buffer_energy, harvester_output, HarvesterSpec};
use crate::error::{Error, Result};
use crate::num::{ratio_to_db, Real};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Slack on the EIRP comparison so that exact-limit presets pass despite rounding.
const EIRP_SLACK_DB: f64 = 1e-9;
/// Upper bound on simulated dwells before a sweep is declared unreachable.
const MAX_DWELLS: usize = 50_000_000;

/// A continuous-wave power link from beacon to tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfLink<T: Real> {
    pub f_carrier: T,
    /// Conducted transmit power (dBm).
    pub p_t: T,
    /// Transmit antenna gain (dBi).
    pub g_t: T,
    /// Tag antenna gain (dBi).
    pub g_r: T,
    pub distance: T,
    /// Regulatory fraction of time the transmitter may be on.
    pub duty_cycle: T,
    pub eirp_limit: T,
}

impl<T: Real> Default for RfLink<T> {
    fn default() -> Self {
        RfLink {
            f_carrier: T::lit(869.5e6),
            p_t: T::lit(27.0),
            g_t: T::zero(),
            g_r: T::lit(2.15),
            distance: T::one(),
            duty_cycle: T::lit(0.10),
            eirp_limit: T::lit(27.0),
        }
    }
}

impl<T: Real> RfLink<T> {
    /// Default simulation link at `distance`.
    pub fn at_distance(distance: T) -> Self {
        RfLink {
            distance,
            ..Default::default()
        }
    }

    /// Directional 6.15 dBi patch with conducted power trimmed to the EIRP limit.
    pub fn patch_antenna(distance: T) -> Self {
        let g_t = T::lit(6.15);
        let base = Self::at_distance(distance);
        RfLink {
            g_t,
            p_t: base.eirp_limit - g_t,
            ..base
        }
    }

    pub fn wavelength(&self) -> T {
        T::lit(SPEED_OF_LIGHT) / self.f_carrier
    }

    pub fn eirp(&self) -> T {
        self.p_t + self.g_t
    }

    pub fn with_distance(&self, distance: T) -> Self {
        RfLink { distance, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f_carrier > T::zero()) {
            return Err(Error::param("f_carrier", "must be > 0"));
        }
        if !(self.duty_cycle > T::zero() && self.duty_cycle <= T::one()) {
            return Err(Error::param(
                "duty_cycle",
                format!("must be in (0, 1], got {}", self.duty_cycle),
            ));
        }
        if !(self.distance > T::zero()) {
            return Err(Error::param(
                "distance",
                format!("must be > 0, got {}", self.distance),
            ));
        }
        if self.eirp() > self.eirp_limit + T::lit(EIRP_SLACK_DB) {
            return Err(Error::EirpViolation {
                eirp_dbm: self.eirp().as_f64(),
                limit_dbm: self.eirp_limit.as_f64(),
            });
        }
        Ok(())
    }

    /// Free-space path loss (dB).
    pub fn path_loss_db(&self) -> T {
        T::lit(20.0) * (T::lit(4.0) * T::PI() * self.distance / self.wavelength()).log10()
    }
}

/// Free-space received power (dBm).
pub fn friis_received_power<T: Real>(link: &RfLink<T>) -> Result<T> {
    if link.distance == T::zero() {
        return Err(Error::Singularity(
            "Friis path loss diverges at zero distance",
        ));
    }
    link.validate()?;
    Ok(link.p_t + link.g_t + link.g_r - link.path_loss_db())
}

/// Power delivered to the E-buffer (W) while the carrier is on.
pub fn harvest_power<T: Real>(link: &RfLink<T>, h: &HarvesterSpec<T>) -> Result<T> {
    Ok(harvester_output(friis_received_power(link)?, h))
}

/// Largest distance at which the tag still receives `p_in_dbm`.
pub fn range_for_received_power<T: Real>(link: &RfLink<T>, p_in_dbm: T) -> T {
    let budget_db = link.p_t + link.g_t + link.g_r - p_in_dbm;
    link.wavelength() / (T::lit(4.0) * T::PI()) * T::lit(10.0).powf(budget_db / T::lit(20.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChargeKind {
    /// From an empty buffer to charge-ready.
    Initial,
    /// From the overdischarge cutoff back to charge-ready.
    Update,
}

impl ChargeKind {
    pub fn label(&self) -> &'static str {
        match self {
            ChargeKind::Initial => "initial",
            ChargeKind::Update => "update",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeScenario<T: Real> {
    pub kind: ChargeKind,
    pub v_start: T,
    pub v_end: T,
}

impl<T: Real> ChargeScenario<T> {
    pub fn initial(h: &HarvesterSpec<T>) -> Self {
        ChargeScenario {
            kind: ChargeKind::Initial,
            v_start: T::zero(),
            v_end: h.v_chrdy,
        }
    }

    pub fn update(h: &HarvesterSpec<T>) -> Self {
        ChargeScenario {
            kind: ChargeKind::Update,
            v_start: h.v_ovdis,
            v_end: h.v_chrdy,
        }
    }

    pub fn of_kind(kind: ChargeKind, h: &HarvesterSpec<T>) -> Self {
        match kind {
            ChargeKind::Initial => Self::initial(h),
            ChargeKind::Update => Self::update(h),
        }
    }

    pub fn energy(&self, capacitance: T) -> T {
        buffer_energy(capacitance, self.v_end, self.v_start)
    }
}

/// Carrier-on time (s) to move the buffer through `scenario` at constant
/// harvested power. Infinite when nothing is harvested.
pub fn charge_time<T: Real>(capacitance: T, scenario: &ChargeScenario<T>, p_harvest: T) -> T {
    if !(p_harvest > T::zero()) {
        return T::infinity();
    }
    scenario.energy(capacitance) / p_harvest
}

/// Uniform linear array steered by a progressive phase shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArraySpec<T: Real> {
    pub n_elements: usize,
    /// Element spacing in wavelengths.
    pub spacing: T,
    pub element_gain: T,
    /// Steering angle from broadside (degrees).
    pub steer_angle: T,
}

impl<T: Real> Default for ArraySpec<T> {
    fn default() -> Self {
        ArraySpec {
            n_elements: 8,
            spacing: T::lit(0.5),
            element_gain: T::zero(),
            steer_angle: T::zero(),
        }
    }
}

impl<T: Real> ArraySpec<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n_elements == 0 {
            return Err(Error::param("n_elements", "must be >= 1"));
        }
        if !(self.spacing > T::zero()) {
            return Err(Error::param("spacing", "must be > 0"));
        }
        Ok(())
    }

    pub fn steered(&self, steer_angle: T) -> Self {
        ArraySpec {
            steer_angle,
            ..*self
        }
    }

    /// Peak gain on the steering direction (dBi).
    pub fn peak_gain(&self) -> T {
        self.element_gain + ratio_to_db(T::from_usize_lossy(self.n_elements))
    }
}

/// Normalized power array factor `|Σ e^{jiψ}|² / n`, from the closed form
/// `sin²(nψ/2) / (n sin²(ψ/2))`.
pub fn array_factor_linear<T: Real>(arr: &ArraySpec<T>, target_angle: T) -> T {
    let n = T::from_usize_lossy(arr.n_elements);
    let psi = T::TAU()
        * arr.spacing
        * (target_angle.to_radians().sin() - arr.steer_angle.to_radians().sin());
    let half = psi / T::lit(2.0);
    let den = half.sin();
    if den.abs() < T::epsilon().sqrt() * T::lit(1e-3) {
        // grating lobe or main beam: all phasors aligned
        return n;
    }
    let num = (n * half).sin();
    num * num / (n * den * den)
}

/// Array gain towards `target_angle` (dBi).
pub fn array_factor<T: Real>(arr: &ArraySpec<T>, target_angle: T) -> T {
    arr.element_gain + ratio_to_db(array_factor_linear(arr, target_angle))
}

/// Transmit-side duty-cycle policy: bursts of `burst` carrier-on time, each
/// followed by the off time that keeps the average at `duty`.
pub fn duty_stretched_time<T: Real>(on_time: T, duty: T, burst: T) -> T {
    if !on_time.is_finite() {
        return T::infinity();
    }
    if duty >= T::one() || on_time <= T::zero() {
        return on_time;
    }
    // bursts completed in full before the final one
    let full = ((on_time / burst).ceil() - T::one()).max(T::zero());
    full * burst / duty + (on_time - full * burst)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SweepIntegrator<T: Real> {
    /// Closed-form energy per dwell.
    #[default]
    Exact,
    /// Fixed-step accumulation (s per step).
    Stepped(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSchedule<T: Real> {
    /// Carrier-on time per steering angle (s).
    pub dwell: T,
    /// Angular step (degrees).
    pub step: T,
    pub start_angle: T,
    pub stop_angle: T,
    pub integrator: SweepIntegrator<T>,
}

impl<T: Real> Default for SweepSchedule<T> {
    fn default() -> Self {
        SweepSchedule {
            dwell: T::one(),
            step: T::lit(10.0),
            start_angle: T::lit(-90.0),
            stop_angle: T::lit(90.0),
            integrator: SweepIntegrator::Exact,
        }
    }
}

impl<T: Real> SweepSchedule<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.dwell > T::zero()) {
            return Err(Error::param("dwell", "must be > 0"));
        }
        if !(self.step > T::zero()) {
            return Err(Error::param("step", "must be > 0"));
        }
        if !(self.stop_angle >= self.start_angle) {
            return Err(Error::param("stop_angle", "must be >= start_angle"));
        }
        if let SweepIntegrator::Stepped(dt) = self.integrator {
            if !(dt > T::zero()) {
                return Err(Error::param("integrator", "step must be > 0"));
            }
        }
        Ok(())
    }

    /// Steering angles visited in one pass.
    pub fn angles(&self) -> Vec<T> {
        let span = (self.stop_angle - self.start_angle) / self.step;
        let count = (span + T::lit(1e-9)).floor().to_usize().unwrap_or(0) + 1;
        (0..count)
            .map(|k| self.start_angle + T::from_usize_lossy(k) * self.step)
            .collect()
    }
}

/// Harvested power at the tag for each steering angle of the sweep. The array
/// replaces the link's transmit antenna: conducted power is `link.p_t`.
pub fn sweep_powers<T: Real>(
    arr: &ArraySpec<T>,
    tag_angle: T,
    schedule: &SweepSchedule<T>,
    link: &RfLink<T>,
    h: &HarvesterSpec<T>,
) -> Result<Vec<T>> {
    arr.validate()?;
    schedule.validate()?;
    if !(link.distance > T::zero()) {
        return Err(Error::Singularity(
            "Friis path loss diverges at zero distance",
        ));
    }
    let path = link.g_r - link.path_loss_db();
    Ok(schedule
        .angles()
        .into_iter()
        .map(|steer| {
            let p_in = link.p_t + array_factor(&arr.steered(steer), tag_angle) + path;
            harvester_output(p_in, h)
        })
        .collect())
}

/// Time (s) for a beacon that does not yet know the tag's bearing to bring an
/// empty buffer to charge-ready by sweeping its beam, dwell by dwell, cycling
/// through the sweep as needed. Each dwell is one transmit burst followed by
/// the duty-cycle off time; the final dwell is cut short when the buffer fills.
pub fn beam_sweep_precharge<T: Real>(
    arr: &ArraySpec<T>,
    tag_angle: T,
    schedule: &SweepSchedule<T>,
    link: &RfLink<T>,
    h: &HarvesterSpec<T>,
    capacitance: T,
) -> Result<T> {
    link.validate()?;
    let powers = sweep_powers(arr, tag_angle, schedule, link, h)?;
    if powers.iter().all(|&p| p == T::zero()) {
        return Err(Error::Unreachable(format!(
            "no steering angle delivers power above the harvester sensitivity at {} m",
            link.distance
        )));
    }
    let needed = ChargeScenario::initial(h).energy(capacitance);
    let off_time = schedule.dwell * (T::one() / link.duty_cycle - T::one());

    let mut stored = T::zero();
    let mut elapsed = T::zero();
    for (dwell_index, &p) in powers.iter().cycle().enumerate() {
        if dwell_index >= MAX_DWELLS {
            return Err(Error::Unreachable(format!(
                "buffer not charged within {MAX_DWELLS} dwells"
            )));
        }
        match schedule.integrator {
            SweepIntegrator::Exact => {
                if p > T::zero() && stored + p * schedule.dwell >= needed {
                    return Ok(elapsed + (needed - stored) / p);
                }
                stored = stored + p * schedule.dwell;
            }
            SweepIntegrator::Stepped(dt) => {
                let mut t = T::zero();
                while t < schedule.dwell {
                    let step = dt.min(schedule.dwell - t);
                    stored = stored + p * step;
                    t = t + step;
                    if stored >= needed {
                        return Ok(elapsed + t);
                    }
                }
            }
        }
        elapsed = elapsed + schedule.dwell + off_time;
    }
    unreachable!("cycle() never ends")
}

/// Position updates per hour when each update needs `charge` seconds of
/// carrier-on time and the transmitter may only be on a `duty` fraction.
pub fn update_rate<T: Real>(charge: T, duty: T, measurement_overhead: T) -> Result<T> {
    if !(charge > T::zero()) {
        return Err(Error::param("charge", format!("must be > 0, got {charge}")));
    }
    if !(duty > T::zero() && duty <= T::one()) {
        return Err(Error::param(
            "duty",
            format!("must be in (0, 1], got {duty}"),
        ));
    }
    Ok(T::lit(3600.0) / seconds_per_update(charge, duty, measurement_overhead))
}

/// Wall-clock seconds between updates.
pub fn seconds_per_update<T: Real>(charge: T, duty: T, measurement_overhead: T) -> T {
    charge / duty + measurement_overhead
}
