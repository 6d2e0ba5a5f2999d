//! Tag power model, E-buffer sizing and the RF harvester.
//!
//! Per-measurement energy comes from the component table: the microphone is
//! slow to start and runs alone through a long lead window, the rest of the
//! chain comes up in a short final window, then everything runs for the
//! capture. The capacitor must hold that energy between the harvester's
//! charge-ready and overdischarge thresholds after LDO losses.

use std::io::Read;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::num::{dbm_to_watts, Real};

const TAG_COMPONENTS_CSV: &str = include_str!("../data/tag_components.csv");
const EFFICIENCY_CURVE_CSV: &str = include_str!("../data/efficiency_curve.csv");

/// E12 series, two significant digits.
const E12: [u32; 12] = [10, 12, 15, 18, 22, 27, 33, 39, 47, 56, 68, 82];
/// Smallest standard capacitance considered (1 pF).
const SMALLEST_STANDARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentPower<T: Real> {
    pub name: String,
    /// Power drawn by the whole group while on (W).
    pub power: T,
    pub turn_on_time: T,
    pub count: u32,
    /// Powered through the lead window of a split start-up.
    pub lead: bool,
}

#[derive(Debug, Deserialize)]
struct ComponentRow {
    name: String,
    power_w: f64,
    turn_on_time_s: f64,
    count: u32,
    lead: bool,
}

impl<T: Real> ComponentPower<T> {
    pub fn new(name: &str, power: T, turn_on_time: T, count: u32, lead: bool) -> Self {
        ComponentPower {
            name: name.to_owned(),
            power,
            turn_on_time,
            count,
            lead,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.power >= T::zero()) {
            return Err(Error::param(
                "power",
                format!("{}: must be >= 0", self.name),
            ));
        }
        if !(self.turn_on_time >= T::zero()) {
            return Err(Error::param(
                "turn_on_time",
                format!("{}: must be >= 0", self.name),
            ));
        }
        Ok(())
    }

    /// Reads a component table (`name,power_w,turn_on_time_s,count,lead`).
    pub fn read_csv<R: Read>(reader: R) -> Result<Vec<Self>> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut out = Vec::new();
        for row in rdr.deserialize::<ComponentRow>() {
            let row = row.map_err(|e| Error::param("components", e.to_string()))?;
            let c = ComponentPower::new(
                &row.name,
                T::lit(row.power_w),
                T::lit(row.turn_on_time_s),
                row.count,
                row.lead,
            );
            c.validate()?;
            out.push(c);
        }
        Ok(out)
    }

    /// The tag signal chain: microphone, two amplifiers, comparator,
    /// multiplexer, two oscillators and the RF switch.
    pub fn default_table() -> Vec<Self> {
        Self::read_csv(TAG_COMPONENTS_CSV.as_bytes()).expect("built-in component table parses")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartupMode {
    /// Everything powered for the whole lead window.
    Simultaneous,
    /// Lead components first, the rest only in the final window.
    #[default]
    Split,
}

/// How non-lead parts occupy the final window of a split start-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitOverlap {
    /// On for the whole final window.
    #[default]
    FullWindow,
    /// On for `min(final window, own turn-on time)`, all ending together.
    OwnTurnOn,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartupPlan<T: Real> {
    pub mode: StartupMode,
    pub overlap: SplitOverlap,
    /// Powered operation after start-up (s).
    pub operate_time: T,
    pub lead_window: T,
    pub final_window: T,
}

impl<T: Real> Default for StartupPlan<T> {
    fn default() -> Self {
        StartupPlan {
            mode: StartupMode::Split,
            overlap: SplitOverlap::FullWindow,
            operate_time: T::lit(1e-3),
            lead_window: T::lit(50e-3),
            final_window: T::lit(1.75e-3),
        }
    }
}

impl<T: Real> StartupPlan<T> {
    pub fn simultaneous() -> Self {
        StartupPlan {
            mode: StartupMode::Simultaneous,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.operate_time >= T::zero()) {
            return Err(Error::param("operate_time", "must be >= 0"));
        }
        if !(self.final_window >= T::zero()) || !(self.lead_window >= self.final_window) {
            return Err(Error::param(
                "final_window",
                "must satisfy 0 <= final_window <= lead_window",
            ));
        }
        Ok(())
    }

    /// Time a component is powered before operation starts.
    fn startup_on_time(&self, c: &ComponentPower<T>) -> T {
        match (self.mode, c.lead, self.overlap) {
            (StartupMode::Simultaneous, _, _) | (StartupMode::Split, true, _) => self.lead_window,
            (StartupMode::Split, false, SplitOverlap::FullWindow) => self.final_window,
            (StartupMode::Split, false, SplitOverlap::OwnTurnOn) => {
                self.final_window.min(c.turn_on_time)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TagEnergy<T: Real> {
    pub turn_on: T,
    pub operate: T,
}

impl<T: Real> TagEnergy<T> {
    pub fn total(&self) -> T {
        self.turn_on + self.operate
    }
}

pub fn tag_energy_breakdown<T: Real>(
    components: &[ComponentPower<T>],
    plan: &StartupPlan<T>,
) -> TagEnergy<T> {
    components.iter().fold(
        TagEnergy {
            turn_on: T::zero(),
            operate: T::zero(),
        },
        |acc, c| TagEnergy {
            turn_on: acc.turn_on + c.power * plan.startup_on_time(c),
            operate: acc.operate + c.power * plan.operate_time,
        },
    )
}

/// Energy (J) for one ranging measurement.
pub fn tag_energy<T: Real>(components: &[ComponentPower<T>], plan: &StartupPlan<T>) -> T {
    tag_energy_breakdown(components, plan).total()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarvesterSpec<T: Real> {
    /// Charge-ready threshold (V).
    pub v_chrdy: T,
    /// Overdischarge cutoff (V).
    pub v_ovdis: T,
    /// LDO output rail (V).
    pub v_out: T,
    /// Worst-case LDO efficiency, used for sizing.
    pub eta_ldo_worst: T,
    pub p_in_min_dbm: T,
    pub p_in_max_dbm: T,
    /// `(p_in dBm, eta)` knots, strictly increasing in `p_in`.
    pub efficiency_curve: Vec<(T, T)>,
    pub eta_antenna: T,
    pub eta_storage: T,
}

impl<T: Real> Default for HarvesterSpec<T> {
    fn default() -> Self {
        HarvesterSpec {
            v_chrdy: T::lit(2.30),
            v_ovdis: T::lit(2.20),
            v_out: T::lit(1.8),
            eta_ldo_worst: T::lit(0.77),
            p_in_min_dbm: T::lit(-19.5),
            p_in_max_dbm: T::lit(10.0),
            efficiency_curve: default_efficiency_curve(),
            eta_antenna: T::one(),
            eta_storage: T::one(),
        }
    }
}

#[derive(Debug, Deserialize)]
struct CurveRow {
    p_in_dbm: f64,
    eta: f64,
}

/// Reads an efficiency curve (`p_in_dbm,eta`).
pub fn read_efficiency_curve<T: Real, R: Read>(reader: R) -> Result<Vec<(T, T)>> {
    let mut rdr = csv::Reader::from_reader(reader);
    rdr.deserialize::<CurveRow>()
        .map(|row| {
            row.map(|r| (T::lit(r.p_in_dbm), T::lit(r.eta)))
                .map_err(|e| Error::param("efficiency_curve", e.to_string()))
        })
        .collect()
}

/// The calibrated stand-in curve shipped in `data/efficiency_curve.csv`.
pub fn default_efficiency_curve<T: Real>() -> Vec<(T, T)> {
    read_efficiency_curve(EFFICIENCY_CURVE_CSV.as_bytes())
        .expect("built-in efficiency curve parses")
}

fn in_unit_interval<T: Real>(x: T) -> bool {
    x > T::zero() && x <= T::one()
}

impl<T: Real> HarvesterSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.v_ovdis > T::zero() && self.v_ovdis < self.v_chrdy) {
            return Err(Error::param(
                "v_ovdis",
                "must satisfy 0 < v_ovdis < v_chrdy",
            ));
        }
        if !(self.p_in_min_dbm < self.p_in_max_dbm) {
            return Err(Error::param("p_in_min_dbm", "must be below p_in_max_dbm"));
        }
        for (name, eta) in [
            ("eta_ldo_worst", self.eta_ldo_worst),
            ("eta_antenna", self.eta_antenna),
            ("eta_storage", self.eta_storage),
        ] {
            if !in_unit_interval(eta) {
                return Err(Error::param(name, format!("must be in (0, 1], got {eta}")));
            }
        }
        if self.efficiency_curve.is_empty() {
            return Err(Error::param("efficiency_curve", "needs at least one point"));
        }
        if self.efficiency_curve.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::param(
                "efficiency_curve",
                "p_in must be strictly increasing",
            ));
        }
        if self
            .efficiency_curve
            .iter()
            .any(|&(_, eta)| !in_unit_interval(eta))
        {
            return Err(Error::param("efficiency_curve", "eta must be in (0, 1]"));
        }
        Ok(())
    }

    /// Combined conversion efficiency at `p_in` (dBm); zero outside the input range.
    pub fn efficiency(&self, p_in_dbm: T) -> T {
        if !(p_in_dbm >= self.p_in_min_dbm && p_in_dbm <= self.p_in_max_dbm) {
            return T::zero();
        }
        let curve = &self.efficiency_curve;
        let (first, last) = match (curve.first(), curve.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return T::zero(),
        };
        let eta = if p_in_dbm <= first.0 {
            first.1
        } else if p_in_dbm >= last.0 {
            last.1
        } else {
            let i = curve.partition_point(|&(p, _)| p <= p_in_dbm);
            let (p0, e0) = curve[i - 1];
            let (p1, e1) = curve[i];
            e0 + (e1 - e0) * (p_in_dbm - p0) / (p1 - p0)
        };
        eta * self.eta_antenna * self.eta_storage
    }
}

/// Power delivered to the buffer (W) for `p_in` (dBm) at the antenna.
pub fn harvester_output<T: Real>(p_in_dbm: T, h: &HarvesterSpec<T>) -> T {
    let eta = h.efficiency(p_in_dbm);
    if eta == T::zero() {
        T::zero()
    } else {
        eta * dbm_to_watts(p_in_dbm)
    }
}

/// Smallest buffer that delivers `e_tag` through the LDO between the two thresholds.
pub fn min_capacitance<T: Real>(e_tag: T, h: &HarvesterSpec<T>) -> Result<T> {
    if !(e_tag >= T::zero()) {
        return Err(Error::param("e_tag", format!("must be >= 0, got {e_tag}")));
    }
    let span = h.v_chrdy * h.v_chrdy - h.v_ovdis * h.v_ovdis;
    if span == T::zero() {
        return Err(Error::DivisionByZero("v_chrdy equals v_ovdis"));
    }
    if h.eta_ldo_worst == T::zero() {
        return Err(Error::DivisionByZero("eta_ldo_worst is zero"));
    }
    Ok(T::lit(2.0) * e_tag / (h.eta_ldo_worst * span))
}

/// Energy (J) released by a capacitor going from `v_hi` down to `v_lo`.
pub fn buffer_energy<T: Real>(c: T, v_hi: T, v_lo: T) -> T {
    c * (v_hi * v_hi - v_lo * v_lo) / T::lit(2.0)
}

/// Next E12 value at or above `c` (F).
pub fn next_standard_capacitance(c: f64) -> f64 {
    if !(c > SMALLEST_STANDARD) {
        return SMALLEST_STANDARD;
    }
    // value = mantissa * 10^(exp - 1), computed from exact integers so the
    // result is the nearest double to the decimal value
    let scaled = |m: u32, exp: i32| {
        let e = exp - 1;
        if e >= 0 {
            f64::from(m) * 10f64.powi(e)
        } else {
            f64::from(m) / 10f64.powi(-e)
        }
    };
    let mut exp = c.log10().floor() as i32;
    loop {
        for m in E12 {
            let v = scaled(m, exp);
            if v >= c * (1.0 - 1e-12) {
                return v;
            }
        }
        exp += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitorState<T: Real> {
    pub capacitance: T,
    pub voltage: T,
}

impl<T: Real> CapacitorState<T> {
    pub fn new(capacitance: T, voltage: T) -> Result<Self> {
        if !(capacitance > T::zero()) {
            return Err(Error::param("capacitance", "must be > 0"));
        }
        if !(voltage >= T::zero()) {
            return Err(Error::param("voltage", "must be >= 0"));
        }
        Ok(CapacitorState {
            capacitance,
            voltage,
        })
    }

    pub fn stored_energy(&self) -> T {
        buffer_energy(self.capacitance, self.voltage, T::zero())
    }

    /// Adds `energy` (J) and returns the new state.
    pub fn charged(&self, energy: T) -> Self {
        let e = (self.stored_energy() + energy).max(T::zero());
        CapacitorState {
            capacitance: self.capacitance,
            voltage: (T::lit(2.0) * e / self.capacitance).sqrt(),
        }
    }
}
