//! Experiment commands driven through `ScenarioConfig`.

mod common;

use sonotag_core::energy::HarvesterSpec;
use sonotag_core::scenario::{
    cmd_charge_curve, cmd_range, cmd_size_buffer, cmd_sweep, cmd_update_rate, Command, ResultTable,
    ScenarioConfig,
};
use sonotag_core::wpt::{duty_stretched_time, ChargeScenario};

const C: f64 = 343.0;
const FS: f64 = 192_000.0;

fn config(overrides: &[&str]) -> ScenarioConfig {
    let owned: Vec<String> = overrides.iter().map(|s| s.to_string()).collect();
    ScenarioConfig::load(None, &owned, None).unwrap()
}

fn rows_where<'a>(
    t: &'a ResultTable,
    col: &str,
    value: &str,
) -> Vec<&'a Vec<sonotag_core::scenario::Cell>> {
    let i = t.column(col).unwrap();
    t.rows
        .iter()
        .filter(|r| r[i].as_str() == Some(value))
        .collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[test]
fn charge_curve_defaults() {
    let t = cmd_charge_curve(&ScenarioConfig::default()).unwrap();
    assert_eq!(t.rows.len(), 13);
    let d = t.values("distance_m");
    let init = t.values("t_initial_s");
    let upd = t.values("t_update_s");
    let i45 = d.iter().position(|&x| (x - 4.5).abs() < 1e-9).unwrap();
    assert!(init[i45] <= 30.0, "t_initial(4.5) = {}", init[i45]);
    for k in 0..d.len() {
        assert!(upd[k] <= init[k], "row {k}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let cfg = config(&["channel.noise_std=0.05", "range_grid.max_m=2.0"]);
    for cmd in [
        Command::ChargeCurve,
        Command::Range,
        Command::SizeBuffer,
        Command::UpdateRate,
        Command::Sweep,
    ] {
        let a = cmd.run(&cfg).unwrap().to_csv();
        let b = cmd.run(&cfg).unwrap().to_csv();
        assert_eq!(a, b, "{cmd:?}");
        assert!(a.contains("# config_sha256: "), "{cmd:?}");
        assert!(a.contains("# seed: 0"), "{cmd:?}");
    }
    let other_seed = ScenarioConfig::load(
        None,
        &[
            "channel.noise_std=0.05".into(),
            "range_grid.max_m=2.0".into(),
        ],
        Some(9),
    )
    .unwrap();
    assert_ne!(
        cmd_range(&cfg).unwrap().to_csv(),
        cmd_range(&other_seed).unwrap().to_csv()
    );
}

#[test]
fn range_empty_grid_is_header_only() {
    let cfg = config(&["range_grid.min_m=3", "range_grid.max_m=2"]);
    let csv = cmd_range(&cfg).unwrap().to_csv();
    let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        data,
        vec!["true_distance_m,est_distance_m,abs_error_m,corr_peak,mode,status"]
    );
}

#[test]
fn range_noiseless_ideal_within_two_mm() {
    let t = cmd_range(&ScenarioConfig::default()).unwrap();
    let rows = rows_where(&t, "mode", "ideal-audio");
    assert_eq!(rows.len(), 12);
    let err = t.column("abs_error_m").unwrap();
    for r in rows {
        assert!(r[err].as_f64().unwrap() <= 0.002, "{r:?}");
    }
}

#[test]
fn range_noisy_median_error() {
    let cfg = config(&["channel.noise_std=0.1", r#"ranging.modes=["ideal-audio"]"#]);
    let t = cmd_range(&cfg).unwrap();
    let m = median(t.values("abs_error_m"));
    assert!(m <= 3.0 * C / FS, "median {m}");
}

#[test]
fn range_out_of_range_is_per_row() {
    let cfg = config(&[
        "range_grid.min_m=6.5",
        "range_grid.max_m=8",
        r#"ranging.modes=["ideal-audio"]"#,
    ]);
    let t = cmd_range(&cfg).unwrap();
    let status = t.column("status").unwrap();
    assert_eq!(t.rows.len(), 4);
    assert_eq!(t.rows[0][status].as_str(), Some("ok"));
    assert_eq!(t.rows[3][status].as_str(), Some("out-of-range"));
    assert!(t.to_csv().contains(",nan,"));
}

fn quantity(t: &ResultTable, name: &str) -> f64 {
    rows_where(t, "quantity", name)[0][1].as_f64().unwrap()
}

#[test]
fn size_buffer_defaults() {
    let t = cmd_size_buffer(&ScenarioConfig::default()).unwrap();
    let c_min = quantity(&t, "c_min");
    assert!((67.5e-6..=67.8e-6 * 1.001).contains(&c_min), "{c_min}");
    assert_eq!(quantity(&t, "c_standard"), 68e-6);
    assert_eq!(format!("{:.3e}", quantity(&t, "e_cap")), "1.530e-5");
}

#[test]
fn size_buffer_zero_energy() {
    let t = cmd_size_buffer(&config(&["energy.e_tag_j=0"])).unwrap();
    assert_eq!(quantity(&t, "c_min"), 0.0);
    assert_eq!(quantity(&t, "c_standard"), 1e-12);
}

#[test]
fn size_buffer_span_doubling_halves_c_min() {
    let base = quantity(
        &cmd_size_buffer(&ScenarioConfig::default()).unwrap(),
        "c_min",
    );
    // 2.2..2.3 V around 2.25 V → 2.15..2.35 V
    let wide = quantity(
        &cmd_size_buffer(&config(&[
            "harvester.v_chrdy=2.35",
            "harvester.v_ovdis=2.15",
        ]))
        .unwrap(),
        "c_min",
    );
    assert!((wide / base - 0.5).abs() < 1e-9, "{}", wide / base);
}

#[test]
fn update_rate_bands() {
    let t = cmd_update_rate(&ScenarioConfig::default()).unwrap();
    let d = t.column("distance_m").unwrap();
    let find = |dist: f64, kind: &str| {
        rows_where(&t, "scenario", kind)
            .into_iter()
            .find(|r| (r[d].as_f64().unwrap() - dist).abs() < 1e-9)
            .unwrap()
            .clone()
    };
    let per_hour = t.column("updates_per_hour").unwrap();
    let spu = t.column("seconds_per_update").unwrap();
    let r = find(4.5, "initial");
    let rate = r[per_hour].as_f64().unwrap();
    assert!((8.0..=14.0).contains(&rate), "{rate}");
    let r = find(6.0, "update");
    let s = r[spu].as_f64().unwrap();
    assert!((s - 100.0).abs() <= 20.0, "{s}");
}

#[test]
fn update_rate_full_duty_is_charge_time() {
    let t = cmd_update_rate(&config(&["link.duty_cycle=1.0"])).unwrap();
    assert_eq!(t.values("seconds_per_update"), t.values("charge_time_s"));
}

#[test]
fn charge_curve_reports_inf_beyond_sensitivity() {
    let t = cmd_charge_curve(&config(&["charge_grid.min_m=8", "charge_grid.max_m=8"])).unwrap();
    assert!(t
        .to_csv()
        .lines()
        .last()
        .unwrap()
        .starts_with("8,inf,inf,0,"));
}

#[test]
fn sweep_single_element_matches_stretched_charge_curve() {
    let cfg = config(&["sweep.tag_angles_deg=[0, 25]", "sweep.n_elements=[1, 8]"]);
    let sweep = cmd_sweep(&cfg).unwrap();
    let d = cfg.sweep.distance_m.to_string();
    let curve = cmd_charge_curve(&config(&[
        &format!("charge_grid.min_m={d}"),
        &format!("charge_grid.max_m={d}"),
    ]))
    .unwrap();
    let on = curve.values("t_initial_s")[0];
    let expected = duty_stretched_time(on, cfg.link.duty_cycle, cfg.sweep.dwell_s);
    let times = sweep.values("precharge_time_s");
    // rows: (0,1) (0,8) (25,1) (25,8)
    for &i in &[0usize, 2] {
        assert!(
            (times[i] - expected).abs() <= 1e-9 * expected,
            "{} vs {expected}",
            times[i]
        );
    }
    assert!(
        times[1] < times[0],
        "8 elements at boresight: {} vs {}",
        times[1],
        times[0]
    );
}

#[test]
fn sweep_larger_array_is_not_always_faster() {
    // a narrow beam only delivers in the dwells near the tag; the omni element
    // delivers in all of them and can finish first
    let cfg = config(&[
        "sweep.distance_m=4.5",
        "sweep.tag_angles_deg=[0]",
        "sweep.n_elements=[1, 8]",
    ]);
    let t = cmd_sweep(&cfg).unwrap().values("precharge_time_s");
    assert!(t[1] > t[0], "{t:?}");
}

#[test]
fn sweep_table_matches_replay() {
    let cfg = ScenarioConfig::default();
    let t = cmd_sweep(&cfg).unwrap();
    let h = HarvesterSpec::<f64>::default();
    let needed = ChargeScenario::initial(&h).energy(cfg.harvester.capacitance_f);
    let angles: Vec<f64> = (0..19).map(|i| -90.0 + 10.0 * i as f64).collect();
    let (a_col, n_col, t_col) = (
        t.column("tag_angle_deg").unwrap(),
        t.column("n_elements").unwrap(),
        t.column("precharge_time_s").unwrap(),
    );
    for row in &t.rows {
        let tag = row[a_col].as_f64().unwrap();
        let n = row[n_col].as_f64().unwrap() as usize;
        let power_at = |i: usize| {
            let af = common::phasor_array_factor(n, 0.5, tag, angles[i]);
            let p_lin =
                common::friis_linear_watts(27.0, 0.0, 2.15, 869.5e6, cfg.sweep.distance_m) * af;
            let p_dbm = 10.0 * (p_lin / 1e-3).log10();
            common::interp_eta(&h.efficiency_curve, -19.5, 10.0, p_dbm) * p_lin
        };
        let oracle = common::replay_sweep(19, power_at, 1.0, 0.1, needed, 10_000_000)
            .unwrap_or(f64::INFINITY);
        let got = row[t_col].as_f64().unwrap();
        assert!(
            (got - oracle).abs() <= 1e-6 * oracle,
            "angle {tag} n {n}: {got} vs {oracle}"
        );
    }
}
