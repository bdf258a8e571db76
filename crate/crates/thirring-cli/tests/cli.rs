use std::f64::consts::FRAC_PI_2;
use std::path::Path;
use std::process::{Command, Output};

use thirring_qca::spectral::BandSet;
use thirring_qca::{WalkParams, C64};

fn tqca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqca")).args(args).output().expect("tqca runs")
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap().to_owned();
    full.extend(["--out", &path_str]);
    let out = tqca(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    (out, text)
}

/// Rows below the header line, split on commas.
fn table(text: &str, header: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some(header));
    lines.map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn dispersion_csv_matches_the_library_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = run_to(dir.path(), "d.csv", &["dispersion"]);
    assert!(out.status.success());
    assert!(text.starts_with("# tqca "));
    assert!(text.contains("# config_hash: sha256:"));
    let rows = table(&text, "p,omega");
    assert_eq!(rows.len(), 1024);
    let params = WalkParams::new(0.8).unwrap();
    let mut saw_half_pi = false;
    for r in &rows {
        let p: f64 = r[0].parse().unwrap();
        let omega: f64 = r[1].parse().unwrap();
        let expected = thirring_qca::walk::dispersion(params, C64::new(p, 0.0)).re;
        assert_eq!(omega.to_bits(), expected.to_bits(), "p = {p}");
        if p == FRAC_PI_2 {
            saw_half_pi = true;
            assert!((omega - FRAC_PI_2).abs() < 1e-15);
        }
    }
    assert!(saw_half_pi);
}

#[test]
fn dispersion_accepts_a_custom_grid_and_json() {
    let out = tqca(&["dispersion", "--p-grid", "-pi/2:pi/2:5", "--format", "json"]);
    assert!(out.status.success());
    let doc = json(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(doc["meta"]["command"], "dispersion");
    let data = doc["data"].as_array().unwrap();
    assert_eq!(data.len(), 5);
    assert_eq!(data[2]["p"].as_f64(), Some(0.0));
}

#[test]
fn bands_round_trip_through_json() {
    let out = tqca(&["bands", "--p", "0.55"]);
    assert!(out.status.success());
    let doc = json(std::str::from_utf8(&out.stdout).unwrap());
    let bands: BandSet = serde_json::from_value(doc["data"].clone()).unwrap();
    assert_eq!(bands.arcs.len(), 6);
    assert_eq!(bands.excluded.len(), 2);
    let mut ex: Vec<f64> = bands.excluded.iter().map(|e| e.angle()).collect();
    ex.sort_by(f64::total_cmp);
    assert!((ex[0] + 1.1).abs() < 1e-12 && (ex[1] - 1.1).abs() < 1e-12, "{ex:?}");
    let expected = thirring_qca::spectral::band_arcs(WalkParams::new(0.8).unwrap(), 0.55).unwrap();
    assert_eq!(bands, expected);
}

#[test]
fn bands_at_a_special_momentum_report_a_structured_error() {
    let out = tqca(&["bands", "--p", "pi/2"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(doc["data"]["error"]["kind"], "special_momentum");
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(tqca(&["dispersion", "--mass", "1.5"]).status.code(), Some(2));
    assert_eq!(tqca(&["bands", "--p", "banana"]).status.code(), Some(2));
}

const SWEEP_HEADER: &str = "chi,p,special,pp_start,pp_end,pm_start,pm_end,flat,kind,omega_tilde,k_r,k_i,branch,region,error";

#[test]
fn default_sweep_covers_six_couplings_with_spot_checks() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("s.svg");
    let (out, text) =
        run_to(dir.path(), "s.csv", &["sweep", "--spot-check", "10", "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = table(&text, SWEEP_HEADER);
    assert_eq!(rows.len(), 6 * 128);
    let mut chis: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    chis.dedup();
    assert_eq!(chis.len(), 6);
    assert!(rows.iter().all(|r| r.len() == 15 && r[8] == "bound" && r[14].is_empty()));
    let checks: Vec<&str> = text.lines().filter(|l| l.starts_with("# spot-check")).collect();
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|l| l.ends_with(" pass")));
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<svg") && picture.contains("<circle"));
}

#[test]
fn free_sweep_has_no_discrete_band() {
    let out = tqca(&["sweep", "--chi", "0", "--p-grid", "0.1:3:30"]);
    assert!(out.status.success());
    let rows = table(std::str::from_utf8(&out.stdout).unwrap(), SWEEP_HEADER);
    assert_eq!(rows.len(), 30);
    for r in &rows {
        assert_eq!(r[8], "none");
        assert!(r[9..14].iter().all(String::is_empty));
        assert!(!r[3].is_empty() && !r[5].is_empty());
    }
}

#[test]
fn bound_state_csv_is_a_normalized_eigenvector() {
    let out = tqca(&["bound-state", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let residual: f64 = text.lines().find_map(|l| l.strip_prefix("# residual: ")).unwrap().parse().unwrap();
    assert!(residual < 1e-10);
    let rows = table(&text, "y,re_uu,im_uu,re_ud,im_ud,re_du,im_du,re_dd,im_dd");
    assert_eq!(rows.len(), 81);
    let norm: f64 = rows.iter().flat_map(|r| r[1..].iter().map(|x| x.parse::<f64>().unwrap().powi(2))).sum();
    assert!((norm - 1.0).abs() < 1e-12);
}

#[test]
fn validate_passes_by_default_and_reports_timings() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = run_to(dir.path(), "v.json", &["validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&text);
    assert_eq!(doc["data"]["passed"], true);
    let checks = doc["data"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 10);
    assert!(checks.iter().all(|c| c["passed"] == true && c["seconds"].as_f64().is_some()));
}

#[test]
fn zero_band_tolerance_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = run_to(dir.path(), "v.json", &["validate", "--delta-band", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&text);
    assert_eq!(doc["data"]["passed"], false);
    let failed: Vec<&str> = doc["data"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["detail"].as_str().unwrap())
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|d| d.contains("ambiguous")), "{failed:?}");
}

fn evolve_rows(args: &[&str]) -> (String, Vec<Vec<String>>) {
    let out = tqca(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = table(&text, "step,norm,bound_weight,mean_y,variance_y,outside_light_cone");
    (text, rows)
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn evolution_conserves_norm_and_bound_weight() {
    let (text, rows) = evolve_rows(&["evolve", "--steps", "60", "--ring-size", "401"]);
    assert_eq!(rows.len(), 61);
    let norms = column(&rows, 1);
    let weights = column(&rows, 2);
    assert!(norms.iter().all(|n| (n - 1.0).abs() < 1e-12));
    assert!(weights[0] > 1e-4);
    assert!(weights.iter().all(|w| (w - weights[0]).abs() < 1e-12));
    assert!(rows.iter().all(|r| r[5] == "0"));
    assert!(text.contains("# stopped_at: none"));
}

#[test]
fn free_evolution_spreads_ballistically() {
    let (text, _) = evolve_rows(&["evolve", "--chi", "0", "--steps", "120", "--ring-size", "601"]);
    let exponent: f64 =
        text.lines().find_map(|l| l.strip_prefix("# variance_exponent: ")).unwrap().parse().unwrap();
    assert!((exponent - 2.0).abs() < 0.1, "exponent {exponent}");
}

#[test]
fn evolution_stops_before_wrapping_the_ring() {
    let out = tqca(&["evolve", "--steps", "200", "--ring-size", "101"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("# stopped_at: none"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("light cone"));
}

#[test]
fn stationary_state_solves_the_eigenproblem() {
    let out = tqca(&["stationary", "--chi", "pi/2", "--n", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let residual: f64 = text.lines().find_map(|l| l.strip_prefix("# residual: ")).unwrap().parse().unwrap();
    assert!(residual < 1e-10);
    assert_eq!(tqca(&["stationary", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        &["dispersion"][..],
        &["bands"],
        &["sweep", "--spot-check", "2", "--p-grid", "0.1:3:40"],
        &["bound-state", "--format", "csv"],
        &["evolve", "--steps", "30", "--ring-size", "301", "--format", "json"],
        &["stationary"],
    ] {
        let a = tqca(args);
        let b = tqca(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn config_hash_tracks_the_configuration() {
    let hash = |args: &[&str]| {
        let out = tqca(args);
        String::from_utf8(out.stdout).unwrap().lines().find(|l| l.starts_with("# config_hash")).unwrap().to_owned()
    };
    assert_eq!(hash(&["dispersion"]), hash(&["dispersion", "--mass", "0.8"]));
    assert_ne!(hash(&["dispersion"]), hash(&["dispersion", "--mass", "0.5"]));
}
