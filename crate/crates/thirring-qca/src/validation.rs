//! The acceptance suite: invariants of the analytic spectrum and their
//! agreement with ring diagonalization and dynamics.
//!
//! Every check returns a structured outcome; errors and panics inside a check
//! are reported as failures.

use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamics::{bound_packet, default_p_grid, evolve, prepare_packet, WavepacketSpec, DEFAULT_GRID_POINTS};
use crate::error::Result;
use crate::oracle::{classify_spectrum, default_delta_band, diagonalize_ring, localization_length, residual};
use crate::phase::{arcs_disjoint, wrap_angle, UnitPhase, C64, I};
use crate::spectral::{
    band_arcs, degeneracy_partners, degenerate_wavefunction, find_bound_state, g_function, scattering_state,
    special_band_arcs, special_momentum, stationary_state_p0, transmission, ArcLabel, BoundSolution, RegionLabel,
    ScatteringKind,
};
use crate::two_particle::{antisymmetry_defect, apply_u2, omega_sr};
use crate::walk::{asymptotic_eigenvalues, dispersion, BranchSign, WalkParams};

/// The couplings of the discrete-band sweep.
pub const SWEEP_COUPLINGS: [f64; 6] = [-PI / 5.0, -PI / 2.0, -4.0 * PI / 5.0, 4.0 * PI / 5.0, PI / 2.0, PI / 5.0];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ValidationConfig {
    pub mu: f64,
    pub p: f64,
    pub ring_size: usize,
    /// Band tolerance for spectrum classification; the ring default when unset.
    pub delta_band: Option<f64>,
    pub seed: u64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self { mu: 0.8, p: 0.55, ring_size: 129, delta_band: None, seed: 20_240_517 }
    }
}

impl ValidationConfig {
    fn params(&self) -> Result<WalkParams> {
        WalkParams::new(self.mu)
    }

    fn delta_band(&self, n: usize) -> f64 {
        self.delta_band.unwrap_or_else(|| default_delta_band(n))
    }

    /// Separation from the continuum required of an isolated eigenphase;
    /// independent of the band tolerance.
    fn gap(&self, n: usize) -> f64 {
        10.0 * default_delta_band(n)
    }

    fn rng(&self, id: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (u64::from(id) << 56))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub time_limit: f64,
}

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Self {
        Self { passed, detail }
    }
}

pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub time_limit: f64,
    run: fn(&ValidationConfig) -> Result<Verdict>,
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { id: 1, name: "band partition of the circle", time_limit: 1.0, run: band_partition },
        Check { id: 2, name: "continuous spectrum against the ring", time_limit: 30.0, run: continuum_on_ring },
        Check { id: 3, name: "bound states against the ring", time_limit: 300.0, run: bound_states_on_ring },
        Check { id: 4, name: "coupling exclusions and degenerate states", time_limit: 1.0, run: exclusions },
        Check { id: 5, name: "scattering-state residuals", time_limit: 10.0, run: scattering_residuals },
        Check { id: 6, name: "fourfold degeneracy", time_limit: 1.0, run: fourfold_degeneracy },
        Check { id: 7, name: "G function properties", time_limit: 10.0, run: g_properties },
        Check { id: 8, name: "asymptotic eigenvalues", time_limit: 1.0, run: asymptotics },
        Check { id: 9, name: "stationary states at zero momentum", time_limit: 120.0, run: stationary_states },
        Check { id: 10, name: "dynamics sanity", time_limit: 60.0, run: dynamics_sanity },
    ]
}

pub fn run_check(check: &Check, cfg: &ValidationConfig) -> CheckOutcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| (check.run)(cfg)));
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match result {
        Ok(Ok(v)) => (v.passed, v.detail),
        Ok(Err(e)) => (false, format!("error: {e}")),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            (false, format!("panic: {msg}"))
        }
    };
    let within_time = seconds <= check.time_limit;
    let detail = if within_time { detail } else { format!("{detail}; exceeded {} s", check.time_limit) };
    CheckOutcome { id: check.id, name: check.name, passed: passed && within_time, detail, seconds, time_limit: check.time_limit }
}

pub fn run_all(cfg: &ValidationConfig) -> Vec<CheckOutcome> {
    checks().iter().map(|c| run_check(c, cfg)).collect()
}

fn generic_momentum(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let p = rng.random_range(-PI..PI);
        if special_momentum(p).is_none() && p != -PI {
            return p;
        }
    }
}

fn branch(rng: &mut ChaCha8Rng) -> BranchSign {
    if rng.random::<bool>() {
        BranchSign::Plus
    } else {
        BranchSign::Minus
    }
}

/// Hausdorff distance between two finite sets of phases.
pub fn hausdorff(a: &[UnitPhase], b: &[UnitPhase]) -> f64 {
    let one_way = |x: &[UnitPhase], y: &[UnitPhase]| {
        x.iter().map(|u| y.iter().map(|v| u.distance(*v)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

fn band_partition(cfg: &ValidationConfig) -> Result<Verdict> {
    let params = cfg.params()?;
    let bands = band_arcs(params, cfg.p)?;
    let mut overlaps = Vec::new();
    for (i, a) in bands.arcs.iter().enumerate() {
        for b in &bands.arcs[i + 1..] {
            if !arcs_disjoint(&a.arc, &b.arc) {
                overlaps.push(format!("{}/{}", a.label.name(), b.label.name()));
            }
        }
    }
    let mut rng = cfg.rng(1);
    let mut bad = 0;
    for _ in 0..10_000 {
        let phi = UnitPhase::new(rng.random_range(-PI..PI));
        let hits = bands.locate(phi, 1e-12).len() + usize::from(bands.is_excluded(phi, 1e-12));
        if hits != 1 {
            bad += 1;
        }
    }
    let mut mislabelled = 0;
    for j in 0..200 {
        let t = (j as f64 + 0.5) / 200.0;
        let k_i = -8.0 * t;
        for region in RegionLabel::DISCRETE {
            let k = C64::new(region.real_part().unwrap_or(0.0), k_i);
            let w = omega_sr(params, cfg.p, k, BranchSign::Plus, region.branch());
            let found = bands.locate(UnitPhase::new(-w.re), 1e-12);
            if w.im.abs() > 1e-10 || found.len() != 1 || found[0].region() != region {
                mislabelled += 1;
            }
        }
        let k_r = -PI + 2.0 * PI * t;
        for (r, label) in [(BranchSign::Plus, ArcLabel::PlusPlusFree), (BranchSign::Minus, ArcLabel::PlusMinusFree)] {
            let w = omega_sr(params, cfg.p, C64::new(k_r, 0.0), BranchSign::Plus, r);
            if bands.locate(UnitPhase::new(-w.re), 1e-12) != vec![label] {
                mislabelled += 1;
            }
        }
    }
    let expected = [UnitPhase::new(2.0 * cfg.p), UnitPhase::new(-2.0 * cfg.p)];
    let excluded_ok = bands.excluded.len() == 2
        && expected.iter().all(|e| bands.excluded.iter().any(|x| x.distance(*e) < 1e-15));
    Ok(Verdict::new(
        bands.arcs.len() == 6 && overlaps.is_empty() && bad == 0 && mislabelled == 0 && excluded_ok,
        format!(
            "{} arcs, overlapping pairs {:?}, {bad} of 10000 phases not in exactly one region, {mislabelled} region images off their arcs",
            bands.arcs.len(),
            overlaps
        ),
    ))
}

fn continuum_on_ring(cfg: &ValidationConfig) -> Result<Verdict> {
    let params = cfg.params()?;
    let n = cfg.ring_size;
    let bands = band_arcs(params, cfg.p)?;
    let delta = cfg.delta_band(n);
    let mut passed = true;
    let mut notes = Vec::new();
    let mut in_band_sets = Vec::new();
    for chi in [0.0, FRAC_PI_2] {
        let spec = diagonalize_ring(params, chi, cfg.p, n)?;
        let cls = classify_spectrum(&spec, &bands, delta, cfg.gap(n));
        let expected_isolated = usize::from(find_bound_state(params, chi, cfg.p)? != BoundSolution::None);
        let worst = cls
            .in_band
            .iter()
            .chain(&cls.ambiguous)
            .map(|&i| bands.distance_to_continuum(spec.eigenphases[i]))
            .fold(0.0, f64::max);
        let ok = cls.ambiguous.is_empty() && cls.isolated.len() == expected_isolated && worst <= 1e-3;
        passed &= ok;
        notes.push(format!(
            "chi={chi:.4}: {} in band (max distance {worst:.2e}), {} isolated (expected {expected_isolated}), {} ambiguous",
            cls.in_band.len(),
            cls.isolated.len(),
            cls.ambiguous.len()
        ));
        in_band_sets.push(cls.in_band.iter().map(|&i| spec.eigenphases[i]).collect::<Vec<_>>());
    }
    let h = hausdorff(&in_band_sets[0], &in_band_sets[1]);
    let limit = 4.0 * PI / n as f64;
    passed &= h <= limit;
    notes.push(format!("Hausdorff distance of in-band sets {h:.3e} (limit {limit:.3e})"));
    Ok(Verdict::new(passed, notes.join("; ")))
}

fn bound_states_on_ring(cfg: &ValidationConfig) -> Result<Verdict> {
    let params = cfg.params()?;
    let n = cfg.ring_size;
    let delta = cfg.delta_band(n);
    let mut worst_phase: f64 = 0.0;
    let mut worst_slope: f64 = 0.0;
    let mut failures = Vec::new();
    for p in [0.3, 0.55, 1.2] {
        let bands = band_arcs(params, p)?;
        for chi in SWEEP_COUPLINGS {
            let BoundSolution::Bound(b) = find_bound_state(params, chi, p)? else {
                failures.push(format!("no bound state at chi={chi:.4}, p={p}"));
                continue;
            };
            let spec = diagonalize_ring(params, chi, p, n)?;
            let cls = classify_spectrum(&spec, &bands, delta, cfg.gap(n));
            if cls.isolated.len() != 1 || !cls.ambiguous.is_empty() {
                failures.push(format!(
                    "chi={chi:.4}, p={p}: {} isolated, {} ambiguous",
                    cls.isolated.len(),
                    cls.ambiguous.len()
                ));
                continue;
            }
            let idx = cls.isolated[0];
            let dphi = spec.eigenphases[idx].distance(b.eigenphase);
            let slope = localization_length(&spec, idx)?;
            let rel = ((slope - b.k_tilde.im) / b.k_tilde.im).abs();
            worst_phase = worst_phase.max(dphi);
            worst_slope = worst_slope.max(rel);
            if dphi > 1e-6 || rel > 0.01 {
                failures.push(format!("chi={chi:.4}, p={p}: phase error {dphi:.2e}, slope error {rel:.2e}"));
            }
        }
    }
    Ok(Verdict::new(
        failures.is_empty(),
        format!(
            "18 cases at N={n}: worst phase error {worst_phase:.2e}, worst relative slope error {worst_slope:.2e}{}",
            if failures.is_empty() { String::new() } else { format!("; failures: {}", failures.join(", ")) }
        ),
    ))
}

fn exclusions(cfg: &ValidationConfig) -> Result<Verdict> {
    let params = cfg.params()?;
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for p in [0.3, 0.55, 1.2, -2.0] {
        for chi in [0.0, PI, -PI, 2.0 * PI] {
            let found = find_bound_state(params, chi, p)?;
            if found != BoundSolution::None {
                failures.push(format!("p={p}, chi={chi:.4}: {found:?}"));
            }
        }
        for sign in [BranchSign::Plus, BranchSign::Minus] {
            let chi = sign.value() * 2.0 * p;
            match find_bound_state(params, chi, p)? {
                BoundSolution::Degenerate(d) if d.sign == sign => {
                    let f = degenerate_wavefunction(params, p, sign, -6..=6)?;
                    let lam = UnitPhase::new(sign.value() * 2.0 * p).to_complex();
                    let mut r = apply_u2(params, chi, p, &f)?;
                    r.add_scaled(&f, -lam);
                    let res = r.norm();
                    worst = worst.max(res);
                    if res > 1e-12 || antisymmetry_defect(&f) != 0.0 || d.eigenphase.distance(UnitPhase::new(chi)) > 1e-15 {
                        failures.push(format!("p={p}, sign {}: residual {res:.2e}", sign.symbol()));
                    }
                }
                other => failures.push(format!("p={p}, chi={chi:.4}: expected degenerate state, got {other:?}")),
            }
        }
    }
    Ok(Verdict::new(
        failures.is_empty(),
        format!("worst degenerate-state residual {worst:.2e}; failures: {}", failures.len())
            + &failures.iter().map(|f| format!("; {f}")).collect::<String>(),
    ))
}

fn scattering_residuals(cfg: &ValidationConfig) -> Result<Verdict> {
    let params = cfg.params()?;
    let mut rng = cfg.rng(5);
    let mut worst: f64 = 0.0;
    let mut nonzero_origin = 0;
    let mut draws = 0;
    let mut failures = Vec::new();
    while draws < 20 {
        let p = generic_momentum(&mut rng);
        let k = rng.random_range(-PI..PI);
        let chi = rng.random_range(-PI..PI);
        if [BranchSign::Plus, BranchSign::Minus].iter().any(|&s| transmission(params, chi, p, C64::new(k, 0.0), s).is_err()) {
            continue;
        }
        draws += 1;
        for s in [BranchSign::Plus, BranchSign::Minus] {
            let lam = UnitPhase::new(-omega_sr(params, p, C64::new(k, 0.0), BranchSign::Plus, s).re);
            for kind in [ScatteringKind::Free, ScatteringKind::Interacting] {
                let f = scattering_state(params, chi, p, k, s, kind, -40..=40)?;
                let r = residual(params, chi, p, &f, lam)?;
                worst = worst.max(r);
                if r > 1e-10 {
                    failures.push(format!("p={p:.4}, k={k:.4}, chi={chi:.4}, {s:?}, {kind:?}: {r:.2e}"));
                }
                if kind == ScatteringKind::Free && f.get(0).iter().any(|c| *c != C64::new(0.0, 0.0)) {
                    nonzero_origin += 1;
                }
            }
        }
    }
    Ok(Verdict::new(
        failures.is_empty() && nonzero_origin == 0,
        format!(
            "80 states: worst interior residual {worst:.2e}, free states with f(0) != 0: {nonzero_origin}{}",
            failures.iter().map(|f| format!("; {f}")).collect::<String>()
        ),
    ))
}

fn fourfold_degeneracy(cfg: &ValidationConfig) -> Result<Verdict> {
    let mut rng = cfg.rng(6);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let params = WalkParams::new(rng.random_range(0.05..0.95))?;
        let p = rng.random_range(-PI..PI);
        let k = C64::new(rng.random_range(-PI..PI), 0.0);
        let (s, r) = (branch(&mut rng), branch(&mut rng));
        let reference = (-I * omega_sr(params, p, k, s, r)).exp();
        for (s2, r2, k2) in degeneracy_partners(s, r, k) {
            worst = worst.max(((-I * omega_sr(params, p, k2, s2, r2)).exp() - reference).norm());
        }
    }
    Ok(Verdict::new(worst <= 1e-12, format!("1000 random triples: worst eigenphase mismatch {worst:.2e}")))
}

/// Limit of G_z as k_I → −∞ for the G whose value e^{iχ} marks a bound state.
pub fn g_limit(region: RegionLabel, p: f64) -> UnitPhase {
    let tilt = p.cos().signum();
    UnitPhase::new(match region {
        RegionLabel::Zero => -2.0 * p.abs(),
        RegionLabel::Two => 2.0 * p.abs(),
        RegionLabel::PlusOne => -2.0 * p * tilt,
        RegionLabel::MinusOne => 2.0 * p * tilt,
        RegionLabel::Free => f64::NAN,
    })
}

fn g_properties(cfg: &ValidationConfig) -> Result<Verdict> {
    let mut rng = cfg.rng(7);
    let mut endpoint: f64 = 0.0;
    let mut limit: f64 = 0.0;
    let mut closest_forbidden = f64::INFINITY;
    let mut reversals = 0;
    let mut root: f64 = 0.0;
    for _ in 0..50 {
        let params = WalkParams::new(rng.random_range(0.05..0.95))?;
        let p = generic_momentum(&mut rng);
        for region in RegionLabel::DISCRETE {
            let (start_expected, forbidden) = match region.branch() {
                BranchSign::Plus => (UnitPhase::new(PI), UnitPhase::new(0.0)),
                BranchSign::Minus => (UnitPhase::new(0.0), UnitPhase::new(PI)),
            };
            let start = g_function(params, p, region, 0.0)?;
            endpoint = endpoint.max(start.distance(start_expected));
            limit = limit.max(g_function(params, p, region, -40.0)?.distance(g_limit(region, p)));
            let mut prev = 0.0;
            let mut direction = 0.0;
            for j in 1..=800 {
                let k_i = -0.05 * j as f64;
                let g = g_function(params, p, region, k_i)?;
                closest_forbidden = closest_forbidden.min(g.distance(forbidden));
                let offset = wrap_angle(g.angle() - start.angle());
                let step = offset - prev;
                if direction == 0.0 {
                    direction = step.signum();
                } else if step * direction <= 0.0 && step.abs() > 1e-13 {
                    reversals += 1;
                }
                prev = offset;
            }
        }
        let chi = rng.random_range(-PI..PI);
        if let BoundSolution::Bound(b) = find_bound_state(params, chi, p)? {
            let t = transmission(params, chi, p, b.k_tilde, b.branch)?.norm();
            let g = g_function(params, p, b.region, b.k_tilde.im)?.distance(UnitPhase::new(chi));
            root = root.max(t).max(g);
        }
    }
    Ok(Verdict::new(
        endpoint <= 1e-12 && limit <= 1e-10 && closest_forbidden > 0.0 && reversals == 0 && root <= 1e-9,
        format!(
            "50 random (mu, p): endpoint error {endpoint:.2e}, limit error at k_I=-40 {limit:.2e}, closest approach to the excluded value {closest_forbidden:.2e}, direction reversals {reversals}, |T| and |G - e^(i chi)| at roots {root:.2e}"
        ),
    ))
}

fn asymptotics(cfg: &ValidationConfig) -> Result<Verdict> {
    let mut rng = cfg.rng(8);
    let mut worst: f64 = 0.0;
    let k_i = -30.0;
    let mut draws = 0;
    while draws < 200 {
        let params = WalkParams::new(rng.random_range(0.05..0.95))?;
        let p = rng.random_range(-PI..PI);
        let k_r = rng.random_range(-PI..PI);
        let theta = wrap_angle(p - k_r);
        if theta.abs() < 1e-2 || theta.abs() > PI - 1e-2 {
            continue;
        }
        draws += 1;
        let a = asymptotic_eigenvalues(params, p, k_r, k_i);
        let w = dispersion(params, C64::new(p - k_r, -k_i));
        let minus = (-I * w).exp();
        let plus = (I * w).exp();
        worst = worst
            .max((a.minus_omega() - minus).norm() / minus.norm())
            .max((a.plus_omega() - plus).norm() / plus.norm());
    }
    Ok(Verdict::new(
        worst <= 1e-6,
        format!("200 random (mu, p, k_R) at k_I=-30 with |p - k_R| mod 2pi in [0.01, pi - 0.01]: worst relative error {worst:.2e}"),
    ))
}

fn stationary_states(cfg: &ValidationConfig) -> Result<Verdict> {
    let params = cfg.params()?;
    let mut worst: f64 = 0.0;
    for chi in [0.0, FRAC_PI_2, -PI / 5.0] {
        let kind = if chi == 0.0 { ScatteringKind::Free } else { ScatteringKind::Interacting };
        for n in 1..=3 {
            let psi = stationary_state_p0(params, chi, n, kind, 512)?;
            worst = worst.max(residual(params, chi, 0.0, &psi, UnitPhase::new(0.0))? / psi.norm());
        }
    }
    let bands = special_band_arcs(params, 0.0)?;
    let mut growing = true;
    let mut counts = Vec::new();
    for chi in [0.0, FRAC_PI_2] {
        let mut row = Vec::new();
        for n in [33, 65, 129] {
            let spec = diagonalize_ring(params, chi, 0.0, n)?;
            row.push(classify_spectrum(&spec, &bands, cfg.delta_band(n), cfg.gap(n)).flat.len());
        }
        growing &= row.windows(2).all(|w| w[1] > w[0]);
        counts.push(format!("chi={chi:.4}: {row:?}"));
    }
    Ok(Verdict::new(
        worst <= 1e-8 && growing,
        format!(
            "worst relative residual of psi_n (n=1..3, 512 nodes) {worst:.2e}; eigenvalue-1 multiplicity at N=33,65,129: {}",
            counts.join(", ")
        ),
    ))
}

fn dynamics_sanity(cfg: &ValidationConfig) -> Result<Verdict> {
    let params = cfg.params()?;
    let chi = FRAC_PI_2;
    let grid = default_p_grid(DEFAULT_GRID_POINTS);
    let spec = WavepacketSpec { p0: cfg.p, k0: 0.4, sigma_p: 0.2, sigma_k: 0.3, y0: 0 };
    let packets = [
        ("scattering packet", prepare_packet(params, &spec, &grid, 1025)?),
        ("bound packet", bound_packet(params, chi, cfg.p, 0.3, &grid, 1025)?),
    ];
    let mut passed = true;
    let mut notes = Vec::new();
    for (name, packet) in packets {
        let run = evolve(params, chi, &packet.blocks, 200)?;
        let first = &run.records[0];
        let norm_drift = run.records.iter().map(|r| (r.norm - first.norm).abs()).fold(0.0, f64::max);
        let weight_drift = run.records.iter().map(|r| (r.bound_weight - first.bound_weight).abs()).fold(0.0, f64::max);
        let cone: usize = run.records.iter().map(|r| r.outside_light_cone).sum();
        let ok = run.stopped_at.is_none()
            && run.records.len() == 201
            && (first.norm - 1.0).abs() <= 1e-12
            && norm_drift <= 1e-11
            && weight_drift <= 1e-8
            && cone == 0;
        passed &= ok;
        notes.push(format!(
            "{name}: norm drift {norm_drift:.2e}, bound weight {:.6e} drifting {weight_drift:.2e}, amplitudes outside the light cone {cone}",
            first.bound_weight
        ));
    }
    Ok(Verdict::new(passed, notes.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hausdorff_examples() {
        let a = [UnitPhase::new(0.1), UnitPhase::new(3.1)];
        let b = [UnitPhase::new(0.15), UnitPhase::new(-3.1)];
        assert!((hausdorff(&a, &b) - (2.0 * PI - 6.2)).abs() < 1e-12);
        assert_eq!(hausdorff(&a, &a), 0.0);
    }

    #[test]
    fn zero_band_tolerance_is_caught() {
        let cfg = ValidationConfig { delta_band: Some(0.0), ..ValidationConfig::default() };
        let check = checks().into_iter().find(|c| c.id == 2).unwrap();
        let out = run_check(&check, &cfg);
        assert!(!out.passed);
        assert!(out.detail.contains("ambiguous"), "{}", out.detail);
    }

    #[test]
    fn errors_become_failures() {
        let cfg = ValidationConfig { mu: 1.5, ..ValidationConfig::default() };
        let out = run_check(&checks()[0], &cfg);
        assert!(!out.passed);
        assert!(out.detail.starts_with("error:"), "{}", out.detail);
    }
}
