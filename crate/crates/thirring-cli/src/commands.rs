use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thirring_qca::dynamics::{bound_packet, default_p_grid, evolve as run_evolution, prepare_packet, variance_exponent, EvolutionRecord, WavepacketSpec};
use thirring_qca::oracle::{classify_spectrum, default_delta_band, diagonalize_ring, residual};
use thirring_qca::spectral::{
    band_arcs, bound_wavefunction, degenerate_wavefunction, spectral_summary, stationary_state_p0, ArcLabel,
    BoundSolution, ScatteringKind, SpectralSummary, SPECIAL_MOMENTUM_GUARD,
};
use thirring_qca::two_particle::RelativeState;
use thirring_qca::validation::{run_all, CheckOutcome, ValidationConfig, SWEEP_COUPLINGS};
use thirring_qca::walk;
use thirring_qca::{Error, UnitPhase, WalkParams, C64};

use crate::angle::brillouin_grid;
use crate::output::{emit, json, num, opt, Csv, Meta};
use crate::{svg, BandsArgs, BoundStateArgs, DispersionArgs, EvolveArgs, Format, StationaryArgs, SweepArgs, ValidateArgs};

const DISPERSION_POINTS: usize = 1024;
const SPOT_CHECK_TOL: f64 = 1e-6;

fn walk_params(mass: f64) -> Result<WalkParams> {
    WalkParams::new(mass).context("invalid --mass")
}

#[derive(Serialize)]
struct DispersionRow {
    p: f64,
    omega: f64,
}

pub fn dispersion(a: &DispersionArgs) -> Result<ExitCode> {
    let params = walk_params(a.common.mass)?;
    let grid = a.p_grid.map(|g| g.points()).unwrap_or_else(|| brillouin_grid(DISPERSION_POINTS));
    let rows: Vec<DispersionRow> =
        grid.iter().map(|&p| DispersionRow { p, omega: walk::dispersion(params, C64::new(p, 0.0)).re }).collect();
    let meta = Meta::new("dispersion", a, a.common.mass, vec![]);
    let text = match a.format {
        Format::Csv => {
            let mut csv = Csv::new(&meta);
            csv.row(&["p", "omega"]);
            for r in &rows {
                csv.row(&[num(r.p), num(r.omega)]);
            }
            csv.finish()
        }
        Format::Json => json(&meta, &rows)?,
    };
    emit(a.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ErrorReport {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Failure {
    error: ErrorReport,
}

pub fn bands(a: &BandsArgs) -> Result<ExitCode> {
    let params = walk_params(a.common.mass)?;
    let meta = Meta::new("bands", a, a.common.mass, vec![]);
    let (text, code) = match band_arcs(params, a.p) {
        Ok(b) => (json(&meta, &b)?, ExitCode::SUCCESS),
        Err(e) => {
            let kind = match e {
                Error::SpecialMomentum { .. } => "special_momentum",
                _ => "invalid_argument",
            };
            eprintln!("error: {e}");
            (json(&meta, &Failure { error: ErrorReport { kind, message: e.to_string() } })?, ExitCode::FAILURE)
        }
    };
    emit(a.common.out.as_deref(), &text)?;
    Ok(code)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub chi: f64,
    pub p: f64,
    /// z when p is within the guard band of zπ/2.
    pub special: Option<i32>,
    pub pp_start: Option<f64>,
    pub pp_end: Option<f64>,
    pub pm_start: Option<f64>,
    pub pm_end: Option<f64>,
    /// Angle of the flat eigenvalue at p = zπ/2.
    pub flat: Option<f64>,
    pub kind: &'static str,
    pub omega_tilde: Option<f64>,
    pub k_r: Option<f64>,
    pub k_i: Option<f64>,
    pub branch: Option<char>,
    pub region: Option<&'static str>,
    pub error: Option<String>,
}

impl SweepRow {
    fn from_summary(s: &SpectralSummary) -> Self {
        let arc = |label| s.bands.arc(label).map(|a| (a.start.angle(), a.end.angle()));
        let pp = arc(ArcLabel::PlusPlusFree);
        let pm = arc(ArcLabel::PlusMinusFree);
        let mut row = SweepRow {
            chi: s.chi,
            p: s.p,
            special: s.special,
            pp_start: pp.map(|a| a.0),
            pp_end: pp.map(|a| a.1),
            pm_start: pm.map(|a| a.0),
            pm_end: pm.map(|a| a.1),
            flat: s.bands.flat.map(|f| f.angle()),
            kind: "none",
            omega_tilde: None,
            k_r: None,
            k_i: None,
            branch: None,
            region: None,
            error: s.error.clone(),
        };
        match s.discrete {
            BoundSolution::Bound(b) => {
                row.kind = "bound";
                row.omega_tilde = Some(b.omega_tilde);
                row.k_r = Some(b.k_tilde.re);
                row.k_i = Some(b.k_tilde.im);
                row.branch = Some(b.branch.symbol());
                row.region = Some(b.region.name());
            }
            BoundSolution::Degenerate(d) => {
                row.kind = "degenerate";
                row.omega_tilde = Some(UnitPhase::new(-d.eigenphase.angle()).angle());
                row.branch = Some(d.sign.symbol());
            }
            BoundSolution::None => {}
        }
        row
    }

    /// The discrete eigenvalue e^{−iω̃} as a point of the circle.
    pub fn eigenphase(&self) -> Option<UnitPhase> {
        self.omega_tilde.map(|w| UnitPhase::new(-w))
    }
}

const SWEEP_HEADER: [&str; 15] = [
    "chi", "p", "special", "pp_start", "pp_end", "pm_start", "pm_end", "flat", "kind", "omega_tilde", "k_r", "k_i",
    "branch", "region", "error",
];

#[derive(Clone, Debug, Serialize)]
struct SpotCheck {
    chi: f64,
    p: f64,
    analytic: f64,
    ring: Option<f64>,
    isolated: usize,
    error: Option<f64>,
    passed: bool,
}

fn spot_check(params: WalkParams, rows: &[SweepRow], count: usize, n: usize, seed: u64) -> Result<Vec<SpotCheck>> {
    let candidates: Vec<&SweepRow> = rows.iter().filter(|r| r.kind == "bound" && r.special.is_none()).collect();
    if candidates.len() < count {
        bail!("spot check asks for {count} rows but only {} carry a bound state", candidates.len());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, candidates.len(), count).into_vec();
    picks.sort_unstable();
    let mut out = Vec::with_capacity(count);
    for i in picks {
        let row = candidates[i];
        let analytic = row.eigenphase().expect("bound rows carry an eigenphase");
        let spec = diagonalize_ring(params, row.chi, row.p, n)?;
        let bands = band_arcs(params, row.p)?;
        let d = default_delta_band(n);
        let cls = classify_spectrum(&spec, &bands, d, 10.0 * d);
        let ring = (cls.isolated.len() == 1).then(|| spec.eigenphases[cls.isolated[0]]);
        let error = ring.map(|r| r.distance(analytic));
        out.push(SpotCheck {
            chi: row.chi,
            p: row.p,
            analytic: analytic.angle(),
            ring: ring.map(|r| r.angle()),
            isolated: cls.isolated.len(),
            error,
            passed: error.is_some_and(|e| e <= SPOT_CHECK_TOL),
        });
    }
    Ok(out)
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    rows: &'a [SweepRow],
    spot_checks: &'a [SpotCheck],
}

pub fn sweep(a: &SweepArgs) -> Result<ExitCode> {
    let params = walk_params(a.common.mass)?;
    let chis = if a.chi.is_empty() { SWEEP_COUPLINGS.to_vec() } else { a.chi.clone() };
    let ps = a.p_grid.map(|g| g.points()).unwrap_or_else(|| default_p_grid(128));
    let rows: Vec<SweepRow> =
        chis.iter().flat_map(|&chi| ps.iter().map(move |&p| (chi, p))).map(|(chi, p)| SweepRow::from_summary(&spectral_summary(params, chi, p))).collect();
    let checks = if a.spot_check > 0 { spot_check(params, &rows, a.spot_check, a.ring_size, a.seed)? } else { Vec::new() };
    let meta = Meta::new("sweep", a, a.common.mass, chis.clone());
    let text = match a.format {
        Format::Csv => {
            let mut csv = Csv::new(&meta);
            csv.comment("angles in radians; arc endpoints are eigenvalue phases, counterclockwise from start to end");
            for c in &checks {
                csv.comment(&format!(
                    "spot-check chi={} p={} analytic={} ring={} isolated={} error={} {}",
                    num(c.chi),
                    num(c.p),
                    num(c.analytic),
                    opt(c.ring),
                    c.isolated,
                    opt(c.error),
                    if c.passed { "pass" } else { "FAIL" }
                ));
            }
            csv.row(&SWEEP_HEADER);
            for r in &rows {
                csv.row(&[
                    num(r.chi),
                    num(r.p),
                    r.special.map(|z| z.to_string()).unwrap_or_default(),
                    opt(r.pp_start),
                    opt(r.pp_end),
                    opt(r.pm_start),
                    opt(r.pm_end),
                    opt(r.flat),
                    r.kind.to_string(),
                    opt(r.omega_tilde),
                    opt(r.k_r),
                    opt(r.k_i),
                    r.branch.map(String::from).unwrap_or_default(),
                    r.region.unwrap_or_default().to_string(),
                    r.error.as_deref().map(|e| format!("\"{}\"", e.replace('"', "'"))).unwrap_or_default(),
                ]);
            }
            csv.finish()
        }
        Format::Json => json(&meta, &SweepDocument { rows: &rows, spot_checks: &checks })?,
    };
    emit(a.common.out.as_deref(), &text)?;
    if let Some(path) = &a.svg {
        emit(Some(path), &svg::render(&rows, &chis))?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        eprintln!("spot check: {failed} of {} rows disagree with the ring", checks.len());
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn state_csv(csv: &mut Csv, state: &RelativeState) {
    csv.row(&["y", "re_uu", "im_uu", "re_ud", "im_ud", "re_du", "im_du", "re_dd", "im_dd"]);
    for y in state.ys() {
        let mut cells = vec![y.to_string()];
        for c in state.get(y) {
            cells.push(num(c.re));
            cells.push(num(c.im));
        }
        csv.row(&cells);
    }
}

fn symmetric_window(n: usize) -> Result<std::ops::RangeInclusive<i64>> {
    if n.is_multiple_of(2) || n < 5 {
        bail!("--ring-size must be odd and at least 5, got {n}");
    }
    let w = (n as i64 - 1) / 2;
    Ok(-w..=w)
}

pub fn bound_state(a: &BoundStateArgs) -> Result<ExitCode> {
    let params = walk_params(a.common.mass)?;
    let summary = spectral_summary(params, a.chi, a.p);
    let meta = Meta::new("bound-state", a, a.common.mass, vec![a.chi]);
    let text = match a.format {
        Format::Json => json(&meta, &summary)?,
        Format::Csv => {
            let window = symmetric_window(a.ring_size)?;
            let (state, phase) = match summary.discrete {
                BoundSolution::Bound(b) => (bound_wavefunction(params, a.chi, a.p, &b, window)?, b.eigenphase),
                BoundSolution::Degenerate(d) => (degenerate_wavefunction(params, a.p, d.sign, window)?, d.eigenphase),
                BoundSolution::None => {
                    eprintln!(
                        "no discrete eigenvalue at chi = {}, p = {}{}",
                        a.chi,
                        a.p,
                        summary.error.as_deref().map(|e| format!(": {e}")).unwrap_or_default()
                    );
                    return Ok(ExitCode::FAILURE);
                }
            };
            let mut csv = Csv::new(&meta);
            csv.comment(&format!("p: {}", num(a.p)));
            csv.comment(&format!("eigenphase: {}", num(phase.angle())));
            csv.comment(&format!("residual: {}", num(residual(params, a.chi, a.p, &state, phase)?)));
            state_csv(&mut csv, &state);
            csv.finish()
        }
    };
    emit(a.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ValidationReport<'a> {
    config: &'a ValidationConfig,
    passed: bool,
    checks: &'a [CheckOutcome],
}

pub fn validate(a: &ValidateArgs) -> Result<ExitCode> {
    let cfg = ValidationConfig {
        mu: a.common.mass,
        p: a.p,
        ring_size: a.ring_size,
        delta_band: a.delta_band,
        seed: a.seed,
    };
    let outcomes = run_all(&cfg);
    let passed = outcomes.iter().all(|o| o.passed);
    for o in &outcomes {
        eprintln!("{} {:>2} {} ({:.2} s)", if o.passed { "PASS" } else { "FAIL" }, o.id, o.name, o.seconds);
    }
    let meta = Meta::new("validate", a, a.common.mass, vec![]);
    emit(a.common.out.as_deref(), &json(&meta, &ValidationReport { config: &cfg, passed, checks: &outcomes })?)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[derive(Serialize)]
struct EvolutionDocument<'a> {
    packet: Option<WavepacketSpec>,
    mass_defect: f64,
    stopped_at: Option<usize>,
    variance_exponent: Option<f64>,
    records: &'a [EvolutionRecord],
}

pub fn evolve(a: &EvolveArgs) -> Result<ExitCode> {
    let params = walk_params(a.common.mass)?;
    let grid = default_p_grid(a.p_points);
    let spec = WavepacketSpec { p0: a.p0, k0: a.k0, sigma_p: a.sigma_p, sigma_k: a.sigma_k, y0: a.y0 };
    let packet = if a.bound {
        bound_packet(params, a.chi, a.p0, a.sigma_p, &grid, a.ring_size)?
    } else {
        prepare_packet(params, &spec, &grid, a.ring_size)?
    };
    if packet.is_truncated() {
        eprintln!("warning: the ring truncates the packet, mass defect {:e}", packet.mass_defect);
    }
    let run = run_evolution(params, a.chi, &packet.blocks, a.steps)?;
    if let Some(t) = run.stopped_at {
        eprintln!("warning: stopped after step {t}, where the light cone reaches the edge of the ring");
    }
    let exponent = variance_exponent(&run.records, (a.steps / 4).max(1));
    let meta = Meta::new("evolve", a, a.common.mass, vec![a.chi]);
    let text = match a.format {
        Format::Csv => {
            let mut csv = Csv::new(&meta);
            if a.bound {
                csv.comment(&format!("packet: bound states, p0={} sigma_p={}", num(a.p0), num(a.sigma_p)));
            } else {
                csv.comment(&format!(
                    "packet: p0={} k0={} sigma_p={} sigma_k={} y0={}",
                    num(a.p0),
                    num(a.k0),
                    num(a.sigma_p),
                    num(a.sigma_k),
                    a.y0
                ));
            }
            csv.comment(&format!("grid points: {}, ring size: {}", grid.len(), a.ring_size));
            csv.comment(&format!("mass_defect: {}", num(packet.mass_defect)));
            csv.row(&["step", "norm", "bound_weight", "mean_y", "variance_y", "outside_light_cone"]);
            for r in &run.records {
                let (mean, var) = r.y_moments();
                csv.row(&[r.step.to_string(), num(r.norm), num(r.bound_weight), num(mean), num(var), r.outside_light_cone.to_string()]);
            }
            csv.comment(&format!("stopped_at: {}", run.stopped_at.map(|t| t.to_string()).unwrap_or_else(|| "none".into())));
            csv.comment(&format!("variance_exponent: {}", opt(exponent)));
            csv.finish()
        }
        Format::Json => json(
            &meta,
            &EvolutionDocument {
                packet: (!a.bound).then_some(spec),
                mass_defect: packet.mass_defect,
                stopped_at: run.stopped_at,
                variance_exponent: exponent,
                records: &run.records,
            },
        )?,
    };
    emit(a.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn stationary(a: &StationaryArgs) -> Result<ExitCode> {
    let params = walk_params(a.common.mass)?;
    if a.n < 1 {
        bail!("--n must be at least 1; psi_0 vanishes and psi_-n is proportional to psi_n");
    }
    let kind = if a.chi == 0.0 { ScatteringKind::Free } else { ScatteringKind::Interacting };
    let psi = stationary_state_p0(params, a.chi, a.n, kind, a.quadrature)?;
    let res = residual(params, a.chi, 0.0, &psi, UnitPhase::new(0.0))?;
    let meta = Meta::new("stationary", a, a.common.mass, vec![a.chi]);
    let mut csv = Csv::new(&meta);
    csv.comment(&format!("n: {}, quadrature points: {}, kind: {kind:?}", a.n, a.quadrature));
    csv.comment(&format!("norm: {}", num(psi.norm())));
    csv.comment(&format!("residual: {}", num(res)));
    csv.comment(&format!("guard band: {SPECIAL_MOMENTUM_GUARD:e}"));
    state_csv(&mut csv, &psi);
    emit(a.common.out.as_deref(), &csv.finish())?;
    Ok(ExitCode::SUCCESS)
}
