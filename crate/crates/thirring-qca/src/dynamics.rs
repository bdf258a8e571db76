//! Wavepacket evolution under U₂, one total-momentum block at a time.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase::{wrap_angle, C64};
use crate::spectral::bands::require_generic;
use crate::spectral::{bound_wavefunction, degenerate_wavefunction, find_bound_state, BoundSolution};
use crate::two_particle::{
    antisymmetry_defect, apply_u2, check_ring, spinor_norm_sqr, tensor_eigenvector, RelativeState, ZERO4,
};
use crate::walk::{BranchSign, WalkParams};

/// Envelope cut-off in units of the position width σ_y; the Gaussian
/// probability beyond it is below 1e−16.
const ENVELOPE_CUTOFF: f64 = 8.6;

/// Mass defect above which a prepared packet counts as truncated.
pub const TRUNCATION_WARNING: f64 = 1e-12;

pub const DEFAULT_GRID_POINTS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WavepacketSpec {
    pub p0: f64,
    pub k0: f64,
    pub sigma_p: f64,
    pub sigma_k: f64,
    pub y0: i64,
}

impl WavepacketSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("p0", self.p0), ("k0", self.k0), ("sigma_p", self.sigma_p), ("sigma_k", self.sigma_k)] {
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("{name} = {v}")));
            }
        }
        if !(self.sigma_p > 0.0 && self.sigma_k > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "packet widths must be positive, got sigma_p = {}, sigma_k = {}",
                self.sigma_p, self.sigma_k
            )));
        }
        Ok(())
    }

    /// Position width of the relative-coordinate envelope.
    pub fn sigma_y(&self) -> f64 {
        0.5 / self.sigma_k
    }

    /// Half-width of the envelope's support around ±y0.
    pub fn envelope_radius(&self) -> i64 {
        (ENVELOPE_CUTOFF * self.sigma_y()).ceil() as i64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentumBlock {
    pub p: f64,
    pub state: RelativeState,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreparedPacket {
    pub blocks: Vec<MomentumBlock>,
    /// Fraction of the untruncated envelope lost to the ring window.
    pub mass_defect: f64,
}

impl PreparedPacket {
    pub fn is_truncated(&self) -> bool {
        self.mass_defect > TRUNCATION_WARNING
    }
}

/// `count` uniform points of (−π, π], offset by half a spacing and with the
/// guard bands around zπ/2 removed.
pub fn default_p_grid(count: usize) -> Vec<f64> {
    (0..count)
        .map(|j| -PI + TAU * (j as f64 + 0.5) / count as f64)
        .filter(|&p| require_generic(p).is_ok())
        .collect()
}

fn gaussian_weights(centre: f64, sigma: f64, grid: &[f64]) -> Vec<f64> {
    grid.iter().map(|&p| (-wrap_angle(p - centre).powi(2) / (4.0 * sigma * sigma)).exp()).collect()
}

/// Antisymmetric Gaussian packets, one per grid momentum, with total norm 1.
///
/// Each block is the envelope exp(−(y − y0)²/4σ_y²) e^{−ik0y} v^{++}(p, k0),
/// cut off at 8.6σ_y and antisymmetrized; block norms follow a Gaussian of
/// width σ_p about p0.
pub fn prepare_packet(params: WalkParams, spec: &WavepacketSpec, p_grid: &[f64], n: usize) -> Result<PreparedPacket> {
    spec.validate()?;
    check_ring(n)?;
    if p_grid.is_empty() {
        return Err(Error::InvalidArgument("empty momentum grid".into()));
    }
    for &p in p_grid {
        if !(p > -PI && p <= PI) {
            return Err(Error::InvalidArgument(format!("grid momentum {p} outside (-pi, pi]")));
        }
    }
    let w = (n - 1) / 2;
    let wi = w as i64;
    let radius = spec.envelope_radius();
    let sy = spec.sigma_y();
    let envelope = |y: i64| (-((y - spec.y0) as f64).powi(2) / (4.0 * sy * sy)).exp();
    let full: f64 = (spec.y0 - 2 * radius..=spec.y0 + 2 * radius).map(|y| envelope(y).powi(2)).sum();
    let kept: f64 = (spec.y0 - radius..=spec.y0 + radius).filter(|y| y.abs() <= wi).map(|y| envelope(y).powi(2)).sum();
    let mass_defect = ((full - kept) / full).max(0.0);
    if kept == 0.0 {
        return Err(Error::InvalidArgument(format!("packet centred at y0 = {} misses the ring of size {n}", spec.y0)));
    }

    let weights = gaussian_weights(spec.p0, spec.sigma_p, p_grid);
    let total: f64 = weights.iter().map(|w| w * w).sum();
    let carrier = C64::new(0.0, -spec.k0);
    let mut blocks = Vec::with_capacity(p_grid.len());
    for (&p, &weight) in p_grid.iter().zip(&weights) {
        let v = tensor_eigenvector(params, BranchSign::Plus, BranchSign::Plus, p, C64::new(spec.k0, 0.0));
        let raw = RelativeState::from_fn(w, |y| {
            if (y - spec.y0).abs() > radius {
                return ZERO4;
            }
            let a = (carrier * y as f64).exp() * envelope(y);
            v.map(|c| c * a)
        });
        let anti = raw.antisymmetrized();
        let norm = anti.norm();
        let state = if norm > 0.0 { anti.scaled(C64::new(weight / (norm * total.sqrt()), 0.0)) } else { anti };
        blocks.push(MomentumBlock { p, state });
    }
    Ok(PreparedPacket { blocks, mass_defect })
}

/// Bound states of each block, weighted by a Gaussian in p.
///
/// Each bound state is cut where its remaining tail weight drops below
/// 1e−24, so the packet has finite support. Blocks without a discrete
/// eigenvalue are left empty, and the packet is renormalized over the
/// remaining ones.
pub fn bound_packet(
    params: WalkParams,
    chi: f64,
    p0: f64,
    sigma_p: f64,
    p_grid: &[f64],
    n: usize,
) -> Result<PreparedPacket> {
    check_ring(n)?;
    let projector = BoundProjector::new(params, chi, p_grid, (n - 1) / 2)?;
    let weights = gaussian_weights(p0, sigma_p, p_grid);
    let total: f64 = projector.states.iter().zip(&weights).filter(|(s, _)| s.is_some()).map(|(_, w)| w * w).sum();
    if total == 0.0 {
        return Err(Error::InvalidArgument(format!("no bound state on the grid at chi = {chi}")));
    }
    let mut mass_defect: f64 = 0.0;
    let blocks = p_grid
        .iter()
        .zip(&projector.states)
        .zip(&weights)
        .map(|((&p, phi), &weight)| {
            let state = match phi {
                Some(phi) => {
                    let (cut, lost) = trim_tail(phi, BOUND_TAIL);
                    mass_defect = mass_defect.max(lost);
                    cut.normalized().scaled(C64::new(weight / total.sqrt(), 0.0))
                }
                None => RelativeState::zeros((n - 1) / 2),
            };
            MomentumBlock { p, state }
        })
        .collect();
    Ok(PreparedPacket { blocks, mass_defect })
}

const BOUND_TAIL: f64 = 1e-24;

/// Zeroes the sites beyond the smallest radius whose outside weight is at
/// most `tail` of the total; returns the cut state and the weight removed.
fn trim_tail(state: &RelativeState, tail: f64) -> (RelativeState, f64) {
    let w = state.half_width() as i64;
    let total = state.norm_sqr();
    let mut outside = 0.0;
    let mut radius = w;
    while radius > 0 {
        let shell = spinor_norm_sqr(&state.get(radius)) + spinor_norm_sqr(&state.get(-radius));
        if outside + shell > tail * total {
            break;
        }
        outside += shell;
        radius -= 1;
    }
    let cut = RelativeState::from_fn(state.half_width(), |y| if y.abs() <= radius { state.get(y) } else { ZERO4 });
    (cut, outside / total)
}

/// Normalized discrete eigenvectors of U₂(χ, p) on one window, per grid
/// momentum.
#[derive(Clone, Debug)]
pub struct BoundProjector {
    pub states: Vec<Option<RelativeState>>,
}

impl BoundProjector {
    pub fn new(params: WalkParams, chi: f64, p_grid: &[f64], half_width: usize) -> Result<Self> {
        let window = -(half_width as i64)..=half_width as i64;
        let mut states = Vec::with_capacity(p_grid.len());
        for &p in p_grid {
            require_generic(p)?;
            let phi = match find_bound_state(params, chi, p)? {
                BoundSolution::Bound(bs) => Some(bound_wavefunction(params, chi, p, &bs, window.clone())?),
                BoundSolution::Degenerate(d) => Some(degenerate_wavefunction(params, p, d.sign, window.clone())?),
                BoundSolution::None => None,
            };
            states.push(phi);
        }
        Ok(Self { states })
    }

    pub fn weight(&self, blocks: &[MomentumBlock]) -> f64 {
        self.states
            .iter()
            .zip(blocks)
            .filter_map(|(phi, b)| phi.as_ref().map(|phi| phi.inner(&b.state).norm_sqr()))
            .sum()
    }
}

/// Σ_p |⟨φ_p|ψ_p⟩|² over the blocks' momenta.
pub fn bound_weight(params: WalkParams, chi: f64, blocks: &[MomentumBlock]) -> Result<f64> {
    let Some(first) = blocks.first() else { return Ok(0.0) };
    let p_grid: Vec<f64> = blocks.iter().map(|b| b.p).collect();
    Ok(BoundProjector::new(params, chi, &p_grid, first.state.half_width())?.weight(blocks))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvolutionRecord {
    pub step: usize,
    /// Probability of each separation y = −W..=W, summed over blocks.
    pub y_distribution: Vec<f64>,
    pub norm: f64,
    pub bound_weight: f64,
    /// Nonzero amplitudes further than 2t from the initial support.
    pub outside_light_cone: usize,
}

impl EvolutionRecord {
    pub fn y_moments(&self) -> (f64, f64) {
        let w = (self.y_distribution.len() as i64 - 1) / 2;
        let total: f64 = self.y_distribution.iter().sum();
        let mean: f64 = self.y_distribution.iter().enumerate().map(|(i, q)| (i as i64 - w) as f64 * q).sum::<f64>() / total;
        let var: f64 = self
            .y_distribution
            .iter()
            .enumerate()
            .map(|(i, q)| ((i as i64 - w) as f64 - mean).powi(2) * q)
            .sum::<f64>()
            / total;
        (mean, var)
    }
}

#[derive(Clone, Debug)]
pub struct Evolution {
    pub records: Vec<EvolutionRecord>,
    pub blocks: Vec<MomentumBlock>,
    /// Last completed step when the light cone would next have wrapped around
    /// the ring.
    pub stopped_at: Option<usize>,
}

fn record(step: usize, blocks: &[MomentumBlock], projector: &BoundProjector, cone: &[i64]) -> EvolutionRecord {
    let w = blocks[0].state.half_width() as i64;
    let mut y_distribution = vec![0.0; (2 * w + 1) as usize];
    for b in blocks {
        for (i, amp) in b.state.amplitudes().iter().enumerate() {
            y_distribution[i] += spinor_norm_sqr(amp);
        }
    }
    let outside_light_cone = blocks
        .iter()
        .flat_map(|b| b.state.amplitudes().iter().zip(cone))
        .filter(|(amp, &d)| d > 2 * step as i64 && amp.iter().any(|c| *c != C64::new(0.0, 0.0)))
        .count();
    let norm = y_distribution.iter().sum::<f64>().sqrt();
    EvolutionRecord { step, y_distribution, norm, bound_weight: projector.weight(blocks), outside_light_cone }
}

/// Applies U₂(χ, p) to each block `steps` times, recording after every step.
///
/// Amplitudes move by at most two sites per step, so evolution stops early,
/// with the records so far, once the light cone of the initial support would
/// reach the edge of the ring.
pub fn evolve(params: WalkParams, chi: f64, blocks: &[MomentumBlock], steps: usize) -> Result<Evolution> {
    let Some(first) = blocks.first() else {
        return Err(Error::InvalidArgument("no momentum blocks to evolve".into()));
    };
    let w = first.state.half_width();
    if blocks.iter().any(|b| b.state.half_width() != w) {
        return Err(Error::InvalidArgument("momentum blocks live on different rings".into()));
    }
    let p_grid: Vec<f64> = blocks.iter().map(|b| b.p).collect();
    let projector = BoundProjector::new(params, chi, &p_grid, w)?;

    let wi = w as i64;
    let support: Vec<i64> = (-wi..=wi)
        .filter(|&y| blocks.iter().any(|b| b.state.get(y).iter().any(|c| *c != C64::new(0.0, 0.0))))
        .collect();
    let cone: Vec<i64> =
        (-wi..=wi).map(|y| support.iter().map(|s| (y - s).abs()).min().unwrap_or(i64::MAX)).collect();
    let radius = support.iter().map(|y| y.abs()).max().unwrap_or(0);

    let mut current = blocks.to_vec();
    let mut records = vec![record(0, &current, &projector, &cone)];
    let mut stopped_at = None;
    for t in 1..=steps {
        if radius + 2 * t as i64 > wi {
            stopped_at = Some(t - 1);
            break;
        }
        for b in current.iter_mut() {
            b.state = apply_u2(params, chi, b.p, &b.state)?;
        }
        records.push(record(t, &current, &projector, &cone));
    }
    Ok(Evolution { records, blocks: current, stopped_at })
}

/// Exponent a in Var y(t) − Var y(0) ∝ t^a, by least squares in log–log over
/// the records from step `from` on.
pub fn variance_exponent(records: &[EvolutionRecord], from: usize) -> Option<f64> {
    let v0 = records.first()?.y_moments().1;
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.step >= from.max(1))
        .filter_map(|r| {
            let dv = r.y_moments().1 - v0;
            (dv > 0.0).then(|| ((r.step as f64).ln(), dv.ln()))
        })
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// |Σ_y f(y) e^{iky}|² summed over components, the weight of the plane wave
/// e^{−iky} in `state`.
pub fn relative_momentum_distribution(state: &RelativeState, ks: &[f64]) -> Vec<f64> {
    ks.iter()
        .map(|&k| {
            let mut acc = [C64::new(0.0, 0.0); 4];
            for y in state.ys() {
                let phase = C64::from_polar(1.0, k * y as f64);
                for (a, c) in acc.iter_mut().zip(state.get(y)) {
                    *a += c * phase;
                }
            }
            spinor_norm_sqr(&acc)
        })
        .collect()
}

pub fn max_antisymmetry_defect(blocks: &[MomentumBlock]) -> f64 {
    blocks.iter().map(|b| antisymmetry_defect(&b.state)).fold(0.0, f64::max)
}

pub fn total_norm(blocks: &[MomentumBlock]) -> f64 {
    blocks.iter().map(|b| b.state.norm_sqr()).sum::<f64>().sqrt()
}
