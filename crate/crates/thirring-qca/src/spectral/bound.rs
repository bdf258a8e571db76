//! Bound states: zeros of the transmission coefficients at complex k.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::bands::{require_generic, special_momentum, RegionLabel};
use super::scattering::{interacting_profile, PlaneWaveBasis};
use crate::error::{Error, Result};
use crate::phase::{wrap_angle, UnitPhase, C64};
use crate::two_particle::{omega_sr, RelativeState};
use crate::walk::{g_branch, BranchSign, WalkParams};

/// Angular distance below which e^{iχ} counts as one of the excluded points.
pub const EXCLUSION_TOL: f64 = 1e-12;
const BRACKET_START: f64 = 4.0;
const BRACKET_CAP: f64 = 80.0;
const NORMALIZATION_TAIL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    /// Sign s of the vanishing T_s.
    pub branch: BranchSign,
    pub region: RegionLabel,
    pub k_tilde: C64,
    /// Quasi-energy in (−π, π]; the eigenvalue is e^{−iω̃}.
    pub omega_tilde: f64,
    pub eigenphase: UnitPhase,
}

/// The finitely supported eigenvector present when e^{iχ} = e^{±i2p}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateState {
    pub sign: BranchSign,
    pub eigenphase: UnitPhase,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundSolution {
    Bound(BoundState),
    Degenerate(DegenerateState),
    None,
}

impl BoundSolution {
    pub fn eigenphase(&self) -> Option<UnitPhase> {
        match self {
            BoundSolution::Bound(b) => Some(b.eigenphase),
            BoundSolution::Degenerate(d) => Some(d.eigenphase),
            BoundSolution::None => None,
        }
    }
}

fn region_momentum(region: RegionLabel, k_i: f64) -> C64 {
    C64::new(region.real_part().expect("discrete region"), k_i)
}

/// −g_s(p − k)/g_+(p + k) on the line k = zπ/2 + i k_I; equal to e^{iχ}
/// exactly where T_s vanishes.
fn g_ratio(params: WalkParams, p: f64, region: RegionLabel, k_i: f64) -> C64 {
    let k = region_momentum(region, k_i);
    let pc = C64::new(p, 0.0);
    let num = g_branch(params, region.branch(), pc - k);
    let den = g_branch(params, BranchSign::Plus, pc + k);
    assert!(den.norm() > 0.0 && num.norm() > 0.0, "vanishing g on a region line");
    -num / den
}

/// G_z(k_I), the unimodular function whose value e^{iχ} marks a bound state.
pub fn g_function(params: WalkParams, p: f64, region: RegionLabel, k_i: f64) -> Result<UnitPhase> {
    require_generic(p)?;
    if region == RegionLabel::Free {
        return Err(Error::InvalidArgument("G is defined on the discrete regions only".into()));
    }
    if k_i > 0.0 {
        return Err(Error::InvalidArgument(format!("k_I = {k_i} must be non-positive")));
    }
    Ok(UnitPhase::from_complex(g_ratio(params, p, region, k_i)))
}

/// Bisection for θ(k_I) = θ* on [lo, hi], with θ the angle of G measured
/// from `reference` and continuous along the segment.
fn solve_on_line(
    params: WalkParams,
    p: f64,
    region: RegionLabel,
    reference: f64,
    target: f64,
    lo: f64,
    hi: f64,
) -> Option<f64> {
    let h = |k: f64| wrap_angle(g_ratio(params, p, region, k).arg() - reference) - target;
    let (mut a, mut b) = (lo, hi);
    let (ha, hb) = (h(a), h(b));
    if ha == 0.0 {
        return Some(a);
    }
    if hb == 0.0 || ha.signum() == hb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let hm = h(m);
        if hm == 0.0 {
            return Some(m);
        }
        if hm.signum() == ha.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

fn bound_from_root(params: WalkParams, p: f64, region: RegionLabel, k_i: f64) -> BoundState {
    let k = region_momentum(region, k_i);
    let branch = region.branch();
    let omega = omega_sr(params, p, k, BranchSign::Plus, branch);
    let omega_tilde = wrap_angle(omega.re);
    BoundState { branch, region, k_tilde: k, omega_tilde, eigenphase: UnitPhase::new(-omega_tilde) }
}

/// The unique bound state at a generic total momentum, the degenerate
/// finitely supported state when e^{iχ} = e^{±i2p}, or none when e^{iχ} = ±1.
///
/// Every discrete region is searched. Along each line G traces an arc of
/// length below π starting at G(0), so the angle measured from G(0) is
/// continuous and monotone; the bracket [−K, 0] is widened from K = 4 up to
/// K = 80 before the region is given up. More than one bracketing region is
/// reported as an error.
pub fn find_bound_state(params: WalkParams, chi: f64, p: f64) -> Result<BoundSolution> {
    require_generic(p)?;
    let e_chi = UnitPhase::new(chi);
    if e_chi.distance(UnitPhase::new(0.0)) <= EXCLUSION_TOL || e_chi.distance(UnitPhase::new(PI)) <= EXCLUSION_TOL {
        return Ok(BoundSolution::None);
    }
    for sign in [BranchSign::Plus, BranchSign::Minus] {
        let point = UnitPhase::new(sign.value() * 2.0 * p);
        if e_chi.distance(point) <= EXCLUSION_TOL {
            return Ok(BoundSolution::Degenerate(DegenerateState { sign, eigenphase: point }));
        }
    }
    let mut found = Vec::new();
    for region in RegionLabel::DISCRETE {
        let reference = g_ratio(params, p, region, 0.0).arg();
        let target = wrap_angle(chi - reference);
        let mut k_max = BRACKET_START;
        loop {
            if let Some(k_i) = solve_on_line(params, p, region, reference, target, -k_max, 0.0) {
                found.push(bound_from_root(params, p, region, k_i));
                break;
            }
            if k_max >= BRACKET_CAP {
                break;
            }
            k_max = (2.0 * k_max).min(BRACKET_CAP);
        }
    }
    match found.len() {
        0 => {
            for sign in [BranchSign::Plus, BranchSign::Minus] {
                let point = UnitPhase::new(sign.value() * 2.0 * p);
                if e_chi.distance(point) <= 1e-9 {
                    return Ok(BoundSolution::Degenerate(DegenerateState { sign, eigenphase: point }));
                }
            }
            Ok(BoundSolution::None)
        }
        1 => Ok(BoundSolution::Bound(found[0])),
        _ => Err(Error::InvalidArgument(format!(
            "bound state not unique at p = {p}, chi = {chi}: regions {:?}",
            found.iter().map(|b| b.region).collect::<Vec<_>>()
        ))),
    }
}

/// The discrete eigenvalue at p = zπ/2.
///
/// Here p ± k sits on the real or imaginary axis and the quasi-energy stays
/// real only while ν cosh k_I ≤ 1, so the search is confined to
/// [−arccosh(1/ν), 0]; over that segment G runs through half of the circle.
/// Regions 0 and 2 are searched for p ∈ {0, π}, regions ±1 for p = ±π/2.
pub fn find_bound_state_special(params: WalkParams, chi: f64, p: f64) -> Result<BoundSolution> {
    let z = special_momentum(p).ok_or_else(|| Error::InvalidArgument(format!("p = {p} is not a multiple of pi/2")))?;
    let snapped = if z == 2 { PI } else { z as f64 * FRAC_PI_2 };
    let e_chi = UnitPhase::new(chi);
    if e_chi.distance(UnitPhase::new(0.0)) <= EXCLUSION_TOL || e_chi.distance(UnitPhase::new(PI)) <= EXCLUSION_TOL {
        return Ok(BoundSolution::None);
    }
    let regions = if z % 2 == 0 {
        [RegionLabel::Zero, RegionLabel::Two]
    } else {
        [RegionLabel::PlusOne, RegionLabel::MinusOne]
    };
    let edge = -(1.0 / params.nu()).acosh();
    let mut found = Vec::new();
    for region in regions {
        let reference = g_ratio(params, snapped, region, 0.5 * edge).arg();
        let target = wrap_angle(chi - reference);
        if let Some(k_i) = solve_on_line(params, snapped, region, reference, target, edge, 0.0) {
            if k_i < 0.0 {
                found.push(bound_from_root(params, snapped, region, k_i));
            }
        }
    }
    match found.len() {
        0 => Ok(BoundSolution::None),
        1 => Ok(BoundSolution::Bound(found[0])),
        _ => Err(Error::InvalidArgument(format!("bound state not unique at p = {p}, chi = {chi}"))),
    }
}

/// The interacting-kind solution at k̃ with the transmitted wave absent,
/// normalized on the window.
pub fn bound_wavefunction(
    params: WalkParams,
    chi: f64,
    p: f64,
    bs: &BoundState,
    window: RangeInclusive<i64>,
) -> Result<RelativeState> {
    let w = RelativeState::from_window(&window)?.half_width();
    let basis = PlaneWaveBasis::new(params, p, bs.k_tilde, bs.branch);
    let state = interacting_profile(w, chi, |y| basis.amplitude(y, -1.0, C64::new(0.0, 0.0)));
    let total = state.norm_sqr();
    let wi = w as i64;
    let edge = (crate::two_particle::spinor_norm_sqr(&state.get(wi)))
        .max(crate::two_particle::spinor_norm_sqr(&state.get(wi - 1)));
    let q = (2.0 * bs.k_tilde.im).exp();
    let tail = 2.0 * edge * q / (1.0 - q) / total;
    if !(tail <= NORMALIZATION_TAIL) {
        return Err(Error::WindowTooSmall { half_width: w, tail });
    }
    Ok(state.normalized())
}

/// f_{±∞}: nonzero only at y ∈ {−1, 0, 1}, normalized.
pub fn degenerate_wavefunction(params: WalkParams, p: f64, sign: BranchSign, window: RangeInclusive<i64>) -> Result<RelativeState> {
    let w = RelativeState::from_window(&window)?.half_width();
    if w < 1 {
        return Err(Error::WindowTooSmall { half_width: w, tail: 1.0 });
    }
    let s = sign.value();
    let zero = C64::new(0.0, 0.0);
    let hop = C64::new(0.0, 1.0) * C64::from_polar(1.0, s * p);
    let up = -(1.0 + s) / 2.0;
    let down = (-1.0 + s) / 2.0;
    let ratio = params.mu() / params.nu();
    let mut out = RelativeState::zeros(w);
    out.set(1, [hop * up, zero, zero, hop * down]);
    out.set(0, [zero, C64::new(ratio, 0.0), C64::new(-ratio, 0.0), zero]);
    out.set(-1, [-hop * up, zero, zero, -hop * down]);
    Ok(out.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::residual;
    use crate::spectral::scattering::transmission;
    use crate::two_particle::antisymmetry_defect;

    fn params() -> WalkParams {
        WalkParams::new(0.8).unwrap()
    }

    #[test]
    fn g_endpoint_values() {
        let w = params();
        for p in [0.3, 0.55, 1.2, -2.0] {
            for (region, expect) in [
                (RegionLabel::Zero, PI),
                (RegionLabel::Two, PI),
                (RegionLabel::PlusOne, 0.0),
                (RegionLabel::MinusOne, 0.0),
            ] {
                let g = g_function(w, p, region, 0.0).unwrap();
                assert!(g.distance(UnitPhase::new(expect)) < 1e-14, "{p} {region:?}: {g:?}");
            }
        }
    }

    #[test]
    fn g_limits_far_down_the_line() {
        let w = params();
        for p in [0.3f64, 0.55, 1.2, -0.8, 2.5] {
            let tilt = p.cos().signum();
            let cases = [
                (RegionLabel::Zero, -2.0 * p.abs()),
                (RegionLabel::Two, 2.0 * p.abs()),
                (RegionLabel::PlusOne, -2.0 * p * tilt),
                (RegionLabel::MinusOne, 2.0 * p * tilt),
            ];
            for (region, limit) in cases {
                let g = g_function(w, p, region, -40.0).unwrap();
                assert!(g.distance(UnitPhase::new(limit)) < 1e-10, "{p} {region:?}");
            }
        }
    }

    #[test]
    fn no_bound_state_without_interaction() {
        for p in [0.3, 0.55, 1.2] {
            assert_eq!(find_bound_state(params(), 0.0, p).unwrap(), BoundSolution::None);
            assert_eq!(find_bound_state(params(), PI, p).unwrap(), BoundSolution::None);
        }
    }

    #[test]
    fn degenerate_state_at_twice_the_momentum() {
        let w = params();
        let p = 0.55;
        for sign in [BranchSign::Plus, BranchSign::Minus] {
            let chi = sign.value() * 2.0 * p;
            match find_bound_state(w, chi, p).unwrap() {
                BoundSolution::Degenerate(d) => {
                    assert_eq!(d.sign, sign);
                    let f = degenerate_wavefunction(w, p, sign, -6..=6).unwrap();
                    assert!(antisymmetry_defect(&f) == 0.0);
                    assert!(residual(w, chi, p, &f, d.eigenphase).unwrap() < 1e-12);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn bound_state_at_reference_point() {
        let w = params();
        let (p, chi) = (0.55, PI / 2.0);
        let BoundSolution::Bound(b) = find_bound_state(w, chi, p).unwrap() else { panic!() };
        assert_eq!(b.region, RegionLabel::Two);
        assert!(b.k_tilde.im < 0.0);
        assert!((b.k_tilde.im + 1.2493).abs() < 1e-3);
        let t = transmission(w, chi, p, b.k_tilde, b.branch).unwrap();
        assert!(t.norm() < 1e-10);
        let other = transmission(w, chi, p, b.k_tilde, b.branch.flip()).unwrap();
        assert!(other.norm() > 1e-6);
        let im = omega_sr(w, p, b.k_tilde, BranchSign::Plus, b.branch).im;
        assert!(im.abs() < 1e-10);
        let f = bound_wavefunction(w, chi, p, &b, -40..=40).unwrap();
        assert!(antisymmetry_defect(&f) < 1e-12);
        assert!((f.norm() - 1.0).abs() < 1e-14);
        assert!(residual(w, chi, p, &f, b.eigenphase).unwrap() < 1e-8);
        assert!(bound_wavefunction(w, chi, p, &b, -5..=5).is_err());
    }
}
