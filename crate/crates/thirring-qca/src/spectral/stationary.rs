//! Eigenvalue-1 states at zero total momentum.

use std::f64::consts::{PI, TAU};

use super::scattering::{transmission, PlaneWaveBasis, ScatteringKind};
use crate::error::{Error, Result};
use crate::phase::C64;
use crate::two_particle::{exchange, RelativeState, ZERO4};
use crate::walk::{BranchSign, WalkParams};

/// Decay length, in units of the analyticity strip width acosh(1/ν), kept
/// on each side of the packet centre.
const DECAY_LENGTHS: f64 = 40.0;

/// Window half-width that holds ψ_n to double precision.
pub fn stationary_half_width(params: WalkParams, n: i64) -> usize {
    let strip = (1.0 / params.nu()).acosh();
    n.unsigned_abs() as usize + (DECAY_LENGTHS / strip).ceil() as usize + 2
}

/// ψ_n = ∫ dk e^{ink}/√(2π) f^{−,kind}_k at p = 0, by the periodic
/// trapezoidal rule on `quadrature_points` nodes, on the default window.
///
/// ψ₀ vanishes and ψ_{−n} is proportional to ψ_n, so n ≥ 1 labels the
/// independent states.
pub fn stationary_state_p0(
    params: WalkParams,
    chi: f64,
    n: i64,
    kind: ScatteringKind,
    quadrature_points: usize,
) -> Result<RelativeState> {
    stationary_state_p0_on(params, chi, n, kind, quadrature_points, stationary_half_width(params, n))
}

pub fn stationary_state_p0_on(
    params: WalkParams,
    chi: f64,
    n: i64,
    kind: ScatteringKind,
    quadrature_points: usize,
    half_width: usize,
) -> Result<RelativeState> {
    if quadrature_points < 64 {
        return Err(Error::InvalidArgument(format!("need at least 64 quadrature points, got {quadrature_points}")));
    }
    let m = quadrature_points;
    let w = half_width as i64;
    let weight = TAU / m as f64 / TAU.sqrt();
    let mut half = vec![ZERO4; half_width + 1];
    for j in 1..=m {
        let k = -PI + TAU * j as f64 / m as f64;
        let kc = C64::new(k, 0.0);
        let basis = PlaneWaveBasis::new(params, 0.0, kc, BranchSign::Minus);
        let g = C64::from_polar(weight, n as f64 * k);
        match kind {
            ScatteringKind::Free => {
                for y in 1..=w {
                    let f = basis.amplitude(y, 1.0, C64::new(1.0, 0.0));
                    for i in 0..4 {
                        half[y as usize][i] += g * f[i];
                    }
                }
            }
            ScatteringKind::Interacting => {
                let t = transmission(params, chi, 0.0, kc, BranchSign::Minus)?;
                for y in 0..=w {
                    let f = basis.amplitude(y, -1.0, t);
                    for i in 0..4 {
                        half[y as usize][i] += g * f[i];
                    }
                }
            }
        }
    }
    let mut out = RelativeState::zeros(half_width);
    if kind == ScatteringKind::Interacting {
        // the singlet rule at y = 0 is linear, so it commutes with the integral
        let eta = C64::from_polar(1.0, -chi) * half[0][1];
        out.set(0, [C64::new(0.0, 0.0), eta, -eta, C64::new(0.0, 0.0)]);
    }
    for y in 1..=w {
        let f = half[y as usize];
        out.set(y, f);
        out.set(-y, exchange(&f).map(|c| -c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::residual;
    use crate::phase::UnitPhase;
    use crate::two_particle::antisymmetry_defect;

    #[test]
    fn stationary_states_have_eigenvalue_one() {
        let w = WalkParams::new(0.8).unwrap();
        for chi in [0.0, PI / 3.0, -2.0] {
            for kind in [ScatteringKind::Free, ScatteringKind::Interacting] {
                let psi = stationary_state_p0(w, chi, 2, kind, 512).unwrap();
                assert!(psi.norm() > 1.0);
                assert!(antisymmetry_defect(&psi) < 1e-14);
                let r = residual(w, chi, 0.0, &psi, UnitPhase::new(0.0)).unwrap();
                assert!(r < 1e-8, "{chi} {kind:?}: {r}");
            }
        }
    }

    #[test]
    fn distinct_labels_are_orthogonal() {
        let w = WalkParams::new(0.8).unwrap();
        let hw = stationary_half_width(w, 6);
        let states: Vec<_> = [1, 2, 6]
            .iter()
            .map(|&n| stationary_state_p0_on(w, 0.7, n, ScatteringKind::Interacting, 512, hw).unwrap())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let v = states[i].inner(&states[j]).norm();
                if i == j {
                    assert!(v > 1.0);
                } else {
                    assert!(v < 1e-10, "{i} {j}: {v}");
                }
            }
        }
    }

    #[test]
    fn too_few_nodes_is_an_error() {
        let w = WalkParams::new(0.8).unwrap();
        assert!(stationary_state_p0(w, 0.0, 1, ScatteringKind::Free, 32).is_err());
    }
}
