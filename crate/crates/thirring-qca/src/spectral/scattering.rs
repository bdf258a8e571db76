//! Improper eigenvectors with real relative momentum.

use std::f64::consts::{PI, TAU};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{C64, I};
use crate::two_particle::{exchange, tensor_eigenvector, RelativeState, Spinor4};
use crate::walk::{g_branch, BranchSign, WalkParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScatteringKind {
    #[serde(rename = "free")]
    Free,
    #[serde(rename = "interacting")]
    Interacting,
}

/// T_± = (g_+(p+k) + e^{−iχ} g_±(p−k)) / (g_±(p−k) + e^{−iχ} g_+(p+k)).
///
/// Exactly 1 when e^{iχ} = 1, where numerator and denominator coincide.
pub fn transmission(params: WalkParams, chi: f64, p: f64, k: C64, branch: BranchSign) -> Result<C64> {
    if chi.rem_euclid(TAU) == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let pc = C64::new(p, 0.0);
    let gp = g_branch(params, BranchSign::Plus, pc + k);
    let gs = g_branch(params, branch, pc - k);
    let phase = C64::from_polar(1.0, -chi);
    let den = gs + phase * gp;
    if den.norm() <= 1e-300 {
        return Err(Error::Pole(den.norm()));
    }
    Ok((gp + phase * gs) / den)
}

/// The four tensor eigenvectors entering a solution on the branch (+, s):
/// v^{+s}_k, its partner at k − π, and their exchanges at −k and π − k.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PlaneWaveBasis {
    pub k: C64,
    pub v: Spinor4,
    pub v_shift: Spinor4,
    pub v_exch: Spinor4,
    pub v_exch_shift: Spinor4,
}

impl PlaneWaveBasis {
    pub fn new(params: WalkParams, p: f64, k: C64, branch: BranchSign) -> Self {
        let pi = C64::new(PI, 0.0);
        Self {
            k,
            v: tensor_eigenvector(params, BranchSign::Plus, branch, p, k),
            v_shift: tensor_eigenvector(params, BranchSign::Minus, branch.flip(), p, k - pi),
            v_exch: tensor_eigenvector(params, branch, BranchSign::Plus, p, -k),
            v_exch_shift: tensor_eigenvector(params, branch.flip(), BranchSign::Minus, p, pi - k),
        }
    }

    /// [v + σ(−1)^y v′] e^{−iyk} − t [Ev + σ(−1)^y Ev′] e^{iyk}.
    pub fn amplitude(&self, y: i64, sigma: f64, t: C64) -> Spinor4 {
        let alt = if y.rem_euclid(2) == 0 { sigma } else { -sigma };
        let yk = I * self.k * y as f64;
        let out_wave = (-yk).exp();
        let in_wave = if t == C64::new(0.0, 0.0) { C64::new(0.0, 0.0) } else { t * yk.exp() };
        [0, 1, 2, 3].map(|i| {
            (self.v[i] + alt * self.v_shift[i]) * out_wave - (self.v_exch[i] + alt * self.v_exch_shift[i]) * in_wave
        })
    }
}

/// Fills y ≥ 1 from `half`, sets the singlet value at y = 0 from the ↑↓
/// amplitude of `half(0)`, and y < 0 by f(y) = −E f(−y).
pub(crate) fn interacting_profile(
    half_width: usize,
    chi: f64,
    mut half: impl FnMut(i64) -> Spinor4,
) -> RelativeState {
    let w = half_width as i64;
    let mut out = RelativeState::zeros(half_width);
    let eta = C64::from_polar(1.0, -chi) * half(0)[1];
    out.set(0, [C64::new(0.0, 0.0), eta, -eta, C64::new(0.0, 0.0)]);
    for y in 1..=w {
        let f = half(y);
        out.set(y, f);
        out.set(-y, exchange(&f).map(|c| -c));
    }
    out
}

/// f^{±,kind}_k on a symmetric window, with the printed (unnormalized)
/// coefficients. The free kind vanishes at y = 0; the interacting kind
/// carries the singlet η(0, 1, −1, 0) there, η = e^{−iχ} F_{↑↓}(0), and the
/// transmitted wave weighted by T_±.
pub fn scattering_state(
    params: WalkParams,
    chi: f64,
    p: f64,
    k: f64,
    branch: BranchSign,
    kind: ScatteringKind,
    window: RangeInclusive<i64>,
) -> Result<RelativeState> {
    let w = RelativeState::from_window(&window)?.half_width();
    let kc = C64::new(k, 0.0);
    let basis = PlaneWaveBasis::new(params, p, kc, branch);
    match kind {
        ScatteringKind::Free => {
            let mut out = RelativeState::zeros(w);
            for y in 1..=w as i64 {
                let f = basis.amplitude(y, 1.0, C64::new(1.0, 0.0));
                out.set(y, f);
                out.set(-y, exchange(&f).map(|c| -c));
            }
            Ok(out)
        }
        ScatteringKind::Interacting => {
            let t = transmission(params, chi, p, kc, branch)?;
            Ok(interacting_profile(w, chi, |y| basis.amplitude(y, -1.0, t)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::residual;
    use crate::phase::UnitPhase;
    use crate::two_particle::{antisymmetry_defect, omega_sr};
    use BranchSign::{Minus, Plus};

    fn params() -> WalkParams {
        WalkParams::new(0.8).unwrap()
    }

    #[test]
    fn transmission_limits() {
        let w = params();
        for branch in [Plus, Minus] {
            assert_eq!(transmission(w, 0.0, 0.4, C64::new(0.7, 0.0), branch).unwrap(), C64::new(1.0, 0.0));
            assert_eq!(transmission(w, TAU, 0.4, C64::new(0.7, -0.3), branch).unwrap(), C64::new(1.0, 0.0));
        }
        let t = transmission(w, PI, 0.4, C64::new(0.7, 0.0), Plus).unwrap();
        assert!((t + 1.0).norm() < 1e-14);
        let t = transmission(w, 1.3, 0.4, C64::new(0.7, 0.0), Minus).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn free_state_vanishes_at_origin_before_it_is_pinned() {
        let basis = PlaneWaveBasis::new(params(), 0.55, C64::new(0.3, 0.0), Plus);
        let f0 = basis.amplitude(0, 1.0, C64::new(1.0, 0.0));
        assert!(f0.iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn both_kinds_are_eigenvectors() {
        let w = params();
        let (p, k, chi) = (0.55, 0.3, PI / 3.0);
        for branch in [Plus, Minus] {
            let lam = UnitPhase::new(-omega_sr(w, p, C64::new(k, 0.0), Plus, branch).re);
            for kind in [ScatteringKind::Free, ScatteringKind::Interacting] {
                let f = scattering_state(w, chi, p, k, branch, kind, -40..=40).unwrap();
                assert!(antisymmetry_defect(&f) <= 1e-12);
                let r = residual(w, chi, p, &f, lam).unwrap();
                assert!(r <= 1e-10, "{branch:?} {kind:?}: {r}");
                if kind == ScatteringKind::Free {
                    assert!(f.get(0).iter().all(|c| *c == C64::new(0.0, 0.0)));
                }
            }
        }
    }

    #[test]
    fn asymmetric_window_is_rejected() {
        assert!(scattering_state(params(), 0.3, 0.55, 0.3, Plus, ScatteringKind::Free, -3..=5).is_err());
    }
}
