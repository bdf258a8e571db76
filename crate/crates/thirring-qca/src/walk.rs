//! The single-particle Dirac walk.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{arccos_principal, C64, I};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    mu: f64,
    nu: f64,
}

impl WalkParams {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu < 1.0) {
            return Err(Error::InvalidMass(mu));
        }
        Ok(Self { mu, nu: (1.0 - mu * mu).sqrt() })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BranchSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl BranchSign {
    pub fn value(self) -> f64 {
        match self {
            BranchSign::Plus => 1.0,
            BranchSign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            BranchSign::Plus => BranchSign::Minus,
            BranchSign::Minus => BranchSign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BranchSign::Plus => '+',
            BranchSign::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor2 {
    pub up: C64,
    pub down: C64,
}

impl Spinor2 {
    pub fn norm(&self) -> f64 {
        (self.up.norm_sqr() + self.down.norm_sqr()).sqrt()
    }

    pub fn inner(&self, other: &Spinor2) -> C64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }
}

pub type Mat2 = [[C64; 2]; 2];

pub fn walk_matrix(params: WalkParams, p: C64) -> Mat2 {
    let (mu, nu) = (params.mu, params.nu);
    let off = C64::new(0.0, -mu);
    [[nu * (I * p).exp(), off], [off, nu * (-I * p).exp()]]
}

pub fn apply2(m: &Mat2, v: &Spinor2) -> Spinor2 {
    Spinor2 {
        up: m[0][0] * v.up + m[0][1] * v.down,
        down: m[1][0] * v.up + m[1][1] * v.down,
    }
}

/// ω(p) = Arccos(ν cos p) on the principal branch.
pub fn dispersion(params: WalkParams, p: C64) -> C64 {
    arccos_principal(params.nu * p.cos()).expect("dispersion of a non-finite momentum")
}

/// sin ω(p) ± ν sin p, computed so that neither factor loses precision.
///
/// The two combinations multiply to μ², so the smaller one is recovered from
/// the larger.
fn sin_combinations(params: WalkParams, p: C64) -> (C64, C64) {
    let s = dispersion(params, p).sin();
    let v = params.nu * p.sin();
    let a = s + v;
    let b = s - v;
    let mu2 = params.mu * params.mu;
    if a.norm() >= b.norm() {
        (a, mu2 / a)
    } else {
        (mu2 / b, b)
    }
}

/// g_s(p) = −i (s sin ω(p) + ν sin p).
pub fn g_branch(params: WalkParams, s: BranchSign, p: C64) -> C64 {
    let (a, b) = sin_combinations(params, p);
    match s {
        BranchSign::Plus => -I * a,
        BranchSign::Minus => I * b,
    }
}

/// v^s_p = (−iμ, g_s(p)) / |N_s| with |N_s|² = μ² + |g_s|².
pub fn eigenvector(params: WalkParams, s: BranchSign, p: C64) -> Spinor2 {
    let g = g_branch(params, s, p);
    let n = (params.mu * params.mu + g.norm_sqr()).sqrt();
    assert!(n > 0.0, "vanishing eigenvector normalization");
    Spinor2 { up: C64::new(0.0, -params.mu) / n, down: g / n }
}

/// Leading large-|k_I| eigenvalues of W(p − k) for k = k_R + i k_I.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticEigenvalues {
    pub lambda1: C64,
    pub lambda2: C64,
    /// Which of the two approximates e^{−iω(p−k)}: 1 or 2.
    pub minus_omega_root: u8,
}

impl AsymptoticEigenvalues {
    pub fn minus_omega(&self) -> C64 {
        if self.minus_omega_root == 1 {
            self.lambda1
        } else {
            self.lambda2
        }
    }

    pub fn plus_omega(&self) -> C64 {
        if self.minus_omega_root == 1 {
            self.lambda2
        } else {
            self.lambda1
        }
    }
}

/// λ₁ = ν e^{−iθ} e^{−k_I} − (μ²/ν) e^{iθ} e^{k_I}, λ₂ = ν⁻¹ e^{iθ} e^{k_I}
/// with θ = p − k_R; e^{−iω(p−k)} is λ₁ for θ > 0 and λ₂ for θ < 0.
pub fn asymptotic_eigenvalues(params: WalkParams, p: f64, k_r: f64, k_i: f64) -> AsymptoticEigenvalues {
    let (mu, nu) = (params.mu, params.nu);
    let theta = crate::phase::wrap_angle(p - k_r);
    let lambda1 = nu * C64::from_polar((-k_i).exp(), -theta) - (mu * mu / nu) * C64::from_polar(k_i.exp(), theta);
    let lambda2 = C64::from_polar(k_i.exp() / nu, theta);
    AsymptoticEigenvalues { lambda1, lambda2, minus_omega_root: if theta > 0.0 { 1 } else { 2 } }
}

/// Both eigenvalues of W(x), largest modulus first.
pub fn exact_eigenvalues(params: WalkParams, x: C64) -> (C64, C64) {
    let half_trace = params.nu * x.cos();
    let disc = (half_trace * half_trace - 1.0).sqrt();
    let a = half_trace + disc;
    let b = half_trace - disc;
    let big = if a.norm() >= b.norm() { a } else { b };
    (big, big.inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params() -> WalkParams {
        WalkParams::new(0.8).unwrap()
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(WalkParams::new(0.0).is_err());
        assert!(WalkParams::new(1.0).is_err());
        assert!(WalkParams::new(f64::NAN).is_err());
        let w = WalkParams::new(0.3).unwrap();
        assert!((w.mu() * w.mu() + w.nu() * w.nu() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn walk_matrix_at_zero() {
        let nu = params().nu();
        let w = walk_matrix(params(), c(0.0));
        assert_eq!(w[0][0], c(nu));
        assert_eq!(w[1][1], c(nu));
        assert_eq!(w[0][1], C64::new(0.0, -0.8));
        assert_eq!(w[1][0], C64::new(0.0, -0.8));
    }

    #[test]
    fn dispersion_values() {
        let w = params();
        assert!((dispersion(w, c(PI / 2.0)) - c(PI / 2.0)).norm() < 1e-15);
        assert_eq!(dispersion(w, c(0.0)), c(w.nu().acos()));
        // mpmath acos(0.6*cos(0.55)) at 40 digits
        let omega = dispersion(w, c(0.55));
        assert!((omega.re - 1.0338496780229255).abs() < 1e-14 && omega.im == 0.0);
    }

    #[test]
    fn g_values() {
        let w = params();
        assert!((g_branch(w, BranchSign::Plus, c(0.0)) - C64::new(0.0, -0.8)).norm() < 1e-15);
        // mpmath: −i(−sin ω(0.55) + 0.6 sin 0.55)
        let g = g_branch(w, BranchSign::Minus, c(0.55));
        assert!(g.re.abs() < 1e-16);
        assert!((g.im - 0.54566218114159823).abs() < 1e-14, "{g}");
    }

    #[test]
    fn g_product_identity_is_stable_far_from_the_axis() {
        let w = params();
        for ki in [-5.0, -20.0, -60.0] {
            let x = C64::new(0.4, ki);
            let prod = g_branch(w, BranchSign::Plus, x) * g_branch(w, BranchSign::Minus, x);
            assert!((prod - c(0.64)).norm() < 1e-12, "{ki}: {prod}");
        }
    }

    #[test]
    fn eigenvectors_at_fixed_point() {
        let w = params();
        let p = c(1.1);
        let m = walk_matrix(w, p);
        for s in [BranchSign::Plus, BranchSign::Minus] {
            let v = eigenvector(w, s, p);
            let wv = apply2(&m, &v);
            let lam = (-I * s.value() * dispersion(w, p)).exp();
            let r = Spinor2 { up: wv.up - lam * v.up, down: wv.down - lam * v.down };
            assert!(r.norm() < 1e-12);
        }
        let vp = eigenvector(w, BranchSign::Plus, c(0.0));
        assert!((vp.up - vp.down).norm() < 1e-15);
    }

    #[test]
    fn asymptotic_roots_track_the_exact_ones() {
        let w = params();
        for (p, kr) in [(0.55, 0.0), (0.2, 0.7), (1.0, -0.5)] {
            let ki = -30.0;
            let a = asymptotic_eigenvalues(w, p, kr, ki);
            let x = C64::new(p - kr, -ki);
            let exact_minus = (-I * dispersion(w, x)).exp();
            let rel = (a.minus_omega() - exact_minus).norm() / exact_minus.norm();
            assert!(rel < 1e-6, "{p} {kr}: {rel}");
        }
    }
}
