//! Two particles in the centre-of-mass frame: kinematics, exchange and the
//! automaton step acting on the relative coordinate y = x₁ − x₂.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{wrap_angle, C64};
use crate::walk::{dispersion, eigenvector, walk_matrix, BranchSign, Mat2, WalkParams};

/// Internal amplitudes ordered (↑↑, ↑↓, ↓↑, ↓↓).
pub type Spinor4 = [C64; 4];

pub const ZERO4: Spinor4 = [C64::new(0.0, 0.0); 4];

pub fn spinor_norm_sqr(v: &Spinor4) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

pub fn spinor_inner(a: &Spinor4, b: &Spinor4) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// SWAP of the two internal indices.
pub fn exchange(v: &Spinor4) -> Spinor4 {
    [v[0], v[2], v[1], v[3]]
}

pub fn exchange_matrix() -> [[C64; 4]; 4] {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    [[one, zero, zero, zero], [zero, zero, one, zero], [zero, one, zero, zero], [zero, zero, zero, one]]
}

/// Amplitudes on y ∈ [−W, W]. The same data doubles as a ring of odd size
/// N = 2W + 1, on which site arithmetic is cyclic.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeState {
    half_width: usize,
    amps: Vec<Spinor4>,
}

impl RelativeState {
    pub fn zeros(half_width: usize) -> Self {
        Self { half_width, amps: vec![ZERO4; 2 * half_width + 1] }
    }

    pub fn from_fn(half_width: usize, mut f: impl FnMut(i64) -> Spinor4) -> Self {
        let w = half_width as i64;
        Self { half_width, amps: (-w..=w).map(&mut f).collect() }
    }

    /// The state on a ring of the given odd size.
    pub fn on_ring(n: usize) -> Result<Self> {
        check_ring(n)?;
        Ok(Self::zeros((n - 1) / 2))
    }

    pub fn from_window(window: &RangeInclusive<i64>) -> Result<Self> {
        let (lo, hi) = (*window.start(), *window.end());
        if lo != -hi || hi < 0 {
            return Err(Error::AsymmetricWindow { lo, hi });
        }
        Ok(Self::zeros(hi as usize))
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn ring_size(&self) -> usize {
        self.amps.len()
    }

    pub fn ys(&self) -> RangeInclusive<i64> {
        let w = self.half_width as i64;
        -w..=w
    }

    fn site(&self, y: i64) -> usize {
        (y + self.half_width as i64).rem_euclid(self.amps.len() as i64) as usize
    }

    pub fn get(&self, y: i64) -> Spinor4 {
        self.amps[self.site(y)]
    }

    pub fn set(&mut self, y: i64, v: Spinor4) {
        let s = self.site(y);
        self.amps[s] = v;
    }

    pub fn amplitudes(&self) -> &[Spinor4] {
        &self.amps
    }

    /// Flat vector with index 4·(y + W) + component.
    pub fn to_flat(&self) -> Vec<C64> {
        self.amps.iter().flat_map(|a| a.iter().copied()).collect()
    }

    pub fn from_flat(half_width: usize, flat: &[C64]) -> Self {
        assert_eq!(flat.len(), 4 * (2 * half_width + 1));
        let amps = flat.chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
        Self { half_width, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(spinor_norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// ⟨self|other⟩, antilinear in `self`.
    pub fn inner(&self, other: &RelativeState) -> C64 {
        assert_eq!(self.half_width, other.half_width, "states live on different windows");
        self.amps.iter().zip(&other.amps).map(|(a, b)| spinor_inner(a, b)).sum()
    }

    pub fn scaled(&self, c: C64) -> Self {
        let amps = self.amps.iter().map(|a| a.map(|x| x * c)).collect();
        Self { half_width: self.half_width, amps }
    }

    pub fn normalized(&self) -> Self {
        self.scaled(C64::new(1.0 / self.norm(), 0.0))
    }

    pub fn add_scaled(&mut self, other: &RelativeState, c: C64) {
        assert_eq!(self.half_width, other.half_width);
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            for i in 0..4 {
                a[i] += c * b[i];
            }
        }
    }

    pub fn distance(&self, other: &RelativeState) -> f64 {
        let mut d = self.clone();
        d.add_scaled(other, C64::new(-1.0, 0.0));
        d.norm()
    }

    /// Projection onto the Fermionic sector, f(y) ↦ (f(y) − E f(−y)) / 2.
    pub fn antisymmetrized(&self) -> Self {
        Self::from_fn(self.half_width, |y| {
            let a = self.get(y);
            let b = exchange(&self.get(-y));
            [0, 1, 2, 3].map(|i| 0.5 * (a[i] - b[i]))
        })
    }

    /// Zero-padded or truncated copy on a new window.
    pub fn resized(&self, half_width: usize) -> Self {
        let w = self.half_width as i64;
        Self::from_fn(half_width, |y| if y.abs() <= w { self.get(y) } else { ZERO4 })
    }

    /// Largest |y| carrying a nonzero amplitude, if any.
    pub fn support_radius(&self) -> Option<i64> {
        self.ys().filter(|&y| self.get(y).iter().any(|c| *c != C64::new(0.0, 0.0))).map(i64::abs).max()
    }
}

pub fn check_ring(n: usize) -> Result<()> {
    if n.is_multiple_of(2) || !(5..=1025).contains(&n) {
        return Err(Error::RingSize(n));
    }
    Ok(())
}

/// max_y ‖f(y) + E f(−y)‖.
pub fn antisymmetry_defect(state: &RelativeState) -> f64 {
    state
        .ys()
        .map(|y| {
            let a = state.get(y);
            let b = exchange(&state.get(-y));
            spinor_norm_sqr(&[0, 1, 2, 3].map(|i| a[i] + b[i])).sqrt()
        })
        .fold(0.0, f64::max)
}

/// Half total momentum p and half relative momentum k, Brillouin-normalized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterOfMass {
    pub p: f64,
    pub k: C64,
}

impl CenterOfMass {
    pub fn new(p: f64, k: C64) -> Self {
        Self { p: wrap_angle(p), k: normalize_momentum(k) }
    }

    pub fn from_momenta(p1: f64, p2: f64) -> Self {
        Self::new(0.5 * (p1 + p2), C64::new(0.5 * (p1 - p2), 0.0))
    }
}

/// Re k brought into (−π, π].
pub fn normalize_momentum(k: C64) -> C64 {
    C64::new(wrap_angle(k.re), k.im)
}

/// ω_{sr}(p, k) = s ω(p + k) + r ω(p − k).
pub fn omega_sr(params: WalkParams, p: f64, k: C64, s: BranchSign, r: BranchSign) -> C64 {
    let pc = C64::new(p, 0.0);
    s.value() * dispersion(params, pc + k) + r.value() * dispersion(params, pc - k)
}

/// v^{sr}_{p,k} = v^s_{p+k} ⊗ v^r_{p−k}.
pub fn tensor_eigenvector(params: WalkParams, s: BranchSign, r: BranchSign, p: f64, k: C64) -> Spinor4 {
    let pc = C64::new(p, 0.0);
    let a = eigenvector(params, s, pc + k);
    let b = eigenvector(params, r, pc - k);
    [a.up * b.up, a.up * b.down, a.down * b.up, a.down * b.down]
}

/// W(p + k) ⊗ W(p − k).
pub fn momentum_block(params: WalkParams, p: f64, k: C64) -> [[C64; 4]; 4] {
    let pc = C64::new(p, 0.0);
    kron(&walk_matrix(params, pc + k), &walk_matrix(params, pc - k))
}

fn kron(a: &Mat2, b: &Mat2) -> [[C64; 4]; 4] {
    let mut out = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn apply4(m: &[[C64; 4]; 4], v: &Spinor4) -> Spinor4 {
    [0, 1, 2, 3].map(|i| (0..4).map(|j| m[i][j] * v[j]).sum())
}

/// One step of U₂(χ, p) = W₂(p) Ṽ₂(χ) on the ring carried by `state`.
///
/// Ṽ₂ multiplies the ↑↓ and ↓↑ amplitudes at y = 0 by e^{iχ}; W₂ is the
/// hybrid-basis block with (T f)(y) = f(y − 1).
pub fn apply_u2(params: WalkParams, chi: f64, p: f64, state: &RelativeState) -> Result<RelativeState> {
    check_ring(state.ring_size())?;
    let mut g = state.clone();
    if chi != 0.0 {
        let phase = C64::from_polar(1.0, chi);
        let mut f0 = g.get(0);
        f0[1] *= phase;
        f0[2] *= phase;
        g.set(0, f0);
    }
    Ok(free_step(params, p, &g))
}

fn free_step(params: WalkParams, p: f64, g: &RelativeState) -> RelativeState {
    let (mu, nu) = (params.mu(), params.nu());
    let nu2 = nu * nu;
    let mu2 = mu * mu;
    let hop = C64::new(0.0, -mu * nu);
    let ep = C64::from_polar(1.0, p);
    let em = ep.conj();
    let e2p = ep * ep;
    let e2m = em * em;
    RelativeState::from_fn(g.half_width(), |y| {
        let here = g.get(y);
        let left = g.get(y - 1);
        let right = g.get(y + 1);
        let left2 = g.get(y - 2);
        let right2 = g.get(y + 2);
        [
            nu2 * e2p * here[0] + hop * ep * (left[1] + right[2]) - mu2 * here[3],
            hop * ep * left[0] + nu2 * left2[1] - mu2 * here[2] + hop * em * left[3],
            hop * ep * right[0] - mu2 * here[1] + nu2 * right2[2] + hop * em * right[3],
            -mu2 * here[0] + hop * em * (left[1] + right[2]) + nu2 * e2m * here[3],
        ]
    })
}

/// Dense U₂(χ, p) on a ring of size `n`, column by column from [`apply_u2`].
pub fn build_momentum_blocks(params: WalkParams, chi: f64, p: f64, n: usize) -> Result<Mat<C64>> {
    check_ring(n)?;
    let w = (n - 1) / 2;
    let dim = 4 * n;
    let mut out = Mat::<C64>::zeros(dim, dim);
    let mut basis = vec![C64::new(0.0, 0.0); dim];
    for col in 0..dim {
        basis[col] = C64::new(1.0, 0.0);
        let image = apply_u2(params, chi, p, &RelativeState::from_flat(w, &basis))?.to_flat();
        basis[col] = C64::new(0.0, 0.0);
        for (row, v) in image.into_iter().enumerate() {
            out[(row, col)] = v;
        }
    }
    Ok(out)
}

/// The same matrix assembled from W(p + k_m) ⊗ W(p − k_m) on the ring
/// momenta k_m = 2πm/N, carried to the y basis by the Fourier modes
/// e^{−i k_m y}/√N, then composed with the interaction phase.
pub fn build_momentum_blocks_fourier(params: WalkParams, chi: f64, p: f64, n: usize) -> Result<Mat<C64>> {
    check_ring(n)?;
    let w = (n - 1) / 2;
    let blocks: Vec<[[C64; 4]; 4]> =
        (0..n).map(|m| momentum_block(params, p, C64::new(2.0 * PI * m as f64 / n as f64, 0.0))).collect();
    // kernel[d] = (1/N) Σ_m e^{−i k_m d} B_m, depending only on d = y − y' mod N
    let kernel: Vec<[[C64; 4]; 4]> = (0..n)
        .map(|d| {
            let mut acc = [[C64::new(0.0, 0.0); 4]; 4];
            for (m, b) in blocks.iter().enumerate() {
                let phase = C64::from_polar(1.0 / n as f64, -2.0 * PI * ((m * d) % n) as f64 / n as f64);
                for i in 0..4 {
                    for j in 0..4 {
                        acc[i][j] += phase * b[i][j];
                    }
                }
            }
            acc
        })
        .collect();
    let mut out = Mat::<C64>::zeros(4 * n, 4 * n);
    let interaction = C64::from_polar(1.0, chi);
    for sy in 0..n {
        for sx in 0..n {
            let d = (sy + n - sx) % n;
            for a in 0..4 {
                for b in 0..4 {
                    let mut v = kernel[d][a][b];
                    if sx == w && (b == 1 || b == 2) {
                        v *= interaction;
                    }
                    out[(4 * sy + a, 4 * sx + b)] = v;
                }
            }
        }
    }
    Ok(out)
}

/// Columns of an isometry onto the exchange-antisymmetric (`sign` = −1) or
/// symmetric (`sign` = +1) sector, f(y) = sign · E f(−y).
pub fn sector_isometry(n: usize, antisymmetric: bool) -> Result<Mat<C64>> {
    check_ring(n)?;
    let w = (n - 1) / 2;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if antisymmetric { -1.0 } else { 1.0 };
    let mut cols: Vec<Vec<(usize, C64)>> = Vec::new();
    let centre = 4 * w;
    if antisymmetric {
        cols.push(vec![(centre + 1, C64::new(r, 0.0)), (centre + 2, C64::new(-r, 0.0))]);
    } else {
        cols.push(vec![(centre, C64::new(1.0, 0.0))]);
        cols.push(vec![(centre + 1, C64::new(r, 0.0)), (centre + 2, C64::new(r, 0.0))]);
        cols.push(vec![(centre + 3, C64::new(1.0, 0.0))]);
    }
    for y in 1..=w {
        for c in 0..4 {
            let swapped = [0, 2, 1, 3][c];
            cols.push(vec![(4 * (w + y) + c, C64::new(r, 0.0)), (4 * (w - y) + swapped, C64::new(sign * r, 0.0))]);
        }
    }
    let mut q = Mat::<C64>::zeros(4 * n, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            q[(i, j)] = v;
        }
    }
    Ok(q)
}
