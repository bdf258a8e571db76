//! Dense diagonalization of U₂(χ, p) on a finite ring of relative positions.

use std::f64::consts::{PI, TAU};

use faer::linalg::solvers::Solve;
use faer::{Mat, MatRef, Side};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase::{UnitPhase, C64, I};
use crate::spectral::BandSet;
use crate::two_particle::{apply_u2, build_momentum_blocks, check_ring, sector_isometry, spinor_norm_sqr, RelativeState};
use crate::walk::WalkParams;

const RESIDUAL_LIMIT: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sector {
    Antisymmetric,
    Symmetric,
}

#[derive(Clone, Debug)]
pub struct RingSpectrum {
    pub n: usize,
    pub eigenphases: Vec<UnitPhase>,
    /// Orthonormal eigenvectors as columns, rows indexed 4·(y + W) + component.
    pub eigenvectors: Mat<C64>,
    pub sectors: Vec<Sector>,
    pub max_residual: f64,
}

impl RingSpectrum {
    pub fn antisymmetric_indices(&self) -> Vec<usize> {
        (0..self.sectors.len()).filter(|&i| self.sectors[i] == Sector::Antisymmetric).collect()
    }

    pub fn state(&self, index: usize) -> RelativeState {
        let col: Vec<C64> = (0..self.eigenvectors.nrows()).map(|i| self.eigenvectors[(i, index)]).collect();
        RelativeState::from_flat((self.n - 1) / 2, &col)
    }
}

/// Eigenvalues and an orthonormal eigenbasis of a unitary matrix.
///
/// The spectrum is first located with a general eigenvalue solve; the matrix
/// is then rotated so that the widest gap sits at −1 and mapped by the Cayley
/// transform C = i(I − V)(I + V)⁻¹ to a Hermitian matrix, whose eigenvectors
/// are orthonormal even inside degenerate clusters. Eigenvalues are read
/// back as Rayleigh quotients.
pub fn unitary_eigen(u: MatRef<'_, C64>) -> Result<(Vec<C64>, Mat<C64>, f64)> {
    let n = u.nrows();
    let rough = u.eigenvalues().map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let mut angles: Vec<f64> = rough.iter().map(|z| z.arg()).collect();
    angles.sort_by(f64::total_cmp);
    let mut best = (angles[0] + TAU - angles[n - 1], angles[n - 1]);
    for w in angles.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[0]);
        }
    }
    let (gap, gap_start) = best;
    let alpha = gap_start + 0.5 * gap - PI;
    let rot = C64::from_polar(1.0, -alpha);
    let id = Mat::<C64>::identity(n, n);
    let v = Mat::<C64>::from_fn(n, n, |i, j| rot * u[(i, j)]);
    let plus = &id + &v;
    let minus = &id - &v;
    let lu = plus.partial_piv_lu();
    let x = lu.solve(&minus);
    let c = Mat::<C64>::from_fn(n, n, |i, j| 0.5 * I * (x[(i, j)] - x[(j, i)].conj()));
    let evd = c.self_adjoint_eigen(Side::Lower).map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let vecs = evd.U().to_owned();
    let uv = u * &vecs;
    let mut values = Vec::with_capacity(n);
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let lam: C64 = (0..n).map(|i| vecs[(i, j)].conj() * uv[(i, j)]).sum();
        let lam = lam / lam.norm();
        let res: f64 = (0..n).map(|i| (uv[(i, j)] - lam * vecs[(i, j)]).norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(res);
        values.push(lam);
    }
    if !(worst <= RESIDUAL_LIMIT) {
        return Err(Error::Eigensolver(format!(
            "largest eigen-residual {worst:e} exceeds {RESIDUAL_LIMIT:e} (widest spectral gap {gap:e})"
        )));
    }
    Ok((values, vecs, worst))
}

/// Full spectrum of U₂(χ, p) on a ring of odd size N, split by exchange
/// symmetry.
pub fn diagonalize_ring(params: WalkParams, chi: f64, p: f64, n: usize) -> Result<RingSpectrum> {
    check_ring(n)?;
    let u = build_momentum_blocks(params, chi, p, n)?;
    let dim = 4 * n;
    let mut eigenphases = Vec::with_capacity(dim);
    let mut sectors = Vec::with_capacity(dim);
    let mut eigenvectors = Mat::<C64>::zeros(dim, dim);
    let mut max_residual: f64 = 0.0;
    let mut col = 0;
    for (sector, antisymmetric) in [(Sector::Antisymmetric, true), (Sector::Symmetric, false)] {
        let q = sector_isometry(n, antisymmetric)?;
        let restricted = q.adjoint() * (&u * &q);
        let (values, vecs, worst) = unitary_eigen(restricted.as_ref())?;
        max_residual = max_residual.max(worst);
        let full = &q * &vecs;
        for (j, lam) in values.iter().enumerate() {
            for i in 0..dim {
                eigenvectors[(i, col)] = full[(i, j)];
            }
            eigenphases.push(UnitPhase::from_complex(*lam));
            sectors.push(sector);
            col += 1;
        }
    }
    Ok(RingSpectrum { n, eigenphases, eigenvectors, sectors, max_residual })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SpectrumClassification {
    pub in_band: Vec<usize>,
    pub isolated: Vec<usize>,
    pub flat: Vec<usize>,
    /// Neither within δ_band of the continuum nor separated by g_min.
    pub ambiguous: Vec<usize>,
}

/// Default band tolerance, a thousandth of the ring momentum spacing.
pub fn default_delta_band(n: usize) -> f64 {
    1e-3 * TAU / n as f64
}

/// Sorts antisymmetric-sector eigenvectors into continuum, flat and isolated
/// sets by the distance of their phase to the continuous arcs of `bands`.
///
/// Membership is strict: a phase belongs to the continuum or the flat point
/// when its distance is below `delta_band`, so a zero tolerance accepts
/// nothing and every phase closer than `g_min` is reported as ambiguous.
pub fn classify_spectrum(spec: &RingSpectrum, bands: &BandSet, delta_band: f64, g_min: f64) -> SpectrumClassification {
    let mut out = SpectrumClassification::default();
    for idx in spec.antisymmetric_indices() {
        let phi = spec.eigenphases[idx];
        if let Some(flat) = bands.flat {
            if phi.distance(flat) < delta_band {
                out.flat.push(idx);
                continue;
            }
        }
        let d = bands.distance_to_continuum(phi);
        if d < delta_band {
            out.in_band.push(idx);
        } else if d >= g_min {
            out.isolated.push(idx);
        } else {
            out.ambiguous.push(idx);
        }
    }
    out
}

/// Least-squares slope of log‖f(y)‖ against y for a localized eigenvector.
///
/// ‖f(y)‖ alternates with the parity of y, so even and odd sites are fitted
/// separately and the slopes averaged. Sites up to N/4 whose amplitude stays
/// above 1e−10 of the maximum enter the fit.
pub fn localization_length(spec: &RingSpectrum, index: usize) -> Result<f64> {
    let state = spec.state(index);
    let amps: Vec<f64> = (0..=state.half_width() as i64).map(|y| spinor_norm_sqr(&state.get(y)).sqrt()).collect();
    let peak = amps.iter().cloned().fold(0.0, f64::max);
    let reach = (spec.n / 4).max(2);
    let mut slopes = Vec::new();
    for parity in 0..2 {
        let pts: Vec<(f64, f64)> = (1..=reach)
            .filter(|y| y % 2 == parity)
            .take_while(|&y| amps[y] > 1e-10 * peak)
            .map(|y| (y as f64, amps[y].ln()))
            .collect();
        if pts.len() >= 3 {
            slopes.push(fit_slope(&pts));
        }
    }
    if slopes.is_empty() {
        let cut = (1..amps.len()).find(|&y| amps[y] <= 1e-14 * peak).unwrap_or(amps.len());
        return Err(Error::DynamicRange(cut));
    }
    Ok(slopes.iter().sum::<f64>() / slopes.len() as f64)
}

fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// ‖U₂f − e^{−iω}f‖ over the sites |y| ≤ W − 2, which one step cannot
/// reach from across the ring seam.
pub fn residual(params: WalkParams, chi: f64, p: f64, state: &RelativeState, eigenphase: UnitPhase) -> Result<f64> {
    let out = apply_u2(params, chi, p, state)?;
    let lam = eigenphase.to_complex();
    let reach = state.half_width() as i64 - 2;
    let total: f64 = (-reach..=reach)
        .map(|y| {
            let a = out.get(y);
            let b = state.get(y);
            spinor_norm_sqr(&[0, 1, 2, 3].map(|i| a[i] - lam * b[i]))
        })
        .sum();
    Ok(total.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{band_arcs, find_bound_state, find_bound_state_special, special_band_arcs, BoundSolution};
    use crate::two_particle::{antisymmetry_defect, omega_sr};
    use crate::walk::BranchSign;

    fn params() -> WalkParams {
        WalkParams::new(0.8).unwrap()
    }

    #[test]
    fn free_ring_matches_plane_wave_quasi_energies() {
        let w = params();
        let (p, n) = (0.55, 17);
        let spec = diagonalize_ring(w, 0.0, p, n).unwrap();
        let mut expected = Vec::new();
        for m in 0..n {
            let k = C64::new(TAU * m as f64 / n as f64, 0.0);
            for s in [BranchSign::Plus, BranchSign::Minus] {
                for r in [BranchSign::Plus, BranchSign::Minus] {
                    expected.push(UnitPhase::new(-omega_sr(w, p, k, s, r).re));
                }
            }
        }
        for phi in &spec.eigenphases {
            let d = expected.iter().map(|e| e.distance(*phi)).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-10);
        }
        assert_eq!(spec.antisymmetric_indices().len(), 2 * n - 1);
    }

    #[test]
    fn eigenvectors_are_orthonormal_and_sectors_are_respected() {
        let w = params();
        let spec = diagonalize_ring(w, 1.0, 0.0, 15).unwrap();
        let g = spec.eigenvectors.adjoint() * &spec.eigenvectors;
        let dim = g.nrows();
        assert!((&g - Mat::<C64>::identity(dim, dim)).norm_max() < 1e-10);
        for idx in spec.antisymmetric_indices() {
            assert!(antisymmetry_defect(&spec.state(idx)) < 1e-10);
        }
        assert!(spec.max_residual <= 1e-10);
    }

    #[test]
    fn single_isolated_state_tracks_the_root_finder() {
        let w = params();
        let (chi, p) = (std::f64::consts::FRAC_PI_2, 0.55);
        let spec = diagonalize_ring(w, chi, p, 65).unwrap();
        let bands = band_arcs(w, p).unwrap();
        let d = default_delta_band(65);
        let cls = classify_spectrum(&spec, &bands, d, 10.0 * d);
        assert_eq!(cls.isolated.len(), 1);
        assert!(cls.ambiguous.is_empty());
        let BoundSolution::Bound(b) = find_bound_state(w, chi, p).unwrap() else { panic!() };
        let idx = cls.isolated[0];
        assert!(spec.eigenphases[idx].distance(b.eigenphase) < 1e-8);
        let slope = localization_length(&spec, idx).unwrap();
        assert!(((slope - b.k_tilde.im) / b.k_tilde.im).abs() < 0.01, "{slope} {}", b.k_tilde.im);
    }

    #[test]
    fn flat_band_at_zero_momentum() {
        let w = params();
        let spec = diagonalize_ring(w, 0.0, 0.0, 17).unwrap();
        let bands = special_band_arcs(w, 0.0).unwrap();
        let d = default_delta_band(17);
        let cls = classify_spectrum(&spec, &bands, d, 10.0 * d);
        assert!(cls.flat.len() >= 8, "{}", cls.flat.len());
        assert!(cls.isolated.is_empty());
    }

    #[test]
    fn special_momentum_bound_state_appears_on_the_ring() {
        let w = params();
        let mut found = 0;
        for (chi, p) in [(std::f64::consts::FRAC_PI_2, 0.0), (-std::f64::consts::FRAC_PI_2, 0.0), (0.9, std::f64::consts::FRAC_PI_2)] {
            let spec = diagonalize_ring(w, chi, p, 65).unwrap();
            let bands = special_band_arcs(w, p).unwrap();
            let d = default_delta_band(65);
            let cls = classify_spectrum(&spec, &bands, d, 10.0 * d);
            match find_bound_state_special(w, chi, p).unwrap() {
                BoundSolution::Bound(b) => {
                    assert_eq!(cls.isolated.len(), 1, "chi {chi} p {p}");
                    assert!(spec.eigenphases[cls.isolated[0]].distance(b.eigenphase) < 1e-8);
                    found += 1;
                }
                _ => assert!(cls.isolated.is_empty(), "chi {chi} p {p}: {:?}", cls.isolated),
            }
        }
        assert!(found >= 2, "{found}");
    }

    #[test]
    fn residual_discriminates() {
        let w = params();
        let f = RelativeState::from_fn(10, |y| {
            let a = C64::new((y as f64 * 0.7).sin(), (y as f64 * 1.3).cos());
            [a, 0.5 * a, -0.2 * a, a * a]
        })
        .antisymmetrized();
        assert!(residual(w, 0.4, 0.3, &f, UnitPhase::new(0.2)).unwrap() > 0.1);
    }
}
