use serde::Serialize;

use super::bands::{bands_for, special_momentum, BandSet};
use super::bound::{find_bound_state, find_bound_state_special, BoundSolution};
use crate::walk::WalkParams;

/// Everything known analytically about the spectrum of U₂(χ, p).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub mu: f64,
    pub chi: f64,
    pub p: f64,
    /// z when p lies within the guard band of zπ/2.
    pub special: Option<i32>,
    pub bands: BandSet,
    pub discrete: BoundSolution,
    pub error: Option<String>,
}

pub fn spectral_summary(params: WalkParams, chi: f64, p: f64) -> SpectralSummary {
    let special = special_momentum(p);
    let bands = bands_for(params, p);
    let found = match special {
        Some(_) => find_bound_state_special(params, chi, p),
        None => find_bound_state(params, chi, p),
    };
    let (discrete, error) = match found {
        Ok(d) => (d, None),
        Err(e) => (BoundSolution::None, Some(e.to_string())),
    };
    SpectralSummary { mu: params.mu(), chi, p, special, bands, discrete, error }
}
