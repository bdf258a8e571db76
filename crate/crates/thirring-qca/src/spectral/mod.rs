//! Analytic spectrum of U₂(χ, p): bands, scattering and bound states.

pub mod bands;
pub mod bound;
pub mod scattering;
pub mod stationary;
pub mod summary;

pub use bands::{
    band_arcs, bands_for, classify_momentum, degeneracy_partners, special_band_arcs, special_momentum, ArcLabel,
    BandSet, LabelledArc, RegionLabel, SPECIAL_MOMENTUM_GUARD,
};
pub use bound::{
    bound_wavefunction, degenerate_wavefunction, find_bound_state, find_bound_state_special, g_function,
    BoundSolution, BoundState, DegenerateState,
};
pub use scattering::{scattering_state, transmission, ScatteringKind};
pub use stationary::{stationary_half_width, stationary_state_p0, stationary_state_p0_on};
pub use summary::{spectral_summary, SpectralSummary};
