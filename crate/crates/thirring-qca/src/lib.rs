//! Two-particle spectral theory of the Thirring quantum cellular automaton.
//!
//! The crate covers the free Dirac walk, the interacting two-particle step
//! U₂(χ, p) in the relative coordinate, the analytic description of its
//! spectrum (bands, scattering states, bound states, degenerate and
//! stationary solutions), a dense finite-ring diagonalization used as
//! ground truth, and wavepacket dynamics.

pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod phase;
pub mod spectral;
pub mod two_particle;
pub mod validation;
pub mod walk;

pub use error::{Error, Result};
pub use phase::{arc_contains, arccos_principal, arcs_disjoint, CircleArc, UnitPhase, C64};
pub use walk::{BranchSign, WalkParams};
