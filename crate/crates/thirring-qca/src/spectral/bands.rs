//! Regions of real quasi-energy and their arcs on the unit circle.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{arc_contains, wrap_angle, CircleArc, UnitPhase, C64};
use crate::two_particle::{normalize_momentum, omega_sr};
use crate::walk::{dispersion, BranchSign, WalkParams};

/// Half-width of the band of total momenta treated as p = zπ/2.
pub const SPECIAL_MOMENTUM_GUARD: f64 = 1e-9;

/// The integer z with |p − zπ/2| < guard, reported in {−1, 0, 1, 2}.
pub fn special_momentum(p: f64) -> Option<i32> {
    let p = wrap_angle(p);
    let z = (p / FRAC_PI_2).round();
    if (p - z * FRAC_PI_2).abs() < SPECIAL_MOMENTUM_GUARD {
        let z = z as i32;
        Some(if z == -2 { 2 } else { z })
    } else {
        None
    }
}

pub fn require_generic(p: f64) -> Result<()> {
    match special_momentum(p) {
        Some(_) => Err(Error::SpecialMomentum { p, guard: SPECIAL_MOMENTUM_GUARD }),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionLabel {
    #[serde(rename = "f")]
    Free,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "+1")]
    PlusOne,
    #[serde(rename = "-1")]
    MinusOne,
}

impl RegionLabel {
    pub const DISCRETE: [RegionLabel; 4] = [RegionLabel::Zero, RegionLabel::Two, RegionLabel::PlusOne, RegionLabel::MinusOne];

    pub fn z(self) -> Option<i32> {
        match self {
            RegionLabel::Free => None,
            RegionLabel::Zero => Some(0),
            RegionLabel::Two => Some(2),
            RegionLabel::PlusOne => Some(1),
            RegionLabel::MinusOne => Some(-1),
        }
    }

    /// Re k on the region's vertical line.
    pub fn real_part(self) -> Option<f64> {
        self.z().map(|z| if z == 2 { PI } else { z as f64 * FRAC_PI_2 })
    }

    /// The transmission branch whose zero lives on this line.
    pub fn branch(self) -> BranchSign {
        match self {
            RegionLabel::Free | RegionLabel::Zero | RegionLabel::Two => BranchSign::Plus,
            RegionLabel::PlusOne | RegionLabel::MinusOne => BranchSign::Minus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegionLabel::Free => "f",
            RegionLabel::Zero => "0",
            RegionLabel::Two => "2",
            RegionLabel::PlusOne => "+1",
            RegionLabel::MinusOne => "-1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcLabel {
    #[serde(rename = "++f")]
    PlusPlusFree,
    #[serde(rename = "+-f")]
    PlusMinusFree,
    #[serde(rename = "++0")]
    PlusPlusZero,
    #[serde(rename = "++2")]
    PlusPlusTwo,
    #[serde(rename = "+-(-1)")]
    PlusMinusMinusOne,
    #[serde(rename = "+-(+1)")]
    PlusMinusPlusOne,
}

impl ArcLabel {
    pub fn is_continuous(self) -> bool {
        matches!(self, ArcLabel::PlusPlusFree | ArcLabel::PlusMinusFree)
    }

    pub fn region(self) -> RegionLabel {
        match self {
            ArcLabel::PlusPlusFree | ArcLabel::PlusMinusFree => RegionLabel::Free,
            ArcLabel::PlusPlusZero => RegionLabel::Zero,
            ArcLabel::PlusPlusTwo => RegionLabel::Two,
            ArcLabel::PlusMinusMinusOne => RegionLabel::MinusOne,
            ArcLabel::PlusMinusPlusOne => RegionLabel::PlusOne,
        }
    }

    pub fn second_branch(self) -> BranchSign {
        match self {
            ArcLabel::PlusPlusFree | ArcLabel::PlusPlusZero | ArcLabel::PlusPlusTwo => BranchSign::Plus,
            _ => BranchSign::Minus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ArcLabel::PlusPlusFree => "++f",
            ArcLabel::PlusMinusFree => "+-f",
            ArcLabel::PlusPlusZero => "++0",
            ArcLabel::PlusPlusTwo => "++2",
            ArcLabel::PlusMinusMinusOne => "+-(-1)",
            ArcLabel::PlusMinusPlusOne => "+-(+1)",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelledArc {
    pub label: ArcLabel,
    pub arc: CircleArc,
}

/// Arcs traced on the unit circle by e^{−iω_{+s}(p, k)} for k in each region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandSet {
    pub p: f64,
    pub arcs: Vec<LabelledArc>,
    /// Points of the circle that no region reaches, e^{±i2p}.
    pub excluded: Vec<UnitPhase>,
    /// Infinitely degenerate eigenvalue present at p = zπ/2.
    pub flat: Option<UnitPhase>,
}

impl BandSet {
    pub fn arc(&self, label: ArcLabel) -> Option<&CircleArc> {
        self.arcs.iter().find(|a| a.label == label).map(|a| &a.arc)
    }

    pub fn continuous(&self) -> impl Iterator<Item = &LabelledArc> {
        self.arcs.iter().filter(|a| a.label.is_continuous())
    }

    /// Labels of every arc containing `phi`.
    pub fn locate(&self, phi: UnitPhase, tol: f64) -> Vec<ArcLabel> {
        self.arcs.iter().filter(|a| arc_contains(&a.arc, phi, tol)).map(|a| a.label).collect()
    }

    pub fn is_excluded(&self, phi: UnitPhase, tol: f64) -> bool {
        self.excluded.iter().any(|e| e.distance(phi) <= tol)
    }

    /// Angular distance to the continuous spectrum.
    pub fn distance_to_continuum(&self, phi: UnitPhase) -> f64 {
        self.continuous().map(|a| a.arc.distance_to(phi)).fold(f64::INFINITY, f64::min)
    }
}

/// The six arcs at a total momentum away from zπ/2.
///
/// Ω^{++}_f runs between e^{±i2ω(p)} through −1 and Ω^{+−}_f between
/// e^{±i(2ω(p+π/2)−π)} through +1, both closed. Each of the two gaps left
/// between them holds one of the excluded points e^{±i2p}, which splits it
/// into two open arcs; the half touching an Ω^{++}_f end belongs to the ++
/// branch, the other to +−.
pub fn band_arcs(params: WalkParams, p: f64) -> Result<BandSet> {
    require_generic(p)?;
    let two_omega = (2.0 * dispersion(params, C64::new(p, 0.0)).re).rem_euclid(TAU);
    let a = two_omega.min(TAU - two_omega);
    // +2ω(p) sits at +a exactly when 2ω(p) ≤ π
    let plus_two_omega_is_upper = two_omega <= PI;
    let c = 2.0 * dispersion(params, C64::new(p + FRAC_PI_2, 0.0)).re - PI;
    let b = c.abs();
    let plus_c_is_upper = c >= 0.0;

    let q1 = wrap_angle(2.0 * p);
    let q2 = wrap_angle(-2.0 * p);
    let (upper, lower) = if q1 > b && q1 < a { (q1, q2) } else { (q2, q1) };

    let pp_upper = if plus_two_omega_is_upper { ArcLabel::PlusPlusTwo } else { ArcLabel::PlusPlusZero };
    let pp_lower = if plus_two_omega_is_upper { ArcLabel::PlusPlusZero } else { ArcLabel::PlusPlusTwo };
    let pm_upper = if plus_c_is_upper { ArcLabel::PlusMinusMinusOne } else { ArcLabel::PlusMinusPlusOne };
    let pm_lower = if plus_c_is_upper { ArcLabel::PlusMinusPlusOne } else { ArcLabel::PlusMinusMinusOne };

    let arcs = vec![
        LabelledArc { label: ArcLabel::PlusPlusFree, arc: CircleArc::closed(a, TAU - a) },
        LabelledArc { label: ArcLabel::PlusMinusFree, arc: CircleArc::closed(-b, b) },
        LabelledArc { label: pp_upper, arc: CircleArc::open(upper, a) },
        LabelledArc { label: pm_upper, arc: CircleArc::open(b, upper) },
        LabelledArc { label: pp_lower, arc: CircleArc::open(-a, lower) },
        LabelledArc { label: pm_lower, arc: CircleArc::open(lower, -b) },
    ];
    let mut arcs = arcs;
    arcs.sort_by_key(|a| a.label);
    Ok(BandSet { p, arcs, excluded: vec![UnitPhase::new(2.0 * p), UnitPhase::new(-2.0 * p)], flat: None })
}

/// Continuous band of the surviving branch and the flat eigenvalue at
/// p = zπ/2: for p ∈ {0, π} the ++ band with the flat point 1, for
/// p = ±π/2 the +− band with the flat point −1.
pub fn special_band_arcs(params: WalkParams, p: f64) -> Result<BandSet> {
    let z = special_momentum(p).ok_or_else(|| Error::InvalidArgument(format!("p = {p} is not a multiple of pi/2")))?;
    let snapped = if z == 2 { PI } else { z as f64 * FRAC_PI_2 };
    if z % 2 == 0 {
        let two_omega = (2.0 * dispersion(params, C64::new(snapped, 0.0)).re).rem_euclid(TAU);
        let a = two_omega.min(TAU - two_omega);
        Ok(BandSet {
            p,
            arcs: vec![LabelledArc { label: ArcLabel::PlusPlusFree, arc: CircleArc::closed(a, TAU - a) }],
            excluded: vec![],
            flat: Some(UnitPhase::new(0.0)),
        })
    } else {
        let c = 2.0 * dispersion(params, C64::new(snapped + FRAC_PI_2, 0.0)).re - PI;
        let b = c.abs();
        Ok(BandSet {
            p,
            arcs: vec![LabelledArc { label: ArcLabel::PlusMinusFree, arc: CircleArc::closed(-b, b) }],
            excluded: vec![],
            flat: Some(UnitPhase::new(PI)),
        })
    }
}

/// [`band_arcs`] or [`special_band_arcs`] as appropriate.
pub fn bands_for(params: WalkParams, p: f64) -> BandSet {
    match special_momentum(p) {
        Some(_) => special_band_arcs(params, p).expect("special momentum"),
        None => band_arcs(params, p).expect("generic momentum"),
    }
}

/// The region of k when ω_{sr}(p, k) is real to within `tol`.
pub fn classify_momentum(
    params: WalkParams,
    p: f64,
    k: C64,
    s: BranchSign,
    r: BranchSign,
    tol: f64,
) -> Option<RegionLabel> {
    let w = omega_sr(params, p, k, s, r);
    if w.im.abs() > tol {
        return None;
    }
    let k = normalize_momentum(k);
    if k.im.abs() <= tol {
        return Some(RegionLabel::Free);
    }
    RegionLabel::DISCRETE
        .into_iter()
        .find(|region| wrap_angle(k.re - region.real_part().unwrap()).abs() <= tol)
}

/// The four (s, r, k) sharing one quasi-energy: the input, (r, s, −k),
/// (−r, −s, π − k) and (−s, −r, k − π).
pub fn degeneracy_partners(s: BranchSign, r: BranchSign, k: C64) -> [(BranchSign, BranchSign, C64); 4] {
    let pi = C64::new(PI, 0.0);
    [
        (s, r, normalize_momentum(k)),
        (r, s, normalize_momentum(-k)),
        (r.flip(), s.flip(), normalize_momentum(pi - k)),
        (s.flip(), r.flip(), normalize_momentum(k - pi)),
    ]
}
