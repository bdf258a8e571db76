//! Complex phases: principal arccosine and arcs of the unit circle.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Wrap an angle into (−π, π].
pub fn wrap_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    r
}

/// Principal arccosine with Re ∈ [0, π], agreeing with the usual branch
/// cuts on the real axis outside [−1, 1].
///
/// Uses −i·log(z + i·sqrt(1−z²)); when that sum suffers cancellation the
/// reciprocal of the conjugate root z − i·sqrt(1−z²) is used instead, since
/// the two roots multiply to one.
pub fn arccos_principal(z: C64) -> Result<C64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite(format!("{z}")));
    }
    if z.im == 0.0 {
        let x = z.re;
        return Ok(if x > 1.0 {
            C64::new(0.0, x.acosh())
        } else if x < -1.0 {
            C64::new(PI, -(-x).acosh())
        } else {
            C64::new(x.acos(), 0.0)
        });
    }
    let s = (C64::new(1.0, 0.0) - z * z).sqrt();
    let u = z + I * s;
    let v = z - I * s;
    let w = if u.norm() >= v.norm() { u } else { v.inv() };
    let mut out = -I * w.ln();
    out.re = out.re.clamp(0.0, PI);
    Ok(out)
}

/// A point of the unit circle stored by its angle in (−π, π].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitPhase {
    angle: f64,
}

impl UnitPhase {
    pub fn new(angle: f64) -> Self {
        Self { angle: wrap_angle(angle) }
    }

    pub fn from_complex(z: C64) -> Self {
        Self::new(z.arg())
    }

    pub fn angle(self) -> f64 {
        self.angle
    }

    pub fn to_complex(self) -> C64 {
        C64::from_polar(1.0, self.angle)
    }

    /// Shortest angular distance, in [0, π].
    pub fn distance(self, other: UnitPhase) -> f64 {
        wrap_angle(self.angle - other.angle).abs()
    }

    /// Counterclockwise offset from `origin` to `self`, in [0, 2π).
    pub fn offset_from(self, origin: UnitPhase) -> f64 {
        let d = (self.angle - origin.angle).rem_euclid(TAU);
        if d >= TAU {
            0.0
        } else {
            d
        }
    }
}

/// An arc of the unit circle traversed from `start` to `end`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleArc {
    pub start: UnitPhase,
    pub end: UnitPhase,
    pub counterclockwise: bool,
    pub includes_start: bool,
    pub includes_end: bool,
}

impl CircleArc {
    pub fn new(
        start: UnitPhase,
        end: UnitPhase,
        counterclockwise: bool,
        includes_start: bool,
        includes_end: bool,
    ) -> Self {
        Self { start, end, counterclockwise, includes_start, includes_end }
    }

    /// Counterclockwise arc between two angles, closed at both ends.
    pub fn closed(start: f64, end: f64) -> Self {
        Self::new(UnitPhase::new(start), UnitPhase::new(end), true, true, true)
    }

    /// Counterclockwise arc between two angles, open at both ends.
    pub fn open(start: f64, end: f64) -> Self {
        Self::new(UnitPhase::new(start), UnitPhase::new(end), true, false, false)
    }

    /// The same point set written counterclockwise.
    pub fn normalized(&self) -> CircleArc {
        if self.counterclockwise {
            *self
        } else {
            CircleArc {
                start: self.end,
                end: self.start,
                counterclockwise: true,
                includes_start: self.includes_end,
                includes_end: self.includes_start,
            }
        }
    }

    /// Arc length in [0, 2π).
    pub fn length(&self) -> f64 {
        let a = self.normalized();
        a.end.offset_from(a.start)
    }

    pub fn midpoint(&self) -> UnitPhase {
        let a = self.normalized();
        UnitPhase::new(a.start.angle() + 0.5 * a.length())
    }

    /// Angular distance from `phi` to the closure of the arc; zero on it.
    pub fn distance_to(&self, phi: UnitPhase) -> f64 {
        let a = self.normalized();
        if phi.offset_from(a.start) <= a.length() {
            0.0
        } else {
            phi.distance(a.start).min(phi.distance(a.end))
        }
    }
}

pub fn arc_contains(arc: &CircleArc, phi: UnitPhase, tol: f64) -> bool {
    let a = arc.normalized();
    if phi.distance(a.start) <= tol {
        return a.includes_start;
    }
    if phi.distance(a.end) <= tol {
        return a.includes_end;
    }
    phi.offset_from(a.start) < a.length()
}

/// Exact membership, endpoint flags honoured.
fn member(a: &CircleArc, phi: UnitPhase) -> bool {
    let d = phi.offset_from(a.start);
    let len = a.length();
    if d == 0.0 {
        a.includes_start || (len == 0.0 && a.includes_end)
    } else if d == len {
        a.includes_end
    } else {
        d < len
    }
}

/// True when the two arcs share no point.
///
/// Every component of an intersection of two arcs begins at the start of one
/// of them, so it is enough to test both start points.
pub fn arcs_disjoint(a: &CircleArc, b: &CircleArc) -> bool {
    let a = a.normalized();
    let b = b.normalized();
    !(meets_from_start(&a, &b) || meets_from_start(&b, &a))
}

fn meets_from_start(a: &CircleArc, b: &CircleArc) -> bool {
    let d = a.start.offset_from(b.start);
    if d > b.length() {
        return false;
    }
    let point = a.includes_start && member(b, a.start);
    let stretch = a.length() > 0.0 && d < b.length();
    point || stretch
}
