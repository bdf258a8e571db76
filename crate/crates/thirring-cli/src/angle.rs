//! Parsers for angles and momentum grids given on the command line.

use std::f64::consts::PI;

use serde::Serialize;

/// A float, or a multiple of π written like `pi/2`, `-4pi/5` or `2*pi/3`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t: String = s.trim().to_ascii_lowercase().chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(v) = t.parse::<f64>() {
        return finite(v, s);
    }
    let Some(at) = t.find("pi") else {
        return Err(format!("cannot read '{s}' as an angle"));
    };
    let (head, tail) = (&t[..at], &t[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("bad coefficient in '{s}'"))?,
    };
    let denom = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(|| format!("bad denominator in '{s}'"))?,
    };
    finite(coeff * PI / denom, s)
}

fn finite(v: f64, s: &str) -> Result<f64, String> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

/// `count` evenly spaced points from `min` to `max` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|j| if j + 1 == self.count { self.max } else { self.min + step * j as f64 }).collect()
    }
}

/// `min:max:count`, with angles in any form [`parse_angle`] accepts.
pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, count] = parts.as_slice() else {
        return Err(format!("expected min:max:count, got '{s}'"));
    };
    let count: usize = count.trim().parse().map_err(|_| format!("bad point count in '{s}'"))?;
    if count == 0 {
        return Err("a grid needs at least one point".into());
    }
    Ok(Grid { min: parse_angle(min)?, max: parse_angle(max)?, count })
}

/// `count` points of the Brillouin zone (−π, π], including 0 and ±π/2 when
/// `count` is a multiple of 4.
pub fn brillouin_grid(count: usize) -> Vec<f64> {
    (1..=count).map(|j| PI * (2 * j) as f64 / count as f64 - PI).map(|p| if p == 0.0 { 0.0 } else { p }).collect()
}
