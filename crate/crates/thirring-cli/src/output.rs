//! Output files: '#' metadata above a CSV header, or a JSON document with a
//! `meta` object first.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config_hash: String,
    pub mu: f64,
    pub chi: Vec<f64>,
}

impl Meta {
    pub fn new<C: Serialize>(command: &'static str, config: &C, mu: f64, chi: Vec<f64>) -> Self {
        let canonical = serde_json::to_string(&(command, config)).expect("configuration serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        let config_hash = digest.iter().map(|b| format!("{b:02x}")).collect();
        Self { tool: "tqca", version: env!("CARGO_PKG_VERSION"), command, config_hash, mu, chi }
    }
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(meta: &Meta) -> Self {
        let mut csv = Self { buf: String::new() };
        csv.comment(&format!("{} {}", meta.tool, meta.version));
        csv.comment(&format!("command: {}", meta.command));
        csv.comment(&format!("config_hash: sha256:{}", meta.config_hash));
        csv.comment(&format!("mu: {}", num(meta.mu)));
        let chi: Vec<String> = meta.chi.iter().map(|c| num(*c)).collect();
        csv.comment(&format!("chi: {}", chi.join(" ")));
        csv
    }

    pub fn comment(&mut self, line: &str) {
        self.buf.push_str("# ");
        self.buf.push_str(line);
        self.buf.push('\n');
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: &[S]) {
        let line: Vec<&str> = cells.iter().map(|c| c.as_ref()).collect();
        self.buf.push_str(&line.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    meta: &'a Meta,
    data: &'a T,
}

pub fn json<T: Serialize>(meta: &Meta, data: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Document { meta, data })?;
    s.push('\n');
    Ok(s)
}

/// Writes to `out`, or to standard output when no path is given.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, contents).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).context("writing to standard output")?;
            stdout.flush().context("writing to standard output")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, std::f64::consts::PI, -1.2345678901234567e-300, 5e-324] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn hash_depends_on_config() {
        let a = Meta::new("x", &(1, 2.0), 0.8, vec![]);
        let b = Meta::new("x", &(1, 2.5), 0.8, vec![]);
        assert_eq!(a.config_hash.len(), 64);
        assert_ne!(a.config_hash, b.config_hash);
    }
}
