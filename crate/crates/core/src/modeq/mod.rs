//! Modular equations `u^k = αβ`, `v^k = (1−α)(1−β)`, `P(u, v) = 0`.
//!
//! Source files are a short `key = value` header followed by the polynomial:
//!
//! ```text
//! name = berndt-3-5
//! level = 3
//! s = 3
//! degree = 5
//! k = 6
//! poly = "u^2 + 3*u*v + v^2 - 1"
//! ```
//!
//! `s` may be omitted; it is implied by the level. Lines starting with `#`
//! are comments.

pub mod parser;
mod poly;
mod registry;

pub use parser::{parse_constant, parse_poly, ParseError};
pub use poly::{PolyUV, UniPoly};
pub use registry::{builtin, registry_load, registry_scan, RegistryError, BUILTIN_SOURCES};

use thiserror::Error;

use crate::exactnum::TowerElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModeqError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError { line: usize, column: usize, message: String },
    #[error("polynomial is not symmetric in u and v")]
    AsymmetricPolynomial,
    #[error("inconsistent level data: {0}")]
    LevelDegreeMismatch(String),
    #[error("ζ^{k} ≠ 1 for ζ = {zeta}")]
    NotRootOfUnity { zeta: String, k: u32 },
}

/// The parameter `s` of `F_s` for level `ℓ = 4·sin²(π/s)`.
pub fn s_for_level(level: u32) -> Option<u32> {
    match level {
        1 => Some(6),
        2 => Some(4),
        3 => Some(3),
        4 => Some(2),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularEquation {
    pub name: String,
    pub level: u32,
    pub s: u32,
    pub degree: u32,
    pub k: u32,
    pub poly: PolyUV,
}

impl ModularEquation {
    pub fn new(name: impl Into<String>, level: u32, s: Option<u32>, degree: u32, k: u32, poly: PolyUV) -> Result<Self, ModeqError> {
        let Some(implied) = s_for_level(level) else {
            return Err(ModeqError::LevelDegreeMismatch(format!("level {level} is not one of 1, 2, 3, 4")));
        };
        let s = s.unwrap_or(implied);
        if s != implied {
            return Err(ModeqError::LevelDegreeMismatch(format!("s = {s} but level {level} requires s = {implied}")));
        }
        if degree < 2 {
            return Err(ModeqError::LevelDegreeMismatch(format!("degree {degree} is below 2")));
        }
        if k == 0 {
            return Err(ModeqError::LevelDegreeMismatch("exponent k must be positive".into()));
        }
        if !poly.is_symmetric() {
            return Err(ModeqError::AsymmetricPolynomial);
        }
        Ok(ModularEquation { name: name.into(), level, s, degree, k, poly })
    }

    pub fn eval(&self, u: &TowerElement, v: &TowerElement) -> TowerElement {
        self.poly.eval(u, v)
    }

    /// `P(u, ζu)` after checking `ζ^k = 1` exactly.
    pub fn substitute_scaled(&self, zeta: &TowerElement) -> Result<UniPoly, ModeqError> {
        if !zeta.pow(self.k).is_one() {
            return Err(ModeqError::NotRootOfUnity { zeta: zeta.to_string(), k: self.k });
        }
        Ok(self.poly.substitute_scaled(zeta))
    }

    /// Canonical source text; reparsing gives back an identical equation.
    pub fn render(&self) -> String {
        format!(
            "name = {}\nlevel = {}\ns = {}\ndegree = {}\nk = {}\npoly = \"{}\"\n",
            self.name, self.level, self.s, self.degree, self.k, self.poly
        )
    }
}

/// `P(u, v)` at exact arguments.
pub fn eval_p(p: &PolyUV, u: &TowerElement, v: &TowerElement) -> TowerElement {
    p.eval(u, v)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ModeqError {
    ModeqError::SyntaxError { line, column, message: message.into() }
}

pub fn parse_equation(source: &str) -> Result<ModularEquation, ModeqError> {
    let mut name = None;
    let mut level = None;
    let mut s = None;
    let mut degree = None;
    let mut k = None;
    let mut poly = None;
    let mut last_line = 1;
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(syntax(line, 1, "expected `key = value`"));
        };
        let key = raw[..eq].trim();
        let value_start = eq + 1 + (raw[eq + 1..].len() - raw[eq + 1..].trim_start().len());
        let value = raw[eq + 1..].trim();
        let col = raw[..value_start].chars().count() + 1;
        let int = |v: &str| v.parse::<u32>().map_err(|_| syntax(line, col, format!("expected a nonnegative integer, found {v:?}")));
        let dup = |present: bool| if present { Err(syntax(line, 1, format!("duplicate key {key:?}"))) } else { Ok(()) };
        match key {
            "name" => {
                dup(name.is_some())?;
                if value.is_empty() || !value.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
                    return Err(syntax(line, col, "name must be nonempty and use only letters, digits, '-' and '_'"));
                }
                name = Some(value.to_string());
            }
            "level" => {
                dup(level.is_some())?;
                level = Some(int(value)?);
            }
            "s" => {
                dup(s.is_some())?;
                s = Some(int(value)?);
            }
            "degree" => {
                dup(degree.is_some())?;
                degree = Some(int(value)?);
            }
            "k" => {
                dup(k.is_some())?;
                k = Some(int(value)?);
            }
            "poly" => {
                dup(poly.is_some())?;
                let inner = value
                    .strip_prefix('"')
                    .and_then(|v| v.strip_suffix('"'))
                    .ok_or_else(|| syntax(line, col, "poly must be a double-quoted expression"))?;
                let p = parse_poly(inner).map_err(|e| syntax(line, col + 1 + e.offset, e.message))?;
                poly = Some(p);
            }
            "" => return Err(syntax(line, 1, "missing key before `=`")),
            other => return Err(syntax(line, 1, format!("unknown key {other:?}"))),
        }
    }
    let missing = |what: &str| syntax(last_line, 1, format!("missing `{what}`"));
    ModularEquation::new(
        name.ok_or_else(|| missing("name"))?,
        level.ok_or_else(|| missing("level"))?,
        s,
        degree.ok_or_else(|| missing("degree"))?,
        k.ok_or_else(|| missing("k"))?,
        poly.ok_or_else(|| missing("poly"))?,
    )
}
