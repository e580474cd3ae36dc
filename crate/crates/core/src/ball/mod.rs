//! Certified midpoint–radius arithmetic over arbitrary-precision binary floats.

mod complex;
mod decimal;
mod float;
mod real;

pub use complex::ComplexBall;
pub use decimal::{parse as parse_decimal, render as render_decimal};
pub use float::{Float, Round};
pub use real::RealBall;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallError {
    #[error("ball reaches the branch cut and no side was given")]
    BranchCutStraddle,
    #[error("divisor ball contains zero")]
    DivisorContainsZero,
    #[error("iteration did not converge")]
    NonConvergence,
    #[error("{0}")]
    Domain(String),
}

/// Which half-plane a point on a branch cut is approached from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "upper" | "+" => Ok(Side::Upper),
            "lower" | "-" => Ok(Side::Lower),
            _ => Err(format!("unknown side {s:?}, expected upper or lower")),
        }
    }
}
