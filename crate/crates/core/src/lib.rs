//! Rational Ramanujan-type series for 1/π: exact derivation from modular
//! equations, certification, and evaluation by binary splitting.

pub mod ball;
pub mod derive;
pub mod exactnum;
pub mod hyper;
pub mod identify;
pub mod modeq;
pub mod piengine;
