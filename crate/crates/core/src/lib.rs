//! Exact formal calculus: truncated power series, the derivation-based
//! Faà di Bruno machinery, attached umbral sequences and shifts, and the
//! quadratic Virasoro representation on `y C[x_1, x_2, ...]`.
//!
//! Every coefficient is an exact [`Rational`]; identities are checked with
//! zero tolerance.

pub mod dsl;
pub mod error;
pub mod genseries;
pub mod poly_ring;
pub mod random;
pub mod rational;
pub mod series;
pub mod umbral;
pub mod univar;
pub mod verify;
pub mod virasoro;

pub use error::{Error, Result};
pub use genseries::{Algebra, GenSeries};
pub use poly_ring::{Monomial, MultiPoly};
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use univar::UnivarPoly;
pub use verify::{EntryReport, VerifyConfig};
pub use virasoro::{FTable, FockPoly};
