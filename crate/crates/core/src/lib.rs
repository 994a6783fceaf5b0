//! Lower and upper bounds on the nonorientable 4-genus `γ₄` of double
//! twist knots `C(m, n)`.
//!
//! Lower bounds come from lattice-embedding obstructions (reduced to small
//! Diophantine problems), upper bounds from the crosscap number and from
//! band moves to slice 2-bridge knots. The [`lattice`] module decides the
//! embedding questions directly by exhaustive search and serves as an
//! independent check on the reductions.

pub mod acceptance;
pub mod arith;
pub mod bridge;
pub mod diophantine;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod obstructions;
pub mod report;
pub mod surgery;
pub mod twist;

pub use bridge::{canonicalize, Canonical, DoubleTwist, TwoBridgeFraction};
pub use error::{Error, Result};
pub use report::{GenusReport, TableCell};
