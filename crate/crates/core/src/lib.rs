//! Exact finite-window coarse geometry.
//!
//! Every space in [`zoo`] comes with an exact distance oracle and a ball
//! enumerator. A [`Window`] is a finite piece of such a space whose
//! distances are the ambient ones; points within `horizon - m` of the
//! basepoint are trusted for any question asked at radius `m`.
//!
//! On top of windows the crate provides the inverse semigroup of partial
//! translations ([`translations`]), finite evaluators for boundary-dynamics
//! criteria ([`criteria`]), exact band operators and a finite model of the
//! cluster-limit representations ([`roe`]), and standalone certificate
//! checkers ([`verify`]) that share no code with the searches.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod criteria;
pub mod error;
pub mod matching;
pub mod rational;
pub mod roe;
pub mod space;
pub mod translations;
pub mod unionfind;
pub mod verify;
pub mod zoo;

pub use error::{Error, Result};
pub use rational::Rational;
pub use space::{Coords, Point, PointId, PointSet, Space, SpaceKind, Window};
pub use zoo::{SpaceSpec, WindowSpec};

/// Tag attached to every reported result.
///
/// Positive results carry a finite certificate that an independent checker
/// accepts. Negative results only say that nothing was found at the given
/// parameters inside the window; they never decide the infinite statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Epistemic {
    Certificate,
    NoWitnessAtScale,
    Profile,
}
