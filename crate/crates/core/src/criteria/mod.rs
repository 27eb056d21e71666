//! Finite-window evaluators for boundary-dynamics criteria.
//!
//! Positive answers come with certificates that [`crate::verify`] can
//! check on their own. Negative answers only cover the parameters and the
//! window that were searched.

mod components;
mod higson;
mod pairs;
mod separation;
mod towers;

pub use components::{
    asdim0_profile, asdim0_row, chain_components, ends_report, split_witness, Asdim0Profile, Asdim0Row, Component,
    ComponentDecomposition, EndsReport, SplitWitness,
};
pub use higson::{higson_from_separated, higson_max, variation_report, HigsonFunction, VariationReport};
pub use pairs::{detect_m32, PairFamily, PairFamilyWitness, PairReport, ScaleOutcome};
pub use separation::{
    divergence_row, separation_at, separation_profile, Annulus, DivergenceRow, Separation, SeparationProfile, Trend,
};
pub use towers::{detect_m2, LevelBound, TowerOutcome, TowerParams, TowerWitness};
