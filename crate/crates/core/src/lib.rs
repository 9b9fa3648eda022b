//! Exact q-expansions, weakly holomorphic modular forms and the Anderson
//! duality pairings that bound the periodicity of SQFT and SQM.

pub mod cli;
pub mod cosets;
pub mod error;
pub mod expr;
pub mod mfring;
pub mod pairing;
pub mod periodicity;
pub mod qseries;
pub mod witnesses;

pub use error::{Error, Result};

/// Default number of determined coefficients for catalog expansions.
pub const DEFAULT_TERMS: i64 = 80;

/// Default lowest `Δ`-exponent for randomized members.
pub const DEFAULT_D_MIN: i64 = -25;

/// The guide's code listings, compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/qseries.md")]
    mod qseries {}
    #[doc = include_str!("../../../book/src/modular-forms.md")]
    mod modular_forms {}
    #[doc = include_str!("../../../book/src/cosets.md")]
    mod cosets {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    mod witnesses {}
    #[doc = include_str!("../../../book/src/pairing.md")]
    mod pairing {}
    #[doc = include_str!("../../../book/src/periodicity.md")]
    mod periodicity {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
