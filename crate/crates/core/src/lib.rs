//! Gelfond exponents of generalized Thue-Morse sequences, computed by
//! certifying the Sturmian measure that maximizes `log φ_c`.
//!
//! The pipeline runs from the potential ([`potential`]) and the exit-set
//! dynamics of the inverse branch ([`circle`]) through exact Sturmian cycles
//! ([`sturmian`]) to certified `β` and `γ` ([`gelfond`]). Independent checks
//! live in [`polyseries`] and [`checks`]; [`export`] writes CSV and JSON.
//!
//! ```
//! use gelfond::gelfond::gelfond_exponent;
//! use gelfond::potential::PotentialParams;
//!
//! let out = gelfond_exponent(&PotentialParams::new(2, 0.25)?, 13)?;
//! let cert = out.certificate().unwrap();
//! assert_eq!(cert.cycle.period, 4);
//! # Ok::<(), gelfond::Error>(())
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod circle;
pub mod error;
pub mod export;
pub mod gelfond;
pub mod numeric;
pub mod polyseries;
pub mod potential;
pub mod rational;
pub mod sturmian;

pub use error::{Error, Result};

/// Guide chapters, compiled so their snippets run as doc-tests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/potential.md")]
    pub mod potential {}
    #[doc = include_str!("../../../book/src/cycles.md")]
    pub mod cycles {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    pub mod certificates {}
    #[doc = include_str!("../../../book/src/tables.md")]
    pub mod tables {}
    #[doc = include_str!("../../../book/src/sums.md")]
    pub mod sums {}
    #[doc = include_str!("../../../book/src/checks.md")]
    pub mod checks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
