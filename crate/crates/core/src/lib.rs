//! Polariton spectra of chiral emitters in a single-handedness cavity.
//!
//! The crate goes from a cavity mode and an ensemble of identical chiral
//! emitters to
//!
//! * the dressed frequencies and effective couplings ([`model`]),
//! * the chiral Hopfield polaritons, their coefficients and the vacuum
//!   energy difference between enantiomers ([`hopfield`]),
//! * the single-excitation Tavis-Cummings spectrum, also for modes with
//!   in-plane momentum ([`tavis_cummings`]),
//! * and an exact-diagonalization oracle for the Hopfield results
//!   ([`oracle`]).
//!
//! All quantities are in atomic units with `ħ = 1`.
//!
//! ```
//! use chiralpol::{hopfield, DerivedCouplings};
//!
//! // ω̄ₖ = ω̃ₘ = 1, √N g̃ = 0.1, ξ̃λ = +1
//! let c = DerivedCouplings::collective(1.0, 1.0, 0.1, 1.0).unwrap();
//! let (up, low) = hopfield::polariton_frequencies(&c).unwrap();
//! assert!((up - 1.2).abs() < 1e-12 && (low - 0.8).abs() < 1e-12);
//! ```

pub mod emitter;
pub mod fields;
pub mod hopfield;
pub mod model;
pub mod oracle;
pub mod tavis_cummings;

pub use emitter::{Emitter, EmitterError, OrientationEstimate, ReciprocityViolation};
pub use fields::{CavityMode, FieldError, Handedness, SPEED_OF_LIGHT_AU};
pub use hopfield::{Coefficients, Discrimination, HopfieldVector, PolaritonError, PolaritonSolution};
pub use model::{DerivedCouplings, ModelError, SelfPolarization};
pub use oracle::{FockConfig, OracleError, OracleReport};
pub use tavis_cummings::{DispersionRow, TcError, TcSpectrum};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/emitters.md")]
    mod emitters {}
    #[doc = include_str!("../../../book/src/hopfield.md")]
    mod hopfield {}
    #[doc = include_str!("../../../book/src/tavis_cummings.md")]
    mod tavis_cummings {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
