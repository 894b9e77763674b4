//! Harmonic analysis on the n-torus with a linearly ordered frequency
//! lattice.
//!
//! The character group of the torus `Tⁿ` is `ℤⁿ`; a cone-sign rule (by
//! default the lexicographic one) turns it into a linearly ordered group.
//! On top of that order the crate provides:
//!
//! - [`order`] — character-lattice arithmetic, cone enumeration, the least
//!   positive element, and the reflection pairing the nonnegative and
//!   negative cones;
//! - [`poly`] — sparse trigonometric polynomials with exact coefficient
//!   arithmetic, grid evaluation, and norm estimates;
//! - [`transforms`] — the Hilbert transform as a Fourier multiplier and the
//!   Hardy projections, with their interconversion formulas;
//! - [`hankel`] — Hankel operators in both the function realization
//!   (`f ↦ P₋(φf)`) and the sequence realization (entries indexed by sums),
//!   finite truncations, singular-value estimates, and the unitary
//!   re-indexing between the two;
//! - [`bmo`] — upper bounds on the bounded-mean-oscillation norms via
//!   explicit decompositions, lower bounds via truncated Hankel norms, and
//!   the verifier for the norm-equivalence sandwich;
//! - [`verify`] — the seeded identity/inequality suite behind the CLI.
//!
//! Truncated operator norms are always certified lower bounds; sup norms
//! are always grid lower bounds. Inequality checks are arranged so that the
//! computable side keeps them sound, with a declared slack covering the
//! grid's underestimate.

pub mod bmo;
pub mod config;
pub mod error;
pub mod hankel;
pub mod order;
pub mod poly;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use order::{CharacterIndex, ConeSelect, IndexBox, OrderSpec};
pub use poly::{GridSpec, SymbolFile, SymbolTerm, TrigPoly};
