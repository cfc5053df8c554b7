//! Exact counting of k-bit Gray codes by transition counts, parity
//! classification of equiparting matrices under the hyperoctahedral
//! group, and the hyperplane mass-partition bounds those parities
//! certify.
//!
//! The building blocks, bottom to top:
//!
//! - [`graycode`]: Gray codes, delta sequences, transition counts and
//!   the (Z/2)^k ⋊ S_k action.
//! - [`enumerator`]: pruned exhaustive search over delta sequences and
//!   exact transition-count histograms.
//! - [`numtheory`]: the 2-adic valuation arithmetic behind every
//!   parity argument.
//! - [`parity`]: tuple counts by sparse lattice convolution, orbit
//!   parities, minimal-maximum scans, and their closed forms.
//! - [`bounds`]: the resulting dimension bounds and comparison tables.

pub mod bounds;
pub mod enumerator;
mod error;
pub mod graycode;
pub mod numtheory;
pub mod parity;

pub use error::{Error, Result};
pub use graycode::{DeltaSequence, GrayCode, SignedPermutation, TransitionCounts, MAX_K};
pub use enumerator::{CountHistogram, PruneSpec};
