//! Homology-level obstruction calculus for generating sets of the mapping
//! class group of a non-orientable surface N_g.
//!
//! The library computes the Z2-homology action of Dehn twists
//! (transvections) and Y-homeomorphisms (trivial), the Z4-quadratic-form
//! calculus on H1(N_g; Z2), and a certifier that checks the necessary
//! conditions for a proposed generating set: at least one Y-homeomorphism
//! and at least g Dehn twists. Every failure comes with a machine-checkable
//! certificate, and a BFS matrix-group explorer cross-validates the
//! obstructions at small genus.

pub mod certifier;
pub mod error;
pub mod explorer;
pub mod gf2;
pub mod homology;
pub mod io;
pub mod quadform;
pub mod transvection;

pub use certifier::{certify, verify_certificate, Certificate, GeneratorSet, Verdict};
pub use error::{Error, Result};
pub use gf2::{GF2Matrix, Z2Vector, MAX_GENUS};
pub use quadform::Z4Form;
