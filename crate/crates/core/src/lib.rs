//! Operator-algebra engine for non-commutative quantum games.
//!
//! Payoffs are Hermitian operators built from an arbiter's round-counting
//! and step operators. The crate constructs those operators as dense complex
//! matrices, verifies their commutation relations on the subspaces where
//! truncation is exact, and evaluates payoff statistics of game states.

pub mod error;
pub mod fock;
pub mod lie;
pub mod multimode;
pub mod operator;
pub mod scenario;
pub mod space;

pub use error::{GameError, Result};
pub use operator::{
    commutator, embed_mode, hermitian_eigensystem, is_hermitian, spectral_norm, EigenSystem, OperatorMatrix,
};
pub use space::{prepare_state, GameSpace, GameState};
