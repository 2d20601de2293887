//! Chaotic-iteration pseudo-random number generation.
//!
//! The crate is organised bottom-up:
//!
//! - [`bitcore`]: configurations of `B^n`, Boolean functions stored as truth
//!   tables, and the single-component update `F_f` driven by a strategy.
//! - [`xorshift`]: the 32-bit (13, 17, 5) XORshift word source.
//! - [`graphgen`]: iteration graphs, strong connectivity, randomized
//!   edge-removal generation and isomorphism deduplication.
//! - [`markov`]: exact reach distributions of the uniform-strategy chain and
//!   the deviation from uniformity.
//! - [`prng`]: the legacy `(XORshift, XORshift)` generator and the chaotic
//!   iteration generator parameterised by any strongly connected function.
//! - [`stattests`]: a NIST SP 800-22 subset, the `P_T` meta-test and the
//!   successor repartition matrix.

pub mod bitcore;
pub mod catalog;
mod error;
pub mod graphgen;
pub mod markov;
pub mod prng;
pub mod stattests;
pub mod xorshift;

pub use bitcore::{BooleanFunction, Configuration, Strategy, MAX_COMPONENTS, MIN_COMPONENTS};
pub use error::{Error, Result};
pub use xorshift::{WordSource, Xorshift32};
