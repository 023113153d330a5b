//! Rings of Dirichlet convolutions over submonoids of the positive integers.
//!
//! The crate works with arithmetic functions stored exactly on every monoid
//! element up to a bound, the modules and derivations built on them, the
//! extension to the Grothendieck group of the monoid, and the identifications
//! with truncated power series and Laurent series in prime-indexed variables.

pub mod derivation;
pub mod dirichlet;
pub mod error;
pub mod eval;
pub mod grothendieck;
pub mod module;
pub mod monoid;
pub mod primes;
pub mod ring;
pub mod series;
pub mod text;

pub mod cli;

pub use dirichlet::{ArithFunction, Norm, TotallyMultiplicativeFn};
pub use error::{Error, Result};
pub use monoid::{MonoidElement, MonoidSpec, Window};
pub use ring::{RingDescriptor, RingElement};
