//! Kohnert diagrams, restricted insertion, and expansions of a Demazure
//! character times a Schur polynomial.

pub mod chain;
pub mod composition;
pub mod diagram;
pub mod error;
pub mod expansions;
pub mod figures;
pub mod insertion;
pub mod kohnert;
pub mod labeling;
pub mod poly;
pub mod skew;
pub mod tableau;
pub mod thread;
pub mod verify;

pub use composition::Composition;
pub use diagram::{Cell, Diagram};
pub use error::{Error, Result};
