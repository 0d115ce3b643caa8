//! Exact arithmetic for q-deformed Witt vectors W̄^g / W^m, their necklace
//! partners B̄^g / B^m, the power-series presentation, q-deformed symmetric
//! functions, and the Teichmüller-type maps linking them. Everything is
//! truncated at a finite level N and computed without rounding.

mod arith;
pub mod bridges;
pub mod error;
pub mod exactalg;
pub mod rings;
pub mod symfun;
pub mod lambdaf;
pub mod necklace;
pub mod witt;

pub use error::{Error, Result};
