//! Deformed Fuss numbers `a_n(p, t)`: exact sequences, free-probability
//! transforms as exact power series, the densities `f_{p,t}`, and the
//! positive-definiteness classification of the `(p, t)` plane.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod error;
pub mod exact_seq;
pub mod params;
pub mod posdef;
pub mod rational;
pub mod series;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use params::{Mode, Params};
pub use rational::Rational;
pub use series::TruncSeries;
pub use table::SeqTable;
