//! Exact standard bases over `K[t_1..t_m][x_1..x_n]^s` with t-local monomial orderings.
//!
//! The crate provides sparse polynomial vectors, compiled monomial orderings,
//! Mora's weak division with remainder, the homogeneous determinate division,
//! standard bases, Schreyer syzygies, elimination-based ideal operations and
//! t-initial ideals of ideals over Puiseux series.

pub mod cli;
pub mod coeff;
pub mod division;
pub mod error;
pub mod idealops;
pub mod ordering;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod stdbasis;
pub mod syzygy;
pub mod tropical;

pub use coeff::{Coefficient, FieldSpec};
pub use division::{
    dwr, dwr_remainder, dwr_strong, hddwr, Condition, DivisionResult, Grading, HddwrMode,
};
pub use error::{Error, Result};
pub use ordering::{CompiledOrdering, GlobalKind, OrderingSpec, Priority};
pub use poly::{PolyVector, Term};
pub use ring::{Monomial, RingContext};
pub use stdbasis::{GeneratorSet, StdStatus};
