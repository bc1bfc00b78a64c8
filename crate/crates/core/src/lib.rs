//! Exact piecewise power-log functions, their Cesaro transforms and
//! decreasing rearrangements, symmetric and Cesaro function space norms, and
//! order-continuity diagnostics with independent numerical cross-checks.

pub mod catalog;
pub mod cesaro;
pub mod cli;
pub mod doc;
pub mod error;
pub mod gauge;
pub mod limits;
pub mod norms;
pub mod oc;
pub mod oracle;
pub mod ppl;
pub mod quad;
pub mod rearrange;
pub mod roots;
pub mod set;
pub mod space;
pub mod term;

pub use error::{Error, Result};
pub use ppl::{CombineOp, Piece, Ppl};
pub use set::{Domain, MeasurableSet};
pub use term::Term;
