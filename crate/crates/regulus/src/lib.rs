//! regulus: a finite-scale engine for colimit completions of finite
//! categories.
//!
//! The crate evaluates colimit recipes in set-valued presheaf categories,
//! searches for and certifies regular-closure membership, and decides or
//! semi-decides cofinality, siftedness, filteredness, weak contractibility,
//! and colimit preservation, all for finite categories given by explicit
//! composition tables.

pub mod cofinality;
pub mod completion;
pub mod corpus;
pub mod dsl;
pub mod fincat;
pub mod homotopy;
pub mod presheaf;
pub mod verdict;

pub use fincat::{FiniteCategory, FunctorData};
pub use presheaf::{NatTrans, Presheaf};
pub use verdict::{Bounds, Verdict, VerdictStatus};
