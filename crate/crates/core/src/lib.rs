//! Exact, finite-depth constructions from algorithmic randomness.
//!
//! * [`bitspace`]: clopen subsets of Cantor space as prefix-free code sets,
//!   with exact dyadic measure, products, powers and localization.
//! * [`kc`]: online Kraft-Chaitin code assignment.
//! * [`machine`]: a catalog-based universal prefix-free machine, bounded
//!   complexity, the universal test approximation and a halting-set
//!   approximation.
//! * [`mltest`]: Martin-Löf tests at finite depth and the set constructions
//!   that move between tests, closed classes and their powers.
//! * [`domination`]: step-indexed oracle functionals, running times and
//!   domination witnesses.
//! * [`formats`]: the line-oriented text formats shared with the CLI.

pub mod bitspace;
pub mod domination;
mod dyadic;
pub mod formats;
pub mod kc;
pub mod machine;
pub mod mltest;

pub use bitspace::{BitString, BitspaceError, ClosedSet, CodeSet, DepthCap, OpenSet};
pub use domination::{DominationError, Eval, Functional, GrowthFunction, TableFunctional};
pub use dyadic::{Dyadic, ParseDyadicError};
pub use formats::FormatError;
pub use kc::{KcError, KraftChaitin, Request};
pub use machine::{MachineError, MachineTable, Outcome, UniversalMachine};
pub use mltest::{MlTest, MlTestError};
