//! A toy universal prefix-free machine with oracle, time-bounded
//! complexity, the universal test approximation and the halting-set
//! approximation that plays the role of `0'`.

mod complexity;
mod halting;
mod table;
mod universal;

pub use halting::{HaltingApprox, HaltingDump, HaltingTimeline};
pub use table::{icm_to_machine, Icm, MachineTable};
pub use universal::{
    encode_length, Outcome, Registration, SubMachine, TableMachine, UniversalMachine,
    DEFAULT_CAPACITY,
};

use thiserror::Error;

use crate::bitspace::{BitString, BitspaceError};
use crate::kc::KcError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("CatalogFull: the catalog holds at most {capacity} machines")]
    CatalogFull { capacity: usize },
    #[error("{source} (at entry {entry})")]
    Request { entry: BitString, source: KcError },
    #[error(transparent)]
    Bitspace(#[from] BitspaceError),
}
