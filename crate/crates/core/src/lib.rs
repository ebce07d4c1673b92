//! Exact computations on finite residuated posets and their twist products.

pub mod cli;
pub mod error;
pub mod io;
pub mod kleene;
pub mod order;
pub mod residuation;
pub mod search;
pub mod set;
pub mod twist;
pub mod verdict;

pub use error::{Error, Result};
pub use order::{Element, Involution, Poset};
pub use residuation::{ConditionId, OpTable, ResStructure};
pub use set::ElementSet;
pub use verdict::{Verdict, Witness};
