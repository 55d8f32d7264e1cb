//! Torsion bookkeeping for the homotopy groups of `K(S)`, `K(Z)`, `TC(S)` and `TC(Z)`.
//!
//! Everything is exact: Bernoulli numbers are big rationals, torsion groups are
//! multisets of cyclic prime-power factors, and values whose structure is not
//! known carry an explicit certainty tag instead of a guess.

pub mod abgroups;
pub mod assemble;
pub mod cli;
pub mod config;
pub mod cpbar;
pub mod error;
pub mod homvanish;
pub mod kzeta;
pub mod numtheory;
pub mod par;
pub mod params;
pub mod stems;
pub mod tcsplit;

pub use abgroups::{direct_sum, FreeRank, GroupValue, HomotopyGroup, Style, TorsionGroup};
pub use cpbar::CpMode;
pub use error::{Error, Result};
pub use par::Execution;
pub use params::Params;
