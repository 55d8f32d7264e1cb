use serde::{Deserialize, Serialize};

use crate::cpbar::CpMode;
use crate::numtheory::VERIFIED_KV_BOUND;

/// Knobs shared by the computations that depend on unproven inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Primes up to this bound are treated as satisfying Kummer-Vandiver.
    pub kv_bound: u64,
    pub cp_mode: CpMode,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            kv_bound: VERIFIED_KV_BOUND,
            cp_mode: CpMode::Calibrated,
        }
    }
}
