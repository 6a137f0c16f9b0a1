//! Depth certification for monomial quotients.
//!
//! Multigraded Betti numbers of `S/I` come from the reduced homology of the
//! upper Koszul simplicial complexes `K^a(I)`, one per multidegree of the
//! lcm lattice. An independent route computes the same numbers from strands
//! of the Koszul complex on all variables. Depth then follows from
//! Auslander–Buchsbaum as `n - pd`. Graded and local depth coincide for
//! monomial quotients, so the graded value is reported.

mod betti;
mod complex;
mod hilbert;
mod koszul;
pub mod linalg;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use betti::{
    betti_table, betti_table_full_scan, depth, depth_zero_witness, lcm_lattice,
    projective_dimension, upper_koszul_complex, BettiEntry, BettiTable,
};
pub use complex::{reduced_homology_ranks, ReducedHomology, SimplicialComplex, MAX_VERTICES};
pub use hilbert::{hilbert_series, hilbert_series_inclusion_exclusion, HilbertSeries, MAX_INCLUSION_EXCLUSION_GENERATORS};
pub use koszul::{betti_table_koszul_oracle, koszul_strand, KoszulStrand, ORACLE_MAX_LATTICE, ORACLE_MAX_VARS};

/// The coefficient field: characteristic 0 or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidCharacteristic(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn rational() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        FieldSpec::new(p)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => f.write_str("QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
