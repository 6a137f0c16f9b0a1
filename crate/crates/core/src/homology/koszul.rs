//! Independent Betti oracle: `Tor_i(S/I, k)_a` from the degree-`a` strand of
//! the Koszul complex `K(x_1..x_n) ⊗ S/I`.
//!
//! The strand in homological degree `i` has basis `e_σ ⊗ x^{a - 1_σ}` for
//! `|σ| = i`, `a - 1_σ ≥ 0` and `x^{a - 1_σ} ∉ I`. Candidate multidegrees
//! are every point of the box `0 ≤ a ≤ lcm(I)`, so the oracle does not rely
//! on lcm-lattice concentration. Membership is a plain generator scan.

use std::collections::HashMap;

use super::betti::{box_points, lcm_lattice, BettiEntry, BettiTable};
use super::complex::boundary_rows;
use super::linalg;
use super::FieldSpec;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

pub const ORACLE_MAX_VARS: usize = 5;
pub const ORACLE_MAX_LATTICE: usize = 64;

/// One multidegree strand: chain dimensions and homology ranks, indexed by
/// homological degree `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulStrand {
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
}

impl KoszulStrand {
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }

    pub fn homology_euler_characteristic(&self) -> i64 {
        alternating_sum(&self.homology)
    }
}

fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// The degree-`a` strand of the Koszul complex of `S/I`.
pub fn koszul_strand(ideal: &MonomialIdeal, a: &Monomial, field: FieldSpec) -> Result<KoszulStrand> {
    let n = ideal.num_vars();
    if a.num_vars() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.num_vars() });
    }
    if n > ORACLE_MAX_VARS {
        return Err(Error::ResourceLimit(format!(
            "Koszul oracle supports at most {ORACLE_MAX_VARS} variables, got {n}"
        )));
    }
    let exps = a.exponents();
    let mut bases: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for sigma in 0u64..(1 << n) {
        let fits = (0..n).all(|j| sigma & (1 << j) == 0 || exps[j] >= 1);
        if !fits {
            continue;
        }
        let coeff: Vec<u32> = (0..n)
            .map(|j| exps[j] - u32::from(sigma & (1 << j) != 0))
            .collect();
        if !ideal.member_exps(&coeff) {
            bases[sigma.count_ones() as usize].push(sigma);
        }
    }
    let index: Vec<HashMap<u64, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, &s)| (s, k)).collect())
        .collect();
    // d(e_σ) = Σ ± x_j e_{σ∖j}; the term survives iff σ∖j is a basis element
    // of the lower degree, which is exactly a face-deletion boundary.
    let mut ranks = vec![0usize; n + 2];
    for i in 1..=n {
        let rows = boundary_rows(&bases[i], &index[i - 1], bases[i - 1].len());
        ranks[i] = linalg::rank(&rows, field);
    }
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let homology = (0..=n).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect();
    Ok(KoszulStrand { dims, homology })
}

/// Betti table of `S/I` via Koszul homology. Intended for small instances:
/// at most [`ORACLE_MAX_VARS`] variables and [`ORACLE_MAX_LATTICE`] lcm-lattice
/// elements.
pub fn betti_table_koszul_oracle(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    ideal.require_proper()?;
    let n = ideal.num_vars();
    if n > ORACLE_MAX_VARS {
        return Err(Error::ResourceLimit(format!(
            "Koszul oracle supports at most {ORACLE_MAX_VARS} variables, got {n}"
        )));
    }
    let lattice = lcm_lattice(ideal).len();
    if lattice > ORACLE_MAX_LATTICE {
        return Err(Error::ResourceLimit(format!(
            "Koszul oracle supports lcm lattices of at most {ORACLE_MAX_LATTICE} elements, got {lattice}"
        )));
    }
    let mut entries = Vec::new();
    for a in box_points(ideal.lcm_of_generators().exponents())? {
        let strand = koszul_strand(ideal, &a, field)?;
        for (i, &rank) in strand.homology.iter().enumerate() {
            if rank > 0 {
                entries.push(BettiEntry {
                    homological_degree: i,
                    multidegree: a.exponents().to_vec(),
                    rank: rank as u64,
                });
            }
        }
    }
    Ok(BettiTable::from_entries(n, field, entries))
}
