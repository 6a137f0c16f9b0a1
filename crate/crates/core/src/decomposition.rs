//! Irreducible decomposition, associated and minimal primes, and Krull
//! dimension of monomial quotients `S/I`.
//!
//! All invariants are computed for the graded ring `S/I`. Every minimal
//! prime of a monomial ideal lies inside the homogeneous maximal ideal, so
//! these values coincide with those of the localization at `(x_1..x_n)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::monomial::{Monomial, MonomialIdeal};

/// A prime generated by a subset of the variables. The empty set is the
/// zero prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = vars.into_iter().collect();
        MonomialPrime { vars: set.into_iter().collect() }
    }

    pub fn zero() -> Self {
        MonomialPrime { vars: Vec::new() }
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(num_vars: usize) -> Self {
        MonomialPrime { vars: (0..num_vars).collect() }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn is_subset(&self, other: &MonomialPrime) -> bool {
        self.vars.iter().all(|v| other.vars.binary_search(v).is_ok())
    }

    /// `P·S + Q·S` for `P` in the first `offset` variables and `Q` in the rest.
    pub fn join(&self, other: &MonomialPrime, offset: usize) -> MonomialPrime {
        MonomialPrime::new(self.vars.iter().copied().chain(other.vars.iter().map(|v| v + offset)))
    }

    pub fn to_ideal(&self, num_vars: usize) -> MonomialIdeal {
        MonomialIdeal::from_variables(num_vars, self.vars.iter().copied())
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PrimeDisplay { prime: self, names }
    }
}

struct PrimeDisplay<'a> {
    prime: &'a MonomialPrime,
    names: &'a [String],
}

impl fmt::Display for PrimeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prime.vars.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (k, &v) in self.prime.vars.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            match self.names.get(v) {
                Some(n) => f.write_str(n)?,
                None => write!(f, "x{}", v + 1)?,
            }
        }
        f.write_str(")")
    }
}

/// An irreducible monomial ideal `(x_i^{a_i} : i in keys)`. Empty `exps`
/// stands for the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IrreducibleComponent {
    num_vars: usize,
    exps: BTreeMap<usize, u32>,
}

impl IrreducibleComponent {
    pub fn new(num_vars: usize, exps: BTreeMap<usize, u32>) -> Self {
        debug_assert!(exps.iter().all(|(&i, &a)| i < num_vars && a > 0));
        IrreducibleComponent { num_vars, exps }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn exponents(&self) -> &BTreeMap<usize, u32> {
        &self.exps
    }

    pub fn support(&self) -> MonomialPrime {
        MonomialPrime::new(self.exps.keys().copied())
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        let n = self.num_vars;
        MonomialIdeal::minimalize(
            self.exps.iter().map(|(&i, &a)| Monomial::var_power(n, i, a)),
            n,
        )
        .expect("pure powers have the ambient length")
    }

    /// True iff `other ⊆ self` as ideals.
    pub fn contains(&self, other: &IrreducibleComponent) -> bool {
        other
            .exps
            .iter()
            .all(|(i, b)| self.exps.get(i).is_some_and(|a| a <= b))
    }

    fn sort_key(&self) -> Vec<Monomial> {
        self.to_ideal().generators().to_vec()
    }
}

/// Everything the decomposition module knows about `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub components: Vec<IrreducibleComponent>,
    pub ass_primes: BTreeSet<MonomialPrime>,
    pub min_primes: BTreeSet<MonomialPrime>,
    pub dimension: usize,
    pub height: usize,
}

/// The irredundant irreducible decomposition of a proper monomial ideal.
///
/// Splits on the graded-lex-first generator that is not a pure power,
/// at the lowest variable of its support: `I = (I', x_i^a) ∩ (I', m')` where
/// `m = x_i^a · m'`. Identical subproblems are solved once.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    ideal.require_proper()?;
    let mut memo = HashMap::new();
    let mut comps = split(ideal, &mut memo);
    comps.sort_by_cached_key(IrreducibleComponent::sort_key);
    Ok(comps)
}

fn split(
    ideal: &MonomialIdeal,
    memo: &mut HashMap<MonomialIdeal, Vec<IrreducibleComponent>>,
) -> Vec<IrreducibleComponent> {
    if let Some(hit) = memo.get(ideal) {
        return hit.clone();
    }
    let n = ideal.num_vars();
    let gens = ideal.generators();
    let pivot = gens.iter().position(|g| g.as_pure_power().is_none());
    let result = match pivot {
        None => {
            let exps = gens.iter().filter_map(Monomial::as_pure_power).collect();
            vec![IrreducibleComponent::new(n, exps)]
        }
        Some(k) => {
            let m = &gens[k];
            let i = m.support().next().expect("a non-pure-power has support");
            let a = m.exponents()[i];
            let mut rest_exps = m.exponents().to_vec();
            rest_exps[i] = 0;
            let rest = Monomial::new(rest_exps);
            let others = || gens.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, g)| g.clone());
            let left = MonomialIdeal::minimalize(
                others().chain(std::iter::once(Monomial::var_power(n, i, a))),
                n,
            )
            .expect("same ambient");
            let right = MonomialIdeal::minimalize(others().chain(std::iter::once(rest)), n)
                .expect("same ambient");
            let mut comps = split(&left, memo);
            comps.extend(split(&right, memo));
            irredundant(comps)
        }
    };
    memo.insert(ideal.clone(), result.clone());
    result
}

/// Drops duplicates and every component that contains the intersection of
/// the others. An irreducible monomial ideal contains an intersection of
/// monomial ideals only if it contains one of them, so the test reduces to
/// pairwise containment.
fn irredundant(mut comps: Vec<IrreducibleComponent>) -> Vec<IrreducibleComponent> {
    comps.sort_by_cached_key(IrreducibleComponent::sort_key);
    comps.dedup();
    let keep: Vec<bool> = comps
        .iter()
        .enumerate()
        .map(|(a, c)| {
            !comps
                .iter()
                .enumerate()
                .any(|(b, other)| a != b && c.contains(other))
        })
        .collect();
    comps
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// `Ass(S/I)`: the supports of the irredundant irreducible components.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    Ok(irreducible_decomposition(ideal)?
        .iter()
        .map(IrreducibleComponent::support)
        .collect())
}

/// The inclusion-minimal elements of a set of primes.
pub fn minimal_elements(primes: &BTreeSet<MonomialPrime>) -> BTreeSet<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect()
}

pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    Ok(minimal_elements(&associated_primes(ideal)?))
}

pub fn height(prime: &MonomialPrime) -> usize {
    prime.height()
}

/// Krull dimension of `S/I`: `n` minus the least height of a minimal prime.
pub fn dimension(ideal: &MonomialIdeal) -> Result<usize> {
    let mins = minimal_primes(ideal)?;
    Ok(dimension_from_min_primes(ideal.num_vars(), &mins))
}

fn dimension_from_min_primes(num_vars: usize, mins: &BTreeSet<MonomialPrime>) -> usize {
    let h = mins.iter().map(MonomialPrime::height).min().unwrap_or(0);
    num_vars - h
}

pub fn decompose(ideal: &MonomialIdeal) -> Result<DecompositionResult> {
    let components = irreducible_decomposition(ideal)?;
    let ass_primes: BTreeSet<_> = components.iter().map(IrreducibleComponent::support).collect();
    let min_primes = minimal_elements(&ass_primes);
    let height = min_primes.iter().map(MonomialPrime::height).min().unwrap_or(0);
    let dimension = dimension_from_min_primes(ideal.num_vars(), &min_primes);
    Ok(DecompositionResult { components, ass_primes, min_primes, dimension, height })
}

/// Intersection of a list of components as a monomial ideal.
pub fn intersect_components(num_vars: usize, comps: &[IrreducibleComponent]) -> MonomialIdeal {
    comps.iter().fold(MonomialIdeal::unit(num_vars), |acc, c| {
        acc.intersect(&c.to_ideal()).expect("components share the ambient ring")
    })
}
