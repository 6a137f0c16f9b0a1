//! Monomials and monomial ideals.
//!
//! A [`Monomial`] is an exponent vector over a fixed, positional set of
//! variables. A [`MonomialIdeal`] stores its minimal generators as a
//! divisibility antichain sorted in graded lexicographic order, so two equal
//! ideals always have identical representations. Every operation returns a
//! fresh value; nothing here mutates its inputs.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the total degree of any monomial the engine creates.
pub const DEFAULT_MAX_TOTAL_DEGREE: u64 = 1_000_000;

static MAX_TOTAL_DEGREE: AtomicU64 = AtomicU64::new(DEFAULT_MAX_TOTAL_DEGREE);

/// Overrides the total-degree guard for the whole process.
pub fn set_max_total_degree(limit: u64) {
    MAX_TOTAL_DEGREE.store(limit, AtomicOrdering::Relaxed);
}

pub fn max_total_degree() -> u64 {
    MAX_TOTAL_DEGREE.load(AtomicOrdering::Relaxed)
}

fn check_degree(degree: u64) -> Result<()> {
    let limit = max_total_degree();
    if degree > limit {
        return Err(Error::DegreeGuard { degree, limit });
    }
    Ok(())
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Wraps an exponent vector without checking the degree guard.
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// Like [`Monomial::new`] but rejects vectors above the degree guard.
    pub fn checked(exps: Vec<u32>) -> Result<Self> {
        let m = Monomial { exps };
        check_degree(m.degree())?;
        Ok(m)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars] }
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        Self::var_power(num_vars, index, 1)
    }

    pub fn var_power(num_vars: usize, index: usize, exp: u32) -> Self {
        let mut exps = vec![0; num_vars];
        exps[index] = exp;
        Monomial { exps }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of the variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// `Some((i, a))` when the monomial is `x_i^a` with `a > 0`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_len(self.num_vars(), other.num_vars())?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self.num_vars(), other.num_vars())?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self.num_vars(), other.num_vars())?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect(),
        })
    }

    /// Product of two monomials, subject to the degree guard.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self.num_vars(), other.num_vars())?;
        check_degree(self.degree() + other.degree())?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| {
                a.checked_add(b).ok_or(Error::DegreeGuard {
                    degree: a as u64 + b as u64,
                    limit: max_total_degree(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    /// `self / gcd(self, other)`: the monomial quotient used by colon ideals.
    pub(crate) fn saturating_div(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    /// The squarefree part: every positive exponent replaced by 1.
    pub fn support_monomial(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| u32::from(e > 0)).collect(),
        }
    }

    /// Extends the exponent vector with `before` leading and `after`
    /// trailing zeros.
    pub fn pad(&self, before: usize, after: usize) -> Monomial {
        let mut exps = Vec::with_capacity(before + self.exps.len() + after);
        exps.resize(before, 0);
        exps.extend_from_slice(&self.exps);
        exps.resize(before + self.exps.len() + after, 0);
        Monomial { exps }
    }

    /// Renders the monomial with the given variable names, e.g. `x^2*y`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, names }
    }
}

/// Graded lexicographic order: lower total degree first, then larger
/// exponents on earlier variables first (`x^2 < x*y < y^2`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match self.names.get(i) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "x{}", i + 1)?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Variable names for a positional ring `k[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingContext {
    var_names: Vec<String>,
}

impl RingContext {
    pub fn new(var_names: Vec<String>) -> Result<Self> {
        for (i, name) in var_names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidContext("empty variable name".into()));
            }
            if var_names[..i].contains(name) {
                return Err(Error::InvalidContext(format!("duplicate variable name `{name}`")));
            }
        }
        Ok(RingContext { var_names })
    }

    /// The default names `x1, ..., xn`.
    pub fn positional(num_vars: usize) -> Self {
        RingContext {
            var_names: (0..num_vars).map(positional_name).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }

    /// Context of the join: names of `self` followed by names of `other`.
    pub fn join(&self, other: &RingContext) -> Result<RingContext> {
        let mut names = self.var_names.clone();
        names.extend(other.var_names.iter().cloned());
        RingContext::new(names)
    }
}

/// Canonical positional name of variable `index` (0-based): `x1`, `x2`, ...
pub fn positional_name(index: usize) -> String {
    format!("x{}", index + 1)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, reduced to its minimal generators.
    pub fn minimalize<I>(gens: I, num_vars: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut candidates: Vec<Monomial> = gens.into_iter().collect();
        for g in &candidates {
            check_len(num_vars, g.num_vars())?;
        }
        candidates.sort_unstable();
        candidates.dedup();
        // A proper divisor has strictly smaller degree, so it is already kept
        // by the time its multiples are examined.
        let mut kept: Vec<Monomial> = Vec::with_capacity(candidates.len());
        for g in candidates {
            if !kept.iter().any(|k| k.divides_unchecked(&g)) {
                kept.push(g);
            }
        }
        Ok(MonomialIdeal { num_vars, generators: kept })
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal { num_vars, generators: Vec::new() }
    }

    pub fn unit(num_vars: usize) -> Self {
        MonomialIdeal { num_vars, generators: vec![Monomial::one(num_vars)] }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal { num_vars: m.num_vars(), generators: vec![m] }
    }

    /// The prime generated by the listed variables.
    pub fn from_variables(num_vars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let gens = vars.into_iter().map(|i| Monomial::var(num_vars, i));
        Self::minimalize(gens, num_vars).expect("variable monomials have the ambient length")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// Fails with [`Error::ImproperIdeal`] on the unit ideal.
    pub fn require_proper(&self) -> Result<()> {
        if self.is_unit() {
            return Err(Error::ImproperIdeal);
        }
        Ok(())
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        check_len(self.num_vars, other.num_vars)
    }

    pub fn member(&self, m: &Monomial) -> Result<bool> {
        check_len(self.num_vars, m.num_vars())?;
        Ok(self.member_unchecked(m))
    }

    pub(crate) fn member_unchecked(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides_unchecked(m))
    }

    /// Membership for a raw exponent slice of the ambient length.
    pub(crate) fn member_exps(&self, exps: &[u32]) -> bool {
        self.generators
            .iter()
            .any(|g| g.exps.iter().zip(exps).all(|(a, b)| a <= b))
    }

    /// True iff `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.generators.iter().all(|g| self.member_unchecked(g)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        Self::minimalize(
            self.generators.iter().chain(&other.generators).cloned(),
            self.num_vars,
        )
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for g in &self.generators {
            for h in &other.generators {
                gens.push(g.mul(h)?);
            }
        }
        Self::minimalize(gens, self.num_vars)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for g in &self.generators {
            for h in &other.generators {
                gens.push(g.lcm_unchecked(h));
            }
        }
        Self::minimalize(gens, self.num_vars)
    }

    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Ok(Self::unit(self.num_vars));
        }
        let top = self.generators.iter().map(Monomial::degree).max().unwrap_or(0);
        check_degree(top.saturating_mul(k as u64))?;
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I : m`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        check_len(self.num_vars, m.num_vars())?;
        Self::minimalize(
            self.generators.iter().map(|g| g.saturating_div(m)),
            self.num_vars,
        )
    }

    /// `I : J`, the intersection of `I : m` over the generators `m` of `J`.
    /// `I : 0` is the unit ideal.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut acc = Self::unit(self.num_vars);
        for m in &other.generators {
            acc = acc.intersect(&self.colon(m)?)?;
        }
        Ok(acc)
    }

    pub fn radical(&self) -> MonomialIdeal {
        Self::minimalize(
            self.generators.iter().map(Monomial::support_monomial),
            self.num_vars,
        )
        .expect("support monomials keep the ambient length")
    }

    /// The componentwise maximum of all generators (`1` for the zero ideal).
    pub fn lcm_of_generators(&self) -> Monomial {
        self.generators
            .iter()
            .fold(Monomial::one(self.num_vars), |acc, g| acc.lcm_unchecked(g))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        IdealDisplay { ideal: self, names }
    }
}

/// `I ⊗ J` in disjoint variables: the ideal `I·S + J·S` of
/// `S = k[x_1..x_m, y_1..y_p]`, presenting `k[x]/I ⊗_k k[y]/J`.
pub fn join_ideals(left: &MonomialIdeal, right: &MonomialIdeal) -> MonomialIdeal {
    let (m, p) = (left.num_vars, right.num_vars);
    let gens = left
        .generators
        .iter()
        .map(|g| g.pad(0, p))
        .chain(right.generators.iter().map(|h| h.pad(m, 0)));
    MonomialIdeal::minimalize(gens, m + p).expect("padded generators have length m + p")
}

struct IdealDisplay<'a> {
    ideal: &'a MonomialIdeal,
    names: &'a [String],
}

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ideal.is_zero() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.ideal.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display_with(self.names))?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = RingContext::positional(self.num_vars);
        let shown = self.display_with(ctx.var_names()).to_string();
        f.write_str(&shown)
    }
}
