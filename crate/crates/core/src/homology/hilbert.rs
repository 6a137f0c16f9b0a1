//! Hilbert series of `S/I` in the standard grading.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Generator-count guard for the inclusion–exclusion formula (`2^g` terms).
pub const MAX_INCLUSION_EXCLUSION_GENERATORS: usize = 20;

/// `numerator(t) / (1 - t)^denominator_exponent`, kept in lowest terms:
/// the numerator is not divisible by `1 - t` unless the exponent is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    denominator_exponent: usize,
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, denominator_exponent: usize) -> Self {
        let mut hs = HilbertSeries { numerator, denominator_exponent };
        hs.canonicalize();
        hs
    }

    /// Coefficients of the numerator, lowest degree first.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator_exponent(&self) -> usize {
        self.denominator_exponent
    }

    fn canonicalize(&mut self) {
        trim(&mut self.numerator);
        while self.denominator_exponent > 0 && self.numerator.iter().sum::<i64>() == 0 {
            // N(t) = (1 - t) Q(t)  =>  q_k = q_{k-1} + n_k
            let mut q = Vec::with_capacity(self.numerator.len());
            let mut acc = 0i64;
            for &c in &self.numerator[..self.numerator.len().saturating_sub(1)] {
                acc += c;
                q.push(acc);
            }
            self.numerator = q;
            trim(&mut self.numerator);
            self.denominator_exponent -= 1;
        }
    }

    /// The series of a tensor product over `k`.
    pub fn mul(&self, other: &HilbertSeries) -> Result<HilbertSeries> {
        Ok(HilbertSeries::new(
            poly_mul(&self.numerator, &other.numerator)?,
            self.denominator_exponent + other.denominator_exponent,
        ))
    }

    /// The first `len` power-series coefficients.
    pub fn coefficients(&self, len: usize) -> Vec<i64> {
        let mut c: Vec<i64> = (0..len)
            .map(|k| self.numerator.get(k).copied().unwrap_or(0))
            .collect();
        for _ in 0..self.denominator_exponent {
            for k in 1..len {
                c[k] += c[k - 1];
            }
        }
        c
    }

    /// Krull dimension of the quotient: the order of the pole at `t = 1`.
    pub fn dimension(&self) -> usize {
        self.denominator_exponent
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_poly(&self.numerator))?;
        match self.denominator_exponent {
            0 => Ok(()),
            1 => f.write_str("/(1-t)"),
            e => write!(f, "/(1-t)^{e}"),
        }
    }
}

/// `1 + t - t^2` style rendering of integer coefficients.
pub fn format_poly(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        match k {
            0 => out.push_str(&a.to_string()),
            _ => {
                if a != 1 {
                    out.push_str(&a.to_string());
                }
                out.push('t');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn trim(p: &mut Vec<i64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn overflow() -> Error {
    Error::ResourceLimit("Hilbert numerator coefficient overflow".into())
}

fn poly_mul(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let t = x.checked_mul(y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(t).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

fn poly_add(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (k, slot) in out.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *slot = x.checked_add(y).ok_or_else(overflow)?;
    }
    Ok(out)
}

/// `1 - t^d`.
fn one_minus_t_pow(d: u64) -> Vec<i64> {
    let mut p = vec![0i64; d as usize + 1];
    p[0] += 1;
    p[d as usize] -= 1;
    p
}

/// Numerator over `(1 - t)^n`, by the pivot recursion
/// `N(I) = N(I + (x_j)) + t · N(I : x_j)` on a variable shared by at least
/// two generators. Pairwise coprime generators give `∏ (1 - t^{deg g})`.
fn pivot_numerator(ideal: &MonomialIdeal) -> Result<Vec<i64>> {
    if ideal.is_unit() {
        return Ok(Vec::new());
    }
    let n = ideal.num_vars();
    let gens = ideal.generators();
    let mut counts = vec![0usize; n];
    for g in gens {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let pivot = (0..n).filter(|&v| counts[v] >= 2).max_by_key(|&v| (counts[v], std::cmp::Reverse(v)));
    match pivot {
        None => gens.iter().try_fold(vec![1i64], |acc, g| poly_mul(&acc, &one_minus_t_pow(g.degree()))),
        Some(v) => {
            let x = Monomial::var(n, v);
            let with_x = pivot_numerator(&ideal.sum(&MonomialIdeal::principal(x.clone()))?)?;
            let colon = pivot_numerator(&ideal.colon(&x)?)?;
            let mut shifted = vec![0i64];
            shifted.extend(colon);
            poly_add(&with_x, &shifted)
        }
    }
}

/// The Hilbert series of `S/I` in lowest terms.
pub fn hilbert_series(ideal: &MonomialIdeal) -> Result<HilbertSeries> {
    ideal.require_proper()?;
    Ok(HilbertSeries::new(pivot_numerator(ideal)?, ideal.num_vars()))
}

/// The Hilbert series from `Σ_{σ ⊆ gens} (-1)^{|σ|} t^{deg lcm(σ)}`.
/// Refuses ideals with more than [`MAX_INCLUSION_EXCLUSION_GENERATORS`]
/// generators.
pub fn hilbert_series_inclusion_exclusion(ideal: &MonomialIdeal) -> Result<HilbertSeries> {
    ideal.require_proper()?;
    let gens = ideal.generators();
    if gens.len() > MAX_INCLUSION_EXCLUSION_GENERATORS {
        return Err(Error::ResourceLimit(format!(
            "inclusion-exclusion supports at most {MAX_INCLUSION_EXCLUSION_GENERATORS} generators, got {}",
            gens.len()
        )));
    }
    let mut numerator = Vec::new();
    fn walk(gens: &[Monomial], start: usize, lcm: &Monomial, odd: bool, out: &mut Vec<i64>) {
        let d = lcm.degree() as usize;
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += if odd { -1 } else { 1 };
        for k in start..gens.len() {
            let next = lcm.lcm_unchecked(&gens[k]);
            walk(gens, k + 1, &next, !odd, out);
        }
    }
    walk(gens, 0, &Monomial::one(ideal.num_vars()), false, &mut numerator);
    Ok(HilbertSeries::new(numerator, ideal.num_vars()))
}
