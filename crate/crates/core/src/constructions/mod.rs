//! Rings with prescribed (dimension, depth) and flat local morphisms
//! between them.
//!
//! A ring of dimension `n` and depth `d` is `S/I` with
//! `S = k[X_0..X_r, T_1..T_d]`, `r = n - d` and `I = (X_0) ∩ (X_0..X_r)^{r+1}`
//! (the polynomial ring in `n` variables when `r = 0`). For targets
//! `(n1, d1) → (n2, d2)` the morphism is `A → A ⊗_k C` with `A` built for
//! `(n1, d1)` and `C` for `(n2 - n1, d2 - d1)`, localized at the ideal of all
//! variables. Its closed fiber is `C`.

mod lemma;
mod morphism;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, RingContext};

pub use lemma::{build_lemma_ring, build_lemma_ring_with, LemmaConstruction, PowerIntersection};
pub use morphism::{build_morphism, fiber_invariants, valid_morphism_params, MorphismTriple};
pub use verify::{
    compute_ring_report, lemma_grid, morphism_grid, verify_lemma_ring, verify_morphism, Claim,
    ClaimValue, ComputedInvariants, FiberReport, FlatnessCertificate, LemmaReport, MorphismReport,
    OracleStatus, RingReport, LOCALIZATION_NOTE,
};

/// One hypothesis of the construction, named in error messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Inequality {
    /// `0 <= d` for a single ring.
    DepthNonNegative,
    /// `d <= n` for a single ring.
    DepthAtMostDimension,
    /// `0 <= d1 <= n1`.
    SourceRange,
    /// `0 <= d2 <= n2`.
    TargetRange,
    /// `n1 <= n2`.
    DimensionMonotone,
    /// `d1 <= d2`.
    DepthMonotone,
    /// `n1 - d1 <= n2 - d2`.
    DefectMonotone,
}

impl Inequality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Inequality::DepthNonNegative => "0 <= d",
            Inequality::DepthAtMostDimension => "d <= n",
            Inequality::SourceRange => "0 <= d1 <= n1",
            Inequality::TargetRange => "0 <= d2 <= n2",
            Inequality::DimensionMonotone => "n1 <= n2",
            Inequality::DepthMonotone => "d1 <= d2",
            Inequality::DefectMonotone => "n1 - d1 <= n2 - d2",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Target `(dimension, depth)` of a single ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LemmaParams {
    pub n: usize,
    pub d: usize,
}

impl LemmaParams {
    pub fn new(n: i64, d: i64) -> Result<Self> {
        if d < 0 {
            return Err(Error::Constraint(Inequality::DepthNonNegative));
        }
        if d > n {
            return Err(Error::Constraint(Inequality::DepthAtMostDimension));
        }
        Ok(LemmaParams { n: n as usize, d: d as usize })
    }

    /// The Cohen–Macaulay defect `r = n - d`.
    pub fn r(&self) -> usize {
        self.n - self.d
    }
}

/// Targets `(n1, d1)` for the source and `(n2, d2)` for the target ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphismParams {
    pub n1: usize,
    pub d1: usize,
    pub n2: usize,
    pub d2: usize,
}

impl MorphismParams {
    /// Validates the five hypotheses, reporting the first violated one in
    /// the order listed by [`MorphismParams::violations`].
    pub fn new(n1: i64, d1: i64, n2: i64, d2: i64) -> Result<Self> {
        match Self::violations(n1, d1, n2, d2).first() {
            Some(&bad) => Err(Error::Constraint(bad)),
            None => Ok(MorphismParams {
                n1: n1 as usize,
                d1: d1 as usize,
                n2: n2 as usize,
                d2: d2 as usize,
            }),
        }
    }

    /// Every violated hypothesis.
    pub fn violations(n1: i64, d1: i64, n2: i64, d2: i64) -> Vec<Inequality> {
        let checks = [
            (0 <= d1 && d1 <= n1, Inequality::SourceRange),
            (0 <= d2 && d2 <= n2, Inequality::TargetRange),
            (n1 <= n2, Inequality::DimensionMonotone),
            (d1 <= d2, Inequality::DepthMonotone),
            (n1 - d1 <= n2 - d2, Inequality::DefectMonotone),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|&(_, which)| which).collect()
    }

    /// `s = d2 - d1`, the depth of the closed fiber.
    pub fn s(&self) -> usize {
        self.d2 - self.d1
    }

    /// `t = n2 - n1`, the dimension of the closed fiber.
    pub fn t(&self) -> usize {
        self.n2 - self.n1
    }

    pub fn source(&self) -> LemmaParams {
        LemmaParams { n: self.n1, d: self.d1 }
    }

    pub fn fiber(&self) -> LemmaParams {
        LemmaParams { n: self.t(), d: self.s() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub dimension: usize,
    pub depth: usize,
}

/// A constructed local ring `(S/I)_(x)` together with the invariants it was
/// built to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub label: String,
    pub context: RingContext,
    pub ideal: MonomialIdeal,
    pub expected: Expected,
    /// Present when the ring came from the single-ring construction.
    pub lemma: Option<LemmaParams>,
    pub recipe: String,
}

impl RingPresentation {
    pub fn num_vars(&self) -> usize {
        self.ideal.num_vars()
    }

    pub fn ideal_string(&self) -> String {
        self.ideal.display_with(self.context.var_names()).to_string()
    }
}

/// `cmd = dim - depth`.
pub fn cm_defect(dimension: usize, depth: usize) -> Result<usize> {
    dimension.checked_sub(depth).ok_or_else(|| {
        Error::InvariantViolation(format!("depth {depth} exceeds dimension {dimension}"))
    })
}

pub fn is_cohen_macaulay(dimension: usize, depth: usize) -> Result<bool> {
    Ok(cm_defect(dimension, depth)? == 0)
}

pub fn is_almost_cohen_macaulay(dimension: usize, depth: usize) -> Result<bool> {
    Ok(cm_defect(dimension, depth)? <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_predicates() {
        assert_eq!(cm_defect(2, 0).unwrap(), 2);
        assert!(!is_almost_cohen_macaulay(2, 0).unwrap());
        assert_eq!(cm_defect(3, 3).unwrap(), 0);
        assert!(is_cohen_macaulay(3, 3).unwrap());
        assert_eq!(cm_defect(1, 0).unwrap(), 1);
        assert!(is_almost_cohen_macaulay(1, 0).unwrap());
        assert!(!is_cohen_macaulay(1, 0).unwrap());
        assert!(matches!(cm_defect(1, 2), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn lemma_params_validation() {
        assert_eq!(LemmaParams::new(3, 1).unwrap().r(), 2);
        assert_eq!(LemmaParams::new(1, -1), Err(Error::Constraint(Inequality::DepthNonNegative)));
        assert_eq!(LemmaParams::new(1, 2), Err(Error::Constraint(Inequality::DepthAtMostDimension)));
    }

    #[test]
    fn morphism_params_validation() {
        let p = MorphismParams::new(2, 1, 4, 2).unwrap();
        assert_eq!((p.s(), p.t()), (1, 2));
        assert_eq!(
            MorphismParams::new(2, 0, 2, 1),
            Err(Error::Constraint(Inequality::DefectMonotone))
        );
        assert_eq!(
            MorphismParams::new(3, 0, 2, 0),
            Err(Error::Constraint(Inequality::DimensionMonotone))
        );
        assert_eq!(
            MorphismParams::new(1, 1, 2, 0),
            Err(Error::Constraint(Inequality::DepthMonotone))
        );
        assert_eq!(
            MorphismParams::new(1, 2, 2, 2),
            Err(Error::Constraint(Inequality::SourceRange))
        );
        assert_eq!(
            MorphismParams::new(1, 0, 1, -1),
            Err(Error::Constraint(Inequality::TargetRange))
        );
    }

    #[test]
    fn rejects_exactly_the_violating_tuples() {
        for n1 in -1..=4i64 {
            for d1 in -1..=4 {
                for n2 in -1..=4 {
                    for d2 in -1..=4 {
                        let v = MorphismParams::violations(n1, d1, n2, d2);
                        let r = MorphismParams::new(n1, d1, n2, d2);
                        match v.as_slice() {
                            [] => assert!(r.is_ok()),
                            [only] => assert_eq!(r, Err(Error::Constraint(*only))),
                            _ => assert!(r.is_err()),
                        }
                    }
                }
            }
        }
    }
}
