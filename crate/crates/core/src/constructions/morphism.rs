use serde::{Deserialize, Serialize};

use super::lemma::{build_lemma_ring_with, PowerIntersection};
use super::{Expected, MorphismParams, RingPresentation};
use crate::decomposition;
use crate::error::{Error, Result};
use crate::homology::{self, FieldSpec};
use crate::monomial::join_ideals;

/// `A`, the fiber ring `C`, and `B = (A ⊗_k C)` localized at all variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismTriple {
    pub params: MorphismParams,
    pub a: RingPresentation,
    pub c: RingPresentation,
    pub b: RingPresentation,
}

pub fn build_morphism(params: MorphismParams) -> Result<MorphismTriple> {
    let a = build_lemma_ring_with(&PowerIntersection, params.source(), "A", "X", "T")?;
    let c = build_lemma_ring_with(&PowerIntersection, params.fiber(), "C", "Y", "Z")?;
    let b = RingPresentation {
        label: "B".to_string(),
        context: a.context.join(&c.context)?,
        ideal: join_ideals(&a.ideal, &c.ideal),
        expected: Expected { dimension: params.n2, depth: params.d2 },
        lemma: None,
        recipe: "A ⊗_k C localized at all variables".to_string(),
    };
    Ok(MorphismTriple { params, a, c, b })
}

/// `(dim, depth)` of the closed fiber `B/mB ≅ C`, i.e. `(n2 - n1, d2 - d1)`,
/// after checking it against the invariants computed for `C`.
pub fn fiber_invariants(params: MorphismParams, field: FieldSpec) -> Result<(usize, usize)> {
    let expected = (params.t(), params.s());
    let c = build_lemma_ring_with(&PowerIntersection, params.fiber(), "C", "Y", "Z")?;
    let computed = (
        decomposition::dimension(&c.ideal)?,
        homology::depth(&c.ideal, field)?,
    );
    if computed != expected {
        return Err(Error::InvariantViolation(format!(
            "closed fiber has (dim, depth) = {computed:?}, expected {expected:?}"
        )));
    }
    Ok(expected)
}

/// Every valid `(n1, d1, n2, d2)` with `n2 <= max_n2`, in lexicographic order
/// of `(d1, n1, d2, n2)`.
pub fn valid_morphism_params(max_n2: usize) -> Vec<MorphismParams> {
    let m = max_n2 as i64;
    let mut out = Vec::new();
    for d1 in 0..=m {
        for n1 in 0..=m {
            for d2 in 0..=m {
                for n2 in 0..=m {
                    if let Ok(p) = MorphismParams::new(n1, d1, n2, d2) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
