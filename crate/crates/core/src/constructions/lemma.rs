use super::{Expected, LemmaParams, RingPresentation};
use crate::error::Result;
use crate::monomial::{Monomial, MonomialIdeal, RingContext};

/// A recipe producing a monomial quotient with prescribed dimension and depth.
pub trait LemmaConstruction {
    fn name(&self) -> &'static str;

    /// Variable names and ideal for `params`. `main` prefixes the variables
    /// carrying the defect, `free` the regular-sequence variables.
    fn build(&self, params: LemmaParams, main: &str, free: &str) -> Result<(RingContext, MonomialIdeal)>;
}

/// `I = (X_0) ∩ (X_0, ..., X_r)^{r+1}` in `k[X_0..X_r, T_1..T_d]`; the zero
/// ideal of `k[T_1..T_n]` when `r = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PowerIntersection;

impl LemmaConstruction for PowerIntersection {
    fn name(&self) -> &'static str {
        "(X0) ∩ (X0..Xr)^(r+1) in k[X0..Xr, T1..Td]"
    }

    fn build(&self, params: LemmaParams, main: &str, free: &str) -> Result<(RingContext, MonomialIdeal)> {
        let r = params.r();
        let d = params.d;
        if r == 0 {
            let names = (1..=d).map(|j| format!("{free}{j}")).collect();
            return Ok((RingContext::new(names)?, MonomialIdeal::zero(d)));
        }
        let n = r + 1 + d;
        let names = (0..=r)
            .map(|i| format!("{main}{i}"))
            .chain((1..=d).map(|j| format!("{free}{j}")))
            .collect();
        let x0 = MonomialIdeal::principal(Monomial::var(n, 0));
        let maximal = MonomialIdeal::from_variables(n, 0..=r);
        let ideal = x0.intersect(&maximal.power(r as u32 + 1)?)?;
        Ok((RingContext::new(names)?, ideal))
    }
}

pub fn build_lemma_ring(params: LemmaParams) -> Result<RingPresentation> {
    build_lemma_ring_with(&PowerIntersection, params, "S/I", "X", "T")
}

pub fn build_lemma_ring_with(
    recipe: &dyn LemmaConstruction,
    params: LemmaParams,
    label: &str,
    main: &str,
    free: &str,
) -> Result<RingPresentation> {
    let (context, ideal) = recipe.build(params, main, free)?;
    Ok(RingPresentation {
        label: label.to_string(),
        context,
        ideal,
        expected: Expected { dimension: params.n, depth: params.d },
        lemma: Some(params),
        recipe: recipe.name().to_string(),
    })
}
