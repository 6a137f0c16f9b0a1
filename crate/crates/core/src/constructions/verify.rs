//! Independent certification of every claimed invariant of a construction.
//!
//! Nothing here trusts the builders: dimension and primes come from the
//! irreducible decomposition, depth from Betti numbers (cross-checked by the
//! Koszul oracle when the instance is small enough and by a socle search),
//! and flatness from the factorization of Hilbert series.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    build_lemma_ring, cm_defect, morphism::build_morphism, LemmaParams, MorphismParams,
    MorphismTriple, RingPresentation,
};
use crate::decomposition::{self, MonomialPrime};
use crate::error::{Error, Result};
use crate::homology::{self, FieldSpec, HilbertSeries};
use crate::monomial::Monomial;

pub const LOCALIZATION_NOTE: &str = "invariants are computed for the graded quotient S/I; every \
     associated prime of a monomial ideal lies in the ideal of all variables, so dimension, depth \
     and primes agree with those of the localization at that ideal";

const FLATNESS_ARGUMENT: &str = "B is A ⊗_k C localized at the ideal of all variables: a \
     localization of the base change of the flat map k -> C, hence flat over A; certified \
     numerically by the factorization H_B = H_A · H_C";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Int(u64),
    Bool(bool),
    Text(String),
    List(Vec<String>),
}

impl From<bool> for ClaimValue {
    fn from(v: bool) -> Self {
        ClaimValue::Bool(v)
    }
}

impl From<usize> for ClaimValue {
    fn from(v: usize) -> Self {
        ClaimValue::Int(v as u64)
    }
}

/// One checked statement: what the construction promises and what the
/// engine computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: ClaimValue,
    pub computed: ClaimValue,
    pub pass: bool,
}

impl Claim {
    fn check(name: impl Into<String>, expected: impl Into<ClaimValue>, computed: impl Into<ClaimValue>) -> Claim {
        let (expected, computed) = (expected.into(), computed.into());
        Claim { name: name.into(), pass: expected == computed, expected, computed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleStatus {
    Agrees,
    Disagrees,
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedInvariants {
    pub dimension: usize,
    pub depth: usize,
    pub projective_dimension: usize,
    pub cm_defect: usize,
    pub cohen_macaulay: bool,
    pub almost_cohen_macaulay: bool,
    pub num_components: usize,
    pub ass_primes: BTreeSet<MonomialPrime>,
    pub min_primes: BTreeSet<MonomialPrime>,
    pub betti_totals: Vec<u64>,
    pub hilbert: HilbertSeries,
    pub depth_zero_witness: Option<Monomial>,
    pub koszul_oracle: OracleStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub label: String,
    pub variables: Vec<String>,
    pub ideal: String,
    pub generators: Vec<Monomial>,
    pub expected: super::Expected,
    pub recipe: String,
    pub computed: ComputedInvariants,
}

impl RingReport {
    pub fn prime_names(&self, primes: &BTreeSet<MonomialPrime>) -> Vec<String> {
        primes.iter().map(|p| p.display_with(&self.variables).to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub params: LemmaParams,
    pub field: FieldSpec,
    pub ring: RingReport,
    pub claims: Vec<Claim>,
    pub localization: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub dimension: usize,
    pub depth: usize,
    pub cm_defect: usize,
    pub almost_cohen_macaulay: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessCertificate {
    pub argument: String,
    pub hilbert_a: HilbertSeries,
    pub hilbert_c: HilbertSeries,
    pub hilbert_b: HilbertSeries,
    pub product: HilbertSeries,
    pub factorization_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub params: MorphismParams,
    pub s: usize,
    pub t: usize,
    pub field: FieldSpec,
    pub a: RingReport,
    pub c: RingReport,
    pub b: RingReport,
    pub fiber: FiberReport,
    pub flatness: FlatnessCertificate,
    pub claims: Vec<Claim>,
    pub localization: String,
    pub pass: bool,
}

/// Runs every computation on one ring. The decomposition, the two Betti
/// backends and the Hilbert series are independent tasks.
pub fn compute_ring_report(rp: &RingPresentation, field: FieldSpec) -> Result<RingReport> {
    let ideal = &rp.ideal;
    ideal.require_proper()?;
    let (dec, (betti, (oracle, (hilbert, witness)))) = rayon::join(
        || decomposition::decompose(ideal),
        || {
            rayon::join(
                || homology::betti_table(ideal, field),
                || {
                    rayon::join(
                        || homology::betti_table_koszul_oracle(ideal, field),
                        || rayon::join(|| homology::hilbert_series(ideal), || homology::depth_zero_witness(ideal)),
                    )
                },
            )
        },
    );
    let (dec, betti, hilbert) = (dec?, betti?, hilbert?);
    let koszul_oracle = match oracle {
        Ok(table) if table == betti => OracleStatus::Agrees,
        Ok(_) => OracleStatus::Disagrees,
        Err(Error::ResourceLimit(reason)) => OracleStatus::Skipped { reason },
        Err(e) => return Err(e),
    };
    let depth_zero_witness = match witness {
        Ok(w) => w,
        Err(Error::ResourceLimit(_)) => None,
        Err(e) => return Err(e),
    };
    let defect = cm_defect(dec.dimension, betti.depth).unwrap_or(0);
    Ok(RingReport {
        label: rp.label.clone(),
        variables: rp.context.var_names().to_vec(),
        ideal: rp.ideal_string(),
        generators: ideal.generators().to_vec(),
        expected: rp.expected,
        recipe: rp.recipe.clone(),
        computed: ComputedInvariants {
            dimension: dec.dimension,
            depth: betti.depth,
            projective_dimension: betti.projective_dimension,
            cm_defect: defect,
            cohen_macaulay: defect == 0 && betti.depth <= dec.dimension,
            almost_cohen_macaulay: defect <= 1 && betti.depth <= dec.dimension,
            num_components: dec.components.len(),
            ass_primes: dec.ass_primes,
            min_primes: dec.min_primes,
            betti_totals: betti.totals(),
            hilbert,
            depth_zero_witness,
            koszul_oracle,
        },
    })
}

/// Claims every ring report carries: depth bounded by dimension, the socle
/// search agreeing with depth 0, the Hilbert pole order agreeing with the
/// dimension, and the Koszul oracle when it ran.
fn consistency_claims(r: &RingReport) -> Vec<Claim> {
    let c = &r.computed;
    let l = &r.label;
    let mut claims = vec![
        Claim::check(format!("depth({l}) <= dim({l})"), true, c.depth <= c.dimension),
        Claim::check(
            format!("socle witness({l}) iff depth({l}) = 0"),
            c.depth == 0,
            c.depth_zero_witness.is_some(),
        ),
        Claim::check(format!("pole order of H_{l} = dim({l})"), c.dimension, c.hilbert.dimension()),
    ];
    if !matches!(c.koszul_oracle, OracleStatus::Skipped { .. }) {
        claims.push(Claim::check(
            format!("Koszul oracle Betti table({l}) = upper Koszul Betti table({l})"),
            true,
            c.koszul_oracle == OracleStatus::Agrees,
        ));
    }
    claims
}

/// The associated primes promised by the single-ring construction:
/// `{(X_0), (X_0..X_r)}` for `r > 0`, the zero prime otherwise.
fn lemma_ass(params: LemmaParams) -> BTreeSet<MonomialPrime> {
    let r = params.r();
    if r == 0 {
        BTreeSet::from([MonomialPrime::zero()])
    } else {
        BTreeSet::from([MonomialPrime::new([0]), MonomialPrime::new(0..=r)])
    }
}

fn lemma_claims(r: &RingReport, params: LemmaParams) -> Vec<Claim> {
    let l = &r.label;
    vec![
        Claim::check(format!("dim({l})"), params.n, r.computed.dimension),
        Claim::check(format!("depth({l})"), params.d, r.computed.depth),
        Claim::check(
            format!("Ass({l})"),
            ClaimValue::List(r.prime_names(&lemma_ass(params))),
            ClaimValue::List(r.prime_names(&r.computed.ass_primes)),
        ),
    ]
}

pub fn verify_lemma_ring(rp: &RingPresentation, field: FieldSpec) -> Result<LemmaReport> {
    let params = rp.lemma.ok_or_else(|| {
        Error::InvariantViolation(format!("ring {} was not built by the single-ring construction", rp.label))
    })?;
    let ring = compute_ring_report(rp, field)?;
    let mut claims = lemma_claims(&ring, params);
    claims.extend(consistency_claims(&ring));
    let pass = claims.iter().all(|c| c.pass);
    Ok(LemmaReport {
        params,
        field,
        ring,
        claims,
        localization: LOCALIZATION_NOTE.to_string(),
        pass,
    })
}

pub fn verify_morphism(triple: &MorphismTriple, field: FieldSpec) -> Result<MorphismReport> {
    let p = triple.params;
    let (a, (c, b)) = rayon::join(
        || compute_ring_report(&triple.a, field),
        || rayon::join(|| compute_ring_report(&triple.c, field), || compute_ring_report(&triple.b, field)),
    );
    let (a, c, b) = (a?, c?, b?);
    let (ca, cc, cb) = (&a.computed, &c.computed, &b.computed);

    let mut claims = vec![
        Claim::check("dim(A) = n1", p.n1, ca.dimension),
        Claim::check("depth(A) = d1", p.d1, ca.depth),
        Claim::check("dim(C) = t", p.t(), cc.dimension),
        Claim::check("depth(C) = s", p.s(), cc.depth),
        Claim::check("dim(B) = n2", p.n2, cb.dimension),
        Claim::check("depth(B) = d2", p.d2, cb.depth),
        Claim::check("dim(B) = dim(A) + dim(C)", ca.dimension + cc.dimension, cb.dimension),
        Claim::check("depth(B) = depth(A) + depth(C)", ca.depth + cc.depth, cb.depth),
    ];

    let offset = triple.a.num_vars();
    let unions: BTreeSet<MonomialPrime> = ca
        .min_primes
        .iter()
        .flat_map(|pa| cc.min_primes.iter().map(move |qc| pa.join(qc, offset)))
        .collect();
    claims.push(Claim::check(
        "Min(B) = {P + Q : P in Min(A), Q in Min(C)}",
        ClaimValue::List(b.prime_names(&unions)),
        ClaimValue::List(b.prime_names(&cb.min_primes)),
    ));

    let product = ca.hilbert.mul(&cc.hilbert)?;
    let factorization_holds = product == cb.hilbert;
    claims.push(Claim::check("H_B = H_A · H_C", true, factorization_holds));

    // closed fiber B/mB ≅ C
    let fiber = FiberReport {
        dimension: cc.dimension,
        depth: cc.depth,
        cm_defect: cc.cm_defect,
        almost_cohen_macaulay: cc.almost_cohen_macaulay,
    };
    claims.push(Claim::check("dim(B/mB) = n2 - n1", p.t(), fiber.dimension));
    claims.push(Claim::check("depth(B/mB) = d2 - d1", p.s(), fiber.depth));
    claims.push(Claim::check("cmd(A) = n1 - d1", p.n1 - p.d1, ca.cm_defect));
    claims.push(Claim::check("cmd(B) = n2 - d2", p.n2 - p.d2, cb.cm_defect));
    claims.push(Claim::check("cmd(B/mB) = t - s", p.t() - p.s(), fiber.cm_defect));

    for (ring, rp) in [(&a, &triple.a), (&c, &triple.c)] {
        if let Some(lp) = rp.lemma {
            claims.extend(lemma_claims(ring, lp).into_iter().skip(2));
        }
    }
    for ring in [&a, &c, &b] {
        claims.extend(consistency_claims(ring));
    }
    let pass = claims.iter().all(|c| c.pass);
    Ok(MorphismReport {
        params: p,
        s: p.s(),
        t: p.t(),
        field,
        flatness: FlatnessCertificate {
            argument: FLATNESS_ARGUMENT.to_string(),
            hilbert_a: ca.hilbert.clone(),
            hilbert_c: cc.hilbert.clone(),
            hilbert_b: cb.hilbert.clone(),
            product,
            factorization_holds,
        },
        a,
        c,
        b,
        fiber,
        claims,
        localization: LOCALIZATION_NOTE.to_string(),
        pass,
    })
}

/// Verifies every single-ring construction with `0 <= d <= n <= max_n`.
pub fn lemma_grid(max_n: usize, field: FieldSpec) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        for d in 0..=n {
            let rp = build_lemma_ring(LemmaParams { n, d })?;
            out.push(verify_lemma_ring(&rp, field)?);
        }
    }
    Ok(out)
}

/// Verifies every valid morphism with `n2 <= max_n2`.
pub fn morphism_grid(max_n2: usize, field: FieldSpec) -> Result<Vec<MorphismReport>> {
    super::valid_morphism_params(max_n2)
        .into_iter()
        .map(|p| verify_morphism(&build_morphism(p)?, field))
        .collect()
}
