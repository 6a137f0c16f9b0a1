//! One function per subcommand. Each returns a finished [`Report`] (or a
//! script, for `export`); rendering and exit codes live in `main`.

use std::time::Instant;

use depthforge_core::constructions::{
    build_lemma_ring, build_morphism, cm_defect, is_almost_cohen_macaulay, is_cohen_macaulay,
    verify_lemma_ring, verify_morphism, Claim, ClaimValue, LemmaParams, MorphismParams,
    RingPresentation,
};
use depthforge_core::decomposition::{self, MonomialPrime};
use depthforge_core::homology::{self, FieldSpec};
use depthforge_core::{Error, MonomialIdeal, RingContext};
use serde_json::{json, Value};

use crate::export::{export_script, EngineValues, Target};
use crate::grids;
use crate::parse::{parse_ideal, ParseError};
use crate::report::{ErrorInfo, Report};

/// Exit status of a run: all claims verified.
pub const EXIT_OK: i32 = 0;
/// Malformed input, rejected parameters or an exhausted resource guard.
pub const EXIT_INPUT: i32 = 2;
/// A computed value differs from the promised one.
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Engine(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(Error::InvariantViolation(_)) => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        }
    }

    pub fn info(&self) -> ErrorInfo {
        let (kind, inequality) = match self {
            CliError::Parse(_) => ("parse", None),
            CliError::Io(_) => ("io", None),
            CliError::Engine(e) => match e {
                Error::Constraint(which) => ("constraint", Some(which.to_string())),
                Error::ImproperIdeal => ("improper_ideal", None),
                Error::InvariantViolation(_) => ("invariant_violation", None),
                Error::DegreeGuard { .. } | Error::ResourceLimit(_) => ("resource_limit", None),
                _ => ("input", None),
            },
        };
        ErrorInfo { kind: kind.into(), message: self.to_string(), inequality }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn exit_code(report: &Report) -> i32 {
    if report.pass {
        EXIT_OK
    } else if report.error.is_some() {
        EXIT_INPUT
    } else {
        EXIT_MISMATCH
    }
}

/// A failure rendered as a report, so JSON consumers always get a document.
pub fn error_report(command: &str, field: FieldSpec, inputs: Value, err: &CliError) -> Report {
    let mut r = Report::new(command, field, inputs);
    r.error = Some(err.info());
    r.finish(Instant::now())
}

fn names(primes: &std::collections::BTreeSet<MonomialPrime>, ctx: &RingContext) -> Vec<String> {
    primes.iter().map(|p| p.display_with(ctx.var_names()).to_string()).collect()
}

fn claims_value(report: &mut Value) -> Vec<Claim> {
    let obj = report.as_object_mut().expect("reports serialize to objects");
    obj.remove("pass");
    let claims = obj.remove("claims").unwrap_or(Value::Array(Vec::new()));
    serde_json::from_value(claims).expect("claims round-trip")
}

pub fn construct(n1: i64, d1: i64, n2: i64, d2: i64, field: FieldSpec) -> CliResult<Report> {
    let start = Instant::now();
    let inputs = json!({"dim_a": n1, "depth_a": d1, "dim_b": n2, "depth_b": d2});
    let mut report = Report::new("construct", field, inputs);
    let params = MorphismParams::new(n1, d1, n2, d2)?;
    let verified = verify_morphism(&build_morphism(params)?, field)?;
    let mut data = serde_json::to_value(&verified).expect("serializable");
    report.claims = claims_value(&mut data);
    report.data = data;
    Ok(report.finish(start))
}

pub fn lemma(n: i64, d: i64, field: FieldSpec) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = Report::new("lemma", field, json!({"dim": n, "depth": d}));
    let rp = build_lemma_ring(LemmaParams::new(n, d)?)?;
    let verified = verify_lemma_ring(&rp, field)?;
    let mut data = serde_json::to_value(&verified).expect("serializable");
    report.claims = claims_value(&mut data);
    report.data = data;
    Ok(report.finish(start))
}

struct Parsed {
    ctx: RingContext,
    ideal: MonomialIdeal,
}

fn parse_proper(expr: &str) -> CliResult<Parsed> {
    let (ctx, ideal) = parse_ideal(expr)?;
    ideal.require_proper()?;
    Ok(Parsed { ctx, ideal })
}

fn ring_inputs(expr: &str) -> Value {
    json!({"expression": expr})
}

fn ring_value(p: &Parsed) -> Value {
    json!({
        "variables": p.ctx.var_names(),
        "ideal": p.ideal.display_with(p.ctx.var_names()).to_string(),
        "num_generators": p.ideal.len(),
    })
}

fn hilbert_value(h: &homology::HilbertSeries) -> Value {
    json!({
        "numerator": h.numerator(),
        "denominator_exponent": h.denominator_exponent(),
        "series": h.to_string(),
    })
}

/// The Koszul-complex cross-check, when the instance is small enough.
fn oracle_claim(table: &homology::BettiTable, ideal: &MonomialIdeal, field: FieldSpec) -> CliResult<Option<Claim>> {
    match homology::betti_table_koszul_oracle(ideal, field) {
        Ok(oracle) => Ok(Some(Claim {
            name: "Koszul oracle Betti table = upper Koszul Betti table".into(),
            expected: ClaimValue::Bool(true),
            computed: ClaimValue::Bool(oracle == *table),
            pass: oracle == *table,
        })),
        Err(Error::ResourceLimit(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn invariants(expr: &str, field: FieldSpec) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = Report::new("invariants", field, ring_inputs(expr));
    let p = parse_proper(expr)?;
    let dec = decomposition::decompose(&p.ideal)?;
    let betti = homology::betti_table(&p.ideal, field)?;
    let hilbert = homology::hilbert_series(&p.ideal)?;
    let witness = homology::depth_zero_witness(&p.ideal)?;
    let (dim, depth) = (dec.dimension, betti.depth);
    report.data = json!({
        "ring": ring_value(&p),
        "dimension": dim,
        "depth": depth,
        "projective_dimension": betti.projective_dimension,
        "cm_defect": cm_defect(dim, depth)?,
        "cohen_macaulay": is_cohen_macaulay(dim, depth)?,
        "almost_cohen_macaulay": is_almost_cohen_macaulay(dim, depth)?,
        "ass_primes": names(&dec.ass_primes, &p.ctx),
        "min_primes": names(&dec.min_primes, &p.ctx),
        "betti_totals": betti.totals(),
        "hilbert": hilbert_value(&hilbert),
        "depth_zero_witness": witness.map(|w| w.display_with(p.ctx.var_names()).to_string()),
    });
    report.claims.extend(oracle_claim(&betti, &p.ideal, field)?);
    Ok(report.finish(start))
}

pub fn decompose(expr: &str, field: FieldSpec) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = Report::new("decompose", field, ring_inputs(expr));
    let p = parse_proper(expr)?;
    let dec = decomposition::decompose(&p.ideal)?;
    let names_of = p.ctx.var_names();
    let comps: Vec<Value> = dec
        .components
        .iter()
        .map(|c| {
            json!({
                "ideal": c.to_ideal().display_with(names_of).to_string(),
                "support": c.support().display_with(names_of).to_string(),
            })
        })
        .collect();
    let back = decomposition::intersect_components(p.ideal.num_vars(), &dec.components);
    report.claims.push(Claim {
        name: "intersection of components = I".into(),
        expected: ClaimValue::Text(p.ideal.display_with(names_of).to_string()),
        computed: ClaimValue::Text(back.display_with(names_of).to_string()),
        pass: back == p.ideal,
    });
    report.data = json!({
        "ring": ring_value(&p),
        "components": comps,
        "ass_primes": names(&dec.ass_primes, &p.ctx),
        "min_primes": names(&dec.min_primes, &p.ctx),
        "dimension": dec.dimension,
    });
    Ok(report.finish(start))
}

pub fn betti(expr: &str, field: FieldSpec) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = Report::new("betti", field, ring_inputs(expr));
    let p = parse_proper(expr)?;
    let table = homology::betti_table(&p.ideal, field)?;
    let n = p.ideal.num_vars();
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            let m = depthforge_core::Monomial::new(e.multidegree.clone());
            json!({
                "homological_degree": e.homological_degree,
                "multidegree": m.display_with(p.ctx.var_names()).to_string(),
                "degree": m.degree(),
                "rank": e.rank,
            })
        })
        .collect();
    let graded: Vec<Value> = table
        .graded()
        .into_iter()
        .map(|(i, j, b)| json!({"homological_degree": i, "degree": j, "rank": b}))
        .collect();
    report.claims.extend(oracle_claim(&table, &p.ideal, field)?);
    report.data = json!({
        "ring": ring_value(&p),
        "entries": entries,
        "graded": graded,
        "totals": table.totals(),
        "projective_dimension": table.projective_dimension,
        "depth": table.depth,
        "num_vars": n,
    });
    Ok(report.finish(start))
}

pub fn hilbert(expr: &str, field: FieldSpec, terms: usize) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = Report::new("hilbert", field, json!({"expression": expr, "terms": terms}));
    let p = parse_proper(expr)?;
    let h = homology::hilbert_series(&p.ideal)?;
    let mut data = hilbert_value(&h);
    let obj = data.as_object_mut().expect("object");
    obj.insert("ring".into(), ring_value(&p));
    obj.insert("dimension".into(), json!(h.dimension()));
    obj.insert("coefficients".into(), json!(h.coefficients(terms)));
    report.data = data;
    Ok(report.finish(start))
}

fn primes_report(command: &str, expr: &str, field: FieldSpec, minimal: bool) -> CliResult<Report> {
    let start = Instant::now();
    let mut report = Report::new(command, field, ring_inputs(expr));
    let p = parse_proper(expr)?;
    let primes = if minimal {
        decomposition::minimal_primes(&p.ideal)?
    } else {
        decomposition::associated_primes(&p.ideal)?
    };
    let listed: Vec<Value> = primes
        .iter()
        .map(|q| json!({"prime": q.display_with(p.ctx.var_names()).to_string(), "height": q.height()}))
        .collect();
    report.data = json!({"ring": ring_value(&p), "primes": listed});
    Ok(report.finish(start))
}

pub fn minprimes(expr: &str, field: FieldSpec) -> CliResult<Report> {
    primes_report("minprimes", expr, field, true)
}

pub fn assprimes(expr: &str, field: FieldSpec) -> CliResult<Report> {
    primes_report("assprimes", expr, field, false)
}

/// What `export` writes a script for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExportInput {
    Ideal(String),
    Lemma { n: i64, d: i64 },
    /// One ring (`a`, `b` or `c`) of a constructed morphism.
    Construct { params: [i64; 4], ring: char },
}

pub fn export(input: &ExportInput, target: Target, field: FieldSpec) -> CliResult<String> {
    let (label, ctx, ideal) = match input {
        ExportInput::Ideal(expr) => {
            let p = parse_proper(expr)?;
            ("ideal".to_string(), p.ctx, p.ideal)
        }
        ExportInput::Lemma { n, d } => {
            let rp = build_lemma_ring(LemmaParams::new(*n, *d)?)?;
            (format!("single ring (n, d) = ({n}, {d})"), rp.context, rp.ideal)
        }
        ExportInput::Construct { params: [n1, d1, n2, d2], ring } => {
            let t = build_morphism(MorphismParams::new(*n1, *d1, *n2, *d2)?)?;
            let rp: RingPresentation = match ring {
                'a' => t.a,
                'c' => t.c,
                _ => t.b,
            };
            (format!("ring {} of ({n1}, {d1}) -> ({n2}, {d2})", rp.label), rp.context, rp.ideal)
        }
    };
    let values = EngineValues::compute(&ctx, &ideal, field)?;
    Ok(export_script(target, &label, &ctx, &ideal, field, &values))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridOptions {
    pub max_n: usize,
    pub max_n2: usize,
    pub lemma_chars: Vec<u64>,
    pub morphism_chars: Vec<u64>,
    pub oracle_chars: Vec<u64>,
    pub samples: usize,
    pub pairs: usize,
    pub seed: u64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            max_n: 5,
            max_n2: 5,
            lemma_chars: vec![0, 2, 3],
            morphism_chars: vec![0, 2],
            oracle_chars: vec![0, 32003],
            samples: 200,
            pairs: 100,
            seed: 0,
        }
    }
}

pub fn grid_verify(opts: &GridOptions, field: FieldSpec) -> CliResult<Report> {
    let start = Instant::now();
    let inputs = json!({
        "max_n": opts.max_n,
        "max_n2": opts.max_n2,
        "lemma_chars": opts.lemma_chars,
        "morphism_chars": opts.morphism_chars,
        "oracle_chars": opts.oracle_chars,
        "samples": opts.samples,
        "pairs": opts.pairs,
        "seed": opts.seed,
    });
    let mut report = Report::new("grid-verify", field, inputs);
    let outcomes = vec![
        grids::lemma_rings(opts.max_n, &opts.lemma_chars)?,
        grids::morphisms(opts.max_n2, &opts.morphism_chars)?,
        grids::constraint_rejection(opts.max_n2.saturating_sub(1) as i64),
        grids::oracle_equivalence(opts.seed, opts.samples, &opts.oracle_chars)?,
        grids::join_properties(opts.seed, opts.pairs, field)?,
    ];
    for o in &outcomes {
        report.claims.push(Claim {
            name: format!("{}: cases passing", o.name),
            expected: ClaimValue::Int(o.cases as u64),
            computed: ClaimValue::Int((o.cases - o.failed) as u64),
            pass: o.pass(),
        });
    }
    report.data = json!({"grids": outcomes});
    Ok(report.finish(start))
}
