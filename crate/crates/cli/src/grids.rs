//! The verification grids behind `grid-verify`.

use std::collections::BTreeSet;
use std::time::Instant;

use depthforge_core::constructions::{lemma_grid, morphism_grid, Inequality, MorphismParams};
use depthforge_core::decomposition::{self, MonomialPrime};
use depthforge_core::homology::{self, FieldSpec};
use depthforge_core::sample::{random_proper_ideal, SampleShape};
use depthforge_core::{join_ideals, Error, MonomialIdeal, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Failures beyond this many are counted but not listed.
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridOutcome {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub elapsed_us: u64,
}

impl GridOutcome {
    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}

struct Tally {
    name: String,
    start: Instant,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Tally {
        Tally { name: name.into(), start: Instant::now(), cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn done(mut self) -> GridOutcome {
        let failed = self.failures.len();
        self.failures.truncate(MAX_LISTED_FAILURES);
        GridOutcome {
            name: self.name,
            cases: self.cases,
            failed,
            failures: self.failures,
            elapsed_us: self.start.elapsed().as_micros().try_into().unwrap_or(u64::MAX),
        }
    }
}

fn fields(chars: &[u64]) -> Result<Vec<FieldSpec>> {
    chars.iter().map(|&p| FieldSpec::new(p)).collect()
}

fn char_list(chars: &[u64]) -> String {
    chars.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn lemma_rings(max_n: usize, chars: &[u64]) -> Result<GridOutcome> {
    let mut t = Tally::new(format!("single rings, d <= n <= {max_n}, char {}", char_list(chars)));
    for field in fields(chars)? {
        for r in lemma_grid(max_n, field)? {
            t.record(r.pass, || format!("(n, d) = ({}, {}) over {field}", r.params.n, r.params.d));
        }
    }
    Ok(t.done())
}

pub fn morphisms(max_n2: usize, chars: &[u64]) -> Result<GridOutcome> {
    let mut t = Tally::new(format!("flat morphisms, n2 <= {max_n2}, char {}", char_list(chars)));
    for field in fields(chars)? {
        for r in morphism_grid(max_n2, field)? {
            let p = r.params;
            t.record(r.pass, || format!("({}, {}, {}, {}) over {field}", p.n1, p.d1, p.n2, p.d2));
        }
    }
    Ok(t.done())
}

/// Every tuple in `[-1, max_n2]^4` that breaks exactly one hypothesis must be
/// rejected naming that hypothesis.
pub fn constraint_rejection(max_n2: i64) -> GridOutcome {
    let mut t = Tally::new(format!("constraint rejection, n2 <= {max_n2}"));
    let box_range = -1..=max_n2;
    for n1 in box_range.clone() {
        for d1 in box_range.clone() {
            for n2 in box_range.clone() {
                for d2 in box_range.clone() {
                    let broken: Vec<Inequality> = [
                        (!(0 <= d1 && d1 <= n1), Inequality::SourceRange),
                        (!(0 <= d2 && d2 <= n2), Inequality::TargetRange),
                        (n1 > n2, Inequality::DimensionMonotone),
                        (d1 > d2, Inequality::DepthMonotone),
                        (n1 - d1 > n2 - d2, Inequality::DefectMonotone),
                    ]
                    .into_iter()
                    .filter_map(|(bad, which)| bad.then_some(which))
                    .collect();
                    if let [only] = broken[..] {
                        let got = MorphismParams::new(n1, d1, n2, d2);
                        t.record(got == Err(Error::Constraint(only)), || {
                            format!("({n1}, {d1}, {n2}, {d2}) should violate {only}, got {got:?}")
                        });
                    }
                }
            }
        }
    }
    t.done()
}

fn check_oracles(ideal: &MonomialIdeal, field: FieldSpec) -> Result<bool> {
    let table = homology::betti_table(ideal, field)?;
    let oracle = homology::betti_table_koszul_oracle(ideal, field)?;
    let n = ideal.num_vars();
    let depth = homology::depth(ideal, field)?;
    let witness = homology::depth_zero_witness(ideal)?;
    let comps = decomposition::irreducible_decomposition(ideal)?;
    Ok(table == oracle
        && depth == n - oracle.projective_dimension
        && witness.is_some() == (depth == 0)
        && decomposition::intersect_components(n, &comps) == *ideal)
}

/// Seeded random ideals: both Betti backends agree, depth is `n - pd`, the
/// socle search matches depth 0 and the decomposition intersects back.
pub fn oracle_equivalence(seed: u64, count: usize, chars: &[u64]) -> Result<GridOutcome> {
    let mut t = Tally::new(format!("oracle equivalence, {count} ideals, char {}, seed {seed}", char_list(chars)));
    let fields = fields(chars)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let ideal = random_proper_ideal(&mut rng, SampleShape::default());
        for &f in &fields {
            let ok = check_oracles(&ideal, f)?;
            t.record(ok, || format!("{ideal} in {} variables over {f}", ideal.num_vars()));
        }
    }
    Ok(t.done())
}

/// Seeded random pairs in disjoint variables: minimal primes of the join are
/// the pairwise unions, and dimension and depth add.
pub fn join_properties(seed: u64, pairs: usize, field: FieldSpec) -> Result<GridOutcome> {
    let mut t = Tally::new(format!("joins, {pairs} pairs over {field}, seed {seed}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = SampleShape { max_vars: 3, ..SampleShape::default() };
    for _ in 0..pairs {
        let i = random_proper_ideal(&mut rng, shape);
        let j = random_proper_ideal(&mut rng, shape);
        let b = join_ideals(&i, &j);
        let m = i.num_vars();
        let (min_i, min_j) = (decomposition::minimal_primes(&i)?, decomposition::minimal_primes(&j)?);
        let unions: BTreeSet<MonomialPrime> =
            min_i.iter().flat_map(|p| min_j.iter().map(move |q| p.join(q, m))).collect();
        let ok = decomposition::minimal_primes(&b)? == unions
            && decomposition::dimension(&b)? == decomposition::dimension(&i)? + decomposition::dimension(&j)?
            && homology::depth(&b, field)? == homology::depth(&i, field)? + homology::depth(&j, field)?;
        t.record(ok, || format!("I = {i}, J = {j}"));
    }
    Ok(t.done())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids_pass() {
        assert!(lemma_rings(2, &[0, 2]).unwrap().pass());
        assert!(morphisms(2, &[0]).unwrap().pass());
        let c = constraint_rejection(2);
        assert!(c.pass() && c.cases > 0);
        assert!(oracle_equivalence(1, 10, &[0]).unwrap().pass());
        assert!(join_properties(1, 10, FieldSpec::rational()).unwrap().pass());
    }

    #[test]
    fn counts() {
        assert_eq!(lemma_rings(5, &[0]).unwrap().cases, 21);
        assert_eq!(oracle_equivalence(3, 5, &[0, 32003]).unwrap().cases, 10);
    }

    #[test]
    fn failures_are_capped() {
        let mut t = Tally::new("x");
        for i in 0..30 {
            t.record(false, || i.to_string());
        }
        let o = t.done();
        assert_eq!((o.failed, o.failures.len()), (30, MAX_LISTED_FAILURES));
    }
}
