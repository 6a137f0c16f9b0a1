//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Expected values are computed here, independently of the
//! engine paths they check.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use depthforge::parse_ideal;
use depthforge_core::constructions::{
    build_lemma_ring, build_morphism, verify_morphism, Inequality, LemmaParams, MorphismParams,
};
use depthforge_core::decomposition::{self, MonomialPrime};
use depthforge_core::homology::{self, FieldSpec};
use depthforge_core::{join_ideals, Error, Monomial, MonomialIdeal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    check: fn() -> Outcome,
    /// `None` charges the time to the previous criterion's budget.
    budget: Option<Duration>,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).expect("prime")
}

fn exps(ideal: &MonomialIdeal) -> BTreeSet<Vec<u32>> {
    ideal.generators().iter().map(|g| g.exponents().to_vec()).collect()
}

fn golden_example() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_depthforge"))
        .args(["construct", "--dim-a", "1", "--depth-a", "0", "--dim-b", "2", "--depth-b", "0", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status.code()))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let get = |ring: &str, key: &str| v["data"][ring]["computed"][key].as_u64();
    let got = [get("a", "dimension"), get("a", "depth"), get("b", "dimension"), get("b", "depth")];
    ensure(got == [Some(1), Some(0), Some(2), Some(0)], || format!("dim/depth of A, B = {got:?}"))?;

    // B = (X^2, XY, U^2, UV) after naming A's variables X, Y and C's U, V.
    let (_, expected) = parse_ideal("vars X, Y, U, V ; X^2, X*Y, U^2, U*V").map_err(|e| e.to_string())?;
    let gens: BTreeSet<Vec<u32>> =
        serde_json::from_value(v["data"]["b"]["generators"].clone()).map_err(|e| e.to_string())?;
    ensure(gens == exps(&expected), || format!("generators of B: {gens:?}"))?;
    let vars = &v["data"]["b"]["variables"];
    ensure(*vars == serde_json::json!(["X0", "X1", "Y0", "Y1"]), || format!("variables {vars}"))?;
    Ok(format!("B = {}", v["data"]["b"]["ideal"].as_str().unwrap_or("?")))
}

fn lemma_grid() -> Outcome {
    let mut cases = 0;
    for p in [0, 2, 3] {
        for n in 0..=5usize {
            for d in 0..=n {
                let rp = build_lemma_ring(LemmaParams { n, d }).map_err(|e| e.to_string())?;
                let dim = decomposition::dimension(&rp.ideal).map_err(|e| e.to_string())?;
                let depth = homology::depth(&rp.ideal, field(p)).map_err(|e| e.to_string())?;
                ensure((dim, depth) == (n, d), || format!("({n},{d}) char {p}: got ({dim},{depth})"))?;
                let r = n - d;
                if r > 0 {
                    let want = BTreeSet::from([MonomialPrime::new([0]), MonomialPrime::new(0..=r)]);
                    let ass = decomposition::associated_primes(&rp.ideal).map_err(|e| e.to_string())?;
                    ensure(ass == want, || format!("({n},{d}) char {p}: Ass = {ass:?}"))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} rings"))
}

fn morphism_grid() -> Outcome {
    let mut cases = 0;
    for p in [0, 2] {
        for n2 in 0..=5i64 {
            for d2 in 0..=n2 {
                for n1 in 0..=n2 {
                    for d1 in 0..=n1 {
                        if d1 > d2 || n1 - d1 > n2 - d2 {
                            continue;
                        }
                        let tag = format!("({n1},{d1},{n2},{d2}) char {p}");
                        let params = MorphismParams::new(n1, d1, n2, d2).map_err(|e| format!("{tag}: {e}"))?;
                        let triple = build_morphism(params).map_err(|e| e.to_string())?;
                        let r = verify_morphism(&triple, field(p)).map_err(|e| e.to_string())?;
                        let b = &r.b.computed;
                        ensure(r.pass, || format!("{tag}: a claim failed"))?;
                        ensure((b.dimension, b.depth) == (n2 as usize, d2 as usize), || format!("{tag}: B"))?;
                        ensure(
                            (r.fiber.dimension, r.fiber.depth) == ((n2 - n1) as usize, (d2 - d1) as usize),
                            || format!("{tag}: fiber"),
                        )?;
                        ensure(r.flatness.product == r.flatness.hilbert_b, || format!("{tag}: Hilbert"))?;
                        let m = triple.a.num_vars();
                        let unions: BTreeSet<MonomialPrime> = r.a.computed.min_primes.iter()
                            .flat_map(|x| r.c.computed.min_primes.iter().map(move |y| x.join(y, m)))
                            .collect();
                        ensure(unions == b.min_primes, || format!("{tag}: Min(B)"))?;
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} morphisms"))
}

fn constraint_rejection() -> Outcome {
    let mut single = 0;
    for n1 in -1..=4i64 {
        for d1 in -1..=4i64 {
            for n2 in -1..=4i64 {
                for d2 in -1..=4i64 {
                    let broken: Vec<(Inequality, &str)> = [
                        (d1 < 0 || d1 > n1, Inequality::SourceRange, "0 <= d1 <= n1"),
                        (d2 < 0 || d2 > n2, Inequality::TargetRange, "0 <= d2 <= n2"),
                        (n1 > n2, Inequality::DimensionMonotone, "n1 <= n2"),
                        (d1 > d2, Inequality::DepthMonotone, "d1 <= d2"),
                        (n1 - d1 > n2 - d2, Inequality::DefectMonotone, "n1 - d1 <= n2 - d2"),
                    ]
                    .into_iter()
                    .filter(|t| t.0)
                    .map(|t| (t.1, t.2))
                    .collect();
                    let got = MorphismParams::new(n1, d1, n2, d2);
                    let tag = format!("({n1},{d1},{n2},{d2})");
                    match broken[..] {
                        [] => ensure(got.is_ok(), || format!("{tag} wrongly rejected"))?,
                        [(which, text)] => {
                            single += 1;
                            ensure(got == Err(Error::Constraint(which)), || format!("{tag}: {got:?}"))?;
                            ensure(which.as_str() == text, || format!("{tag}: named {which}"))?;
                        }
                        _ => ensure(got.is_err(), || format!("{tag} wrongly accepted"))?,
                    }
                }
            }
        }
    }
    Ok(format!("{single} single-violation tuples"))
}

fn random_proper(rng: &mut ChaCha8Rng, max_vars: usize) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(1..=max_vars);
        let g = rng.gen_range(0..=5);
        let gens = (0..g).map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=3)).collect()));
        let ideal = MonomialIdeal::minimalize(gens, n).expect("lengths match");
        if ideal.is_proper() {
            return ideal;
        }
    }
}

fn box_points(upper: &[u32]) -> Vec<Vec<u32>> {
    let mut pts = vec![Vec::new()];
    for &u in upper {
        pts = pts.into_iter().flat_map(|p| (0..=u).map(move |e| [p.clone(), vec![e]].concat())).collect();
    }
    pts
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..200 {
        let ideal = random_proper(&mut rng, 4);
        let n = ideal.num_vars();
        for p in [0, 32003] {
            let tag = format!("#{k} {ideal} char {p}");
            let main = homology::betti_table(&ideal, field(p)).map_err(|e| e.to_string())?;
            let oracle = homology::betti_table_koszul_oracle(&ideal, field(p)).map_err(|e| e.to_string())?;
            ensure(main == oracle, || format!("{tag}: Betti tables differ"))?;
            let depth = homology::depth(&ideal, field(p)).map_err(|e| e.to_string())?;
            ensure(depth == n - oracle.projective_dimension, || format!("{tag}: depth"))?;
            let witness = homology::depth_zero_witness(&ideal).map_err(|e| e.to_string())?;
            ensure(witness.is_some() == (depth == 0), || format!("{tag}: socle"))?;
        }
        // decomposition membership agrees with the ideal on a box past every corner
        let comps = decomposition::irreducible_decomposition(&ideal).map_err(|e| e.to_string())?;
        let upper: Vec<u32> = ideal.lcm_of_generators().exponents().iter().map(|e| e + 1).collect();
        for pt in box_points(&upper) {
            let in_ideal = ideal.generators().iter().any(|g| g.exponents().iter().zip(&pt).all(|(a, b)| a <= b));
            let in_all = comps.iter().all(|c| c.exponents().iter().any(|(&i, &a)| pt[i] >= a));
            ensure(in_ideal == in_all, || format!("#{k} {ideal}: decomposition differs at {pt:?}"))?;
        }
    }
    Ok("200 ideals over QQ and GF(32003)".into())
}

/// Minimal variable sets meeting the support of every generator.
fn minimal_covers(ideal: &MonomialIdeal) -> BTreeSet<BTreeSet<usize>> {
    let n = ideal.num_vars();
    let covers: Vec<u32> = (0u32..1 << n)
        .filter(|&s| ideal.generators().iter().all(|g| g.exponents().iter().enumerate().any(|(i, &e)| e > 0 && s >> i & 1 == 1)))
        .collect();
    covers
        .iter()
        .filter(|&&s| !covers.iter().any(|&t| t != s && t & s == t))
        .map(|&s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

fn join_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10_1a);
    for k in 0..100 {
        let (i, j) = (random_proper(&mut rng, 4), random_proper(&mut rng, 4));
        let b = join_ideals(&i, &j);
        let m = i.num_vars();
        let tag = format!("#{k} I = {i}, J = {j}");
        let (ci, cj) = (minimal_covers(&i), minimal_covers(&j));
        let unions: BTreeSet<BTreeSet<usize>> = ci
            .iter()
            .flat_map(|p| cj.iter().map(move |q| p.iter().copied().chain(q.iter().map(|v| v + m)).collect()))
            .collect();
        let min_b: BTreeSet<BTreeSet<usize>> = decomposition::minimal_primes(&b)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|p| p.vars().iter().copied().collect())
            .collect();
        ensure(min_b == unions, || format!("{tag}: Min of the join"))?;
        let dim = |c: &BTreeSet<BTreeSet<usize>>, n: usize| n - c.iter().map(BTreeSet::len).min().unwrap_or(0);
        let dim_b = decomposition::dimension(&b).map_err(|e| e.to_string())?;
        ensure(dim_b == dim(&ci, m) + dim(&cj, j.num_vars()), || format!("{tag}: dimension"))?;
    }
    Ok("100 pairs".into())
}

fn depth_additivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10_1a);
    let q = field(0);
    for k in 0..100 {
        let (i, j) = (random_proper(&mut rng, 4), random_proper(&mut rng, 4));
        let oracle_depth = |x: &MonomialIdeal| {
            homology::betti_table_koszul_oracle(x, q).map(|t| x.num_vars() - t.projective_dimension)
        };
        let (di, dj) = (oracle_depth(&i).map_err(|e| e.to_string())?, oracle_depth(&j).map_err(|e| e.to_string())?);
        let db = homology::depth(&join_ideals(&i, &j), q).map_err(|e| e.to_string())?;
        ensure(db == di + dj, || format!("#{k} I = {i}, J = {j}: {db} != {di} + {dj}"))?;
    }
    Ok("100 pairs".into())
}

fn motivating_configuration() -> Outcome {
    let params = MorphismParams::new(1, 0, 2, 0).map_err(|e| e.to_string())?;
    let r = verify_morphism(&build_morphism(params).map_err(|e| e.to_string())?, field(0)).map_err(|e| e.to_string())?;
    let cmd = |dim: usize, depth: usize| dim - depth;
    let (a, b) = (&r.a.computed, &r.b.computed);
    let got = (cmd(a.dimension, a.depth), cmd(r.fiber.dimension, r.fiber.depth), cmd(b.dimension, b.depth));
    ensure(got == (1, 1, 2), || format!("cmd(A), cmd(B/mB), cmd(B) = {got:?}"))?;
    let flags = (a.almost_cohen_macaulay, r.fiber.almost_cohen_macaulay, b.almost_cohen_macaulay);
    ensure(flags == (true, true, false), || format!("almost CM flags {flags:?}"))?;
    Ok("cmd(A) = 1, cmd(B/mB) = 1, cmd(B) = 2".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "golden example pair", check: golden_example, budget: Some(Duration::from_secs(1)) },
        Criterion { name: "single-ring grid, n <= 5, char 0/2/3", check: lemma_grid, budget: Some(Duration::from_secs(60)) },
        Criterion { name: "morphism grid, n2 <= 5, char 0/2", check: morphism_grid, budget: Some(Duration::from_secs(300)) },
        Criterion { name: "constraint rejection, n2 <= 4", check: constraint_rejection, budget: Some(Duration::from_secs(60)) },
        Criterion { name: "oracle equivalence, 200 random ideals", check: oracle_equivalence, budget: Some(Duration::from_secs(120)) },
        Criterion { name: "minimal primes and dimension of joins", check: join_properties, budget: Some(Duration::from_secs(60)) },
        Criterion { name: "depth additivity on joins", check: depth_additivity, budget: None },
        Criterion { name: "defects of the example pair", check: motivating_configuration, budget: Some(Duration::from_secs(60)) },
    ];
    let mut failed = 0;
    let (mut budget, mut spent) = (Duration::ZERO, Duration::ZERO);
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = (c.check)();
        let took = start.elapsed();
        match c.budget {
            Some(b) => (budget, spent) = (b, took),
            None => spent += took,
        }
        let name = c.name;
        let verdict = match result {
            Ok(detail) if spent <= budget => format!("PASS  [{}] {name}: {detail}", k + 1),
            Ok(detail) => format!("FAIL  [{}] {name}: {detail}, but took longer than {budget:?}", k + 1),
            Err(why) => format!("FAIL  [{}] {name}: {why}", k + 1),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict} ({:.2}s)", took.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
