use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::{reduced_homology_ranks, SimplicialComplex};
use super::FieldSpec;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Upper bound on the number of variables for Betti computations; every
/// multidegree examines all `2^n` squarefree shifts.
pub const MAX_BETTI_VARS: usize = 24;

const MAX_BITMAP_POINTS: usize = 1 << 24;

/// `β_{i,a}(S/I) = rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub homological_degree: usize,
    pub multidegree: Vec<u32>,
    pub rank: u64,
}

/// Multigraded Betti numbers of `S/I` over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub num_vars: usize,
    pub field: FieldSpec,
    pub entries: Vec<BettiEntry>,
    pub projective_dimension: usize,
    pub depth: usize,
}

impl BettiTable {
    /// Sorts the entries and derives pd and depth (Auslander–Buchsbaum).
    pub fn from_entries(num_vars: usize, field: FieldSpec, mut entries: Vec<BettiEntry>) -> Self {
        entries.retain(|e| e.rank > 0);
        entries.sort_by(|x, y| {
            x.homological_degree.cmp(&y.homological_degree).then_with(|| {
                Monomial::new(x.multidegree.clone()).cmp(&Monomial::new(y.multidegree.clone()))
            })
        });
        let projective_dimension = entries.iter().map(|e| e.homological_degree).max().unwrap_or(0);
        BettiTable {
            num_vars,
            field,
            entries,
            projective_dimension,
            depth: num_vars - projective_dimension,
        }
    }

    pub fn get(&self, homological_degree: usize, multidegree: &[u32]) -> u64 {
        self.entries
            .iter()
            .find(|e| e.homological_degree == homological_degree && e.multidegree == multidegree)
            .map_or(0, |e| e.rank)
    }

    /// Total Betti numbers `β_i = Σ_a β_{i,a}` for `i = 0..=pd`.
    pub fn totals(&self) -> Vec<u64> {
        let mut totals = vec![0u64; self.projective_dimension + 1];
        for e in &self.entries {
            totals[e.homological_degree] += e.rank;
        }
        totals
    }

    /// Betti numbers graded by total degree: `(i, j) -> β_{i,j}`.
    pub fn graded(&self) -> Vec<(usize, u64, u64)> {
        let mut out: Vec<(usize, u64, u64)> = Vec::new();
        for e in &self.entries {
            let j: u64 = e.multidegree.iter().map(|&x| x as u64).sum();
            match out.iter_mut().find(|(i, d, _)| *i == e.homological_degree && *d == j) {
                Some(slot) => slot.2 += e.rank,
                None => out.push((e.homological_degree, j, e.rank)),
            }
        }
        out.sort_unstable();
        out
    }
}

/// Fast membership for exponent vectors bounded by the generator lcm.
///
/// Exponents above the lcm do not change membership, so queries are
/// clamped into the box `[0, lcm]`, which is precomputed when small enough.
pub(crate) struct Membership<'a> {
    ideal: &'a MonomialIdeal,
    bounds: Vec<u32>,
    strides: Vec<usize>,
    bitmap: Option<Vec<bool>>,
}

impl<'a> Membership<'a> {
    pub(crate) fn new(ideal: &'a MonomialIdeal) -> Self {
        let bounds = ideal.lcm_of_generators().into_exponents();
        let mut strides = Vec::with_capacity(bounds.len());
        let mut size: usize = 1;
        for &b in &bounds {
            strides.push(size);
            size = size.saturating_mul(b as usize + 1);
        }
        let bitmap = (size <= MAX_BITMAP_POINTS).then(|| {
            let mut bits = vec![false; size];
            for g in ideal.generators() {
                bits[index_of(g.exponents(), &strides)] = true;
            }
            let mut coords = vec![0u32; bounds.len()];
            for idx in 0..size {
                if !bits[idx] {
                    bits[idx] = coords
                        .iter()
                        .zip(&strides)
                        .any(|(&c, &s)| c > 0 && bits[idx - s]);
                }
                // advance the mixed-radix counter
                for (c, &b) in coords.iter_mut().zip(&bounds) {
                    if *c < b {
                        *c += 1;
                        break;
                    }
                    *c = 0;
                }
            }
            bits
        });
        Membership { ideal, bounds, strides, bitmap }
    }

    pub(crate) fn contains(&self, exps: &[u32]) -> bool {
        match &self.bitmap {
            Some(bits) => {
                let idx = exps
                    .iter()
                    .zip(&self.bounds)
                    .zip(&self.strides)
                    .map(|((&e, &b), &s)| e.min(b) as usize * s)
                    .sum::<usize>();
                bits[idx]
            }
            None => self.ideal.member_exps(exps),
        }
    }
}

fn index_of(exps: &[u32], strides: &[usize]) -> usize {
    exps.iter().zip(strides).map(|(&e, &s)| e as usize * s).sum()
}

/// All least common multiples of subsets of the minimal generators,
/// including `1` (the empty subset), in graded-lex order.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let n = ideal.num_vars();
    if ideal.is_zero() || ideal.is_unit() {
        return vec![Monomial::one(n)];
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(vec![0; n]);
    let mut elements: Vec<Vec<u32>> = vec![vec![0; n]];
    for g in ideal.generators() {
        let fresh: Vec<Vec<u32>> = elements
            .iter()
            .map(|l| l.iter().zip(g.exponents()).map(|(&a, &b)| a.max(b)).collect())
            .collect();
        for v in fresh {
            if seen.insert(v.clone()) {
                elements.push(v);
            }
        }
    }
    let mut out: Vec<Monomial> = elements.into_iter().map(Monomial::new).collect();
    out.sort();
    out
}

fn check_vars(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.num_vars() > MAX_BETTI_VARS {
        return Err(Error::ResourceLimit(format!(
            "Betti computation supports at most {MAX_BETTI_VARS} variables, got {}",
            ideal.num_vars()
        )));
    }
    Ok(())
}

/// Support mask of `a`: the variables whose exponent is positive.
fn positive_mask(a: &[u32]) -> u64 {
    a.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (i, _)| m | (1 << i))
}

fn upper_koszul_with(member: impl Fn(&[u32]) -> bool, a: &[u32]) -> SimplicialComplex {
    SimplicialComplex::from_masks(a.len(), upper_koszul_faces(member, a))
}

/// All faces of `K^a(I)` as vertex bitmasks, in decreasing mask order.
fn upper_koszul_faces(member: impl Fn(&[u32]) -> bool, a: &[u32]) -> Vec<u64> {
    let support = positive_mask(a);
    let mut shifted = a.to_vec();
    let mut faces = Vec::new();
    let mut sigma = support;
    loop {
        for (i, s) in shifted.iter_mut().enumerate() {
            *s = a[i] - u32::from(sigma & (1 << i) != 0);
        }
        if member(&shifted) {
            faces.push(sigma);
        }
        if sigma == 0 {
            break;
        }
        sigma = (sigma - 1) & support;
    }
    faces
}

/// True if some vertex `v` is a cone point: `σ ∪ {v}` is a face for every
/// face `σ`. Cones are acyclic, so they contribute no Betti numbers.
fn is_cone(faces: &[u64]) -> bool {
    let mut sorted = faces.to_vec();
    sorted.sort_unstable();
    let mut candidates = faces.iter().fold(0u64, |acc, &f| acc | f);
    while candidates != 0 {
        let v = candidates & candidates.wrapping_neg();
        candidates &= candidates - 1;
        if faces.iter().all(|&f| sorted.binary_search(&(f | v)).is_ok()) {
            return true;
        }
    }
    false
}

/// The upper Koszul complex `K^a(I)`: faces `σ` with `a - 1_σ ≥ 0` and
/// `x^{a - 1_σ} ∈ I`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, a: &Monomial) -> Result<SimplicialComplex> {
    if a.num_vars() != ideal.num_vars() {
        return Err(Error::DimensionMismatch { expected: ideal.num_vars(), found: a.num_vars() });
    }
    check_vars(ideal)?;
    Ok(upper_koszul_with(|e| ideal.member_exps(e), a.exponents()))
}

fn entries_at(member: &Membership<'_>, a: &Monomial, field: FieldSpec) -> Vec<BettiEntry> {
    let faces = upper_koszul_faces(|e| member.contains(e), a.exponents());
    if is_cone(&faces) {
        return Vec::new();
    }
    let complex = SimplicialComplex::from_masks(a.num_vars(), faces);
    let homology = reduced_homology_ranks(&complex, field);
    // β_{i,a}(S/I) = β_{i-1,a}(I) = dim H̃_{i-2}(K^a(I)); ranks[k] is H̃_{k-1}
    homology
        .ranks
        .iter()
        .enumerate()
        .filter(|(_, &r)| r > 0)
        .map(|(k, &r)| BettiEntry {
            homological_degree: k + 1,
            multidegree: a.exponents().to_vec(),
            rank: r as u64,
        })
        .collect()
}

fn unit_entry(n: usize) -> BettiEntry {
    BettiEntry { homological_degree: 0, multidegree: vec![0; n], rank: 1 }
}

/// Multigraded Betti numbers of `S/I` from upper Koszul complexes over the
/// lcm lattice. Each multidegree is an independent task.
pub fn betti_table(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    ideal.require_proper()?;
    check_vars(ideal)?;
    let n = ideal.num_vars();
    let member = Membership::new(ideal);
    let lattice = lcm_lattice(ideal);
    let mut entries: Vec<BettiEntry> = lattice
        .par_iter()
        .filter(|a| !a.is_one())
        .flat_map_iter(|a| entries_at(&member, a, field))
        .collect();
    entries.push(unit_entry(n));
    let table = BettiTable::from_entries(n, field, entries);
    if cfg!(debug_assertions) && n <= 3 {
        debug_assert_eq!(
            table,
            betti_table_full_scan(ideal, field)?,
            "Betti entry outside the lcm lattice"
        );
    }
    Ok(table)
}

/// Like [`betti_table`] but scans every multidegree `0 < a ≤ lcm(I)`
/// instead of relying on lcm-lattice concentration.
pub fn betti_table_full_scan(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    ideal.require_proper()?;
    check_vars(ideal)?;
    let n = ideal.num_vars();
    let member = Membership::new(ideal);
    let bound = ideal.lcm_of_generators();
    let points = box_points(bound.exponents())?;
    let mut entries: Vec<BettiEntry> = points
        .par_iter()
        .filter(|a| !a.is_one())
        .flat_map_iter(|a| entries_at(&member, a, field))
        .collect();
    entries.push(unit_entry(n));
    Ok(BettiTable::from_entries(n, field, entries))
}

/// Every exponent vector `0 ≤ a ≤ bound`.
pub(crate) fn box_points(bound: &[u32]) -> Result<Vec<Monomial>> {
    let size = bound
        .iter()
        .try_fold(1usize, |acc, &b| acc.checked_mul(b as usize + 1))
        .filter(|&s| s <= MAX_BITMAP_POINTS)
        .ok_or_else(|| Error::ResourceLimit("multidegree box too large to scan".into()))?;
    let mut out = Vec::with_capacity(size);
    let mut cur = vec![0u32; bound.len()];
    for _ in 0..size {
        out.push(Monomial::new(cur.clone()));
        for (c, &b) in cur.iter_mut().zip(bound) {
            if *c < b {
                *c += 1;
                break;
            }
            *c = 0;
        }
    }
    Ok(out)
}

pub fn projective_dimension(ideal: &MonomialIdeal, field: FieldSpec) -> Result<usize> {
    Ok(betti_table(ideal, field)?.projective_dimension)
}

/// `depth(S/I) = n - pd(S/I)`.
pub fn depth(ideal: &MonomialIdeal, field: FieldSpec) -> Result<usize> {
    Ok(betti_table(ideal, field)?.depth)
}

/// A socle monomial of `S/I`: `w ∉ I` with `x_i·w ∈ I` for every `i`.
/// One exists iff the maximal ideal is associated, i.e. iff depth is 0.
/// Returns the graded-lex-first such monomial.
pub fn depth_zero_witness(ideal: &MonomialIdeal) -> Result<Option<Monomial>> {
    ideal.require_proper()?;
    let n = ideal.num_vars();
    // Over the residue field itself the maximal ideal is zero and 1 is socle.
    if n == 0 {
        return Ok(Some(Monomial::one(0)));
    }
    if ideal.is_zero() {
        return Ok(None);
    }
    let bound = ideal.lcm_of_generators();
    // A variable missing from every generator is a nonzerodivisor.
    if bound.exponents().contains(&0) {
        return Ok(None);
    }
    let below: Vec<u32> = bound.exponents().iter().map(|&b| b - 1).collect();
    let member = Membership::new(ideal);
    let witness = box_points(&below)?
        .into_iter()
        .filter(|w| {
            !member.contains(w.exponents())
                && (0..n).all(|i| {
                    let mut e = w.exponents().to_vec();
                    e[i] += 1;
                    member.contains(&e)
                })
        })
        .min();
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::join_ideals;
    use crate::monomial::tests::{arb_ideal, ideal, mono};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn lattice_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(lcm_lattice(&i), vec![mono(&[0, 0]), mono(&[2, 0]), mono(&[1, 1]), mono(&[2, 1])]);
        assert_eq!(lcm_lattice(&ideal(3, &[&[1, 2, 0]])), vec![mono(&[0, 0, 0]), mono(&[1, 2, 0])]);
        let m = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(lcm_lattice(&m), vec![mono(&[0, 0]), mono(&[1, 0]), mono(&[0, 1]), mono(&[1, 1])]);
        assert_eq!(lcm_lattice(&MonomialIdeal::zero(2)), vec![mono(&[0, 0])]);
        assert_eq!(lcm_lattice(&MonomialIdeal::unit(2)), vec![mono(&[0, 0])]);
    }

    #[test]
    fn upper_koszul_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let k = upper_koszul_complex(&i, &mono(&[2, 1])).unwrap();
        assert_eq!(k.facets(), vec![vec![0], vec![1]]);
        assert!(upper_koszul_complex(&i, &mono(&[0, 0])).unwrap().is_void());
        let at_gen = upper_koszul_complex(&i, &mono(&[2, 0])).unwrap();
        assert_eq!(at_gen.faces(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn betti_table_of_x2_xy() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let t = betti_table(&i, q()).unwrap();
        assert_eq!(t.totals(), vec![1, 2, 1]);
        assert_eq!(t.get(1, &[2, 0]), 1);
        assert_eq!(t.get(1, &[1, 1]), 1);
        assert_eq!(t.get(2, &[2, 1]), 1);
        assert_eq!((t.projective_dimension, t.depth), (2, 0));
    }

    #[test]
    fn betti_table_trivial_cases() {
        let t = betti_table(&MonomialIdeal::zero(3), q()).unwrap();
        assert_eq!(t.totals(), vec![1]);
        assert_eq!(t.depth, 3);
        let t = betti_table(&ideal(1, &[&[1]]), q()).unwrap();
        assert_eq!(t.totals(), vec![1, 1]);
        assert_eq!(t.depth, 0);
        assert_eq!(betti_table(&MonomialIdeal::unit(2), q()), Err(Error::ImproperIdeal));
    }

    #[test]
    fn depth_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(depth(&i, q()).unwrap(), 0);
        let with_t = join_ideals(&i, &MonomialIdeal::zero(1));
        assert_eq!(depth(&with_t, q()).unwrap(), 1);
        assert_eq!(projective_dimension(&with_t, q()).unwrap(), 2);
        assert_eq!(depth(&MonomialIdeal::zero(4), q()).unwrap(), 4);
    }

    #[test]
    fn witness_examples() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(depth_zero_witness(&i).unwrap(), Some(mono(&[1, 0])));
        assert_eq!(depth_zero_witness(&ideal(2, &[&[1, 0]])).unwrap(), None);
        assert_eq!(depth_zero_witness(&MonomialIdeal::zero(2)).unwrap(), None);
        assert_eq!(depth_zero_witness(&MonomialIdeal::unit(2)), Err(Error::ImproperIdeal));
        assert_eq!(depth_zero_witness(&MonomialIdeal::zero(0)).unwrap(), Some(Monomial::one(0)));
    }

    /// Socle search by plain enumeration of degree ≤ `deg` monomials.
    fn socle_by_enumeration(i: &MonomialIdeal, deg: u32) -> bool {
        crate::monomial::tests::monomials_up_to(i.num_vars(), deg).iter().any(|w| {
            !i.member(w).unwrap()
                && (0..i.num_vars()).all(|k| {
                    let mut e = w.exponents().to_vec();
                    e[k] += 1;
                    i.member(&Monomial::new(e)).unwrap()
                })
        })
    }

    #[test]
    fn witness_for_x_in_two_vars_matches_enumeration() {
        assert!(!socle_by_enumeration(&ideal(2, &[&[1, 0]]), 2));
    }

    #[test]
    fn characteristic_dependent_betti_numbers() {
        // Stanley–Reisner ideal of the six-vertex RP^2: pd differs in char 2.
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let faces: Vec<u64> = tris.iter().map(|t| t.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let is_face = |s: u64| faces.iter().any(|&f| s & f == s);
        let non_faces: Vec<Monomial> = (0u64..64)
            .filter(|&s| !is_face(s))
            .map(|s| Monomial::new((0..6).map(|v| ((s >> v) & 1) as u32).collect()))
            .collect();
        let i = MonomialIdeal::minimalize(non_faces, 6).unwrap();
        let t0 = betti_table(&i, q()).unwrap();
        let t2 = betti_table(&i, FieldSpec::new(2).unwrap()).unwrap();
        assert_eq!(t0.depth, 3);
        assert_eq!(t2.depth, 2);
    }

    fn proper(i: MonomialIdeal) -> Option<MonomialIdeal> {
        i.is_proper().then_some(i)
    }

    proptest! {
        #[test]
        fn lattice_concentration(i in arb_ideal(3, 4, 3).prop_filter_map("proper", proper)) {
            prop_assert_eq!(betti_table(&i, q()).unwrap(), betti_table_full_scan(&i, q()).unwrap());
        }

        #[test]
        fn lattice_matches_subset_lcms(i in arb_ideal(4, 5, 3)) {
            let gens = i.generators();
            let mut expect: Vec<Monomial> = (0u32..1 << gens.len())
                .map(|s| {
                    gens.iter().enumerate().filter(|(k, _)| s & (1 << k) != 0)
                        .fold(Monomial::one(i.num_vars()), |acc, (_, g)| acc.lcm(g).unwrap())
                })
                .collect();
            expect.sort();
            expect.dedup();
            prop_assert_eq!(lcm_lattice(&i), expect);
        }

        #[test]
        fn witness_matches_enumeration(i in arb_ideal(3, 4, 3).prop_filter_map("proper", proper)) {
            let found = depth_zero_witness(&i).unwrap();
            if let Some(w) = &found {
                prop_assert!(!i.member(w).unwrap());
            }
            prop_assert_eq!(found.is_some(), socle_by_enumeration(&i, 9));
        }
    }
}
