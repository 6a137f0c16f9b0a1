use std::collections::BTreeSet;

use depthforge_core::decomposition::{associated_primes, dimension, minimal_primes, MonomialPrime};
use depthforge_core::homology::{
    betti_table, betti_table_koszul_oracle, depth, depth_zero_witness, hilbert_series,
    projective_dimension,
};
use depthforge_core::{join_ideals, FieldSpec, Monomial, MonomialIdeal};
use proptest::prelude::*;

fn arb_proper(max_vars: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars)
        .prop_flat_map(move |n| {
            prop::collection::vec(prop::collection::vec(0..=3u32, n), 0..=max_gens).prop_map(
                move |gens| MonomialIdeal::minimalize(gens.into_iter().map(Monomial::new), n).unwrap(),
            )
        })
        .prop_filter("proper", MonomialIdeal::is_proper)
}

fn q() -> FieldSpec {
    FieldSpec::rational()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn depth_and_pd_are_additive_on_joins(i in arb_proper(3, 4), j in arb_proper(3, 4)) {
        let b = join_ideals(&i, &j);
        prop_assert_eq!(depth(&b, q()).unwrap(), depth(&i, q()).unwrap() + depth(&j, q()).unwrap());
        prop_assert_eq!(
            projective_dimension(&b, q()).unwrap(),
            projective_dimension(&i, q()).unwrap() + projective_dimension(&j, q()).unwrap()
        );
    }

    #[test]
    fn minimal_primes_of_join_are_pairwise_unions(i in arb_proper(3, 4), j in arb_proper(3, 4)) {
        let b = join_ideals(&i, &j);
        let m = i.num_vars();
        let unions: BTreeSet<MonomialPrime> = minimal_primes(&i).unwrap().iter()
            .flat_map(|p| minimal_primes(&j).unwrap().into_iter().map(move |q| p.join(&q, m)))
            .collect();
        prop_assert_eq!(minimal_primes(&b).unwrap(), unions);
        prop_assert_eq!(dimension(&b).unwrap(), dimension(&i).unwrap() + dimension(&j).unwrap());
    }

    #[test]
    fn hilbert_series_factor_over_joins(i in arb_proper(3, 4), j in arb_proper(3, 4)) {
        let b = hilbert_series(&join_ideals(&i, &j)).unwrap();
        prop_assert_eq!(b, hilbert_series(&i).unwrap().mul(&hilbert_series(&j).unwrap()).unwrap());
    }

    #[test]
    fn depth_is_bounded(i in arb_proper(4, 5)) {
        let n = i.num_vars();
        let d = depth(&i, q()).unwrap();
        let dim = dimension(&i).unwrap();
        prop_assert!(d <= dim && dim <= n);
        let ass = associated_primes(&i).unwrap();
        let bound = ass.iter().map(|p| n - p.height()).min().unwrap();
        prop_assert!(d <= bound);
    }

    #[test]
    fn socle_witness_iff_maximal_ideal_associated(i in arb_proper(4, 5)) {
        let n = i.num_vars();
        let witness = depth_zero_witness(&i).unwrap();
        let d = depth(&i, q()).unwrap();
        let maximal_associated = associated_primes(&i).unwrap().contains(&MonomialPrime::maximal(n));
        prop_assert_eq!(witness.is_some(), d == 0);
        prop_assert_eq!(maximal_associated, d == 0);
    }

    #[test]
    fn oracle_equivalence_over_several_fields(i in arb_proper(4, 5)) {
        for p in [0u64, 2, 3, 32003] {
            let f = FieldSpec::new(p).unwrap();
            let table = betti_table(&i, f).unwrap();
            prop_assert_eq!(&table, &betti_table_koszul_oracle(&i, f).unwrap());
            prop_assert_eq!(table.depth + table.projective_dimension, i.num_vars());
        }
    }
}
