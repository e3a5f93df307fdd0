use gysin::exactness::{
    betti_feasible, check_exact, connecting_map, connecting_map_with_lift, exact_sequence_from_ranks,
    les_of_ses, pivot_lift, segment_sums, validate_ses,
};
use gysin::linalg::{kernel_basis, Matrix, Rational, Vector};
use gysin::random::{random_rank_profile, random_ses, Shape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A lift that differs from the pivot lift by every kernel direction.
fn shifted_lift(m: &Matrix, v: &[Rational]) -> Option<Vector> {
    let mut x = pivot_lift(m, v)?;
    for k in kernel_basis(m).basis_vectors() {
        for (xi, ki) in x.iter_mut().zip(&k) {
            *xi += ki;
        }
    }
    Some(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn les_of_a_random_ses_is_exact(seed in any::<u64>(), lo in -2i32..2, len in 1usize..6) {
        let s = random_ses(&mut ChaCha8Rng::seed_from_u64(seed), Shape { lo, len, max_rank: 1 });
        prop_assert!(validate_ses(&s).is_ok());
        let report = check_exact(&les_of_ses(&s).unwrap()).unwrap();
        prop_assert!(report.is_exact(), "{:?}", report);
    }

    #[test]
    fn connecting_map_does_not_depend_on_the_lift(seed in any::<u64>()) {
        let s = random_ses(&mut ChaCha8Rng::seed_from_u64(seed), Shape { lo: 0, len: 4, max_rank: 1 });
        for k in -1..5 {
            prop_assert_eq!(
                connecting_map(&s, k).unwrap(),
                connecting_map_with_lift(&s, k, &shifted_lift).unwrap()
            );
        }
    }

    #[test]
    fn witness_sequences_are_exact_and_feasible(seed in any::<u64>(), len in 2usize..9) {
        let ranks = random_rank_profile(&mut ChaCha8Rng::seed_from_u64(seed), len, 3);
        let ls = exact_sequence_from_ranks(&ranks);
        prop_assert!(check_exact(&ls).unwrap().is_exact());
        let f = betti_feasible(&ls.dims());
        prop_assert!(f.feasible);
        prop_assert_eq!(f.ranks, ranks.iter().map(|&r| r as i64).collect::<Vec<_>>());
        prop_assert!(segment_sums(&ls.dims()).iter().all(|s| s.alternating_sum == 0));
    }
}

#[test]
fn screening_examples() {
    let yes = betti_feasible(&[0, 1, 2, 1, 0]);
    assert!(yes.feasible);
    assert_eq!(yes.ranks, vec![0, 1, 1, 0]);
    assert!(!betti_feasible(&[0, 1, 0, 1, 0]).feasible);
}
