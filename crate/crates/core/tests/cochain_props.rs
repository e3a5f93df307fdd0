use gysin::cochain::{
    cohomology, direct_sum, induced_map, shift, validate_chain_map, validate_complex, ChainMap,
};
use gysin::random::{random_complex, random_ses, Shape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape(lo: i32, len: usize) -> Shape {
    Shape { lo, len, max_rank: 2 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_of_cochains_equals_that_of_cohomology(seed in any::<u64>(), lo in -3i32..3, len in 1usize..6) {
        let c = random_complex(&mut ChaCha8Rng::seed_from_u64(seed), shape(lo, len));
        prop_assert!(validate_complex(&c).is_ok());
        let h = cohomology(&c).unwrap();
        prop_assert_eq!(c.euler_characteristic(), h.graded().euler_characteristic());
    }

    #[test]
    fn projection_inverts_representatives(seed in any::<u64>(), len in 1usize..6) {
        let c = random_complex(&mut ChaCha8Rng::seed_from_u64(seed), shape(0, len));
        let h = cohomology(&c).unwrap();
        for k in c.degrees() {
            let reps = h.representatives(k);
            prop_assert!((&*c.differential(k) * &*reps).is_zero());
            prop_assert_eq!(&*h.projection(k) * &*reps, gysin::Matrix::identity(h.dim(k)));
        }
    }

    #[test]
    fn shifting_moves_cohomology(seed in any::<u64>(), r in -4i32..4) {
        let c = random_complex(&mut ChaCha8Rng::seed_from_u64(seed), shape(0, 4));
        let h = cohomology(&c).unwrap();
        let hs = cohomology(&shift(&c, r)).unwrap();
        for k in -1..6 {
            prop_assert_eq!(hs.dim(k + r), h.dim(k));
        }
    }

    #[test]
    fn cohomology_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_complex(&mut rng, shape(0, 4));
        let b = random_complex(&mut rng, shape(-1, 4));
        let (ha, hb) = (cohomology(&a).unwrap(), cohomology(&b).unwrap());
        let hs = cohomology(&direct_sum(&a, &b)).unwrap();
        for k in -2..6 {
            prop_assert_eq!(hs.dim(k), ha.dim(k) + hb.dim(k));
        }
    }

    #[test]
    fn induced_maps_are_functorial(seed in any::<u64>()) {
        let s = random_ses(&mut ChaCha8Rng::seed_from_u64(seed), Shape { lo: 0, len: 4, max_rank: 1 });
        prop_assert!(validate_chain_map(s.inj()).is_ok());
        let composite = s.surj().compose(s.inj()).unwrap();
        let fi = induced_map(s.inj()).unwrap();
        let fs = induced_map(s.surj()).unwrap();
        let fc = induced_map(&composite).unwrap();
        for k in 0..4 {
            prop_assert_eq!(fc.block(k), &fs.block(k) * &fi.block(k));
            prop_assert!(fc.block(k).is_zero());
        }
        let id = induced_map(&ChainMap::identity(s.middle())).unwrap();
        let hb = cohomology(s.middle()).unwrap();
        for k in 0..4 {
            prop_assert_eq!(id.block(k), gysin::Matrix::identity(hb.dim(k)));
        }
    }
}
