use gysin::linalg::{eigenspace, kernel_basis, rank, rat, solve, Matrix, Sign, Subspace};
use gysin::random::{random_invertible, random_matrix, random_matrix_of_rank};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_the_column_count(seed in any::<u64>(), rows in 0usize..6, cols in 0usize..6) {
        let m = random_matrix(&mut rng(seed), rows, cols, 3);
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), cols);
        prop_assert!((&m * k.basis()).is_zero());
    }

    #[test]
    fn solve_finds_a_preimage_of_every_image_vector(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, rows, cols, 2);
        let x = random_matrix(&mut r, cols, 1, 3).column(0);
        let b = m.apply(&x);
        let y = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.apply(&y), b);
    }

    #[test]
    fn requested_rank_survives_random_bases(seed in any::<u64>(), rows in 0usize..6, cols in 0usize..6) {
        let mut r = rng(seed);
        let k = rows.min(cols);
        let target = if k == 0 { 0 } else { (seed as usize) % (k + 1) };
        prop_assert_eq!(rank(&random_matrix_of_rank(&mut r, rows, cols, target)), target);
    }

    #[test]
    fn eigenspaces_of_an_involution_split_the_space(seed in any::<u64>(), plus in 0usize..4, minus in 0usize..4) {
        let n = plus + minus;
        let mut d = Matrix::identity(n);
        for i in plus..n {
            d.set(i, i, rat(-1));
        }
        let (p, inv) = random_invertible(&mut rng(seed), n);
        let t = &(&p * &d) * &inv;
        let e_plus = eigenspace(&t, Sign::Plus).unwrap();
        let e_minus = eigenspace(&t, Sign::Minus).unwrap();
        prop_assert_eq!(e_plus.dim(), plus);
        prop_assert_eq!(e_minus.dim(), minus);
        prop_assert_eq!(e_plus.sum(&e_minus), Subspace::full(n));
    }

    #[test]
    fn sum_and_intersection_dimensions(seed in any::<u64>(), n in 1usize..6, a in 0usize..4, b in 0usize..4) {
        let mut r = rng(seed);
        let u = Subspace::column_span(&random_matrix(&mut r, n, a, 2));
        let v = Subspace::column_span(&random_matrix(&mut r, n, b, 2));
        prop_assert_eq!(u.sum(&v).dim() + u.intersection(&v).dim(), u.dim() + v.dim());
        for w in u.intersection(&v).basis_vectors() {
            prop_assert!(u.contains(&w) && v.contains(&w));
        }
    }

    #[test]
    fn inverse_of_a_random_invertible_matrix(seed in any::<u64>(), n in 0usize..6) {
        let (p, inv) = random_invertible(&mut rng(seed), n);
        prop_assert_eq!(p.inverse(), Some(inv));
    }
}

#[test]
fn singular_systems_without_solution() {
    let m = Matrix::from_ints(&[[1, 2], [2, 4]]);
    assert_eq!(solve(&m, &[rat(1), rat(3)]).unwrap(), None);
    assert!(eigenspace(&Matrix::from_ints(&[[1, 1], [0, 1]]), Sign::Plus).is_err());
}
