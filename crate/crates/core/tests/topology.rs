use std::collections::BTreeMap;

use gysin::cochain::{cohomology, induced_map};
use gysin::exactness::{check_exact, les_of_ses};
use gysin::topology::{
    anti_invariants, betti_numbers, build_sequence, catalog, find_instance, pullback, relative_pair,
    simplicial_cochain_complex, SequenceKind, SimplicialComplex, SimplicialInvolution,
};

#[test]
fn spheres_and_small_complexes() {
    let cases: [(SimplicialComplex, Vec<usize>); 6] = [
        (SimplicialComplex::point(), vec![1]),
        (SimplicialComplex::interval(2), vec![1, 0]),
        (SimplicialComplex::boundary_of_simplex(2), vec![1, 1]),
        (SimplicialComplex::boundary_of_simplex(3), vec![1, 0, 1]),
        (SimplicialComplex::boundary_of_simplex(4), vec![1, 0, 0, 1]),
        (SimplicialComplex::cycle(7), vec![1, 1]),
    ];
    for (sc, betti) in cases {
        assert_eq!(betti_numbers(&sc).unwrap(), betti, "{sc:?}");
    }
    let (s2, _, _) = SimplicialComplex::cycle(4).suspension();
    assert_eq!(betti_numbers(&s2).unwrap(), vec![1, 0, 1]);
    assert_eq!(betti_numbers(&SimplicialComplex::points(&[0, 4, 9])).unwrap(), vec![3]);
}

#[test]
fn euler_characteristic_of_every_catalog_complex() {
    for inst in catalog() {
        for sc in [&inst.total, &inst.orbit, &inst.fixed_in_total, &inst.fixed_in_orbit] {
            let betti = betti_numbers(sc).unwrap();
            let alternating: i64 = betti
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(sc.euler_characteristic(), alternating, "{}", inst.name);
        }
    }
}

#[test]
fn pair_sequence_of_a_disk_and_its_boundary() {
    let disk = SimplicialComplex::from_facets([[0, 1, 2]]).unwrap();
    let circle = SimplicialComplex::boundary_of_simplex(2);
    let s = relative_pair(&disk, &circle).unwrap();
    let rel = cohomology(s.sub()).unwrap();
    assert_eq!((rel.dim(0), rel.dim(1), rel.dim(2)), (0, 0, 1));
    assert!(check_exact(&les_of_ses(&s).unwrap()).unwrap().is_exact());
}

#[test]
fn folding_a_square_onto_an_interval() {
    let square = SimplicialComplex::cycle(4);
    let interval = SimplicialComplex::interval(3);
    let fold: BTreeMap<usize, usize> = [(0, 0), (1, 1), (2, 2), (3, 1)].into();
    let f = pullback(&square, &interval, &fold).unwrap();
    let h = induced_map(&f).unwrap();
    assert_eq!(h.block(0).shape(), (1, 1));
    assert_eq!(h.block(0).get(0, 0), &gysin::linalg::rat(1));
    assert_eq!(h.block(1).shape(), (1, 0));
}

#[test]
fn invariants_and_anti_invariants_fill_the_cohomology() {
    for n in [4, 6] {
        let inv = SimplicialInvolution::new(
            SimplicialComplex::cycle(n),
            (0..n).map(|v| (v, (n - v) % n)).collect(),
        )
        .unwrap();
        let split = anti_invariants(&inv).unwrap();
        let betti = cohomology(&simplicial_cochain_complex(inv.complex())).unwrap();
        for k in 0..2 {
            assert_eq!(split.invariant.dim(k) + split.anti_invariant.dim(k), betti.dim(k));
        }
        assert_eq!(split.anti_invariant.dims_on(0, 1), vec![0, 1]);
    }
}

#[test]
fn second_sequence_matches_the_pair_sequences() {
    let inst = find_instance("s1-rotation-s2").unwrap();
    let b = build_sequence(&inst, SequenceKind::S1Second).unwrap();
    let explicit = b.explicit.unwrap();
    assert_eq!(explicit.dims(), b.nodes.iter().map(|n| n.dim).collect::<Vec<_>>());
    assert!(check_exact(&explicit).unwrap().is_exact());
}
