//! Runs every acceptance criterion and prints one line per criterion.
//! Exits with status 1 if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use gysin::braid::{braid_from_double_ses, splice, validate_braid, validate_double_ses, Pivot};
use gysin::cochain::cohomology;
use gysin::exactness::{
    acyclicity_transfer, betti_feasible, check_exact, connecting_map, connecting_map_with_lift,
    exact_sequence_from_ranks, les_of_ses, pivot_lift, validate_ses, TransferVerdict,
};
use gysin::linalg::{kernel_basis, rank, Matrix, Rational, Subspace, Vector};
use gysin::random::{random_double_ses, random_rank_profile, random_ses, Shape};
use gysin::topology::instances::hexagon_reflection;
use gysin::topology::simplicial::relative_complex;
use gysin::topology::{
    anti_invariants, betti_numbers, build_sequence, catalog, find_instance, gysin_transfer,
    verify_instance, SequenceKind, SimplicialComplex, SimplicialInvolution,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shifted_lift(m: &Matrix, v: &[Rational]) -> Option<Vector> {
    let mut x = pivot_lift(m, v)?;
    for k in kernel_basis(m).basis_vectors() {
        for (xi, ki) in x.iter_mut().zip(&k) {
            *xi += ki;
        }
    }
    Some(x)
}

fn snake_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut exact, mut agree, mut nonzero_delta) = (0, 0, 0);
    for _ in 0..200 {
        let shape = Shape {
            lo: rng.gen_range(-3..3),
            len: rng.gen_range(1..=8),
            max_rank: 1,
        };
        let s = random_ses(&mut rng, shape);
        ensure(validate_ses(&s).is_ok(), || "generator produced an invalid SES".into())?;
        let widest = [s.sub(), s.middle(), s.quotient()]
            .iter()
            .flat_map(|c| c.spaces().dims().to_vec())
            .max()
            .unwrap_or(0);
        ensure(widest <= 6, || format!("degree of dimension {widest}"))?;
        if check_exact(&les_of_ses(&s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.is_exact() {
            exact += 1;
        }
        let mut same = true;
        for k in shape.lo - 1..=shape.lo + shape.len as i32 {
            let a = connecting_map(&s, k).map_err(|e| e.to_string())?;
            let b = connecting_map_with_lift(&s, k, &shifted_lift).map_err(|e| e.to_string())?;
            same &= a == b;
            if !a.is_zero() {
                nonzero_delta += 1;
            }
        }
        if same {
            agree += 1;
        }
    }
    ensure(exact == 200 && agree == 200, || format!("exact {exact}/200, lifts agree {agree}/200"))?;
    Ok(format!("exact 200/200, lifts agree 200/200, {nonzero_delta} nonzero δ blocks"))
}

fn braid_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut good = 0;
    let mut braids = Vec::new();
    for _ in 0..100 {
        let shape = Shape {
            lo: rng.gen_range(-2..2),
            len: rng.gen_range(1..=4),
            max_rank: 1,
        };
        let d = random_double_ses(&mut rng, shape);
        ensure(validate_double_ses(&d).is_ok(), || "generator produced an invalid diagram".into())?;
        let b = braid_from_double_ses(&d).map_err(|e| e.to_string())?;
        let ok = validate_braid(&b).is_commutative_exact()
            && [Pivot::E, Pivot::F].into_iter().all(|p| {
                splice(&b, p)
                    .ok()
                    .and_then(|ls| check_exact(&ls).ok())
                    .is_some_and(|r| r.is_exact())
            });
        if ok {
            good += 1;
        }
        braids.push(b);
    }
    let mut caught = 0;
    let mut missed = Vec::new();
    let mut tried = 0;
    let mut i = 0;
    while tried < 50 && i < 10 * braids.len() {
        let b = &braids[i % braids.len()];
        i += 1;
        let Some((arrow, k, broken)) = common::perturb_one_arrow(&mut rng, b) else {
            continue;
        };
        tried += 1;
        if validate_braid(&broken).is_commutative_exact() {
            missed.push(format!("{arrow:?}@{k}"));
        } else {
            caught += 1;
        }
    }
    ensure(good == 100 && caught == 50, || {
        format!("valid {good}/100, mutations caught {caught}/{tried}, missed {missed:?}")
    })?;
    Ok("valid braids with exact splices 100/100, mutations caught 50/50".into())
}

/// Coboundary and reflection of the hexagon written out by hand. Vertices
/// `0..6`; edges in the order 01, 05, 12, 23, 34, 45.
fn hexagon_oracle() -> (usize, usize) {
    let d0 = Matrix::from_ints(&[
        [-1, 1, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, 1],
        [0, -1, 1, 0, 0, 0],
        [0, 0, -1, 1, 0, 0],
        [0, 0, 0, -1, 1, 0],
        [0, 0, 0, 0, -1, 1],
    ]);
    // (τ^*φ)(σ) = φ(τσ) with v ↦ 6 - v.
    let t0 = Matrix::from_ints(&[
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
    ]);
    let t1 = Matrix::from_ints(&[
        [0, 1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 0, -1, 0, 0, 0],
    ]);
    assert_eq!(&d0 * &t0, &t1 * &d0, "the hand-written reflection is a cochain map");
    let minus = |t: &Matrix| kernel_basis(&(t + &Matrix::identity(6)));
    let h0 = kernel_basis(&d0).intersection(&minus(&t0)).dim();
    let z1 = Subspace::full(6).intersection(&minus(&t1)).dim();
    let b1 = Subspace::column_span(&d0).intersection(&minus(&t1)).dim();
    (h0, z1 - b1)
}

fn smith_gysin_catalog() -> Outcome {
    let mut checked = 0;
    for inst in catalog() {
        let kinds = inst.supported_kinds();
        let report = verify_instance(&inst, &kinds);
        for (k, r) in &report.kinds {
            let ok = r.as_ref().is_ok_and(|r| r.passed());
            ensure(ok, || format!("{} {k}: {r:?}", inst.name))?;
            checked += 1;
        }
    }
    let inst = find_instance("s3-conjugation-s3").ok_or("conjugation instance missing")?;
    let oracle = hexagon_oracle();
    let anti = anti_invariants(inst.circle_fixed.as_ref().ok_or("no circle-fixed model")?)
        .map_err(|e| e.to_string())?
        .anti_invariant;
    ensure(anti.dims_on(0, 1) == vec![oracle.0, oracle.1], || {
        format!("anti-invariants {:?} vs oracle {oracle:?}", anti.dims_on(0, 1))
    })?;
    let built = build_sequence(&inst, SequenceKind::S3SmithGysin).map_err(|e| e.to_string())?;
    let stars: Vec<i32> = (0..built.nodes.len() / 3).map(|i| i as i32 - 1).collect();
    let exotic: Vec<usize> = stars.iter().map(|&s| anti.dim(s - 2)).collect();
    let expected: Vec<usize> = stars.iter().map(|&s| usize::from(s == 3)).collect();
    ensure(exotic == expected, || format!("exotic dims {exotic:?}"))?;
    let segment: Vec<usize> = built.nodes[12..15].iter().map(|n| n.dim).collect();
    ensure(segment == vec![1, 1, 0], || format!("degree-3 segment {segment:?}"))?;
    Ok(format!(
        "{checked} instance/kind pairs pass; exotic node {:?} from * = 0 matches the hexagon oracle",
        &exotic[1..]
    ))
}

fn exotic_oracle() -> Outcome {
    let hexagon = SimplicialComplex::cycle(6);
    let reflection = anti_invariants(&hexagon_reflection()).map_err(|e| e.to_string())?;
    let identity =
        anti_invariants(&SimplicialInvolution::identity(hexagon.clone())).map_err(|e| e.to_string())?;
    let sum: Vec<usize> = (0..2)
        .map(|k| reflection.invariant.dim(k) + reflection.anti_invariant.dim(k))
        .collect();
    let got = (
        reflection.anti_invariant.dims_on(0, 1),
        identity.anti_invariant.dims_on(0, 1),
        sum,
    );
    ensure(got == (vec![0, 1], vec![0, 0], vec![1, 1]), || format!("{got:?}"))?;
    Ok("reflection (0,1), identity (0,0), invariant + anti (1,1)".into())
}

fn semifree_degeneration() -> Outcome {
    let inst = find_instance("s3-semifree-s4").ok_or("semi-free instance missing")?;
    let general = inst.as_general();
    let semifree = build_sequence(&inst, SequenceKind::S3SmithGysin).map_err(|e| e.to_string())?;
    let degenerate = build_sequence(&general, SequenceKind::S3SmithGysin).map_err(|e| e.to_string())?;
    // Direct formula: H^*(M) → H^{*-3}(B,F) ⊕ H^*(F) → H^{*+1}(B,F).
    let m = betti_numbers(&inst.total).map_err(|e| e.to_string())?;
    let f = betti_numbers(&inst.fixed_in_total).map_err(|e| e.to_string())?;
    let pair = relative_complex(&inst.orbit, &inst.fixed_in_orbit).map_err(|e| e.to_string())?;
    let h = cohomology(&pair).map_err(|e| e.to_string())?;
    let bf: Vec<usize> = (0..=pair.hi().max(0)).map(|k| h.dim(k)).collect();
    let at = |v: &[usize], k: i32| if k < 0 { 0 } else { v.get(k as usize).copied().unwrap_or(0) };
    let oracle: Vec<usize> = (0..semifree.nodes.len() / 3)
        .flat_map(|i| {
            let s = i as i32 - 1;
            [at(&m, s), at(&bf, s - 3) + at(&f, s), at(&bf, s + 1)]
        })
        .collect();
    ensure(semifree.dims() == oracle && degenerate.dims() == oracle, || {
        format!(
            "semi-free {:?}, general {:?}, oracle {oracle:?}",
            semifree.dims(),
            degenerate.dims()
        )
    })?;
    Ok(format!("{} nodes agree with the direct semi-free formula", oracle.len()))
}

fn transfer() -> Outcome {
    let inst = find_instance("s1-rotation-s2").ok_or("rotation instance missing")?;
    let t = gysin_transfer(&inst).map_err(|e| e.to_string())?;
    let report = acyclicity_transfer(&t).map_err(|e| e.to_string())?;
    ensure(report.verdict == TransferVerdict::Certified, || format!("{report:?}"))?;
    ensure(report.bottom_defects.iter().all(|&d| d == 0), || "bottom row not exact".into())?;
    let (i, reduced) = t
        .middle
        .arrows()
        .iter()
        .enumerate()
        .find_map(|(i, m)| common::rank_one_reduction(m).map(|r| (i, r)))
        .ok_or("middle row has no nonzero arrow")?;
    ensure(rank(&reduced) + 1 == rank(&t.middle.arrows()[i]), || "rank did not drop by one".into())?;
    let mut corrupted = t.clone();
    corrupted.middle = t.middle.clone().with_arrow(i, reduced).map_err(|e| e.to_string())?;
    let after = acyclicity_transfer(&corrupted).map_err(|e| e.to_string())?;
    ensure(after.verdict != TransferVerdict::Certified, || {
        format!("corrupted arrow {i} still certified")
    })?;
    Ok(format!("certified; lowering middle arrow {i} by one rank gives {:?}", after.verdict))
}

fn simplicial_oracle() -> Outcome {
    let trim = |mut v: Vec<usize>| {
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let cases: [(&str, SimplicialComplex, Vec<usize>); 6] = [
        ("point", SimplicialComplex::point(), vec![1]),
        ("interval", SimplicialComplex::interval(2), vec![1]),
        ("triangle", SimplicialComplex::boundary_of_simplex(2), vec![1, 1]),
        ("∂Δ3", SimplicialComplex::boundary_of_simplex(3), vec![1, 0, 1]),
        ("∂Δ4", SimplicialComplex::boundary_of_simplex(4), vec![1, 0, 0, 1]),
        ("∂Δ5", SimplicialComplex::boundary_of_simplex(5), vec![1, 0, 0, 0, 1]),
    ];
    for (name, sc, expected) in cases {
        let got = trim(betti_numbers(&sc).map_err(|e| e.to_string())?);
        ensure(got == expected, || format!("{name}: {got:?}"))?;
    }
    let mut complexes = 0;
    for inst in catalog() {
        for sc in [&inst.total, &inst.orbit, &inst.fixed_in_total, &inst.fixed_in_orbit] {
            let h = cohomology(&gysin::topology::simplicial_cochain_complex(sc)).map_err(|e| e.to_string())?;
            let chi = h.graded().euler_characteristic();
            ensure(chi == sc.euler_characteristic(), || format!("{}: χ mismatch", inst.name))?;
            complexes += 1;
        }
    }
    Ok(format!("six Betti oracles; Euler characteristic of {complexes} catalog complexes"))
}

fn feasibility() -> Outcome {
    let yes = betti_feasible(&[0, 1, 2, 1, 0]);
    ensure(yes.feasible && yes.ranks == vec![0, 1, 1, 0], || format!("{yes:?}"))?;
    ensure(!betti_feasible(&[0, 1, 0, 1, 0]).feasible, || "(0,1,0,1,0) accepted".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = 0;
    for _ in 0..100 {
        let len = rng.gen_range(2..12);
        let ranks = random_rank_profile(&mut rng, len, 3);
        let ls = exact_sequence_from_ranks(&ranks);
        let exact = check_exact(&ls).is_ok_and(|r| r.is_exact());
        if exact && betti_feasible(&ls.dims()).feasible {
            ok += 1;
        }
    }
    ensure(ok == 100, || format!("{ok}/100 random exact sequences feasible"))?;
    Ok("examples as expected; random exact sequences feasible 100/100".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("snake lemma soundness", snake_lemma),
        ("braid lemma and mutation", braid_lemma),
        ("Smith-Gysin on the catalog", smith_gysin_catalog),
        ("exotic-term oracle", exotic_oracle),
        ("semi-free degeneration", semifree_degeneration),
        ("Gysin transfer", transfer),
        ("simplicial kernel oracle", simplicial_oracle),
        ("feasibility screening", feasibility),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({secs:.2}s) {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({secs:.2}s) {detail}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
