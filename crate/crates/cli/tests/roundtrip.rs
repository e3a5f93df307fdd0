use gysin::braid::braid_from_double_ses;
use gysin::exactness::les_of_ses;
use gysin::random::{random_complex, random_double_ses, random_matrix, random_ses, Shape};
use gysin::topology::{catalog, gysin_transfer, ActionClass, Group, ModelDims, TableInstance};
use gysin::cochain::GradedSpace;
use gysin_cli::document::{parse, to_string, DocumentBuilder, Instance, Object};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Serializes, re-parses and returns the object stored under `name`.
fn reparse(builder: DocumentBuilder, name: &str) -> Object {
    let text = to_string(&builder.finish());
    let d = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    d.get(name).cloned().expect("object survives")
}

fn shape(lo: i32, len: usize) -> Shape {
    Shape { lo, len, max_rank: 1 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complexes_and_maps(seed in any::<u64>(), lo in -3i32..3, len in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, shape(lo, len));
        let mut b = DocumentBuilder::new();
        b.complex("c", &c);
        prop_assert_eq!(reparse(b, "c"), Object::Complex(c));

        let s = random_ses(&mut rng, shape(lo, len));
        let mut b = DocumentBuilder::new();
        b.chain_map("f", s.inj());
        prop_assert_eq!(reparse(b, "f"), Object::ChainMap(s.inj().clone()));
        let mut b = DocumentBuilder::new();
        b.ses("s", &s);
        prop_assert_eq!(reparse(b, "s"), Object::Ses(s.clone()));

        let ls = les_of_ses(&s).unwrap();
        let mut b = DocumentBuilder::new();
        b.long_sequence("ls", &ls);
        prop_assert_eq!(reparse(b, "ls"), Object::LongSequence(ls));
    }

    #[test]
    fn double_diagrams_and_braids(seed in any::<u64>(), len in 1usize..4) {
        let d = random_double_ses(&mut ChaCha8Rng::seed_from_u64(seed), shape(0, len));
        let mut b = DocumentBuilder::new();
        b.double_ses("d", &d);
        prop_assert_eq!(reparse(b, "d"), Object::DoubleSes(Box::new(d.clone())));

        let braid = braid_from_double_ses(&d).unwrap();
        let mut b = DocumentBuilder::new();
        b.braid("b", &braid);
        prop_assert_eq!(reparse(b, "b"), Object::Braid(braid));
    }

    #[test]
    fn matrices_with_fractions(seed in any::<u64>(), rows in 0usize..4, cols in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, rows, cols, 5);
        let scaled = m.scale(&gysin::linalg::parse_rational("-7/3").unwrap());
        let decl = gysin_cli::document::matrix_decl(&scaled);
        let json = serde_json::to_string(&decl).unwrap();
        let back: gysin_cli::document::MatrixDecl = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, decl);
    }

    #[test]
    fn dimension_tables(lo in -2i32..2, dims in proptest::collection::vec(0usize..3, 0..5)) {
        let g = GradedSpace::new(lo, dims);
        let t = TableInstance {
            name: "t".into(),
            group: Group::S3,
            class: ActionClass::General,
            models: ModelDims {
                m: g.clone(),
                b: g.clone(),
                bf: g.clone(),
                bsigma: Some(g.clone()),
                f: GradedSpace::zero(),
                mf: g.clone(),
                exotic: Some(g),
            },
        };
        let inst = Instance::Tables(t);
        let mut b = DocumentBuilder::new();
        b.instance(&inst);
        prop_assert_eq!(reparse(b, "t"), Object::Instance(Box::new(inst)));
    }
}

#[test]
fn catalog_instances() {
    for inst in catalog() {
        let name = inst.name.clone();
        let wrapped = Instance::Simplicial(inst);
        let mut b = DocumentBuilder::new();
        b.instance(&wrapped);
        assert_eq!(reparse(b, &name), Object::Instance(Box::new(wrapped)), "{name}");
    }
}

#[test]
fn transfer_diagram() {
    let t = gysin_transfer(&catalog()[0]).unwrap();
    let mut b = DocumentBuilder::new();
    b.transfer("t", &t);
    assert_eq!(reparse(b, "t"), Object::Transfer(t));
}
