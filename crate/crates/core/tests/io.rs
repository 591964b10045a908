use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use grtwist::equivalence::check_equivalence;
use grtwist::exactmath::{Field, Matrix};
use grtwist::fixtures;
use grtwist::graded::regular_module;
use grtwist::io::{self, AlgebraLink};
use grtwist::twist::{check_phi_family, random_cyclic_cocycle, TwistKind, TwistingSystem};
use grtwist::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn text(name: &str) -> String {
    std::fs::read_to_string(dir().join(name)).unwrap()
}

#[test]
fn algebra_files_match_constructors_and_reemit_identically() {
    for (stem, a) in fixtures::algebras() {
        let name = format!("{stem}.alg.json");
        let loaded = io::load_algebra(&dir().join(&name)).unwrap();
        assert_eq!(loaded, *a, "{name}");
        assert_eq!(io::render(&io::algebra_json(&loaded)), text(&name), "{name}");

        let name = format!("{stem}.regular.mod.json");
        let m = io::load_module(&dir().join(&name)).unwrap();
        assert_eq!(m, regular_module(&a), "{name}");
        let link = AlgebraLink::Path(format!("{stem}.alg.json"));
        assert_eq!(io::render(&io::module_json(&m, link)), text(&name), "{name}");
    }
}

#[test]
fn twist_files_round_trip() {
    let sign = fixtures::sign_twist();
    let t = io::load_twist(&dir().join("cocycle.twist.json"), sign.algebra().clone()).unwrap();
    assert_eq!(t, sign);
    assert_eq!(io::render(&io::twist_json(&t)), text("cocycle.twist.json"));

    let q = fixtures::quantum_plane();
    let t = io::load_twist(&dir().join("quantum.twist.json"), q.algebra().clone()).unwrap();
    assert_eq!(t, q);
    assert_eq!(io::render(&io::twist_json(&t)), text("quantum.twist.json"));

    let z2 = fixtures::z2_algebra(Field::Rational);
    let t = io::load_twist(&dir().join("ident.twist.json"), z2.clone()).unwrap();
    assert_eq!(t, TwistingSystem::identity(z2));
}

#[test]
fn phi_and_equivalence_files_load_and_pass() {
    let p = io::load_phi(&dir().join("sign.phi.json")).unwrap();
    assert!(check_phi_family(&p).passed());
    assert_eq!(io::render(&io::phi_json(&p)), text("sign.phi.json"));

    let d = io::load_equivalence(&dir().join("sign.equiv.json")).unwrap();
    assert!(check_equivalence(&d).unwrap().passed());
    assert_eq!(io::render(&io::equivalence_json(&d)), text("sign.equiv.json"));
}

#[test]
fn groups_round_trip() {
    for name in ["z3.group.json", "s3.group.json", "integers.group.json"] {
        let g = io::load_group(&dir().join(name)).unwrap();
        assert_eq!(io::render(&io::group_json(&g)), text(name), "{name}");
    }
}

#[test]
fn missing_reference_is_an_io_error() {
    let json = r#"{"algebra": "nowhere.alg.json", "dims": {}, "action": {}}"#;
    let err = io::parse_module(json, "m.json", None).unwrap_err();
    assert!(matches!(err, Error::Io { .. }), "{err}");
}

#[test]
fn inline_algebra_errors_keep_their_position() {
    let json = "{\"algebra\": {\n\"field\": \"Q\",\n\"group\": {\"kind\": \"finite\"},\n\"dims\": {}, \"mult\": {}, \"unit\": []}, \"dims\": {}, \"action\": {}}";
    match io::parse_module(json, "m.json", None).unwrap_err() {
        Error::Parse { line, .. } => assert_eq!(line, 3),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn module_without_algebra_needs_one_supplied() {
    let a = fixtures::z2_algebra(Field::Rational);
    let m = regular_module(&a);
    let json = io::render(&io::module_json(&m, AlgebraLink::Omit));
    assert!(io::parse_module(&json, "m.json", None).is_err());
    assert_eq!(io::parse_module(&json, "m.json", Some(&a)).unwrap(), m);
}

fn random_matrix(field: Field, n: usize, vals: &[i64]) -> Matrix {
    let entries = (0..n * n).map(|i| field.ratio(vals[i % vals.len()], 1 + (i as i64 % 3)).unwrap()).collect();
    Matrix::new(field, n, n, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_cocycles_round_trip(seed in any::<u64>(), normalized in any::<bool>()) {
        let field = Field::Prime(7);
        let a = fixtures::z3_algebra(field);
        let alpha = random_cyclic_cocycle(3, field, normalized, &mut ChaCha8Rng::seed_from_u64(seed));
        let t = TwistingSystem::new(a.clone(), TwistKind::Cocycle { alpha, window: None }).unwrap();
        let back = io::parse_twist(&io::render(&io::twist_json(&t)), "t.json", a).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn explicit_maps_round_trip_bit_exactly(vals in prop::collection::vec(-40i64..40, 1..12)) {
        let a = fixtures::truncated(2, 2);
        let mut maps = BTreeMap::new();
        for d in -1..=2 {
            for g in a.support() {
                maps.insert((d, g), random_matrix(Field::Rational, a.dim(g), &vals));
            }
        }
        let t = TwistingSystem::new(a.clone(), TwistKind::Explicit { maps, window: None }).unwrap();
        let back = io::parse_twist(&io::render(&io::twist_json(&t)), "t.json", Arc::clone(&a)).unwrap();
        prop_assert_eq!(back, t);
    }
}
