//! Regenerates the JSON fixtures: `cargo run -p grtwist --example write_fixtures [dir]`.

use std::path::PathBuf;

use grtwist::equivalence::EquivalenceData;
use grtwist::fixtures;
use grtwist::graded::regular_module;
use grtwist::groups::{Group, IntegerWindow};
use grtwist::io::{self, AlgebraLink};
use grtwist::twist::{phi_from_twist, twist_algebra, TwistingSystem};

fn main() -> grtwist::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"));
    std::fs::create_dir_all(&dir).expect("fixture directory");
    let put = |name: &str, v: serde_json::Value| io::write_json(&dir.join(name), &v);

    put("z3.group.json", io::group_json(&Group::cyclic(3)))?;
    put("s3.group.json", io::group_json(&Group::symmetric3()))?;
    put("integers.group.json", io::group_json(&fixtures::integers()))?;
    for (stem, a) in fixtures::algebras() {
        put(&format!("{stem}.alg.json"), io::algebra_json(&a))?;
        let link = AlgebraLink::Path(format!("{stem}.alg.json"));
        put(&format!("{stem}.regular.mod.json"), io::module_json(&regular_module(&a), link))?;
    }

    let z2 = fixtures::z2_algebra(grtwist::exactmath::Field::Rational);
    put("ident.twist.json", io::twist_json(&TwistingSystem::identity(z2)))?;
    let sign = fixtures::sign_twist();
    put("cocycle.twist.json", io::twist_json(&sign))?;
    let quantum = fixtures::quantum_plane();
    put("quantum.twist.json", io::twist_json(&quantum))?;

    let b = std::sync::Arc::new(twist_algebra(&sign)?);
    let phi = phi_from_twist(&sign, &b.identity_morphism(), b.clone(), None)?;
    put("sign.phi.json", io::phi_json(&phi))?;
    put("sign.equiv.json", io::equivalence_json(&EquivalenceData::from_twist(&sign, None)?))?;
    let w = IntegerWindow::new(-1, 3)?;
    put("quantum.equiv.json", io::equivalence_json(&EquivalenceData::from_twist(&quantum, Some(w))?))?;
    Ok(())
}
