use anyhow::Result;
use clap::ValueEnum;
use grtwist::equivalence::{backward, EquivalenceData};
use grtwist::exactmath::{Field, Matrix};
use grtwist::fixtures;
use grtwist::graded::{check_algebra, check_module, regular_module};
use grtwist::report::{Report, Witness};
use grtwist::twist::{
    check_twist_condition, check_unit_lemma, cocycle_twist, random_cyclic_cocycle, twist_algebra,
    twist_module,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commands::Outcome;

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Demo {
    /// `y ↦ 2y` on the truncated polynomial algebra in x, y.
    QuantumPlane,
    /// The sign cocycle on Q[Z/2], twisted and recovered.
    SignCocycle,
    /// Twenty random cocycles on F_7[Z/3], seeded by --seed.
    RandomCocycles,
}

pub fn run(demo: Demo, seed: u64) -> Result<Outcome> {
    match demo {
        Demo::QuantumPlane => quantum_plane(),
        Demo::SignCocycle => sign_cocycle(),
        Demo::RandomCocycles => random_cocycles(seed),
    }
}

fn row(m: &Matrix) -> String {
    let v: Vec<String> = m.entries().iter().map(ToString::to_string).collect();
    format!("[{}]", v.join(", "))
}

fn quantum_plane() -> Result<Outcome> {
    let t = fixtures::quantum_plane();
    let cond = check_twist_condition(&t);
    let twisted = twist_algebra(&t)?;
    let f = Field::Rational;
    // degree 1 basis (x, y); degree 2 basis (x^2, xy, y^2)
    let x = Matrix::unit_vector(f, 2, 0);
    let y = Matrix::unit_vector(f, 2, 1);
    let m = twisted.mult(1, 1);
    let xy = m.matmul(&x.kron(&y)?)?;
    let yx = m.matmul(&y.kron(&x)?)?;
    let two = f.from_i64(2);
    let holds = xy == yx.scale(&two);
    let relation = Report::from_failure(
        "x★y = 2·(y★x)",
        (!holds).then(|| Witness::new([1, 1], "relation fails in degree 2")),
    );
    let report = Report::all(
        "quantum plane",
        vec![cond, check_algebra(&twisted).renamed("twisted algebra"), relation],
    );
    let mut out = Outcome::report(report);
    out.lines = vec![
        "degree 2 in the basis (x^2, xy, y^2):".into(),
        format!("  x★y = {}", row(&xy)),
        format!("  y★x = {}", row(&yx)),
        if holds { "  x★y = 2·(y★x)".into() } else { "  x★y ≠ 2·(y★x)".into() },
    ];
    Ok(out)
}

fn sign_cocycle() -> Result<Outcome> {
    let t = fixtures::sign_twist();
    let cond = check_twist_condition(&t);
    let twisted = twist_algebra(&t)?;
    let data = EquivalenceData::from_twist(&t, None)?;
    let back = backward(&data)?;
    let mut out = Outcome::report(Report::all(
        "sign cocycle",
        vec![cond, check_algebra(&twisted).renamed("twisted algebra"), back.report],
    ));
    out.lines = vec![format!("in the twist, g★g = {}·e", row(&twisted.mult(1, 1)))];
    Ok(out)
}

fn random_cocycles(seed: u64) -> Result<Outcome> {
    let field = Field::Prime(7);
    let a = fixtures::z3_algebra(field);
    let reg = regular_module(&a);
    let mut parts = Vec::new();
    for i in 0..20 {
        let s = seed.wrapping_add(i);
        let alpha = random_cyclic_cocycle(3, field, i % 2 == 0, &mut ChaCha8Rng::seed_from_u64(s));
        let t = cocycle_twist(a.clone(), alpha)?;
        let cond = check_twist_condition(&t);
        let mut sub = vec![cond.clone(), check_unit_lemma(&t)];
        if cond.passed() {
            sub.push(check_algebra(&twist_algebra(&t)?).renamed("twisted algebra"));
            sub.push(check_module(&twist_module(&reg, &t)?).renamed("twisted module"));
        }
        parts.push(Report::all(format!("seed {s}"), sub));
    }
    Ok(Outcome::report(Report::all("random cocycles", parts)))
}
