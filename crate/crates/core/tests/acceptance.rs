//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! `cargo test -p grtwist --test acceptance`

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use grtwist::enriched::{
    check_equalizer_lemma, check_shift_props, endo_iso, flat, intertwining_kernel, module_hom_space,
    sharp,
};
use grtwist::equivalence::{backward, check_equivalence, gamma_twist_phi, EquivalenceData};
use grtwist::exactmath::{Field, Matrix};
use grtwist::fixtures;
use grtwist::graded::{
    cauchy_algebra_oracle, check_algebra, check_algebra_morphism, check_module, regular_module,
    shift_module, GradedAlgebra, GradedModule,
};
use grtwist::groups::IntegerWindow;
use grtwist::twist::{
    check_phi_family, check_twist_condition, check_unit_lemma, cocycle_twist, compose_twists,
    inverse_twist, monomial_scaling, phi_from_twist, random_cyclic_cocycle, sign_cocycle, tau_table,
    twist_algebra, twist_from_phi, twist_module, TwistKind, TwistingSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;
const F7: Field = Field::Prime(7);
const SEEDS: u64 = 20;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Every bundled twisting system, labelled. Random cocycles alternate
/// between normalized and not.
fn systems() -> Vec<(String, TwistingSystem)> {
    let mut out = vec![
        ("identity on Z/2".to_string(), TwistingSystem::identity(fixtures::z2_algebra(Q))),
        ("identity on S3".to_string(), TwistingSystem::identity(fixtures::s3_algebra(Q))),
        ("identity on poly(2,3)".to_string(), TwistingSystem::identity(fixtures::truncated(2, 3))),
        ("sign cocycle".to_string(), fixtures::sign_twist()),
        ("quantum plane q=2".to_string(), fixtures::quantum_plane()),
    ];
    let z3 = fixtures::z3_algebra(F7);
    for seed in 0..SEEDS {
        let alpha = random_cyclic_cocycle(3, F7, seed % 2 == 0, &mut ChaCha8Rng::seed_from_u64(seed));
        out.push((format!("F7 cocycle seed {seed}"), cocycle_twist(z3.clone(), alpha).unwrap()));
    }
    out
}

fn normalized(t: &TwistingSystem) -> bool {
    match t.kind() {
        TwistKind::Cocycle { alpha, .. } => {
            let e = t.group().identity();
            alpha.iter().all(|((d, _), v)| *d != e || v.is_one())
        }
        _ => true,
    }
}

fn c1_axioms() -> Outcome {
    let mut algs: Vec<(&str, Arc<GradedAlgebra>)> = vec![
        ("Z/2", fixtures::z2_algebra(Q)),
        ("Z/3", fixtures::z3_algebra(Q)),
        ("S3", fixtures::s3_algebra(Q)),
        ("poly(2,3)", fixtures::truncated(2, 3)),
    ];
    algs.push(("F7[Z/3]", fixtures::z3_algebra(F7)));
    for (name, a) in &algs {
        let r = check_algebra(a);
        ensure(r.passed(), || format!("{name} algebra: {r}"))?;
        let r = check_module(&regular_module(a));
        ensure(r.passed(), || format!("{name} regular module: {r}"))?;
    }
    Ok(format!("{} algebras and their regular modules", algs.len()))
}

fn c2_soundness() -> Outcome {
    let all = systems();
    for (name, t) in &all {
        let r = check_twist_condition(t);
        ensure(r.passed(), || format!("{name}: {r}"))?;
        let at = ok(twist_algebra(t), name)?;
        ensure(check_algebra(&at).passed(), || format!("{name}: twisted algebra fails"))?;
        let m = ok(twist_module(&regular_module(t.algebra()), t), name)?;
        ensure(check_module(&m).passed(), || format!("{name}: twisted module fails"))?;
    }
    Ok(format!("{} systems ({SEEDS} random F7 seeds)", all.len()))
}

fn c3_inverse_composite() -> Outcome {
    let all = systems();
    for (name, t) in &all {
        let inv = ok(inverse_twist(t), name)?;
        let back = ok(twist_algebra(&inv), name)?;
        ensure(back == **t.algebra(), || format!("{name}: (A^t)^(t^-1) != A"))?;
        let m = regular_module(t.algebra());
        let mt = ok(twist_module(&m, t), name)?;
        let mb = ok(twist_module(&mt, &inv), name)?;
        ensure(mb.action_table() == m.action_table(), || format!("{name}: module inverse law"))?;
    }
    // second systems live on A^τ
    let mut pairs = Vec::new();
    let sign = fixtures::sign_twist();
    let sign_t = Arc::new(twist_algebra(&sign).unwrap());
    pairs.push(("sign then sign", sign.clone(), cocycle_twist(sign_t, sign_cocycle(Q)).unwrap()));
    let qp = fixtures::quantum_plane();
    let qp_t = Arc::new(twist_algebra(&qp).unwrap());
    let s = monomial_scaling(&qp_t, 2, &[Q.from_i64(3), Q.one()]).unwrap();
    let s = TwistingSystem::new(qp_t, TwistKind::Automorphism { sigma: s, order: None }).unwrap();
    pairs.push(("quantum then x->3x", qp, s));
    let z3 = fixtures::z3_algebra(F7);
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let t = cocycle_twist(z3.clone(), random_cyclic_cocycle(3, F7, false, &mut rng)).unwrap();
        let at = Arc::new(twist_algebra(&t).unwrap());
        let s = cocycle_twist(at, random_cyclic_cocycle(3, F7, seed % 2 == 0, &mut rng)).unwrap();
        pairs.push(("F7 cocycle pair", t, s));
    }
    for (name, t, s) in &pairs {
        let lhs = ok(twist_algebra(s), name)?;
        let rhs = ok(twist_algebra(&ok(compose_twists(t, s), name)?), name)?;
        ensure(lhs == rhs, || format!("{name}: (A^t)^s != A^(ts)"))?;
    }
    Ok(format!("{} inverse laws, {} composite laws", all.len(), pairs.len()))
}

fn c4_unit_lemma() -> Outcome {
    let all = systems();
    for (name, t) in &all {
        let r = check_unit_lemma(t);
        ensure(r.passed(), || format!("{name}: {r}"))?;
    }
    Ok(format!("{} systems", all.len()))
}

fn c5_phi_round_trip() -> Outcome {
    let all = systems();
    let w = IntegerWindow::new(-2, 4).unwrap();
    let mut exact = 0;
    for (name, t) in &all {
        let b = Arc::new(ok(twist_algebra(t), name)?);
        let window = (!t.group().is_finite()).then_some(w);
        let phi = ok(phi_from_twist(t, &b.identity_morphism(), b.clone(), window), name)?;
        let r = check_phi_family(&phi);
        ensure(r.passed(), || format!("{name}: phi family {r}"))?;
        let (back, iso, r) = ok(twist_from_phi(&phi), name)?;
        ensure(r.passed(), || format!("{name}: recovered pair {r}"))?;
        if normalized(t) {
            ensure(iso.components().values().all(Matrix::is_identity), || format!("{name}: iso not identity"))?;
            let want = ok(tau_table(t, window), name)?;
            let got = ok(tau_table(&back, window), name)?;
            ensure(want == got, || format!("{name}: recovered system differs"))?;
            exact += 1;
        }
    }
    Ok(format!("{} systems checked both ways, {exact} normalized ones reproduced exactly", all.len()))
}

fn c6_quantum_relation() -> Outcome {
    let t = fixtures::quantum_plane();
    let a = t.algebra();
    let at = ok(twist_algebra(&t), "twist")?;
    let x = Matrix::unit_vector(Q, 2, 0);
    let y = Matrix::unit_vector(Q, 2, 1);
    let two = Q.from_i64(2);
    let xy = at.mult(1, 1).matmul(&x.kron(&y).unwrap()).unwrap();
    let yx = at.mult(1, 1).matmul(&y.kron(&x).unwrap()).unwrap();
    // oracle: x★y = x·σ(y) = 2xy and y★x = y·σ(x) = yx = xy in the commutative algebra
    let plain_xy = a.mult(1, 1).matmul(&x.kron(&y).unwrap()).unwrap();
    let expect_xy = Matrix::from_i64(Q, &[vec![0], vec![2], vec![0]]);
    ensure(plain_xy == Matrix::from_i64(Q, &[vec![0], vec![1], vec![0]]), || "xy is not the middle monomial".into())?;
    ensure(xy == expect_xy, || format!("x★y = {xy}"))?;
    ensure(yx == plain_xy, || format!("y★x = {yx}"))?;
    ensure(xy == yx.scale(&two), || "x★y != 2·(y★x)".into())?;
    Ok("x★y = 2·(y★x) in degree 2".into())
}

fn module_pairs() -> Vec<(String, GradedModule, GradedModule)> {
    let mut out = Vec::new();
    for (stem, a) in fixtures::algebras() {
        let reg = regular_module(&a);
        out.push((format!("{stem} reg,reg"), reg.clone(), reg.clone()));
        out.push((format!("{stem} reg,S reg"), reg.clone(), shift_module(&reg, 1).unwrap()));
    }
    let sign = fixtures::sign_twist();
    let m = twist_module(&regular_module(sign.algebra()), &sign).unwrap();
    out.push(("sign-twisted reg".into(), m.clone(), m));
    out
}

fn c7_internal_hom() -> Outcome {
    let pairs = module_pairs();
    let mut vectors = 0;
    for (name, m, n) in &pairs {
        let space = ok(module_hom_space(m, n), name)?;
        for g in space.degrees() {
            let direct = ok(intertwining_kernel(m, n, g), name)?;
            ensure(direct == space.kernel(g), || format!("{name}: degree {g} bases differ"))?;
            vectors += space.dim(g);
        }
        let r = ok(check_equalizer_lemma(&space), name)?;
        ensure(r.passed(), || format!("{name}: {r}"))?;
    }
    Ok(format!("{} module pairs, {vectors} kernel vectors", pairs.len()))
}

fn c8_endomorphisms() -> Outcome {
    let algs = fixtures::algebras();
    for (stem, a) in &algs {
        let e = ok(endo_iso(a), stem)?;
        ensure(e.report.passed(), || format!("{stem}: {}", e.report))?;
        ensure(e.gamma.algebra.space().dims() == a.space().dims(), || format!("{stem}: dims differ"))?;
    }
    Ok(format!("{} algebras including S3", algs.len()))
}

fn c9_shifts() -> Outcome {
    let mut count = 0;
    for a in [fixtures::z2_algebra(Q), fixtures::z3_algebra(Q), fixtures::s3_algebra(Q)] {
        let reg = regular_module(&a);
        for g in a.group().elements().unwrap() {
            let r = ok(check_shift_props(&reg, &reg, g), "shift")?;
            ensure(r.passed(), || format!("g = {g}: {r}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} shifts over Z/2, Z/3, S3"))
}

fn c10_zm_round_trip() -> Outcome {
    let cases = [
        ("sign cocycle", fixtures::sign_twist(), None),
        ("quantum plane", fixtures::quantum_plane(), Some(IntegerWindow::new(-1, 3).unwrap())),
    ];
    let mut windowed = Vec::new();
    for (name, t, w) in cases {
        let data = ok(EquivalenceData::from_twist(&t, w), name)?;
        let r = ok(check_equivalence(&data), name)?;
        ensure(r.passed(), || format!("{name}: {r}"))?;
        let g = ok(gamma_twist_phi(&data), name)?;
        ensure(g.report.passed(), || format!("{name}: {}", g.report))?;
        let b = ok(backward(&data), name)?;
        ensure(b.report.passed(), || format!("{name}: {}", b.report))?;
        let iso = ok(check_algebra_morphism(&b.iso, &b.twisted, data.target()), name)?;
        ensure(iso.passed() && b.iso.inverse().is_ok(), || format!("{name}: iso fails"))?;
        if !t.group().is_finite() {
            ensure(b.report.window_verified, || format!("{name}: not marked window-verified"))?;
            windowed.push(name);
        }
    }
    Ok(format!("2 fixtures, window-verified: {}", windowed.join(", ")))
}

fn c11_currying() -> Outcome {
    let mut n = 0;
    for (field, seed) in [(Q, 11u64), (Field::Prime(5), 12)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..120 {
            let (x, y, z) = (rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4));
            let psi = Matrix::from_fn(field, z, x * y, |_, _| {
                field.ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)).unwrap()
            });
            let nu = flat(&psi, x, y, z).unwrap();
            ensure(sharp(&nu, x, y, z).unwrap() == psi, || format!("sharp(flat) at {x},{y},{z}"))?;
            let back = flat(&sharp(&nu, x, y, z).unwrap(), x, y, z).unwrap();
            ensure(back == nu, || format!("flat(sharp) at {x},{y},{z}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} random matrices over Q and F_5"))
}

fn perturb(a: &GradedAlgebra, rng: &mut ChaCha8Rng) -> GradedAlgebra {
    let f = a.field();
    let table = a.mult_table();
    let keys: Vec<_> = table.keys().filter(|k| !table[k].entries().is_empty()).copied().collect();
    let key = keys[rng.gen_range(0..keys.len())];
    let m = &table[&key];
    let mut entries = m.entries().to_vec();
    let k = rng.gen_range(0..entries.len());
    entries[k] = &entries[k] + &f.from_i64(rng.gen_range(1..=3));
    let mut mult: BTreeMap<_, _> = table.clone();
    mult.insert(key, Matrix::new(f, m.rows(), m.cols(), entries).unwrap());
    GradedAlgebra::new(f, a.space().clone(), mult, a.unit().clone()).unwrap()
}

fn c12_cauchy_oracle() -> Outcome {
    let algs = fixtures::algebras();
    let mut broken = 0;
    for (stem, a) in &algs {
        ensure(cauchy_algebra_oracle(a).passed() == check_algebra(a).passed(), || format!("{stem} verdicts differ"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..20 {
        let (stem, a) = &algs[i % algs.len()];
        let b = perturb(a, &mut rng);
        let (x, y) = (cauchy_algebra_oracle(&b).passed(), check_algebra(&b).passed());
        ensure(x == y, || format!("perturbed {stem} #{i}: oracle {x}, checker {y}"))?;
        broken += usize::from(!y);
    }
    Ok(format!("{} fixtures and 20 perturbed algebras ({broken} broken)", algs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("axiom suites", c1_axioms),
        ("twist soundness", c2_soundness),
        ("inverse and composite laws", c3_inverse_composite),
        ("unit lemma", c4_unit_lemma),
        ("phi round trip", c5_phi_round_trip),
        ("quantum plane relation", c6_quantum_relation),
        ("internal hom", c7_internal_hom),
        ("endomorphism theorem", c8_endomorphisms),
        ("shift properties", c9_shifts),
        ("ZM round trip", c10_zm_round_trip),
        ("currying identities", c11_currying),
        ("Cauchy oracle", c12_cauchy_oracle),
    ];
    panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("[{:>2}] PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{:>2}] FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria pass in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
