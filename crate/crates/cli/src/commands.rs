use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use grtwist::enriched::{check_shift_props, endo_iso, gamma_algebra, module_hom_space};
use grtwist::equivalence::{backward, check_equivalence, gamma_twist_phi, EquivalenceData};
use grtwist::graded::{check_algebra, check_module, GradedAlgebra};
use grtwist::groups::{check_group, IntegerWindow};
use grtwist::io::{self, AlgebraLink};
use grtwist::report::Report;
use grtwist::twist::{
    check_phi_family, check_twist_condition, twist_algebra, twist_from_phi, twist_module,
};
use serde_json::Value;

use crate::{demo, Command, Options};

/// What a command produced: its report, an optional structure to write
/// out, and extra lines for the text format.
pub struct Outcome {
    pub report: Report,
    pub result: Option<Value>,
    pub lines: Vec<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn report(report: Report) -> Outcome {
        Outcome {
            report,
            result: None,
            lines: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn with(mut self, result: Value) -> Outcome {
        self.result = Some(result);
        self
    }
}

pub fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    Ok((lo, hi))
}

fn algebra(path: &Path) -> Result<Arc<GradedAlgebra>> {
    Ok(Arc::new(io::load_algebra(path)?))
}

/// Runs the twisting-condition check first so a bad twist fails with its
/// witness rather than as a precondition error.
fn twist_gate(t: &grtwist::twist::TwistingSystem) -> Option<Outcome> {
    let r = check_twist_condition(t);
    (!r.passed()).then(|| Outcome::report(r))
}

pub fn run(cmd: Command, opts: &Options) -> Result<Outcome> {
    let start = Instant::now();
    let mut out = dispatch(cmd, opts)?;
    out.elapsed = start.elapsed();
    if let (Some(path), Some(v)) = (&opts.output, &out.result) {
        io::write_json(path, v)?;
        out.lines.push(format!("wrote {}", path.display()));
        out.result = None;
    }
    Ok(out)
}

fn dispatch(cmd: Command, opts: &Options) -> Result<Outcome> {
    Ok(match cmd {
        Command::CheckGroup { group } => {
            let g = io::load_group(&group);
            match g {
                Ok(g) if !g.is_finite() => Outcome::report(Report::pass("group")),
                _ => Outcome::report(check_group(&io::load_finite_table(&group)?)),
            }
        }
        Command::CheckAlgebra { algebra: path } => Outcome::report(check_algebra(&io::load_algebra(&path)?)),
        Command::CheckModule { module } => Outcome::report(check_module(&io::load_module(&module)?)),
        Command::CheckTwist { twist, algebra: a } => {
            let t = io::load_twist(&twist, algebra(&a)?)?;
            Outcome::report(check_twist_condition(&t))
        }
        Command::TwistAlgebra { twist, algebra: a } => {
            let t = io::load_twist(&twist, algebra(&a)?)?;
            if let Some(fail) = twist_gate(&t) {
                return Ok(fail);
            }
            let out = twist_algebra(&t)?;
            let r = check_algebra(&out).renamed("twisted algebra");
            Outcome::report(r).with(io::algebra_json(&out))
        }
        Command::TwistModule { twist, module } => {
            let m = io::load_module(&module)?;
            let t = io::load_twist(&twist, m.algebra().clone())?;
            if let Some(fail) = twist_gate(&t) {
                return Ok(fail);
            }
            let out = twist_module(&m, &t)?;
            let r = check_module(&out).renamed("twisted module");
            Outcome::report(r).with(io::module_json(&out, AlgebraLink::Inline))
        }
        Command::CheckPhi { phi } => Outcome::report(check_phi_family(&io::load_phi(&phi)?)),
        Command::TwistFromPhi { phi } => {
            let p = io::load_phi(&phi)?;
            let r = check_phi_family(&p);
            if !r.passed() {
                return Ok(Outcome::report(r));
            }
            let (t, _, report) = twist_from_phi(&p)?;
            Outcome::report(report).with(io::twist_json(&t))
        }
        Command::HomSpace { source, target } => {
            let m = io::load_module(&source)?;
            let n = io::load_module(&target)?;
            let space = module_hom_space(&m, &n)?;
            let dims: Vec<String> = space.dims().iter().map(|(g, d)| format!("{g}:{d}")).collect();
            let r = Report::pass("hom space").note(format!("dims {{{}}}", dims.join(", ")));
            Outcome::report(r).with(io::hom_space_json(&space)?)
        }
        Command::Gamma { algebra: a } => {
            let g = gamma_algebra(&algebra(&a)?)?;
            let r = check_algebra(&g.algebra).renamed("gamma algebra");
            let dims: Vec<String> = g.algebra.space().dims().iter().map(|(g, d)| format!("{g}:{d}")).collect();
            Outcome::report(r.note(format!("dims {{{}}}", dims.join(", ")))).with(io::algebra_json(&g.algebra))
        }
        Command::VerifyEndo { algebra: a } => Outcome::report(endo_iso(&algebra(&a)?)?.report),
        Command::ShiftProps { source, target, degree } => {
            let m = io::load_module(&source)?;
            let n = io::load_module(&target)?;
            let degrees = match (degree, m.group().elements()) {
                (Some(g), _) => vec![g],
                (None, Some(all)) => all,
                (None, None) => bail!("--degree is required over Z"),
            };
            let parts = degrees
                .iter()
                .map(|&g| Ok(check_shift_props(&m, &n, g)?.renamed(format!("shift by {g}"))))
                .collect::<Result<Vec<_>>>()?;
            Outcome::report(Report::all("shift properties", parts))
        }
        Command::ZmForward { twist, algebra: a, window } => {
            let t = io::load_twist(&twist, algebra(&a)?)?;
            if let Some(fail) = twist_gate(&t) {
                return Ok(fail);
            }
            let w = window.map(|(lo, hi)| IntegerWindow::new(lo, hi)).transpose()?;
            let data = EquivalenceData::from_twist(&t, w)?;
            Outcome::report(check_equivalence(&data)?).with(io::equivalence_json(&data))
        }
        Command::GammaTwist { equivalence } => {
            let data = io::load_equivalence(&equivalence)?;
            let g = gamma_twist_phi(&data)?;
            Outcome::report(g.report).with(io::phi_json(&g.phi))
        }
        Command::Backward { equivalence } => {
            let data = io::load_equivalence(&equivalence)?;
            let b = backward(&data)?;
            Outcome::report(b.report).with(io::twist_json(&b.tau))
        }
        Command::Demo { name } => demo::run(name, opts.seed).context("demo")?,
    })
}
