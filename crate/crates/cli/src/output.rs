use grtwist::report::{Report, Witness};
use grtwist::Error;
use serde_json::{json, Value};

use crate::commands::Outcome;
use crate::{Format, Options};

fn structured(report: &Report, opts: &Options, elapsed_us: u128) -> Value {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    if opts.timings {
        v["timings"] = json!({ "total_us": elapsed_us });
    }
    v
}

pub fn emit(out: &Outcome, opts: &Options) -> u8 {
    match opts.format {
        Format::Text => {
            print!("{}", out.report);
            for l in &out.lines {
                println!("{l}");
            }
            if opts.timings {
                println!("time: {:.3} ms", out.elapsed.as_secs_f64() * 1e3);
            }
            if let Some(v) = &out.result {
                print!("{}", grtwist::io::render(v));
            }
        }
        Format::Structured => {
            let mut v = structured(&out.report, opts, out.elapsed.as_micros());
            if let Some(r) = &out.result {
                v["result"] = r.clone();
            }
            println!("{v}");
        }
    }
    if out.report.passed() {
        0
    } else {
        1
    }
}

/// A failed precondition is a verification failure (exit 1); anything
/// else means the input was unusable (exit 2).
pub fn emit_error(e: &anyhow::Error, opts: &Options) -> u8 {
    let precondition = e
        .chain()
        .filter_map(|c| c.downcast_ref::<Error>())
        .any(|c| matches!(c, Error::Precondition(_) | Error::NotInKernel(_)));
    if precondition {
        let report = Report::fail("precondition", Witness::new([], format!("{e:#}")));
        return emit(&Outcome::report(report), opts);
    }
    match opts.format {
        Format::Text => eprintln!("error: {e:#}"),
        Format::Structured => {
            let v = json!({ "check": "input", "status": "error", "error": format!("{e:#}") });
            println!("{v}");
        }
    }
    2
}
