//! Acceptance gate: one PASS/FAIL line per criterion, with runtimes.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use tomostar::phase_space::{Deformation, FockWigner, GaussianSymbol, PhasePoint, PhaseSymbol};
use tomostar::specfun::QuadratureSpec;
use tomostar::tomo_transform::{quadratic_inverse, MeasureConvention, Tomogram};
use tomostar::verify::{
    suite_classical_limit, suite_h1_limit, suite_kernel_oracles, suite_tomogram_claims, Case, CaseKind, SuiteReport,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn h(v: f64) -> Deformation {
    Deformation::new(v).unwrap()
}

fn select<'a>(r: &'a SuiteReport, prefix: &str) -> Vec<&'a Case> {
    r.cases.iter().filter(|c| c.inputs.starts_with(prefix)).collect()
}

fn all_pass(cases: &[&Case]) -> bool {
    !cases.is_empty() && cases.iter().all(|c| c.passed)
}

fn worst(cases: &[&Case]) -> f64 {
    cases.iter().map(|c| c.rel_err.min(c.abs_err)).fold(0.0, f64::max)
}

fn print_failures(cases: &[&Case]) {
    for c in cases.iter().filter(|c| !c.passed) {
        println!("      failed: {} | expected {} | got {}", c.inputs, c.expected, c.got);
    }
}

fn criterion1() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for hv in [0.5, 1.0] {
        let r = suite_tomogram_claims(h(hv), MeasureConvention::Paper, &QuadratureSpec::default());
        let omega = select(&r, "omega1");
        // independent check of the expected column
        let closed_form_ok = omega.iter().all(|c| {
            let x: f64 = c.inputs.rsplit("X=").next().unwrap().parse().unwrap();
            let want = (-x / hv).exp() * (2.0 * x / hv - 1.0) / (PI * hv);
            let exp_re: f64 = c.expected.split(['+', 'i']).next().unwrap().parse().unwrap_or(f64::NAN);
            (exp_re - want).abs() <= 1e-15 * want.abs()
        });
        let zero = select(&r, "zero crossing");
        let sign = [select(&r, "sign"), select(&r, "negativity")].concat();
        ok &= omega.len() == 20 && all_pass(&omega) && closed_form_ok && all_pass(&zero) && all_pass(&sign);
        print_failures(&omega);
        print_failures(&zero);
        print_failures(&sign);
        lines.push(format!(
            "h={hv}: omega1 max rel {:.1e}, root err {:.1e}",
            worst(&omega),
            zero.first().map_or(f64::NAN, |c| c.abs_err)
        ));
    }
    Outcome {
        passed: ok,
        detail: lines.join("; "),
    }
}

fn criterion2() -> Outcome {
    let mut ok = true;
    let mut worst_err: f64 = 0.0;
    let mut count = 0;
    for hv in [0.5, 1.0] {
        let r = suite_tomogram_claims(h(hv), MeasureConvention::Standard, &QuadratureSpec::default());
        let norm = select(&r, "normalization");
        count += norm.len();
        ok &= norm.len() == 6 && all_pass(&norm) && norm.iter().all(|c| c.expected.starts_with("1.0000000000000000e0"));
        print_failures(&norm);
        worst_err = worst_err.max(norm.iter().map(|c| c.abs_err).fold(0.0, f64::max));
    }
    Outcome {
        passed: ok,
        detail: format!("{count} integrals, max |int w dX - 1| = {worst_err:.1e}"),
    }
}

fn kernel_report() -> SuiteReport {
    suite_kernel_oracles(&QuadratureSpec::default())
}

fn criterion3(r: &SuiteReport) -> Outcome {
    let cases = select(r, "quadratic oracle/closed");
    let gates: Vec<&Case> = cases.iter().copied().filter(|c| c.kind == CaseKind::Gate).collect();
    for c in cases.iter().filter(|c| c.kind == CaseKind::Informational) {
        println!("      reported: {} -> {}", c.inputs, c.got);
    }
    let consts = select(r, "recorded quadratic oracle constant");
    let mut detail = format!("{} gate spreads, max {:.1e}", gates.len(), worst(&gates));
    for k in r
        .constants
        .iter()
        .filter(|k| k.name.starts_with("quadratic_oracle_constant"))
    {
        detail.push_str(&format!("; {} = {:.12} +- {:.1e}", k.name, k.re, k.error_bar));
    }
    print_failures(&gates);
    print_failures(&consts);
    let point = [select(r, "oracle at X3=0"), select(r, "oracle swap")].concat();
    print_failures(&point);
    Outcome {
        passed: gates.len() == 6 && all_pass(&gates) && all_pass(&consts) && all_pass(&point),
        detail,
    }
}

fn criterion4(r: &SuiteReport) -> Outcome {
    let prefixes = [
        "K(x2,x1;h) = K(x1,x2;-h)",
        "classical kernel",
        "first-order coefficient",
        "finite-difference derivative",
    ];
    let cases: Vec<&Case> = prefixes.iter().flat_map(|p| select(r, p)).collect();
    print_failures(&cases);
    let detail = cases
        .iter()
        .map(|c| format!("{:.1e}", c.abs_err))
        .collect::<Vec<_>>()
        .join(" ");
    Outcome {
        passed: cases.len() == 10 && all_pass(&cases),
        detail: format!("errors [{detail}]"),
    }
}

fn criterion5(r: &SuiteReport) -> Outcome {
    let cases = select(r, "k-deformed");
    print_failures(&cases);
    let k = r.constant("k_deformed_oracle_constant");
    Outcome {
        passed: cases.len() == 3 && all_pass(&cases),
        detail: format!(
            "spread {:.1e}, constant {}",
            cases.first().map_or(f64::NAN, |c| c.abs_err),
            k.map_or("missing".into(), |k| format!("{:.12} +- {:.1e}", k.re, k.error_bar))
        ),
    }
}

fn criterion6() -> (Outcome, Duration, Duration) {
    let spec = QuadratureSpec::default();
    let t = Instant::now();
    let exact = suite_classical_limit(&spec, false);
    let ta = t.elapsed();
    let t = Instant::now();
    let full = suite_classical_limit(&spec, true);
    let tb = t.elapsed().saturating_sub(ta);
    let a: Vec<&Case> = exact.cases.iter().collect();
    let b: Vec<&Case> = full.cases.iter().filter(|c| c.kind == CaseKind::Experimental).collect();
    print_failures(&a);
    print_failures(&b);
    let mc = b
        .iter()
        .map(|c| {
            format!(
                "rel {:.1e} {}",
                c.rel_err,
                c.got.split("(").nth(1).unwrap_or("").trim_end_matches(')')
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    (
        Outcome {
            passed: a.len() == 34 && all_pass(&a) && b.len() == 2 && all_pass(&b),
            detail: format!("(a) {} cases max rel {:.1e}; (b) {mc}", a.len(), worst(&a)),
        },
        ta,
        tb,
    )
}

fn criterion7() -> Outcome {
    let r = suite_h1_limit(&QuadratureSpec::default());
    let cases: Vec<&Case> = r.cases.iter().filter(|c| c.kind == CaseKind::Gate).collect();
    print_failures(&cases);
    let lasts = select(&r, "aligned centers (W=0) ratio sequence")
        .into_iter()
        .chain(select(&r, "generic centers"))
        .filter(|c| c.inputs.ends_with("last two ratios"))
        .map(|c| format!("{:.1e}", c.abs_err))
        .collect::<Vec<_>>()
        .join(", ");
    let limits = r
        .constants
        .iter()
        .map(|k| format!("{:.5}+-{:.0e}", k.re, k.error_bar))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome {
        passed: all_pass(&cases),
        detail: format!("last-two gaps [{lasts}], limits [{limits}] (1/pi = {:.5})", 1.0 / PI),
    }
}

fn criterion8() -> Outcome {
    let spec = QuadratureSpec::for_inverse();
    let conv = MeasureConvention::Standard;
    let f0 = FockWigner::new(0, h(1.0)).unwrap();
    let f1 = FockWigner::new(1, h(1.0)).unwrap();
    let g = GaussianSymbol::unit(PhasePoint::new(1.0, 1.0), 1.0).unwrap();
    let states: [(&str, &dyn PhaseSymbol); 3] = [("f0", &f0), ("f1", &f1), ("gaussian(1,1)", &g)];
    let probes = [
        PhasePoint::new(0.0, 0.0),
        PhasePoint::new(0.3, -0.2),
        PhasePoint::new(-0.5, 0.8),
        PhasePoint::new(1.0, 0.4),
        PhasePoint::new(0.2, 0.5),
    ];
    let mut ok = true;
    let mut worst_rel: f64 = 0.0;
    for (name, f) in states {
        let w = Tomogram::new(f, conv, &spec).unwrap();
        for &pt in &probes {
            // the state itself is the oracle
            let want = f.eval(pt);
            match quadratic_inverse(&w, pt, conv, &spec) {
                Ok(v) => {
                    let rel = (v - want).norm() / want.norm();
                    worst_rel = worst_rel.max(rel);
                    if rel > 1e-3 {
                        ok = false;
                        println!("      failed: {name} at ({}, {}): {v} vs {want}", pt.q, pt.p);
                    }
                }
                Err(e) => {
                    ok = false;
                    println!("      failed: {name} at ({}, {}): {e}", pt.q, pt.p);
                }
            }
        }
    }
    Outcome {
        passed: ok,
        detail: format!("15 probes, max rel err {worst_rel:.1e}"),
    }
}

fn criterion9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_tomostar");
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("report{k}.json"));
        let status = Command::new(bin)
            .args(["verify", "--experimental", "--seed", "20130611", "--out"])
            .arg(&path)
            .env_remove("TOMOSTAR_SEED")
            .status()
            .unwrap();
        outputs.push((status.code(), std::fs::read(&path).unwrap_or_default()));
    }
    let same = outputs[0].1 == outputs[1].1 && !outputs[0].1.is_empty();
    Outcome {
        passed: same && outputs.iter().all(|o| o.0 == Some(0)),
        detail: format!(
            "exit codes {:?}/{:?}, {} bytes, identical: {same}",
            outputs[0].0,
            outputs[1].0,
            outputs[0].1.len()
        ),
    }
}

fn report(id: u32, name: &str, o: &Outcome, elapsed: Duration, limit: Duration) -> bool {
    let in_time = elapsed <= limit;
    let passed = o.passed && in_time;
    println!(
        "{} criterion {id}: {name} [{:.2?} / limit {:.0?}] {}",
        if passed { "PASS" } else { "FAIL" },
        elapsed,
        limit,
        o.detail
    );
    if !in_time {
        println!("      runtime over limit");
    }
    passed
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let mut ok = true;

    let (o, t) = timed(criterion1);
    ok &= report(1, "first excited tomogram and its zero crossing", &o, t, s(1));
    let (o, t) = timed(criterion2);
    ok &= report(2, "tomogram normalization", &o, t, s(5));

    let (r, tk) = timed(kernel_report);
    let o = criterion3(&r);
    ok &= report(3, "quadratic kernel against its circle oracle", &o, tk, s(10));
    let o = criterion4(&r);
    ok &= report(4, "commutativity structure", &o, tk, s(5));
    let o = criterion5(&r);
    ok &= report(5, "k-deformed kernel", &o, tk, s(5));

    let (o, ta, tb) = criterion6();
    let in_time = tb <= s(300);
    ok &= report(6, "classical limit, (a) exact and (b) Monte Carlo", &o, ta, s(5)) && in_time;
    println!("      (b) runtime {tb:.2?} / limit 300s");

    let (o, t) = timed(criterion7);
    ok &= report(7, "h -> 1 contraction", &o, t, s(60));
    let (o, t) = timed(criterion8);
    ok &= report(8, "inverse after forward transform", &o, t, s(60));
    let (o, t) = timed(criterion9);
    ok &= report(9, "deterministic verify reports", &o, t, s(600));

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
