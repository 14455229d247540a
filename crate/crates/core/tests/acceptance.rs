//! Acceptance criteria 1 to 9. Runs without the libtest harness so that each
//! criterion prints one PASS/FAIL line; exits with status 1 if any fails.

use std::process::Command;
use std::time::Instant;

use eawg::parallel::Execution;
use eawg::presentation::{present, Group};
use eawg::rootsystem::{cartan_matrix, AxiomStatus, CartanType, ExtendedRootSystem};
use eawg::semilattice::{standard_semilattice, Semilattice, SupportClass};
use eawg::suites::{self, CheckResult, SuiteOptions};
use eawg::weylgroup::{central_data, WeylContext};

const SEED: u64 = 0;

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Result<String, String> + 'a>);

/// Table of supporting classes, transcribed by hand.
const EXPECTED_TABLE: &str = "\
nu  index  supp(S)                                   n(1,2)  n(1,3)  n(2,3)  condition000
0   0      {}                                        -       -       -       true
1   1      {},{1}                                    -       -       -       true
2   2      {},{1},{2}                                2       -       -       true
    3      {},{1},{2},{1,2}                          1       -       -       true
3   3      {},{1},{2},{3}                            2       2       2       true
    4      {},{1},{2},{3},{2,3}                      2       2       1       true
    5      {},{1},{2},{3},{1,3},{2,3}                2       1       1       true
    6      {},{1},{2},{3},{1,2},{1,3},{2,3}          1       1       1       true
    7      {},{1},{2},{3},{1,2},{1,3},{2,3},{1,2,3}  1       1       1       true
";

/// `(ν, m, [n(1,2), n(1,3), n(2,3)])`, transcribed by hand.
const EXPECTED_NRS: &[(usize, usize, &[u8])] = &[
    (2, 2, &[2]),
    (2, 3, &[1]),
    (3, 3, &[2, 2, 2]),
    (3, 4, &[2, 2, 1]),
    (3, 5, &[2, 1, 1]),
    (3, 6, &[1, 1, 1]),
    (3, 7, &[1, 1, 1]),
];

fn eawg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eawg"))
        .args(args)
        .env("EAWG_COLOR", "0")
        .output()
        .expect("run eawg");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn squash(line: &str) -> String {
    line.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn criterion_1() -> Result<String, String> {
    let (code, full) = eawg(&["semilattices"]);
    if code != 0 || full != EXPECTED_TABLE {
        return Err(format!("full table differs (exit {code}):\n{full}"));
    }
    // per-nullity listings carry the same rows
    let expected: Vec<&str> = EXPECTED_TABLE.lines().skip(1).collect();
    let mut offset = 0;
    for (nu, rows) in [(0, 1), (1, 1), (2, 2), (3, 5)] {
        let (code, out) = eawg(&["semilattices", "--nullity", &nu.to_string()]);
        let got: Vec<String> = out.lines().skip(1).map(squash).collect();
        let want: Vec<String> = expected[offset..offset + rows].iter().map(|l| squash(l)).collect();
        if code != 0 || got != want {
            return Err(format!("nullity {nu} listing differs:\n{out}"));
        }
        offset += rows;
    }
    Ok("10 rows byte-identical, per-nullity listings agree".into())
}

fn criterion_2() -> Result<String, String> {
    let a1 = cartan_matrix(CartanType::A, 1).unwrap();
    for &(nu, m, want) in EXPECTED_NRS {
        let c = central_data(&standard_semilattice(nu, m).unwrap(), &a1);
        if c.nrs() != want || !c.condition000() {
            return Err(format!("nu={nu} m={m}: n = {:?}, condition000 = {}", c.nrs(), c.condition000()));
        }
    }
    Ok(format!("{} rows match, condition000 holds in each", EXPECTED_NRS.len()))
}

fn summarize(checks: &[CheckResult]) -> Result<String, String> {
    let trials: usize = checks.iter().map(|c| c.trials).sum();
    match checks.iter().find(|c| !c.pass()) {
        Some(bad) => Err(bad.line()),
        None => Ok(format!("{} checks, {} trials, 0 failures", checks.len(), trials)),
    }
}

fn opts(samples: usize) -> SuiteOptions {
    SuiteOptions {
        samples,
        seed: SEED,
        execution: Execution::Parallel,
    }
}

fn lattice_types() -> Vec<eawg::rootsystem::CartanData> {
    [(CartanType::A, 1), (CartanType::A, 2), (CartanType::A, 3), (CartanType::D, 4)]
        .into_iter()
        .map(|(k, l)| cartan_matrix(k, l).unwrap())
        .collect()
}

fn contexts() -> Vec<WeylContext> {
    suites::standard_configurations(1..=3)
        .into_iter()
        .map(|(c, s)| WeylContext::new(&c, s).unwrap())
        .collect()
}

fn criterion_3() -> Result<String, String> {
    let mut checks = Vec::new();
    for c in lattice_types() {
        for nu in 1..=3 {
            checks.extend(suites::identity_suite(&c, nu, &opts(500)));
        }
    }
    if checks.iter().any(|c| c.trials < 500) || checks.len() != 12 * 10 {
        return Err("too few instances".into());
    }
    summarize(&checks)
}

fn criterion_4(ctxs: &[WeylContext]) -> Result<String, String> {
    let mut checks = Vec::new();
    for ctx in ctxs {
        for g in [Group::H, Group::W] {
            let p = present(g, ctx.cartan(), ctx.semilattice()).map_err(|e| e.to_string())?;
            checks.push(suites::soundness(&p, ctx));
        }
    }
    summarize(&checks).map(|s| format!("{} configurations, {s}", ctxs.len()))
}

fn criterion_5(ctxs: &[WeylContext]) -> Result<String, String> {
    let mut checks = Vec::new();
    for ctx in ctxs {
        for g in [Group::H, Group::W] {
            let p = present(g, ctx.cartan(), ctx.semilattice()).map_err(|e| e.to_string())?;
            checks.push(suites::faithfulness(&p, ctx, &opts(500)));
        }
    }
    if checks.iter().any(|c| c.trials < 500) {
        return Err("too few pairs".into());
    }
    summarize(&checks)
}

fn criterion_6(ctxs: &[WeylContext]) -> Result<String, String> {
    let checks: Vec<CheckResult> = ctxs.iter().flat_map(|ctx| suites::round_trip_suite(ctx, &opts(1000))).collect();
    if checks.iter().any(|c| c.trials < 1000) {
        return Err("too few words".into());
    }
    summarize(&checks)
}

fn criterion_7(ctxs: &[WeylContext]) -> Result<String, String> {
    let checks: Vec<CheckResult> = ctxs.iter().flat_map(|ctx| suites::center_suite(ctx, &opts(200))).collect();
    if checks
        .iter()
        .any(|c| c.property == "nonzero n-part not central" && c.trials < 200)
    {
        return Err("too few non-central samples".into());
    }
    summarize(&checks)
}

fn criterion_8(ctxs: &[WeylContext]) -> Result<String, String> {
    let checks: Vec<CheckResult> = ctxs.iter().flat_map(|ctx| suites::structural_suite(ctx, &opts(500))).collect();
    summarize(&checks)
}

fn criterion_9() -> Result<String, String> {
    let a1 = cartan_matrix(CartanType::A, 1).unwrap();
    let a2 = cartan_matrix(CartanType::A, 2).unwrap();
    let full = |nu| Semilattice::new(SupportClass::full(nu).unwrap()).unwrap();
    let cases = [
        (a1.clone(), standard_semilattice(2, 2).unwrap()),
        (a1.clone(), standard_semilattice(2, 3).unwrap()),
        (a2.clone(), full(1)),
        (a2, full(2)),
    ];
    for (c, s) in &cases {
        let sys = ExtendedRootSystem::new(c, s.clone()).map_err(|e| e.to_string())?;
        let rep = sys.check_axioms(3, Execution::Parallel);
        if !rep.all_pass() {
            return Err(format!("{} nu={} m={}: {:?}", c.name(), s.nullity(), s.index(), rep.outcomes));
        }
    }
    let sys = ExtendedRootSystem::new(&a1, standard_semilattice(2, 2).unwrap()).unwrap();
    let mut w = sys.window(3, Execution::Parallel);
    w.insert(vec![2, 0, 0]);
    let rep = w.check_axioms(Execution::Parallel);
    if rep.outcome("R4").map(|o| o.status) != Some(AxiomStatus::Fail) {
        return Err("adding 2*a1 did not break R4".into());
    }
    Ok("4 windows pass R1-R8, fault fails R4".into())
}

fn main() {
    let ctxs = contexts();
    let criteria: Vec<Criterion> = vec![
        ("table of supporting classes", Box::new(criterion_1)),
        ("table of n(r,s)", Box::new(criterion_2)),
        ("identity suite", Box::new(criterion_3)),
        ("presentation soundness", Box::new(|| criterion_4(&ctxs))),
        ("presentation faithfulness", Box::new(|| criterion_5(&ctxs))),
        ("normal-form round trip", Box::new(|| criterion_6(&ctxs))),
        ("center characterization", Box::new(|| criterion_7(&ctxs))),
        ("structural spot checks", Box::new(|| criterion_8(&ctxs))),
        ("axiom checker", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate().map(|(i, c)| (i + 1, c)) {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {k} {name}: PASS ({detail}; {secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k} {name}: FAIL ({detail}; {secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
