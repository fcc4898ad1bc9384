//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always show; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bruhat_core::coxeter::{CoxeterSystem, CoxeterType, Element, Word};
use bruhat_core::fiber::{certify_fiber_contractible, certify_interval_sphere, BooleanCube};
use bruhat_core::hecke::IndexSet;
use bruhat_core::homology::{Contractibility, Field, DEFAULT_FACE_BUDGET};
use bruhat_core::poset::bruhat_lower_set;
use bruhat_core::totalpos;
use bruhat_core::verify::{Report, Verifier, VerifyConfig};

struct Outcome {
    passed: bool,
    detail: String,
}

fn named(kind: CoxeterType) -> CoxeterSystem {
    CoxeterSystem::named(kind).expect("named system")
}

fn word(s: &str) -> Word {
    s.parse().expect("word")
}

fn sandwich_groups() -> Vec<CoxeterSystem> {
    let mut g = vec![named(CoxeterType::A(3)), named(CoxeterType::B(2)), named(CoxeterType::B(3))];
    g.extend((3..=8).map(|m| named(CoxeterType::I2(m))));
    g
}

fn run_theorem(groups: Vec<CoxeterSystem>, name: &str) -> Report {
    Verifier::new(VerifyConfig::new(groups)).run_only(&[name])
}

fn from_report(report: &Report, name: &str) -> Outcome {
    let t = report.theorem(name).expect("theorem present");
    let mut detail = format!("{} instances, {} failures", t.instances, t.failure_count);
    if let Some(f) = t.failures.first() {
        detail.push_str(&format!("; first: {f:?}"));
    }
    Outcome { passed: t.passed && t.instances > 0, detail }
}

fn worked_example() -> Outcome {
    let a3 = named(CoxeterType::A(3));
    let cube = BooleanCube::new(&a3, &word("1,2,3,1,2,1")).unwrap();
    let got = cube.f(&IndexSet::from_positions(&[1, 2, 4, 5]).unwrap()).unwrap().clone();
    let expected = a3.canonicalize(&word("1,2,1")).unwrap();
    Outcome { passed: got == expected, detail: format!("f({{1,2,4,5}}) = {got}") }
}

/// The words of criterion 7: (1,2,3,1,2,1) in A3 and both reduced words of w0 in B2.
fn fiber_cases() -> Vec<(CoxeterSystem, Word)> {
    let b2 = named(CoxeterType::B(2));
    vec![
        (named(CoxeterType::A(3)), word("1,2,3,1,2,1")),
        (b2.clone(), word("1,2,1,2")),
        (b2, word("2,1,2,1")),
    ]
}

fn fiber_duality() -> Outcome {
    let (mut checked, mut bad) = (0, Vec::new());
    for (sys, q) in fiber_cases() {
        let cube = BooleanCube::new(&sys, &q).unwrap();
        for u in bruhat_lower_set(&sys, cube.top()).unwrap() {
            checked += 1;
            if cube.fiber_up(&u).unwrap() != cube.fiber_up_via_complex(&u).unwrap() {
                bad.push(format!("{} {q} up {u}", sys.name()));
            }
            if &u != cube.top() {
                checked += 1;
                if cube.fiber_open(&u).unwrap() != cube.fiber_open_via_complex(&u).unwrap() {
                    bad.push(format!("{} {q} open {u}", sys.name()));
                }
            }
        }
    }
    Outcome { passed: bad.is_empty(), detail: format!("{checked} fibers compared, disagreements: {bad:?}") }
}

fn interval_spheres() -> Outcome {
    let groups = vec![named(CoxeterType::A(3)), named(CoxeterType::B(2)), named(CoxeterType::B(3))];
    let report = run_theorem(groups, "interval_spheres");
    let mut out = from_report(&report, "interval_spheres");
    let a3 = named(CoxeterType::A(3));
    let w0 = a3.longest_element().unwrap();
    let top = certify_interval_sphere(&a3, &Element::identity(), &w0, &[Field::GF2, Field::Rationals]).unwrap();
    let exact = top.betti.iter().all(|b| b.betti == vec![0, 0, 0, 0, 0, 1]);
    out.passed &= exact && top.passed();
    out.detail.push_str(&format!("; A3 (e,w0): {}", top.betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" / ")));
    out
}

fn contractible_fibers() -> Outcome {
    let (mut cones, mut acyclic, mut bad) = (0, 0, Vec::new());
    for (sys, q) in fiber_cases() {
        let cube = BooleanCube::new(&sys, &q).unwrap();
        for u in bruhat_lower_set(&sys, cube.top()).unwrap().into_iter().filter(|u| !u.is_identity()) {
            let r = certify_fiber_contractible(&cube, &u, DEFAULT_FACE_BUDGET).unwrap();
            match r.evidence {
                Contractibility::Cone { .. } => cones += 1,
                Contractibility::AcyclicHomology => acyclic += 1,
                Contractibility::NotContractible => bad.push(format!("{} {q} {u}", sys.name())),
            }
        }
    }
    Outcome { passed: bad.is_empty(), detail: format!("{cones} cone-certified, {acyclic} acyclic, failures: {bad:?}") }
}

fn cover_containment() -> Outcome {
    let report = run_theorem(sandwich_groups(), "cover_containment");
    let mut out = from_report(&report, "cover_containment");
    let notes = &report.theorem("cover_containment").unwrap().notes;
    out.detail.push_str(&format!("; {}", notes.join("; ")));
    out
}

fn total_positivity() -> Outcome {
    let s = totalpos::run_trials(2024, 100, 50, 4).unwrap();
    Outcome {
        passed: s.passed() && s.braid_trials == 100 && s.nonnegative_trials == 50,
        detail: format!(
            "{} additive, {} braid, {} nonnegativity trials, failures: {:?}",
            s.additive_trials, s.braid_trials, s.nonnegative_trials, s.failures
        ),
    }
}

fn main() -> ExitCode {
    let a3_b2 = || vec![named(CoxeterType::A(3)), named(CoxeterType::B(2))];
    let a2_b2 = || vec![named(CoxeterType::A(2)), named(CoxeterType::B(2))];
    type Check = Box<dyn Fn() -> Outcome>;
    let criteria: Vec<(&str, Duration, Check)> = vec![
        ("worked example f({1,2,4,5}) = s1s2s1", Duration::from_secs(1), Box::new(worked_example)),
        ("sorting order between weak and Bruhat", Duration::from_secs(120), Box::new(|| {
            from_report(&run_theorem(sandwich_groups(), "sandwich"), "sandwich")
        })),
        ("weak order is the intersection", Duration::MAX, Box::new(|| {
            from_report(&run_theorem(sandwich_groups(), "weak_is_intersection"), "weak_is_intersection")
        })),
        ("Bruhat order is the union", Duration::MAX, Box::new(|| {
            from_report(&run_theorem(sandwich_groups(), "bruhat_is_union"), "bruhat_is_union")
        })),
        ("B2 figure posets", Duration::MAX, Box::new(|| from_report(&run_theorem(vec![], "b2_figure"), "b2_figure"))),
        ("subword complex ball/sphere vs homology", Duration::from_secs(180), Box::new(move || {
            from_report(&run_theorem(a2_b2(), "subword_classification"), "subword_classification")
        })),
        ("fiber duality", Duration::MAX, Box::new(fiber_duality)),
        ("open intervals are homology spheres", Duration::from_secs(300), Box::new(interval_spheres)),
        ("fibers are contractible", Duration::MAX, Box::new(contractible_fibers)),
        ("sorting covers are Bruhat covers", Duration::MAX, Box::new(cover_containment)),
        ("total positivity identities", Duration::from_secs(30), Box::new(total_positivity)),
        ("oracle agreement", Duration::MAX, Box::new(move || {
            from_report(&run_theorem(a3_b2(), "oracle_agreement"), "oracle_agreement")
        })),
    ];
    let mut all = true;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let passed = out.passed && in_time;
        all &= passed;
        let limit = if *limit == Duration::MAX { String::new() } else { format!(" limit {:.0}s", limit.as_secs_f64()) };
        println!(
            "{} {:>2}. {name}: {} [{:.2}s{limit}]",
            if passed { "PASS" } else { "FAIL" },
            k + 1,
            out.detail,
            elapsed.as_secs_f64(),
        );
    }
    println!("acceptance: {}", if all { "all criteria passed" } else { "FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
