//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All value comparisons are exact rational
//! equality; the only tolerances are the wall-clock limits below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tame_measure::dsl::{self, Value};
use tame_measure::measures::{eta_family, rho_cld, xi};
use tame_measure::oracle::{fixtures, pi_cover_upper_bound, rho_restriction_lower_bound, CoverBudget};
use tame_measure::report::run_transcript;
use tame_measure::suites::{run_suite, SuiteName};
use tame_measure::{ExtReal, Rational, Set2D};

const SEED: u64 = 20_240_601;
const TRANSCRIPT_LIMIT: Duration = Duration::from_secs(1);
const PRODUCT_LIMIT: Duration = Duration::from_secs(10);
const SANDWICH_LIMIT: Duration = Duration::from_secs(60);
const PRODUCT_CASES: usize = 500;
const ADDITIVITY_CASES: usize = 200;
const SHIFT_CASES: usize = 200;
const MIN_PROBES: usize = 1000;
const MEMBERSHIP_CASES: usize = 40;
const RANDOM_WEIGHTS: usize = 10;
const APPROX_MAX: u32 = 12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed<F: FnOnce() -> Outcome>(f: F) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

fn value(query: &str) -> Option<ExtReal> {
    match dsl::run(query).ok()?.value {
        Value::Number(v) => Some(v),
        Value::Bool(_) => None,
    }
}

fn theorem_transcript() -> Outcome {
    let t = run_transcript();
    let expected = [
        ("pi(diag)", ExtReal::INFINITY),
        ("rho(diag)", ExtReal::zero()),
        ("xi(diag)", ExtReal::one()),
        ("eta(diag)", ExtReal::one()),
        ("eta(vshift(diag, 1))", ExtReal::zero()),
    ];
    let mut bad = Vec::new();
    for (q, want) in &expected {
        let row = t.rows.iter().find(|r| r.query == *q);
        if row.and_then(|r| r.actual.as_ref()) != Some(want) {
            bad.push(q.to_string());
        }
    }
    let pass = t.ok && bad.is_empty();
    outcome(pass, format!("{} rows, mismatches: {:?}", t.rows.len(), bad))
}

fn suite(name: SuiteName, cases: usize) -> Outcome {
    match run_suite(name, SEED, cases) {
        Ok(r) => {
            let mut d = format!("{}/{} cases passed, {} checks", r.passed, r.cases, r.checks);
            if let Some(c) = &r.first_counterexample {
                d.push_str(&format!("; first counterexample: {c}"));
            }
            outcome(r.ok() && r.passed == cases, d)
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn shift_contrast() -> Outcome {
    let random = suite(SuiteName::Shift, SHIFT_CASES);
    // Independent of the suite: the diagonal against a spread of shifts.
    let diag = Set2D::diagonal();
    let mut fixed_ok = true;
    for c in [Rational::new(1, 3), Rational::one(), Rational::from_integer(-2)] {
        let shifted = diag.vshift(&c);
        for t in [Rational::new(1, 2), Rational::one(), Rational::new(7, 2)] {
            fixed_ok &= eta_family(&t, &diag).ok() != eta_family(&t, &shifted).ok();
        }
        fixed_ok &= rho_cld(&diag) == rho_cld(&shifted);
    }
    outcome(random.pass && fixed_ok, format!("{}; fixed diagonal shifts ok: {fixed_ok}", random.detail))
}

fn eta_family_witness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ts: Vec<Rational> = vec![Rational::zero(), Rational::one(), Rational::from_integer(2), Rational::new(7, 2)];
    while ts.len() < 4 + RANDOM_WEIGHTS {
        let t = Rational::new(rng.gen_range(0..1000), rng.gen_range(1..50));
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    let diag = Set2D::diagonal();
    let mut values = Vec::new();
    let mut exact = true;
    for t in &ts {
        let v = eta_family(t, &diag).expect("nonnegative weight");
        exact &= v == *t;
        // Same value through the query language.
        exact &= value(&format!("eta_t({t}, diag)")).as_ref() == Some(&v);
        values.push(v);
    }
    let mut sorted = values.clone();
    sorted.sort();
    sorted.dedup();
    let distinct = sorted.len() == values.len();
    outcome(exact && distinct, format!("{} weights, exact: {exact}, pairwise distinct: {distinct}", ts.len()))
}

fn oracle_sandwich() -> Outcome {
    let budget = CoverBudget::default();
    let fx = fixtures();
    let mut failures = Vec::new();
    let mut collapsed = 0;
    for f in &fx {
        let upper = match pi_cover_upper_bound(&f.set, &budget) {
            Ok(u) => u.value,
            Err(e) => {
                failures.push(format!("{}: {e}", f.name));
                continue;
            }
        };
        let lower = rho_restriction_lower_bound(&f.set, 32, SEED);
        let (rho, pi) = (rho_cld(&f.set), tame_measure::measures::pi_outer(&f.set));
        if !(lower <= rho && rho <= pi && pi <= upper) {
            failures.push(format!("{}: {lower} <= {rho} <= {pi} <= {upper}", f.name));
        }
        if f.is_finite_rect_only() {
            if lower == upper {
                collapsed += 1;
            } else {
                failures.push(format!("{}: no collapse, {lower} vs {upper}", f.name));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} fixtures, {collapsed} collapsed to equality, failures: {failures:?}", fx.len()),
    )
}

fn diagonal_approximants() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=APPROX_MAX {
        let e = Set2D::diagonal_approx(n).expect("N >= 1");
        if xi(&e) != ExtReal::one() || rho_cld(&e) != ExtReal::INFINITY {
            bad.push(n);
        }
    }
    let rho_diag = rho_cld(&Set2D::diagonal());
    let pass = bad.is_empty() && rho_diag == ExtReal::zero();
    outcome(pass, format!("N = 1..={APPROX_MAX}, failing N: {bad:?}, rho(diag) = {rho_diag}"))
}

fn membership() -> Outcome {
    match run_suite(SuiteName::Membership, SEED, MEMBERSHIP_CASES) {
        Ok(r) => outcome(
            r.ok() && r.checks >= MIN_PROBES,
            format!("{} probes over {} cases, {} failed", r.checks, r.cases, r.failed),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("theorem transcript", Some(TRANSCRIPT_LIMIT), theorem_transcript),
        ("product property", Some(PRODUCT_LIMIT), || suite(SuiteName::Product, PRODUCT_CASES)),
        ("finite additivity", None, || suite(SuiteName::Additivity, ADDITIVITY_CASES)),
        ("shift contrast", None, shift_contrast),
        ("eta_t family witness", None, eta_family_witness),
        ("oracle sandwich", Some(SANDWICH_LIMIT), oracle_sandwich),
        ("diagonal approximants", None, diagonal_approximants),
        ("membership agreement", None, membership),
    ];
    let mut all = true;
    println!("acceptance (seed {SEED}, exact comparisons)");
    for (name, limit, f) in criteria {
        let (o, took) = timed(f);
        let in_time = limit.is_none_or(|l| took < l);
        let pass = o.pass && in_time;
        all &= pass;
        let limit_text = limit.map(|l| format!(" limit {:.0?}", l)).unwrap_or_default();
        println!(
            "{} {name}: {} ({:.3}s{limit_text})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
