//! Randomized property suites.
//!
//! Case `i` of a run with seed `s` is generated from its own seed
//! [`case_seed`]`(s, i)`, so any reported counterexample can be regenerated
//! in isolation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::arith::{ext_sum, ExtReal, Rational};
use crate::measures::{check_product_property, evaluate, shift_comparison, MeasureId, Weight};
use crate::oracle::{
    fixtures, pairwise_disjoint, pi_cover_upper_bound, rho_restriction_lower_bound, CoverBudget, GenConfig,
    OracleError, RectCase, TameGen, MAX_FAMILY,
};
use crate::set1d::Set1D;
use crate::set2d::Set2D;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Additivity,
    Monotonicity,
    Product,
    Shift,
    OracleSandwich,
    Membership,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] = [
        SuiteName::Additivity,
        SuiteName::Monotonicity,
        SuiteName::Product,
        SuiteName::Shift,
        SuiteName::OracleSandwich,
        SuiteName::Membership,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Additivity => "additivity",
            SuiteName::Monotonicity => "monotonicity",
            SuiteName::Product => "product",
            SuiteName::Shift => "shift",
            SuiteName::OracleSandwich => "oracle-sandwich",
            SuiteName::Membership => "membership",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = SuiteName::ALL.iter().map(|n| n.as_str()).collect();
            format!("unknown suite `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Individual comparisons made across all cases.
    pub checks: usize,
    pub first_counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {}  seed {}  cases {}\npassed {}  failed {}  checks {}\n",
            self.suite, self.seed, self.cases, self.passed, self.failed, self.checks
        );
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        if let Some(c) = &self.first_counterexample {
            out.push_str(&format!("first counterexample:\n{c}\n"));
        }
        out.push_str(if self.ok() { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}

/// Seed of case `i` in a run seeded with `seed`.
pub fn case_seed(seed: u64, i: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Outcome of a single case: number of comparisons, and a description of the
/// first failing one.
type CaseResult = (usize, Option<String>);

struct Runner {
    report: SuiteReport,
}

impl Runner {
    fn new(suite: SuiteName, seed: u64, cases: usize) -> Self {
        Runner {
            report: SuiteReport {
                suite,
                seed,
                cases,
                passed: 0,
                failed: 0,
                checks: 0,
                first_counterexample: None,
                notes: Vec::new(),
            },
        }
    }

    fn record(&mut self, i: usize, (checks, failure): CaseResult) {
        self.report.checks += checks;
        match failure {
            None => self.report.passed += 1,
            Some(msg) => {
                self.report.failed += 1;
                if self.report.first_counterexample.is_none() {
                    let s = case_seed(self.report.seed, i);
                    self.report.first_counterexample = Some(format!("case {i} (case seed {s}):\n{msg}"));
                }
            }
        }
    }
}

fn gen(seed: u64) -> TameGen {
    TameGen::new(GenConfig::new(seed)).expect("default config is valid")
}

/// Five distinct weights: `0`, `1` and three random rationals in `[0, 10]`.
fn sampled_weights(seed: u64) -> Vec<Weight> {
    let mut g = gen(seed ^ 0x7765_6967_6874);
    let mut ts = vec![Rational::zero(), Rational::one()];
    while ts.len() < 5 {
        let t = g.rational(0, 10);
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    ts.into_iter().map(|t| Weight::new(t).expect("nonnegative")).collect()
}

fn weights_note(ws: &[Weight]) -> String {
    let ts: Vec<String> = ws.iter().map(|w| w.value().to_string()).collect();
    format!("eta_t weights: {}", ts.join(", "))
}

/// Runs a named suite.
pub fn run_suite(suite: SuiteName, seed: u64, cases: usize) -> Result<SuiteReport, OracleError> {
    let mut r = Runner::new(suite, seed, cases);
    match suite {
        SuiteName::Additivity => {
            for i in 0..cases {
                let res = additivity_case(case_seed(seed, i), 1 + i % MAX_FAMILY)?;
                r.record(i, res);
            }
            r.report.notes.push(format!("family sizes cycle through 1..={MAX_FAMILY}"));
        }
        SuiteName::Monotonicity => {
            let ws = sampled_weights(seed);
            for i in 0..cases {
                r.record(i, monotonicity_case(case_seed(seed, i), &ws));
            }
            r.report.notes.push(weights_note(&ws));
        }
        SuiteName::Product => {
            let ws = sampled_weights(seed);
            let mut per_case = [0usize; 3];
            for i in 0..cases {
                let case = RectCase::ALL[i % 3];
                per_case[i % 3] += 1;
                r.record(i, product_case(case_seed(seed, i), case, &ws));
            }
            r.report.notes.push(weights_note(&ws));
            r.report.notes.push(format!(
                "cases: finite A {}, infinite A with nu(B) > 0 {}, infinite A with nu(B) = 0 {}",
                per_case[0], per_case[1], per_case[2]
            ));
        }
        SuiteName::Shift => {
            let ws: Vec<Weight> = sampled_weights(seed).into_iter().filter(|w| w.value().is_positive()).collect();
            for i in 0..cases {
                r.record(i, shift_case(case_seed(seed, i), &ws));
            }
            r.report.notes.push(weights_note(&ws));
        }
        SuiteName::OracleSandwich => {
            let fx = fixtures();
            let budget = CoverBudget::default();
            let small = CoverBudget { max_rectangles: 3, grid_denominator_max: 4, ..CoverBudget::default() };
            for i in 0..cases {
                let res = if i < fx.len() {
                    sandwich_case(&fx[i].set, fx[i].is_finite_rect_only(), &budget, case_seed(seed, i))?
                } else {
                    let mut g = gen(case_seed(seed, i));
                    sandwich_case(&g.set2d(), false, &small, case_seed(seed, i))?
                };
                r.record(i, res);
            }
            r.report.notes.push(format!(
                "first {} cases are the fixed fixtures at the default budget; later cases use max_rectangles={}, grid_denominator_max={}",
                fx.len(),
                small.max_rectangles,
                small.grid_denominator_max
            ));
        }
        SuiteName::Membership => {
            for i in 0..cases {
                r.record(i, membership_case(case_seed(seed, i)));
            }
            r.report.notes.push(format!("{} membership probes", r.report.checks));
        }
    }
    Ok(r.report)
}

const ADDITIVE: [MeasureId; 4] = [MeasureId::Pi, MeasureId::Rho, MeasureId::Xi, MeasureId::Eta];

fn additivity_failure(family: &[Set2D]) -> Option<(MeasureId, ExtReal, Vec<ExtReal>)> {
    let union = family.iter().fold(Set2D::empty(), |acc, s| acc.union(s));
    ADDITIVE.into_iter().find_map(|m| {
        let parts: Vec<ExtReal> = family.iter().map(|s| evaluate(&m, s)).collect();
        let whole = evaluate(&m, &union);
        (whole != ext_sum(&parts)).then_some((m, whole, parts))
    })
}

fn additivity_case(seed: u64, k: usize) -> Result<CaseResult, OracleError> {
    let mut family = gen(seed).disjoint_family(k)?;
    if !pairwise_disjoint(&family) {
        let listing: Vec<String> = family.iter().map(|s| format!("  {s}")).collect();
        return Ok((1, Some(format!("generated family is not pairwise disjoint:\n{}", listing.join("\n")))));
    }
    if additivity_failure(&family).is_none() {
        return Ok((ADDITIVE.len(), None));
    }
    // Drop members while the failure persists.
    let mut i = 0;
    while i < family.len() {
        let mut smaller = family.clone();
        smaller.remove(i);
        if additivity_failure(&smaller).is_some() {
            family = smaller;
        } else {
            i += 1;
        }
    }
    let (m, whole, parts) = additivity_failure(&family).expect("failure kept while shrinking");
    let listing: Vec<String> = family.iter().zip(&parts).map(|(s, v)| format!("  {m}({s}) = {v}")).collect();
    Ok((
        ADDITIVE.len(),
        Some(format!("{m} of the union = {whole}, sum of parts = {}\n{}", ext_sum(&parts), listing.join("\n"))),
    ))
}

fn monotonicity_case(seed: u64, ws: &[Weight]) -> CaseResult {
    let mut g = gen(seed);
    let (a, b) = (g.set2d(), g.set2d());
    let (meet, join) = (a.intersect(&b), a.union(&b));
    let mut ids = ADDITIVE.to_vec();
    ids.extend(ws.iter().cloned().map(MeasureId::EtaT));
    let mut checks = 2;
    if !meet.is_subset(&a) || !a.is_subset(&join) {
        return (checks, Some(format!("subset chain broken for A = {a}, B = {b}")));
    }
    for m in &ids {
        checks += 2;
        let (lo, mid, hi) = (evaluate(m, &meet), evaluate(m, &a), evaluate(m, &join));
        if !(lo <= mid && mid <= hi) {
            return (checks, Some(format!("{m}: {lo} <= {mid} <= {hi} fails\n  A = {a}\n  B = {b}")));
        }
    }
    (checks, None)
}

fn product_case(seed: u64, case: RectCase, ws: &[Weight]) -> CaseResult {
    let mut g = gen(seed);
    let (a, b) = g.rect_factors_for(case);
    let mut ids = vec![MeasureId::Pi, MeasureId::Rho, MeasureId::Eta];
    ids.extend(ws.iter().cloned().map(MeasureId::EtaT));
    let mut checks = 0;
    for m in &ids {
        checks += 1;
        let check = check_product_property(m, &a, &b).expect("x-factor within [0,1]");
        if !check.holds() {
            return (
                checks,
                Some(format!("{m}(rect({a}, {b})) = {}, mu(A)*nu(B) = {} ({case:?})", check.measured, check.expected)),
            );
        }
    }
    (checks, None)
}

fn nonzero_shift(g: &mut TameGen) -> Rational {
    loop {
        let c = g.rational(-3, 3);
        if !c.is_zero() {
            return c;
        }
    }
}

fn shift_case(seed: u64, ws: &[Weight]) -> CaseResult {
    let mut g = gen(seed);
    let e = g.set2d();
    let c = g.rational(-3, 3);
    let mut checks = 0;
    for m in [MeasureId::Pi, MeasureId::Rho] {
        checks += 1;
        let cmp = shift_comparison(&m, &e, &c);
        if !cmp.invariant {
            return (
                checks,
                Some(format!("{m} not shift invariant: {} vs {} for e = {e}, c = {c}", cmp.before, cmp.after)),
            );
        }
    }
    let d = nonzero_shift(&mut g);
    let diag = Set2D::diagonal();
    for m in std::iter::once(MeasureId::Eta).chain(ws.iter().cloned().map(MeasureId::EtaT)) {
        checks += 1;
        let cmp = shift_comparison(&m, &diag, &d);
        if cmp.invariant {
            return (checks, Some(format!("{m} unexpectedly invariant on diag shifted by {d}: {}", cmp.before)));
        }
    }
    (checks, None)
}

fn sandwich_case(e: &Set2D, expect_equal: bool, budget: &CoverBudget, seed: u64) -> Result<CaseResult, OracleError> {
    let upper = pi_cover_upper_bound(e, budget)?;
    let lower = rho_restriction_lower_bound(e, 16, seed);
    let (rho, pi) = (evaluate(&MeasureId::Rho, e), evaluate(&MeasureId::Pi, e));
    let chain = lower <= rho && rho <= pi && pi <= upper.value;
    let collapsed = !expect_equal || lower == upper.value;
    let detail = || format!("e = {e}\n  rho_lower {lower} <= rho {rho} <= pi {pi} <= pi_upper {}", upper.value);
    Ok(match (chain, collapsed) {
        (true, true) => (2, None),
        (false, _) => (2, Some(format!("sandwich broken:\n  {}", detail()))),
        (true, false) => (2, Some(format!("bounds did not meet on a finite rect-only set:\n  {}", detail()))),
    })
}

/// Probe coordinates: breakpoints, midpoints between them, and random values.
fn probes(g: &mut TameGen, mut bps: Vec<Rational>, lo: i64, hi: i64) -> Vec<Rational> {
    crate::set1d::sort_dedup(&mut bps);
    let mids: Vec<Rational> = bps.windows(2).map(|w| Rational::midpoint(&w[0], &w[1])).collect();
    let mut out = bps.clone();
    out.extend(mids);
    if let (Some(first), Some(last)) = (bps.first(), bps.last()) {
        out.push(first - Rational::one());
        out.push(last + Rational::one());
    }
    out.extend((0..4).map(|_| g.rational(lo, hi)));
    out
}

fn membership_case(seed: u64) -> CaseResult {
    let mut g = gen(seed);
    let (a, b) = (g.set1d(), g.set1d());
    let mut bps = a.breakpoints();
    bps.extend(b.breakpoints());
    let ops1 = [
        ("|", a.union(&b), (|p, q| p || q) as fn(bool, bool) -> bool),
        ("&", a.intersect(&b), |p, q| p && q),
        ("\\", a.difference(&b), |p, q| p && !q),
    ];
    let mut checks = 0;
    for x in probes(&mut g, bps, -3, 3) {
        for (sym, set, f) in &ops1 {
            checks += 1;
            if set.contains(&x) != f(a.contains(&x), b.contains(&x)) {
                return (checks, Some(format!("1-D: {x} in ({a}) {sym} ({b}) disagrees with pointwise evaluation")));
            }
        }
    }

    let (e, h) = (g.set2d(), g.set2d());
    let ops2 = [
        ("|", e.union(&h), (|p, q| p || q) as fn(bool, bool) -> bool),
        ("&", e.intersect(&h), |p, q| p && q),
        ("\\", e.difference(&h), |p, q| p && !q),
    ];
    let mut xb = e.x_footprint().breakpoints();
    xb.extend(h.x_footprint().breakpoints());
    let xs = probes(&mut g, xb, 0, 1).into_iter().filter(|x| Set1D::unit().contains(x)).collect::<Vec<_>>();
    let mut offsets = e.offsets();
    offsets.extend(h.offsets());
    let mut yb = e.y_footprint().breakpoints();
    yb.extend(h.y_footprint().breakpoints());
    let ys = probes(&mut g, yb, -3, 3);
    for x in &xs {
        let mut col: Vec<Rational> = ys.clone();
        col.extend(offsets.iter().map(|c| x + c));
        if g.rng().gen_bool(0.5) {
            col.truncate(col.len().min(12));
        }
        for y in &col {
            for (sym, set, f) in &ops2 {
                checks += 1;
                let want = f(e.contains_point(x, y), h.contains_point(x, y));
                if set.contains_point(x, y) != want {
                    return (
                        checks,
                        Some(format!("2-D: ({x}, {y}) in ({e}) {sym} ({h}) disagrees with pointwise evaluation")),
                    );
                }
            }
        }
    }
    (checks, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(n.as_str().parse::<SuiteName>().unwrap(), n);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for n in SuiteName::ALL {
            let rep = run_suite(n, 5, 12).unwrap();
            assert!(rep.ok(), "{}", rep.render_text());
            assert_eq!(rep.passed, 12);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(run_suite(SuiteName::Membership, 9, 5).unwrap(), run_suite(SuiteName::Membership, 9, 5).unwrap());
    }

    #[test]
    fn case_seeds_differ() {
        assert_ne!(case_seed(0, 0), case_seed(0, 1));
        assert_ne!(case_seed(0, 1), case_seed(1, 1));
    }
}
