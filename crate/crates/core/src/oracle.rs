//! Brute-force cross-checks for the closed-form evaluators, plus seeded
//! generators of tame sets.
//!
//! * [`pi_cover_upper_bound`] searches finite rectangle covers drawn from a
//!   grid and returns the cheapest one it can verify. It never looks at
//!   `pi_outer`; only the exact set algebra is used to check coverage.
//! * [`rho_restriction_lower_bound`] samples finite-measure rectangles
//!   `A′ × B′` and maximizes `π(E ∩ (A′ × B′))`.
//!
//! A search that finds no finite cover reports [`CoverBound::found_cover`]
//! as `false`. That is a budget-relative verdict, not a proof that the
//! infimum is infinite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ext_mul, ExtReal, Rational};
use crate::measures::pi_outer;
use crate::set1d::{Endpoint, Interval, Set1D};
use crate::set2d::Set2D;

/// Largest family [`gen_disjoint_family`] will build.
pub const MAX_FAMILY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("y-footprint {footprint} exceeds the search window {window}")]
    OutsideWindow { footprint: String, window: String },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("family size {0} exceeds the cap of {MAX_FAMILY}")]
    FamilyTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverBudget {
    pub grid_denominator_max: u32,
    pub max_rectangles: usize,
    #[serde(serialize_with = "serialize_display")]
    pub y_window: Interval,
}

fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Default for CoverBudget {
    fn default() -> Self {
        CoverBudget {
            grid_denominator_max: 16,
            max_rectangles: 6,
            y_window: Interval::closed(Rational::from_integer(-4), Rational::from_integer(4)).expect("-4 < 4"),
        }
    }
}

impl CoverBudget {
    pub fn new(
        grid_denominator_max: u32,
        max_rectangles: usize,
        lo: Rational,
        hi: Rational,
    ) -> Result<Self, OracleError> {
        if grid_denominator_max == 0 || max_rectangles == 0 {
            return Err(OracleError::InvalidBudget("bounds must be positive".into()));
        }
        let y_window = Interval::closed(lo, hi).map_err(|e| OracleError::InvalidBudget(e.to_string()))?;
        Ok(CoverBudget { grid_denominator_max, max_rectangles, y_window })
    }

    fn window_bounds(&self) -> (Rational, Rational) {
        let lo = self.y_window.lo().as_finite().expect("bounded window").clone();
        let hi = self.y_window.hi().as_finite().expect("bounded window").clone();
        (lo, hi)
    }
}

/// Outcome of the cover search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverBound {
    pub value: ExtReal,
    pub found_cover: bool,
    /// Rectangles `(A, B)` of the best cover found.
    #[serde(serialize_with = "serialize_cover")]
    pub cover: Vec<(Set1D, Set1D)>,
}

fn serialize_cover<S: serde::Serializer>(cover: &[(Set1D, Set1D)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(cover.iter().map(|(a, b)| format!("rect({a}, {b})")))
}

#[derive(Clone)]
struct Candidate {
    a: Set1D,
    b: Set1D,
    cost: ExtReal,
    set: Set2D,
}

/// Dyadic grid intervals `[k/d, (k+1)/d]` inside `[lo, hi]` for `d = 1, 2, 4, …`.
fn grid_intervals(lo: &Rational, hi: &Rational, dmax: u32) -> Vec<Set1D> {
    let mut out = Vec::new();
    let mut d: i64 = 1;
    while d <= i64::from(dmax) {
        let den = Rational::from_integer(d);
        let start = floor_i64(&(lo * &den));
        let end = floor_i64(&(hi * &den));
        for k in start..end {
            let a = Rational::new(k, d);
            let b = Rational::new(k + 1, d);
            if &a >= lo && &b <= hi {
                out.push(Set1D::closed(a, b));
            }
        }
        d *= 2;
    }
    out
}

fn floor_i64(q: &Rational) -> i64 {
    use num_integer::Integer;
    let f = q.numer().div_floor(q.denom());
    i64::try_from(&f).expect("grid index fits in i64")
}

/// A point of `e`, used to branch the cover search.
fn witness(e: &Set2D) -> Option<(Rational, Rational)> {
    for r in e.rects() {
        let x = first_point(r.a())?;
        let removed: Vec<Rational> =
            r.holes().iter().filter(|h| h.domain().contains(&x)).map(|h| &x + h.offset()).collect();
        let fiber = r.b().difference(&Set1D::points(removed));
        if let Some(y) = first_point(&fiber) {
            return Some((x, y));
        }
    }
    e.graphs().first().and_then(|g| {
        let x = first_point(g.domain())?;
        let y = &x + g.offset();
        Some((x, y))
    })
}

fn first_point(s: &Set1D) -> Option<Rational> {
    if let Some(p) = s.point_list().first() {
        return Some(p.clone());
    }
    let iv = s.intervals().first()?;
    Some(match (iv.lo(), iv.hi()) {
        (Endpoint::Fin(a), Endpoint::Fin(b)) => Rational::midpoint(a, b),
        (Endpoint::Fin(a), _) => a + Rational::one(),
        (_, Endpoint::Fin(b)) => b - Rational::one(),
        _ => Rational::zero(),
    })
}

fn candidates(e: &Set2D, budget: &CoverBudget) -> Vec<Candidate> {
    let (lo, hi) = budget.window_bounds();
    let cells = e.disjointify_rects();

    let mut xs: Vec<Set1D> = vec![Set1D::unit()];
    xs.extend(e.rects().iter().map(|r| r.a().clone()));
    xs.extend(e.graphs().iter().map(|g| g.domain().clone()));
    xs.extend(cells.iter().map(|(cell, _)| cell.clone()));
    xs.sort();
    xs.dedup();

    // Every candidate for a budget stays a candidate for any larger budget.
    let mut ys: Vec<Set1D> = grid_intervals(&lo, &hi, budget.grid_denominator_max);
    for (_, column) in &cells {
        ys.push(column.clone());
        if let Some((a, b)) = column.bounds() {
            ys.push(Set1D::closed(a, b));
        }
    }
    ys.extend(e.rects().iter().map(|r| r.b().clone()));
    ys.extend(e.graphs().iter().map(|g| g.domain().shift(g.offset())));
    ys.sort();
    ys.dedup();

    let mut out = Vec::new();
    for a in &xs {
        let mu = a.counting().expect("candidate x-sets lie in [0,1]");
        for b in &ys {
            let cost = ext_mul(&mu, &b.lebesgue());
            if cost.is_infinite() {
                continue;
            }
            let set = Set2D::rect(a.clone(), b.clone()).expect("x-set within [0,1]");
            out.push(Candidate { a: a.clone(), b: b.clone(), cost, set });
        }
    }
    out
}

/// Vertical section `{y : (x, y) ∈ e}`.
fn fiber(e: &Set2D, x: &Rational) -> Set1D {
    let mut parts: Vec<Set1D> = Vec::new();
    for r in e.rects().iter().filter(|r| r.a().contains(x)) {
        let removed: Vec<Rational> =
            r.holes().iter().filter(|h| h.domain().contains(x)).map(|h| x + h.offset()).collect();
        parts.push(r.b().difference(&Set1D::points(removed)));
    }
    for g in e.graphs().iter().filter(|g| g.domain().contains(x)) {
        parts.push(Set1D::point(x + g.offset()));
    }
    Set1D::union_all(&parts)
}

/// Admissible lower bound on the cost of any finite cover of `e`.
///
/// A positive-length column over infinitely many `x`, or a graph over an
/// interval, forces some rectangle with `μ(A) = ∞` and `ν(B) > 0`. Otherwise
/// each rectangle pays at least `ν` of the section it covers at every `x`.
fn cover_lower_bound(e: &Set2D) -> ExtReal {
    let unbounded_x = e.rects().iter().any(|r| !r.a().is_finite() && !r.b().lebesgue().is_zero())
        || e.graphs().iter().any(|g| !g.domain().is_finite());
    if unbounded_x {
        return ExtReal::INFINITY;
    }
    let xs = Set1D::union_all(e.rects().iter().map(|r| r.a()).chain(e.graphs().iter().map(|g| g.domain())));
    xs.point_list().iter().map(|x| fiber(e, x).lebesgue()).sum()
}

struct Search<'a> {
    candidates: &'a [Candidate],
    max_depth: usize,
    best: Option<(ExtReal, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, residual: &Set2D, chosen: &mut Vec<usize>, spent: &ExtReal) {
        if residual.is_empty() {
            if self.best.as_ref().is_none_or(|(b, _)| spent < b) {
                self.best = Some((spent.clone(), chosen.clone()));
            }
            return;
        }
        if chosen.len() == self.max_depth {
            return;
        }
        let Some((x, y)) = witness(residual) else { return };
        let containing: Vec<usize> = (0..self.candidates.len())
            .filter(|&i| self.candidates[i].a.contains(&x) && self.candidates[i].b.contains(&y))
            .collect();
        // Drop candidates dominated by a larger, no-more-expensive rectangle.
        let useful: Vec<usize> = containing
            .iter()
            .copied()
            .filter(|&i| {
                let ci = &self.candidates[i];
                !containing.iter().any(|&j| {
                    let cj = &self.candidates[j];
                    j != i
                        && cj.cost <= ci.cost
                        && ci.a.is_subset(&cj.a)
                        && ci.b.is_subset(&cj.b)
                        && (cj.cost < ci.cost || !(cj.a.is_subset(&ci.a) && cj.b.is_subset(&ci.b)) || j < i)
                })
            })
            .collect();
        let mut branches: Vec<(ExtReal, usize, Set2D)> = Vec::new();
        for i in useful {
            let c = &self.candidates[i];
            let total = spent + &c.cost;
            let next = residual.difference(&c.set);
            let bound = &total + &cover_lower_bound(&next);
            if bound.is_infinite() || self.best.as_ref().is_some_and(|(b, _)| &bound >= b) {
                continue;
            }
            branches.push((bound, i, next));
        }
        branches.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| self.candidates[y.1].cost.cmp(&self.candidates[x.1].cost)));
        for (bound, i, next) in branches {
            if self.best.as_ref().is_some_and(|(b, _)| &bound >= b) {
                continue;
            }
            let total = spent + &self.candidates[i].cost;
            chosen.push(i);
            self.run(&next, chosen, &total);
            chosen.pop();
        }
    }
}

/// Cheapest verified finite cover of `e` by grid rectangles.
pub fn pi_cover_upper_bound(e: &Set2D, budget: &CoverBudget) -> Result<CoverBound, OracleError> {
    let footprint = e.y_footprint();
    let window = Set1D::from_interval(budget.y_window.clone());
    if !footprint.is_subset(&window) {
        return Err(OracleError::OutsideWindow { footprint: footprint.to_string(), window: window.to_string() });
    }
    let cands = candidates(e, budget);
    if cover_lower_bound(e).is_infinite() {
        return Ok(CoverBound { value: ExtReal::INFINITY, found_cover: false, cover: Vec::new() });
    }
    let mut search = Search { candidates: &cands, max_depth: budget.max_rectangles, best: None };
    search.run(e, &mut Vec::new(), &ExtReal::zero());
    Ok(match search.best {
        Some((value, picks)) => CoverBound {
            value,
            found_cover: true,
            cover: picks.into_iter().map(|i| (cands[i].a.clone(), cands[i].b.clone())).collect(),
        },
        None => CoverBound { value: ExtReal::INFINITY, found_cover: false, cover: Vec::new() },
    })
}

/// Max of `π(E ∩ (A′ × B′))` over sampled finite point sets `A′` and bounded
/// interval unions `B′`. Sample 0 is the deterministic pair (all point cells,
/// hull of every column); later samples add random points from interval cells
/// and widen `B′`.
pub fn rho_restriction_lower_bound(e: &Set2D, samples: usize, seed: u64) -> ExtReal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = e.disjointify_rects();
    let mut point_cells: Vec<Rational> = Vec::new();
    let mut interval_pool: Vec<(Rational, Rational)> = Vec::new();
    let x_parts = cells.iter().map(|(c, _)| c).chain(e.graphs().iter().map(|g| g.domain()));
    for part in x_parts {
        point_cells.extend(part.point_list().iter().cloned());
        for iv in part.intervals() {
            if let (Some(a), Some(b)) = (iv.lo().as_finite(), iv.hi().as_finite()) {
                interval_pool.push((a.clone(), b.clone()));
            }
        }
    }
    let hull = |radius: i64| {
        let mut parts: Vec<Set1D> = Vec::new();
        for (_, column) in &cells {
            let clipped =
                column.intersect(&Set1D::closed(Rational::from_integer(-radius), Rational::from_integer(radius)));
            if let Some((a, b)) = clipped.bounds() {
                parts.push(Set1D::closed(a, b));
            }
        }
        Set1D::union_all(&parts)
    };

    let mut best = ExtReal::zero();
    for i in 0..samples {
        let mut xs: Vec<Rational> = if i == 0 {
            point_cells.clone()
        } else {
            point_cells.iter().filter(|_| rng.gen_bool(0.75)).cloned().collect()
        };
        if i > 0 {
            for (a, b) in &interval_pool {
                let n = rng.gen_range(0..=i.min(64));
                for _ in 0..n {
                    let t = Rational::new(rng.gen_range(1..1024), 1024);
                    xs.push(a + &(&(b - a) * &t));
                }
            }
        }
        let radius = 4 + i64::try_from(i).unwrap_or(i64::MAX / 2).min(1 << 20);
        let mut b_set = hull(radius);
        if i > 0 {
            let lo = Rational::new(rng.gen_range(-4 * radius..0), 4);
            let hi = Rational::new(rng.gen_range(1..=4 * radius), 4);
            b_set = b_set.union(&Set1D::closed(lo, hi));
        }
        let a_set = Set1D::points(xs);
        if a_set.is_empty() || b_set.is_empty() {
            continue;
        }
        let window = Set2D::rect(a_set, b_set).expect("sampled points lie in [0,1]");
        let v = pi_outer(&e.intersect(&window));
        if v > best {
            best = v;
        }
    }
    best
}

/// Relative weights for the rectangle cases the generators produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseMix {
    pub finite_a: u32,
    pub infinite_a: u32,
    pub positive_b: u32,
    pub null_b: u32,
    /// Weight of graph pieces relative to rectangles (`finite_a + infinite_a`).
    pub graph: u32,
}

impl Default for CaseMix {
    fn default() -> Self {
        CaseMix { finite_a: 1, infinite_a: 1, positive_b: 1, null_b: 1, graph: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_patches: usize,
    pub endpoint_denominator_max: u32,
    pub case_mix: CaseMix,
}

impl GenConfig {
    pub fn new(seed: u64) -> Self {
        GenConfig { seed, max_patches: 4, endpoint_denominator_max: 8, case_mix: CaseMix::default() }
    }

    fn validate(&self) -> Result<(), OracleError> {
        let m = &self.case_mix;
        if self.max_patches == 0 || self.endpoint_denominator_max == 0 {
            return Err(OracleError::InvalidConfig("bounds must be positive".into()));
        }
        if m.finite_a + m.infinite_a == 0 || m.positive_b + m.null_b == 0 {
            return Err(OracleError::InvalidConfig("case weights must not all be zero".into()));
        }
        Ok(())
    }
}

/// The three rectangle cases of the product-property argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RectCase {
    /// `μ(A) < ∞`, any `B`.
    FiniteA,
    /// `μ(A) = ∞`, `ν(B) > 0`.
    InfiniteAPositiveB,
    /// `μ(A) = ∞`, `ν(B) = 0`.
    InfiniteANullB,
}

impl RectCase {
    pub const ALL: [RectCase; 3] = [RectCase::FiniteA, RectCase::InfiniteAPositiveB, RectCase::InfiniteANullB];
}

/// Seeded generator of tame sets.
pub struct TameGen {
    rng: ChaCha8Rng,
    cfg: GenConfig,
}

impl TameGen {
    pub fn new(cfg: GenConfig) -> Result<Self, OracleError> {
        cfg.validate()?;
        Ok(TameGen { rng: ChaCha8Rng::seed_from_u64(cfg.seed), cfg })
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Rational in `[lo, hi]` with denominator at most the configured maximum.
    pub fn rational(&mut self, lo: i64, hi: i64) -> Rational {
        let d = i64::from(self.rng.gen_range(1..=self.cfg.endpoint_denominator_max));
        Rational::new(self.rng.gen_range(lo * d..=hi * d), d)
    }

    fn pick(&mut self, weights: &[u32]) -> usize {
        let total: u32 = weights.iter().sum();
        let mut r = self.rng.gen_range(0..total.max(1));
        for (i, w) in weights.iter().enumerate() {
            if r < *w {
                return i;
            }
            r -= w;
        }
        0
    }

    fn interval_in(&mut self, lo: i64, hi: i64) -> Set1D {
        loop {
            let a = self.rational(lo, hi);
            let b = self.rational(lo, hi);
            if a == b {
                continue;
            }
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            let (lc, hc) = (self.rng.gen_bool(0.6), self.rng.gen_bool(0.6));
            return Set1D::from_interval(Interval::new(Endpoint::Fin(a), Endpoint::Fin(b), lc, hc).expect("a < b"));
        }
    }

    /// Set in `[lo, hi]`: a finite point set, or a union containing at least
    /// one nondegenerate interval.
    pub fn set1d_in(&mut self, lo: i64, hi: i64, finite: bool) -> Set1D {
        let n_points = self.rng.gen_range(if finite { 1..=3 } else { 0..=2 });
        let mut s = Set1D::points((0..n_points).map(|_| self.rational(lo, hi)).collect::<Vec<_>>());
        if !finite {
            let n = self.rng.gen_range(1..=2);
            for _ in 0..n {
                let iv = self.interval_in(lo, hi);
                s = s.union(&iv);
            }
        }
        s
    }

    /// An x-factor in `[0, 1]`.
    pub fn factor_a(&mut self, finite: bool) -> Set1D {
        self.set1d_in(0, 1, finite)
    }

    /// A y-factor in `[-2, 2]`; `positive` controls whether `ν(B) > 0`.
    pub fn factor_b(&mut self, positive: bool) -> Set1D {
        self.set1d_in(-2, 2, !positive)
    }

    /// Random rectangle factors drawn from the case mix.
    pub fn rect_factors(&mut self) -> (RectCase, Set1D, Set1D) {
        let m = self.cfg.case_mix.clone();
        let finite_a = self.pick(&[m.finite_a, m.infinite_a]) == 0;
        let positive_b = self.pick(&[m.positive_b, m.null_b]) == 0;
        let case = match (finite_a, positive_b) {
            (true, _) => RectCase::FiniteA,
            (false, true) => RectCase::InfiniteAPositiveB,
            (false, false) => RectCase::InfiniteANullB,
        };
        (case, self.factor_a(finite_a), self.factor_b(positive_b))
    }

    /// Factors for a prescribed case. `B` is occasionally unbounded or empty.
    pub fn rect_factors_for(&mut self, case: RectCase) -> (Set1D, Set1D) {
        let a = match case {
            RectCase::FiniteA if self.rng.gen_bool(0.1) => Set1D::empty(),
            RectCase::FiniteA => self.factor_a(true),
            _ => self.factor_a(false),
        };
        let b = match case {
            RectCase::InfiniteANullB if self.rng.gen_bool(0.15) => Set1D::empty(),
            RectCase::InfiniteANullB => self.factor_b(false),
            RectCase::InfiniteAPositiveB if self.rng.gen_bool(0.15) => {
                let lo = self.rational(-2, 2);
                Set1D::from_interval(
                    Interval::new(Endpoint::Fin(lo), Endpoint::PosInf, self.rng.gen_bool(0.5), false)
                        .expect("lo < inf"),
                )
            }
            RectCase::InfiniteAPositiveB => self.factor_b(true),
            RectCase::FiniteA => {
                if self.rng.gen_bool(0.15) {
                    Set1D::reals()
                } else {
                    let positive = self.rng.gen_bool(0.5);
                    self.factor_b(positive)
                }
            }
        };
        (a, b)
    }

    fn graph_piece(&mut self) -> Set2D {
        let offsets = [Rational::zero(), Rational::one(), Rational::new(-1, 2), Rational::new(1, 2)];
        let c = if self.rng.gen_bool(0.7) {
            offsets.choose(&mut self.rng).expect("nonempty").clone()
        } else {
            self.rational(-1, 1)
        };
        let finite = self.rng.gen_bool(0.15);
        let d = self.factor_a(finite);
        Set2D::graph(c, d).expect("domain within [0,1]")
    }

    pub fn set1d(&mut self) -> Set1D {
        let finite = self.rng.gen_bool(0.3);
        self.set1d_in(-2, 2, finite)
    }

    /// A random tame set with `y`-footprint inside `[-3, 3]`.
    pub fn set2d(&mut self) -> Set2D {
        let m = self.cfg.case_mix.clone();
        let n = self.rng.gen_range(1..=self.cfg.max_patches);
        let mut acc = Set2D::empty();
        for step in 0..n {
            let is_graph = self.pick(&[m.graph, m.finite_a + m.infinite_a]) == 0;
            let piece = if is_graph {
                self.graph_piece()
            } else {
                let (_, a, b) = self.rect_factors();
                Set2D::rect(a, b).expect("x-factor within [0,1]")
            };
            let op = if step == 0 { 0 } else { self.rng.gen_range(0..10) };
            acc = match op {
                0..=6 => acc.union(&piece),
                7..=8 => acc.difference(&piece),
                _ => {
                    let meet = acc.intersect(&piece);
                    if meet.is_empty() {
                        acc.union(&piece)
                    } else {
                        meet
                    }
                }
            };
        }
        acc
    }

    /// Random partition cell boundaries as atoms over the given breakpoints.
    fn blocks(
        &mut self,
        mut cuts: Vec<Rational>,
        lo: Option<Rational>,
        hi: Option<Rational>,
        groups: usize,
    ) -> Vec<Set1D> {
        crate::set1d::sort_dedup(&mut cuts);
        let mut out = vec![Set1D::empty(); groups];
        let range = match (lo, hi) {
            (Some(a), Some(b)) => Set1D::closed(a, b),
            _ => Set1D::reals(),
        };
        for atom in crate::set1d::atoms(&cuts) {
            let cell = atom.to_set().intersect(&range);
            if cell.is_empty() {
                continue;
            }
            let g = self.rng.gen_range(0..groups);
            out[g] = out[g].union(&cell);
        }
        out.retain(|s| !s.is_empty());
        out
    }

    /// `k` pairwise disjoint tame sets, cut from a small pool of random sets
    /// along a random grid of cells.
    pub fn disjoint_family(&mut self, k: usize) -> Result<Vec<Set2D>, OracleError> {
        if k > MAX_FAMILY {
            return Err(OracleError::FamilyTooLarge(k));
        }
        if k == 0 {
            return Ok(Vec::new());
        }
        let pool: Vec<Set2D> = (0..3).map(|_| self.set2d()).collect();
        let x_cuts: Vec<Rational> = (0..self.rng.gen_range(1..=3)).map(|_| self.rational(0, 1)).collect();
        let y_cuts: Vec<Rational> = (0..self.rng.gen_range(1..=3)).map(|_| self.rational(-2, 2)).collect();
        let x_groups = self.rng.gen_range(2..=4);
        let y_groups = self.rng.gen_range(1..=3);
        let xs = self.blocks(x_cuts, Some(Rational::zero()), Some(Rational::one()), x_groups);
        let ys = self.blocks(y_cuts, None, None, y_groups);

        let mut pieces = Vec::new();
        for x in &xs {
            for y in &ys {
                let cell = Set2D::rect(x.clone(), y.clone()).expect("x-block within [0,1]");
                let i = self.rng.gen_range(0..pool.len());
                let j = self.rng.gen_range(0..pool.len());
                let first = pool[i].intersect(&cell);
                let second = pool[j].difference(&pool[i]).intersect(&cell);
                pieces.extend([first, second].into_iter().filter(|p| !p.is_empty()));
            }
        }
        pieces.shuffle(&mut self.rng);
        let mut members = vec![Set2D::empty(); k];
        for (n, p) in pieces.into_iter().enumerate() {
            let slot = if n < k { n } else { self.rng.gen_range(0..k) };
            members[slot] = members[slot].union(&p);
        }
        Ok(members)
    }
}

pub fn gen_tame_set1d(cfg: &GenConfig) -> Result<Set1D, OracleError> {
    Ok(TameGen::new(cfg.clone())?.set1d())
}

pub fn gen_tame_set2d(cfg: &GenConfig) -> Result<Set2D, OracleError> {
    Ok(TameGen::new(cfg.clone())?.set2d())
}

pub fn gen_disjoint_family(cfg: &GenConfig, k: usize) -> Result<Vec<Set2D>, OracleError> {
    TameGen::new(cfg.clone())?.disjoint_family(k)
}

/// True iff all pairwise intersections are empty.
pub fn pairwise_disjoint(family: &[Set2D]) -> bool {
    family.iter().enumerate().all(|(i, a)| family[i + 1..].iter().all(|b| a.intersect(b).is_empty()))
}

/// A named set from the fixed oracle fixture suite.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub set: Set2D,
}

impl Fixture {
    /// Rectangle-only with a finite x-footprint, so `μ` of every cell is finite.
    pub fn is_finite_rect_only(&self) -> bool {
        self.set.graphs().is_empty() && self.set.x_footprint().is_finite()
    }
}

/// Twenty fixed sets whose `y`-footprints fit the default window.
pub fn fixtures() -> Vec<Fixture> {
    let q = Rational::new;
    let z = Rational::from_integer;
    let closed = |a: Rational, b: Rational| Set1D::closed(a, b);
    let rect = |a: Set1D, b: Set1D| Set2D::rect(a, b).expect("fixture x-factor within [0,1]");
    let unit = Set1D::unit;
    let diag = Set2D::diagonal();
    let square = rect(unit(), unit());
    vec![
        Fixture { name: "empty", set: Set2D::empty() },
        Fixture { name: "diag", set: diag.clone() },
        Fixture { name: "diag+1", set: diag.vshift(&z(1)) },
        Fixture { name: "unit square", set: square.clone() },
        Fixture { name: "three columns", set: rect(Set1D::points([z(0), q(1, 2), z(1)]), unit()) },
        Fixture { name: "single column", set: rect(Set1D::point(q(1, 2)), closed(z(0), z(3))) },
        Fixture { name: "horizontal segment", set: rect(unit(), Set1D::point(z(0))) },
        Fixture { name: "square minus diag", set: square.difference(&diag) },
        Fixture {
            name: "split columns",
            set: rect(Set1D::points([q(1, 4), q(3, 4)]), unit().union(&closed(z(2), z(3)))),
        },
        Fixture { name: "finite grid", set: rect(Set1D::point(q(1, 3)), Set1D::points([z(0), z(1), z(2)])) },
        Fixture { name: "diag_approx(3)", set: Set2D::diagonal_approx(3).expect("N >= 1") },
        Fixture { name: "half diag", set: Set2D::graph(z(0), closed(z(0), q(1, 2))).expect("domain in [0,1]") },
        Fixture {
            name: "two column groups",
            set: rect(Set1D::points([z(0), z(1)]), closed(z(-1), z(1)))
                .union(&rect(Set1D::point(q(1, 2)), closed(z(0), z(2)))),
        },
        Fixture { name: "column minus diag", set: rect(Set1D::point(q(1, 2)), unit()).difference(&diag) },
        Fixture {
            name: "strip and column",
            set: rect(
                Set1D::from_interval(
                    Interval::new(Endpoint::Fin(z(0)), Endpoint::Fin(q(1, 2)), true, false).expect("0 < 1/2"),
                ),
                closed(z(1), z(2)),
            )
            .union(&rect(Set1D::point(q(3, 4)), closed(z(0), q(1, 4)))),
        },
        Fixture {
            name: "graph and column",
            set: Set2D::graph(q(-1, 2), closed(q(1, 2), z(1)))
                .expect("domain in [0,1]")
                .union(&rect(Set1D::point(z(0)), unit())),
        },
        Fixture { name: "low columns", set: rect(Set1D::points([q(1, 8), q(1, 4), q(3, 8)]), closed(z(-4), z(-3))) },
        Fixture { name: "square minus column", set: square.difference(&rect(Set1D::point(q(1, 2)), unit())) },
        Fixture {
            name: "overlapping columns",
            set: rect(Set1D::points([z(0), q(1, 2)]), closed(z(0), q(1, 2)))
                .union(&rect(Set1D::points([q(1, 2), z(1)]), closed(q(1, 4), z(1)))),
        },
        Fixture {
            name: "four short columns",
            set: rect(Set1D::points([q(1, 5), q(2, 5), q(3, 5), q(4, 5)]), closed(z(0), q(1, 3))),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::rho_cld;

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn cover_examples() {
        let budget = CoverBudget::default();
        let three = Set2D::rect(Set1D::points([z(0), Rational::new(1, 2), z(1)]), Set1D::unit()).unwrap();
        let bound = pi_cover_upper_bound(&three, &budget).unwrap();
        assert!(bound.found_cover);
        assert_eq!(bound.value, ExtReal::count(3));
        assert_eq!(bound.value, pi_outer(&three));

        let diag = pi_cover_upper_bound(&Set2D::diagonal(), &budget).unwrap();
        assert!(!diag.found_cover);
        assert_eq!(diag.value, ExtReal::INFINITY);

        let empty = pi_cover_upper_bound(&Set2D::empty(), &budget).unwrap();
        assert_eq!((empty.value, empty.found_cover), (ExtReal::zero(), true));
    }

    #[test]
    fn cover_rejects_out_of_window() {
        let tall = Set2D::rect(Set1D::point(z(0)), Set1D::closed(z(0), z(10))).unwrap();
        assert!(matches!(pi_cover_upper_bound(&tall, &CoverBudget::default()), Err(OracleError::OutsideWindow { .. })));
        assert!(CoverBudget::new(0, 3, z(0), z(1)).is_err());
        assert!(CoverBudget::new(4, 3, z(1), z(1)).is_err());
    }

    #[test]
    fn rho_lower_examples() {
        assert_eq!(rho_restriction_lower_bound(&Set2D::diagonal(), 16, 7), ExtReal::zero());
        let col = Set2D::rect(Set1D::point(Rational::new(1, 2)), Set1D::closed(z(0), z(3))).unwrap();
        assert_eq!(rho_restriction_lower_bound(&col, 4, 1), ExtReal::count(3));
        assert_eq!(rho_restriction_lower_bound(&Set2D::empty(), 4, 1), ExtReal::zero());
        // Infinite ρ: the bound keeps growing with more samples.
        let sq = Set2D::rect(Set1D::unit(), Set1D::unit()).unwrap();
        let few = rho_restriction_lower_bound(&sq, 2, 3);
        let many = rho_restriction_lower_bound(&sq, 40, 3);
        assert!(many > few);
        assert!(many > ExtReal::count(10));
    }

    #[test]
    fn generators_are_deterministic() {
        let cfg = GenConfig::new(42);
        assert_eq!(gen_tame_set2d(&cfg).unwrap(), gen_tame_set2d(&cfg).unwrap());
        assert_eq!(gen_tame_set1d(&cfg).unwrap(), gen_tame_set1d(&cfg).unwrap());
        assert_eq!(gen_disjoint_family(&cfg, 5).unwrap(), gen_disjoint_family(&cfg, 5).unwrap());
    }

    #[test]
    fn disjoint_family_postcondition() {
        for seed in 0..10 {
            let fam = gen_disjoint_family(&GenConfig::new(seed), 3).unwrap();
            assert_eq!(fam.len(), 3);
            assert!(pairwise_disjoint(&fam));
        }
        assert!(matches!(gen_disjoint_family(&GenConfig::new(0), 21), Err(OracleError::FamilyTooLarge(21))));
    }

    #[test]
    fn finite_null_case_mix_gives_finite_rectangles() {
        let mix = CaseMix { finite_a: 1, infinite_a: 0, positive_b: 0, null_b: 1, graph: 0 };
        for seed in 0..20 {
            let cfg = GenConfig { case_mix: mix.clone(), ..GenConfig::new(seed) };
            let s = gen_tame_set2d(&cfg).unwrap();
            assert!(s.graphs().is_empty());
            for r in s.rects() {
                assert!(r.a().is_finite() && r.b().is_finite(), "{s}");
            }
        }
    }

    #[test]
    fn invalid_config_rejected() {
        let mix = CaseMix { finite_a: 0, infinite_a: 0, positive_b: 1, null_b: 1, graph: 1 };
        let cfg = GenConfig { case_mix: mix, ..GenConfig::new(0) };
        assert!(gen_tame_set2d(&cfg).is_err());
    }

    #[test]
    fn generated_sets_are_normalized() {
        for seed in 0..30 {
            let mut g = TameGen::new(GenConfig::new(seed)).unwrap();
            assert!(g.set1d().is_canonical());
            let s = g.set2d();
            assert!(s.is_normalized(), "{s}");
        }
    }

    #[test]
    fn fixtures_fit_default_window() {
        let fx = fixtures();
        assert_eq!(fx.len(), 20);
        let window = Set1D::from_interval(CoverBudget::default().y_window);
        for f in &fx {
            assert!(f.set.y_footprint().is_subset(&window), "{}", f.name);
            assert!(rho_cld(&f.set) <= pi_outer(&f.set));
        }
    }

    #[test]
    fn fixture_sandwich() {
        let budget = CoverBudget::default();
        for f in fixtures() {
            let upper = pi_cover_upper_bound(&f.set, &budget).unwrap();
            let lower = rho_restriction_lower_bound(&f.set, 24, 11);
            let (rho, pi) = (rho_cld(&f.set), pi_outer(&f.set));
            assert!(lower <= rho && rho <= pi && pi <= upper.value, "{}: {lower} {rho} {pi} {}", f.name, upper.value);
            if f.is_finite_rect_only() {
                assert_eq!(lower, upper.value, "{}", f.name);
            }
        }
    }
}
