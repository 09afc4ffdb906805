//! Finite unions of rational intervals plus finite point sets on the real line.
//!
//! A [`Set1D`] is always kept in canonical form: intervals are disjoint,
//! sorted, and never mergeable, and no stored point lies in or touches an
//! interval in a way that could be absorbed. Two values denote the same
//! subset of ℝ exactly when they are structurally equal.
//!
//! All Boolean operations go through the same atom sweep: the merged
//! breakpoints of both operands split ℝ into singletons and open gaps, on
//! each of which membership is constant.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::arith::{ExtReal, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("interval has lo >= hi: {0}")]
    EmptyInterval(String),
    #[error("interval {0} is closed at an infinite endpoint")]
    ClosedInfinity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} {set} is not contained in [0,1]")]
    OutsideUnit { what: &'static str, set: String },
}

/// Interval endpoint on the extended line. Ordering: `NegInf < Fin(_) < PosInf`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Fin(Rational),
    PosInf,
}

impl Endpoint {
    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::Fin(q) => Some(q),
            _ => None,
        }
    }

    fn shifted(&self, c: &Rational) -> Endpoint {
        match self {
            Endpoint::Fin(q) => Endpoint::Fin(q + c),
            other => other.clone(),
        }
    }

    fn cmp_rational(&self, x: &Rational) -> Ordering {
        match self {
            Endpoint::NegInf => Ordering::Less,
            Endpoint::Fin(q) => q.cmp(x),
            Endpoint::PosInf => Ordering::Greater,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::Fin(q) => write!(f, "{q}"),
            Endpoint::PosInf => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for Endpoint {
    fn from(q: Rational) -> Self {
        Endpoint::Fin(q)
    }
}

/// A nondegenerate interval: `lo < hi`, never closed at an infinite end.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: Endpoint,
    hi: Endpoint,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Endpoint, hi: Endpoint, lo_closed: bool, hi_closed: bool) -> Result<Self, SetError> {
        let iv = Interval { lo, hi, lo_closed, hi_closed };
        if iv.lo >= iv.hi {
            return Err(SetError::EmptyInterval(iv.to_string()));
        }
        if (lo_closed && iv.lo.as_finite().is_none()) || (hi_closed && iv.hi.as_finite().is_none()) {
            return Err(SetError::ClosedInfinity(iv.to_string()));
        }
        Ok(iv)
    }

    pub fn closed(a: Rational, b: Rational) -> Result<Self, SetError> {
        Interval::new(Endpoint::Fin(a), Endpoint::Fin(b), true, true)
    }

    pub fn open(a: Rational, b: Rational) -> Result<Self, SetError> {
        Interval::new(Endpoint::Fin(a), Endpoint::Fin(b), false, false)
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match self.lo.cmp_rational(x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match self.hi.cmp_rational(x) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Less => false,
        };
        above && below
    }

    /// Length, `∞` for unbounded intervals.
    pub fn length(&self) -> ExtReal {
        match (&self.lo, &self.hi) {
            (Endpoint::Fin(a), Endpoint::Fin(b)) => ExtReal::finite(b - a).expect("lo < hi"),
            _ => ExtReal::INFINITY,
        }
    }

    fn shifted(&self, c: &Rational) -> Interval {
        Interval {
            lo: self.lo.shifted(c),
            hi: self.hi.shifted(c),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical finite union of intervals and points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Set1D {
    intervals: Vec<Interval>,
    points: Vec<Rational>,
}

/// One cell of the atom decomposition induced by a sorted breakpoint list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Point(Rational),
    /// Open gap between two consecutive breakpoints (or an infinite end).
    Gap(Endpoint, Endpoint),
}

impl Atom {
    /// A point inside the atom, used to decide membership for the whole atom.
    pub fn representative(&self) -> Rational {
        match self {
            Atom::Point(p) => p.clone(),
            Atom::Gap(Endpoint::Fin(a), Endpoint::Fin(b)) => Rational::midpoint(a, b),
            Atom::Gap(Endpoint::Fin(a), _) => a + Rational::one(),
            Atom::Gap(_, Endpoint::Fin(b)) => b - Rational::one(),
            Atom::Gap(_, _) => Rational::zero(),
        }
    }

    pub fn to_set(&self) -> Set1D {
        match self {
            Atom::Point(p) => Set1D::point(p.clone()),
            Atom::Gap(lo, hi) => Set1D {
                intervals: vec![Interval::new(lo.clone(), hi.clone(), false, false).expect("gap is nonempty")],
                points: Vec::new(),
            },
        }
    }
}

/// Splits ℝ at the given sorted, deduplicated breakpoints.
pub fn atoms(breakpoints: &[Rational]) -> Vec<Atom> {
    let mut out = Vec::with_capacity(2 * breakpoints.len() + 1);
    let mut prev = Endpoint::NegInf;
    for b in breakpoints {
        out.push(Atom::Gap(prev, Endpoint::Fin(b.clone())));
        out.push(Atom::Point(b.clone()));
        prev = Endpoint::Fin(b.clone());
    }
    out.push(Atom::Gap(prev, Endpoint::PosInf));
    out
}

/// Sorts and deduplicates a breakpoint list in place.
pub fn sort_dedup(bps: &mut Vec<Rational>) {
    bps.sort();
    bps.dedup();
}

impl Set1D {
    pub fn empty() -> Self {
        Set1D::default()
    }

    /// The whole real line.
    pub fn reals() -> Self {
        Set1D {
            intervals: vec![Interval {
                lo: Endpoint::NegInf,
                hi: Endpoint::PosInf,
                lo_closed: false,
                hi_closed: false,
            }],
            points: Vec::new(),
        }
    }

    /// `[0, 1]`, the factor space of the counting measure.
    pub fn unit() -> Self {
        Set1D::closed(Rational::zero(), Rational::one())
    }

    pub fn point(p: Rational) -> Self {
        Set1D { intervals: Vec::new(), points: vec![p] }
    }

    pub fn points<I: IntoIterator<Item = Rational>>(pts: I) -> Self {
        let mut points: Vec<Rational> = pts.into_iter().collect();
        sort_dedup(&mut points);
        Set1D { intervals: Vec::new(), points }
    }

    /// `[a, b]`; `[a, a]` is the point `{a}` and `a > b` is empty.
    pub fn closed(a: Rational, b: Rational) -> Self {
        match a.cmp(&b) {
            Ordering::Less => Set1D::from_interval(Interval::closed(a, b).expect("a < b")),
            Ordering::Equal => Set1D::point(a),
            Ordering::Greater => Set1D::empty(),
        }
    }

    /// `(a, b)`; empty unless `a < b`.
    pub fn open(a: Rational, b: Rational) -> Self {
        Interval::open(a, b).map(Set1D::from_interval).unwrap_or_default()
    }

    pub fn from_interval(iv: Interval) -> Self {
        Set1D { intervals: vec![iv], points: Vec::new() }
    }

    /// Canonical form of the union of raw intervals and points.
    pub fn normalize(intervals: Vec<Interval>, points: Vec<Rational>) -> Self {
        let raw = Set1D { intervals, points };
        let mut bps = raw.breakpoints();
        sort_dedup(&mut bps);
        Set1D::from_atom_membership(&atoms(&bps), |x| raw.contains_raw(x))
    }

    /// Validating variant of [`Set1D::normalize`] over raw endpoint tuples
    /// `(lo, hi, lo_closed, hi_closed)`.
    pub fn try_normalize(raw: Vec<(Endpoint, Endpoint, bool, bool)>, points: Vec<Rational>) -> Result<Self, SetError> {
        let intervals =
            raw.into_iter().map(|(lo, hi, lc, hc)| Interval::new(lo, hi, lc, hc)).collect::<Result<Vec<_>, _>>()?;
        Ok(Set1D::normalize(intervals, points))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn point_list(&self) -> &[Rational] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }

    /// True when the set is a finite point set (possibly empty).
    pub fn is_finite(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.points.binary_search(x).is_ok() {
            return true;
        }
        // Intervals are sorted and disjoint: find the last one starting at or before x.
        let idx = self.intervals.partition_point(|iv| iv.lo.cmp_rational(x) != Ordering::Greater);
        idx > 0 && self.intervals[idx - 1].contains(x)
    }

    fn contains_raw(&self, x: &Rational) -> bool {
        self.points.contains(x) || self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// All finite endpoints and points, unsorted.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.points.clone();
        for iv in &self.intervals {
            out.extend(iv.lo.as_finite().cloned());
            out.extend(iv.hi.as_finite().cloned());
        }
        out
    }

    /// Rebuilds a canonical set from per-atom membership. `atoms` must come
    /// from [`atoms`] over a sorted breakpoint list.
    pub fn from_atom_membership<F: Fn(&Rational) -> bool>(atoms: &[Atom], member: F) -> Self {
        let flags: Vec<bool> = atoms.iter().map(|a| member(&a.representative())).collect();
        Set1D::from_atom_flags(atoms, &flags)
    }

    pub fn from_atom_flags(atoms: &[Atom], flags: &[bool]) -> Self {
        debug_assert_eq!(atoms.len(), flags.len());
        let mut intervals = Vec::new();
        let mut points = Vec::new();
        let mut run: Option<(Endpoint, bool)> = None;
        for (i, atom) in atoms.iter().enumerate() {
            let inside = flags[i];
            let next_inside = flags.get(i + 1).copied().unwrap_or(false);
            match atom {
                Atom::Gap(lo, hi) => {
                    if inside && run.is_none() {
                        run = Some((lo.clone(), false));
                    }
                    if inside && *hi == Endpoint::PosInf {
                        let (start, closed) = run.take().expect("run open");
                        intervals.push(Interval {
                            lo: start,
                            hi: Endpoint::PosInf,
                            lo_closed: closed,
                            hi_closed: false,
                        });
                    }
                }
                Atom::Point(p) => match (inside, run.take()) {
                    (true, Some(start)) => {
                        if next_inside {
                            run = Some(start);
                        } else {
                            intervals.push(Interval {
                                lo: start.0,
                                hi: Endpoint::Fin(p.clone()),
                                lo_closed: start.1,
                                hi_closed: true,
                            });
                        }
                    }
                    (true, None) => {
                        if next_inside {
                            run = Some((Endpoint::Fin(p.clone()), true));
                        } else {
                            points.push(p.clone());
                        }
                    }
                    (false, Some(start)) => {
                        intervals.push(Interval {
                            lo: start.0,
                            hi: Endpoint::Fin(p.clone()),
                            lo_closed: start.1,
                            hi_closed: false,
                        });
                    }
                    (false, None) => {}
                },
            }
        }
        Set1D { intervals, points }
    }

    fn combine<F: Fn(bool, bool) -> bool>(&self, other: &Set1D, op: F) -> Set1D {
        let mut bps = self.breakpoints();
        bps.extend(other.breakpoints());
        sort_dedup(&mut bps);
        Set1D::from_atom_membership(&atoms(&bps), |x| op(self.contains(x), other.contains(x)))
    }

    pub fn union(&self, other: &Set1D) -> Set1D {
        if other.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Set1D) -> Set1D {
        if self.is_empty() || other.is_empty() {
            return Set1D::empty();
        }
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Set1D) -> Set1D {
        if self.is_empty() || other.is_empty() {
            return self.clone();
        }
        self.combine(other, |a, b| a && !b)
    }

    pub fn union_all<'a, I: IntoIterator<Item = &'a Set1D>>(sets: I) -> Set1D {
        let sets: Vec<&Set1D> = sets.into_iter().collect();
        match sets.len() {
            0 => Set1D::empty(),
            1 => sets[0].clone(),
            _ => {
                let mut bps: Vec<Rational> = sets.iter().flat_map(|s| s.breakpoints()).collect();
                sort_dedup(&mut bps);
                Set1D::from_atom_membership(&atoms(&bps), |x| sets.iter().any(|s| s.contains(x)))
            }
        }
    }

    /// Translation by `c`.
    pub fn shift(&self, c: &Rational) -> Set1D {
        Set1D {
            intervals: self.intervals.iter().map(|iv| iv.shifted(c)).collect(),
            points: self.points.iter().map(|p| p + c).collect(),
        }
    }

    /// Lebesgue measure ν.
    pub fn lebesgue(&self) -> ExtReal {
        self.intervals.iter().map(Interval::length).sum()
    }

    /// Counting measure μ on `X = [0, 1]`. Any nondegenerate interval is
    /// uncountable, so the value is finite only for pure point sets.
    pub fn counting(&self) -> Result<ExtReal, SetError> {
        self.require_unit("counting-measure argument")?;
        Ok(if self.intervals.is_empty() { ExtReal::count(self.points.len()) } else { ExtReal::INFINITY })
    }

    pub fn is_subset(&self, other: &Set1D) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_within_unit(&self) -> bool {
        self.is_subset(&Set1D::unit())
    }

    pub(crate) fn require_unit(&self, what: &'static str) -> Result<(), SetError> {
        if self.is_within_unit() {
            Ok(())
        } else {
            Err(SetError::OutsideUnit { what, set: self.to_string() })
        }
    }

    /// Bounded iff no endpoint is infinite.
    pub fn is_bounded(&self) -> bool {
        self.intervals.iter().all(|iv| iv.lo.as_finite().is_some() && iv.hi.as_finite().is_some())
    }

    /// Smallest and largest finite breakpoint, if the set is bounded and nonempty.
    pub fn bounds(&self) -> Option<(Rational, Rational)> {
        if self.is_empty() || !self.is_bounded() {
            return None;
        }
        let bps = self.breakpoints();
        let lo = bps.iter().min()?.clone();
        let hi = bps.iter().max()?.clone();
        Some((lo, hi))
    }

    /// Checks the canonical-form invariants. Used by tests and generators.
    pub fn is_canonical(&self) -> bool {
        let ordered =
            self.intervals.windows(2).all(|w| w[0].hi <= w[1].lo) && self.points.windows(2).all(|w| w[0] < w[1]);
        ordered && *self == Set1D::normalize(self.intervals.clone(), self.points.clone())
    }
}

impl fmt::Display for Set1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        let mut parts: Vec<String> = self.intervals.iter().map(|iv| iv.to_string()).collect();
        if !self.points.is_empty() {
            let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
            parts.push(format!("{{{}}}", pts.join(", ")));
        }
        f.write_str(&parts.join(" | "))
    }
}

impl fmt::Debug for Set1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn iv(a: Rational, b: Rational, lc: bool, hc: bool) -> Interval {
        Interval::new(Endpoint::Fin(a), Endpoint::Fin(b), lc, hc).unwrap()
    }

    #[test]
    fn touching_closed_intervals_merge() {
        let s = Set1D::normalize(vec![iv(z(0), q(1, 2), true, true), iv(q(1, 2), z(1), true, true)], vec![]);
        assert_eq!(s, Set1D::unit());
    }

    #[test]
    fn boundary_point_is_absorbed() {
        let s = Set1D::normalize(vec![iv(z(0), z(1), false, false)], vec![z(1)]);
        assert_eq!(s.intervals(), &[iv(z(0), z(1), false, true)]);
        assert!(s.point_list().is_empty());
    }

    #[test]
    fn interior_point_is_absorbed() {
        let s = Set1D::normalize(vec![iv(z(0), z(1), true, true)], vec![q(1, 2)]);
        assert_eq!(s, Set1D::unit());
    }

    #[test]
    fn point_bridging_two_open_intervals_merges() {
        let s = Set1D::normalize(vec![iv(z(0), z(1), false, false), iv(z(1), z(2), false, false)], vec![z(1)]);
        assert_eq!(s, Set1D::open(z(0), z(2)));
    }

    #[test]
    fn bad_intervals_rejected() {
        assert!(Interval::new(Endpoint::Fin(z(1)), Endpoint::Fin(z(1)), true, true).is_err());
        assert!(Interval::new(Endpoint::Fin(z(2)), Endpoint::Fin(z(1)), false, false).is_err());
        assert!(Interval::new(Endpoint::NegInf, Endpoint::Fin(z(1)), true, false).is_err());
        assert!(Interval::new(Endpoint::Fin(z(0)), Endpoint::PosInf, true, true).is_err());
        assert!(Set1D::try_normalize(vec![(Endpoint::Fin(z(3)), Endpoint::Fin(z(1)), true, true)], vec![]).is_err());
    }

    #[test]
    fn intersect_difference_examples() {
        let a = Set1D::unit();
        let b = Set1D::closed(z(1), z(2));
        assert_eq!(a.intersect(&b), Set1D::point(z(1)));
        assert_eq!(a.difference(&Set1D::open(z(0), z(1))), Set1D::points([z(0), z(1)]));
        let c = Set1D::unit().union(&Set1D::point(z(2)));
        assert_eq!(c.intersect(&Set1D::closed(q(3, 2), z(3))), Set1D::point(z(2)));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Set1D::unit().shift(&z(1)), Set1D::closed(z(1), z(2)));
        assert_eq!(Set1D::points([z(0), q(1, 2)]).shift(&q(-1, 2)), Set1D::points([q(-1, 2), z(0)]));
        assert_eq!(Set1D::empty().shift(&z(7)), Set1D::empty());
    }

    #[test]
    fn lebesgue_examples() {
        let s = Set1D::unit().union(&Set1D::closed(z(2), q(5, 2)));
        assert_eq!(s.lebesgue(), ExtReal::ratio(3, 2));
        assert_eq!(Set1D::points([z(0), z(1), z(2)]).lebesgue(), ExtReal::zero());
        let ray = Set1D::from_interval(Interval::new(Endpoint::Fin(z(0)), Endpoint::PosInf, true, false).unwrap());
        assert_eq!(ray.lebesgue(), ExtReal::INFINITY);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(Set1D::points([z(0), q(1, 2), z(1)]).counting().unwrap(), ExtReal::count(3));
        assert_eq!(Set1D::closed(z(0), q(1, 2)).counting().unwrap(), ExtReal::INFINITY);
        assert_eq!(Set1D::empty().counting().unwrap(), ExtReal::zero());
        assert!(matches!(Set1D::point(z(2)).counting(), Err(SetError::OutsideUnit { .. })));
    }

    #[test]
    fn subset_examples() {
        assert!(Set1D::unit().is_subset(&Set1D::closed(z(0), z(2))));
        assert!(Set1D::point(q(1, 2)).is_subset(&Set1D::open(z(0), z(1))));
        let half_open = Set1D::from_interval(iv(z(0), z(1), false, true));
        assert!(!Set1D::unit().is_subset(&half_open));
    }

    #[test]
    fn display_format() {
        let s = Set1D::unit().union(&Set1D::points([z(2), q(5, 2)]));
        assert_eq!(s.to_string(), "[0, 1] | {2, 5/2}");
        assert_eq!(Set1D::empty().to_string(), "empty");
    }

    // Raw pieces over a small grid so that coincidences (touching, shared
    // endpoints, duplicate points) happen often.
    fn raw_piece() -> impl Strategy<Value = (Option<Interval>, Option<Rational>)> {
        let grid = || (-4i64..=4).prop_map(|n| q(n, 2));
        prop_oneof![
            (grid(), grid(), any::<bool>(), any::<bool>())
                .prop_map(|(a, b, lc, hc)| { (Interval::new(Endpoint::Fin(a), Endpoint::Fin(b), lc, hc).ok(), None) }),
            grid().prop_map(|p| (None, Some(p))),
            (grid(), any::<bool>())
                .prop_map(|(a, lc)| { (Interval::new(Endpoint::Fin(a), Endpoint::PosInf, lc, false).ok(), None) }),
        ]
    }

    fn raw_set() -> impl Strategy<Value = (Vec<Interval>, Vec<Rational>)> {
        prop::collection::vec(raw_piece(), 0..6).prop_map(|pieces| {
            let mut ivs = Vec::new();
            let mut pts = Vec::new();
            for (i, p) in pieces {
                ivs.extend(i);
                pts.extend(p);
            }
            (ivs, pts)
        })
    }

    fn set() -> impl Strategy<Value = Set1D> {
        raw_set().prop_map(|(i, p)| Set1D::normalize(i, p))
    }

    fn probes() -> Vec<Rational> {
        (-12..=12).map(|n| q(n, 4)).collect()
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_canonical((ivs, pts) in raw_set()) {
            let s = Set1D::normalize(ivs.clone(), pts.clone());
            prop_assert!(s.is_canonical());
            let mut rev_ivs = ivs.clone();
            rev_ivs.reverse();
            let mut rev_pts = pts.clone();
            rev_pts.reverse();
            prop_assert_eq!(&s, &Set1D::normalize(rev_ivs, rev_pts));
            for x in probes() {
                let raw = pts.contains(&x) || ivs.iter().any(|iv| iv.contains(&x));
                prop_assert_eq!(s.contains(&x), raw);
            }
        }

        #[test]
        fn boolean_ops_match_pointwise(a in set(), b in set()) {
            let u = a.union(&b);
            let i = a.intersect(&b);
            let d = a.difference(&b);
            for x in probes() {
                prop_assert_eq!(u.contains(&x), a.contains(&x) || b.contains(&x));
                prop_assert_eq!(i.contains(&x), a.contains(&x) && b.contains(&x));
                prop_assert_eq!(d.contains(&x), a.contains(&x) && !b.contains(&x));
            }
        }

        #[test]
        fn boolean_algebra_laws(a in set(), b in set(), c in set()) {
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            prop_assert_eq!(a.intersect(&b).intersect(&c), a.intersect(&b.intersect(&c)));
            prop_assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
            // De Morgan relative to the universe a.
            prop_assert_eq!(a.difference(&b.union(&c)), a.difference(&b).intersect(&a.difference(&c)));
            prop_assert_eq!(a.difference(&b.intersect(&c)), a.difference(&b).union(&a.difference(&c)));
        }

        #[test]
        fn lebesgue_additive_and_translation_invariant(a in set(), b in set(), n in -8i64..8, d in 1i64..5) {
            let b = b.difference(&a);
            prop_assert_eq!(a.union(&b).lebesgue(), a.lebesgue() + b.lebesgue());
            let c = q(n, d);
            prop_assert_eq!(a.shift(&c).lebesgue(), a.lebesgue());
            prop_assert!(a.shift(&c).is_canonical());
        }

        #[test]
        fn counting_additive_and_monotone(a in set(), b in set()) {
            let a = a.intersect(&Set1D::unit());
            let b = b.intersect(&Set1D::unit()).difference(&a);
            let (ma, mb) = (a.counting().unwrap(), b.counting().unwrap());
            prop_assert_eq!(a.union(&b).counting().unwrap(), &ma + &mb);
            prop_assert!(ma <= a.union(&b).counting().unwrap());
            prop_assert!(a.lebesgue() <= a.union(&b).lebesgue());
        }
    }
}
