//! Tame subsets of `X × ℝ = [0,1] × ℝ`.
//!
//! A [`Set2D`] is a finite union of two kinds of patches:
//!
//! * [`RectPatch`]: a rectangle `A × B` with `A ⊆ [0,1]`, minus a finite list
//!   of slope-1 graph holes `{(x, x + c) : x ∈ D}`;
//! * [`GraphPatch`]: a slope-1 graph segment `{(x, x + c) : x ∈ D}` whose
//!   domain is a nonempty union of nondegenerate intervals.
//!
//! The class is a ring: closed under union, intersection and difference (no
//! complement). Holes are what keep `rect \ graph` inside the class.
//!
//! Normal form, applied after every operation:
//!
//! * each hole domain is cut down to its effective part `D ∩ A ∩ (B − c)`,
//!   holes sharing an offset are merged, and holes whose effective part is a
//!   finite point set are eliminated by splitting those columns off as
//!   explicit point rectangles;
//! * hole points covered by another patch are filled, graph points covered by
//!   a rectangle are trimmed, and isolated graph points become point
//!   rectangles;
//! * hole-free rectangles are regrouped into disjoint cells keyed by column.
//!
//! After normalization every patch is nonempty, so a set is empty iff it has
//! no patches. The representation is deterministic but not unique; use
//! [`Set2D::set_eq`] for extensional equality.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Rational;
use crate::set1d::{atoms, sort_dedup, Set1D, SetError};

/// `{(x, x + offset) : x ∈ domain}` with `domain ⊆ [0,1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GraphSpec {
    offset: Rational,
    domain: Set1D,
}

impl GraphSpec {
    pub fn new(offset: Rational, domain: Set1D) -> Result<Self, SetError> {
        domain.require_unit("graph domain")?;
        Ok(GraphSpec { offset, domain })
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn domain(&self) -> &Set1D {
        &self.domain
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        *y == x + &self.offset && self.domain.contains(x)
    }
}

/// `(A × B) \ ⋃ holes`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RectPatch {
    a: Set1D,
    b: Set1D,
    holes: Vec<GraphSpec>,
}

impl RectPatch {
    pub fn a(&self) -> &Set1D {
        &self.a
    }

    pub fn b(&self) -> &Set1D {
        &self.b
    }

    pub fn holes(&self) -> &[GraphSpec] {
        &self.holes
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.a.contains(x) && self.b.contains(y) && !self.holes.iter().any(|h| h.contains(x, y))
    }

    /// Union of the domains of holes with offset `c`.
    fn hole_domain(&self, c: &Rational) -> Set1D {
        Set1D::union_all(self.holes.iter().filter(|h| h.offset == *c).map(|h| &h.domain))
    }

    /// `{x : (x, x + c) ∈ self}`.
    fn graph_cover(&self, c: &Rational) -> Set1D {
        let raw = self.a.intersect(&self.b.shift(&-c));
        if raw.is_empty() {
            return raw;
        }
        raw.difference(&self.hole_domain(c))
    }

    fn shifted(&self, c: &Rational) -> RectPatch {
        RectPatch {
            a: self.a.clone(),
            b: self.b.shift(c),
            holes: self.holes.iter().map(|h| GraphSpec { offset: &h.offset + c, domain: h.domain.clone() }).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GraphPatch {
    spec: GraphSpec,
}

impl GraphPatch {
    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn offset(&self) -> &Rational {
        &self.spec.offset
    }

    pub fn domain(&self) -> &Set1D {
        &self.spec.domain
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Set2D {
    rects: Vec<RectPatch>,
    graphs: Vec<GraphPatch>,
}

/// Unnormalized patch used while computing differences.
enum Piece {
    Rect(RectPatch),
    Graph(Rational, Set1D),
}

fn rect_raw(a: Set1D, b: Set1D, holes: Vec<GraphSpec>) -> RectPatch {
    RectPatch { a, b, holes }
}

/// Normal form of a single rectangle patch; may split into several patches
/// when holes only remove finitely many points.
fn normalize_rect(a: Set1D, b: Set1D, holes: Vec<GraphSpec>) -> Vec<RectPatch> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut merged: BTreeMap<Rational, Set1D> = BTreeMap::new();
    for h in holes {
        let slot = merged.entry(h.offset).or_default();
        *slot = slot.union(&h.domain);
    }
    let mut effective = Vec::new();
    let mut finite_cols = Vec::new();
    for (c, d) in merged {
        let e = d.intersect(&a).intersect(&b.shift(&-&c));
        if e.is_empty() {
            continue;
        }
        if e.is_finite() {
            finite_cols.extend(e.point_list().iter().cloned());
        }
        effective.push(GraphSpec { offset: c, domain: e });
    }
    if finite_cols.is_empty() {
        return vec![RectPatch { a, b, holes: effective }];
    }
    let split = Set1D::points(finite_cols);
    let mut out = Vec::new();
    for x in split.point_list() {
        let removed: Vec<Rational> = effective.iter().filter(|h| h.domain.contains(x)).map(|h| x + &h.offset).collect();
        let fiber = b.difference(&Set1D::points(removed));
        if !fiber.is_empty() {
            out.push(RectPatch { a: Set1D::point(x.clone()), b: fiber, holes: Vec::new() });
        }
    }
    out.extend(normalize_rect(a.difference(&split), b, effective));
    out
}

/// Atoms of the common refinement of the rectangles' x-factors, each with the
/// union of the y-factors of the rectangles covering it. Holes are ignored.
fn disjointify(rects: &[RectPatch]) -> Vec<(Set1D, Set1D)> {
    if rects.is_empty() {
        return Vec::new();
    }
    let mut bps: Vec<Rational> = rects.iter().flat_map(|r| r.a.breakpoints()).collect();
    sort_dedup(&mut bps);
    let mut out = Vec::new();
    for atom in atoms(&bps) {
        let x = atom.representative();
        let column = Set1D::union_all(rects.iter().filter(|r| r.a.contains(&x)).map(|r| &r.b));
        if !column.is_empty() {
            out.push((atom.to_set(), column));
        }
    }
    out
}

impl Set2D {
    pub fn empty() -> Self {
        Set2D::default()
    }

    /// `A × B`; `A` must lie in `[0,1]`.
    pub fn rect(a: Set1D, b: Set1D) -> Result<Self, SetError> {
        a.require_unit("rectangle x-factor")?;
        Ok(Set2D::from_raw(vec![rect_raw(a, b, Vec::new())], Vec::new()))
    }

    /// `(A × B)` minus the listed graphs.
    pub fn rect_with_holes(a: Set1D, b: Set1D, holes: Vec<GraphSpec>) -> Result<Self, SetError> {
        a.require_unit("rectangle x-factor")?;
        Ok(Set2D::from_raw(vec![rect_raw(a, b, holes)], Vec::new()))
    }

    /// The diagonal `Δ = {(x, x) : x ∈ [0,1]}`.
    pub fn diagonal() -> Self {
        Set2D::from_raw(Vec::new(), vec![(Rational::zero(), Set1D::unit())])
    }

    /// `{(x, x + c) : x ∈ D}`.
    pub fn graph(c: Rational, d: Set1D) -> Result<Self, SetError> {
        d.require_unit("graph domain")?;
        Ok(Set2D::from_raw(Vec::new(), vec![(c, d)]))
    }

    /// The finite truncation `⋂_{n=1..N} ⋃_{k=0..n−1} [k/n, (k+1)/n]²` of the
    /// countable construction of `Δ`. Contains `Δ` for every `N`.
    pub fn diagonal_approx(n_max: u32) -> Result<Self, SetError> {
        if n_max == 0 {
            return Err(SetError::InvalidArgument("diag_approx needs N >= 1".into()));
        }
        let mut acc = Set2D::rect(Set1D::unit(), Set1D::unit())?;
        for n in 2..=i64::from(n_max) {
            let squares: Vec<RectPatch> = (0..n)
                .map(|k| {
                    let side = Set1D::closed(Rational::new(k, n), Rational::new(k + 1, n));
                    rect_raw(side.clone(), side, Vec::new())
                })
                .collect();
            acc = acc.intersect(&Set2D::from_raw(squares, Vec::new()));
        }
        Ok(acc)
    }

    pub fn rects(&self) -> &[RectPatch] {
        &self.rects
    }

    pub fn graphs(&self) -> &[GraphPatch] {
        &self.graphs
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty() && self.graphs.is_empty()
    }

    pub fn contains_point(&self, x: &Rational, y: &Rational) -> bool {
        self.rects.iter().any(|r| r.contains(x, y)) || self.graphs.iter().any(|g| g.spec.contains(x, y))
    }

    pub fn is_subset(&self, other: &Set2D) -> bool {
        self.difference(other).is_empty()
    }

    /// Extensional equality.
    pub fn set_eq(&self, other: &Set2D) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    pub fn union(&self, other: &Set2D) -> Set2D {
        let rects = self.rects.iter().chain(&other.rects).cloned().collect();
        let graphs =
            self.graphs.iter().chain(&other.graphs).map(|g| (g.spec.offset.clone(), g.spec.domain.clone())).collect();
        Set2D::from_raw(rects, graphs)
    }

    pub fn intersect(&self, other: &Set2D) -> Set2D {
        let mut rects = Vec::new();
        let mut graphs = Vec::new();
        for r1 in &self.rects {
            for r2 in &other.rects {
                let a = r1.a.intersect(&r2.a);
                if a.is_empty() {
                    continue;
                }
                let b = r1.b.intersect(&r2.b);
                if b.is_empty() {
                    continue;
                }
                let holes = r1.holes.iter().chain(&r2.holes).cloned().collect();
                rects.push(rect_raw(a, b, holes));
            }
        }
        let cross = |rs: &[RectPatch], gs: &[GraphPatch], out: &mut Vec<(Rational, Set1D)>| {
            for g in gs {
                for r in rs {
                    let d = g.spec.domain.intersect(&r.graph_cover(&g.spec.offset));
                    if !d.is_empty() {
                        out.push((g.spec.offset.clone(), d));
                    }
                }
            }
        };
        cross(&self.rects, &other.graphs, &mut graphs);
        cross(&other.rects, &self.graphs, &mut graphs);
        for g1 in &self.graphs {
            for g2 in &other.graphs {
                if g1.spec.offset == g2.spec.offset {
                    graphs.push((g1.spec.offset.clone(), g1.spec.domain.intersect(&g2.spec.domain)));
                }
            }
        }
        Set2D::from_raw(rects, graphs)
    }

    pub fn difference(&self, other: &Set2D) -> Set2D {
        if self.is_empty() || other.is_empty() {
            return self.clone();
        }
        let mut pieces: Vec<Piece> = self
            .rects
            .iter()
            .cloned()
            .map(Piece::Rect)
            .chain(self.graphs.iter().map(|g| Piece::Graph(g.spec.offset.clone(), g.spec.domain.clone())))
            .collect();
        for q in &other.rects {
            pieces = pieces.into_iter().flat_map(|p| subtract_rect(p, q)).collect();
        }
        for q in &other.graphs {
            pieces = pieces.into_iter().flat_map(|p| subtract_graph(p, &q.spec)).collect();
        }
        let mut rects = Vec::new();
        let mut graphs = Vec::new();
        for p in pieces {
            match p {
                Piece::Rect(r) => rects.push(r),
                Piece::Graph(c, d) => graphs.push((c, d)),
            }
        }
        Set2D::from_raw(rects, graphs)
    }

    /// Vertical shift `E + c = {(x, y + c) : (x, y) ∈ E}`.
    pub fn vshift(&self, c: &Rational) -> Set2D {
        Set2D {
            rects: self.rects.iter().map(|r| r.shifted(c)).collect(),
            graphs: self
                .graphs
                .iter()
                .map(|g| GraphPatch { spec: GraphSpec { offset: &g.spec.offset + c, domain: g.spec.domain.clone() } })
                .collect(),
        }
    }

    /// `f⁻¹[E ∩ Δ]` for `f(x) = (x, x)`.
    pub fn diag_trace(&self) -> Set1D {
        let zero = Rational::zero();
        let mut parts: Vec<Set1D> =
            self.graphs.iter().filter(|g| g.spec.offset.is_zero()).map(|g| g.spec.domain.clone()).collect();
        parts.extend(self.rects.iter().map(|r| r.graph_cover(&zero)));
        Set1D::union_all(&parts).intersect(&Set1D::unit())
    }

    /// Partition of the rectangles' x-footprint into disjoint cells, each
    /// paired with the union of the y-factors covering it. Holes and graphs
    /// are ignored.
    pub fn disjointify_rects(&self) -> Vec<(Set1D, Set1D)> {
        disjointify(&self.rects)
    }

    /// Offsets of every graph and hole, sorted.
    pub fn offsets(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.graphs.iter().map(|g| g.spec.offset.clone()).collect();
        out.extend(self.rects.iter().flat_map(|r| r.holes.iter().map(|h| h.offset.clone())));
        sort_dedup(&mut out);
        out
    }

    /// Union of all x-factors and graph domains.
    pub fn x_footprint(&self) -> Set1D {
        let parts: Vec<&Set1D> =
            self.rects.iter().map(|r| &r.a).chain(self.graphs.iter().map(|g| &g.spec.domain)).collect();
        Set1D::union_all(parts)
    }

    /// A superset of the projection onto the y-axis.
    pub fn y_footprint(&self) -> Set1D {
        let mut parts: Vec<Set1D> = self.rects.iter().map(|r| r.b.clone()).collect();
        parts.extend(self.graphs.iter().map(|g| g.spec.domain.shift(&g.spec.offset)));
        Set1D::union_all(&parts)
    }

    /// Checks the structural invariants of the normal form.
    pub fn is_normalized(&self) -> bool {
        let unit = Set1D::unit();
        let rects_ok = self.rects.iter().all(|r| {
            !r.a.is_empty()
                && !r.b.is_empty()
                && r.a.is_subset(&unit)
                && r.a.is_canonical()
                && r.b.is_canonical()
                && r.holes.windows(2).all(|w| w[0].offset < w[1].offset)
                && r.holes
                    .iter()
                    .all(|h| !h.domain.is_finite() && h.domain.is_subset(&r.a.intersect(&r.b.shift(&-&h.offset))))
        });
        let graphs_ok = self.graphs.iter().all(|g| {
            !g.spec.domain.is_empty() && g.spec.domain.point_list().is_empty() && g.spec.domain.is_subset(&unit)
        }) && self.graphs.windows(2).all(|w| w[0].spec.offset < w[1].spec.offset);
        rects_ok && graphs_ok
    }

    fn from_raw(rects: Vec<RectPatch>, graphs: Vec<(Rational, Set1D)>) -> Set2D {
        let mut rects: Vec<RectPatch> = rects.into_iter().flat_map(|r| normalize_rect(r.a, r.b, r.holes)).collect();

        let mut graph_map: BTreeMap<Rational, Set1D> = BTreeMap::new();
        for (c, d) in graphs {
            if d.is_empty() {
                continue;
            }
            let slot = graph_map.entry(c).or_default();
            *slot = slot.union(&d);
        }

        // Fill hole points that another patch covers anyway.
        if rects.iter().any(|r| !r.holes.is_empty()) {
            let mut refilled = Vec::with_capacity(rects.len());
            let mut changed = false;
            for (i, r) in rects.iter().enumerate() {
                if r.holes.is_empty() {
                    refilled.push(r.clone());
                    continue;
                }
                let holes: Vec<GraphSpec> = r
                    .holes
                    .iter()
                    .map(|h| {
                        let mut covered: Vec<Set1D> = rects
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != i)
                            .map(|(_, other)| other.graph_cover(&h.offset))
                            .collect();
                        covered.extend(graph_map.get(&h.offset).cloned());
                        let domain = h.domain.difference(&Set1D::union_all(&covered));
                        GraphSpec { offset: h.offset.clone(), domain }
                    })
                    .collect();
                if holes != r.holes {
                    changed = true;
                }
                refilled.push(rect_raw(r.a.clone(), r.b.clone(), holes));
            }
            if changed {
                rects = refilled.into_iter().flat_map(|r| normalize_rect(r.a, r.b, r.holes)).collect();
            }
        }

        // Trim graph points already inside a rectangle; isolate point parts.
        let mut graph_patches = Vec::new();
        for (c, d) in graph_map {
            let covered = Set1D::union_all(&rects.iter().map(|r| r.graph_cover(&c)).collect::<Vec<_>>());
            let d = d.difference(&covered);
            for x in d.point_list() {
                rects.push(rect_raw(Set1D::point(x.clone()), Set1D::point(x + &c), Vec::new()));
            }
            let intervals = Set1D::normalize(d.intervals().to_vec(), Vec::new());
            if !intervals.is_empty() {
                graph_patches.push(GraphPatch { spec: GraphSpec { offset: c, domain: intervals } });
            }
        }

        let (plain, mut holed): (Vec<RectPatch>, Vec<RectPatch>) = rects.into_iter().partition(|r| r.holes.is_empty());
        let mut by_column: BTreeMap<Set1D, Vec<Set1D>> = BTreeMap::new();
        for (cell, column) in disjointify(&plain) {
            by_column.entry(column).or_default().push(cell);
        }
        holed.extend(
            by_column.into_iter().map(|(column, cells)| rect_raw(Set1D::union_all(&cells), column, Vec::new())),
        );
        holed.sort();
        holed.dedup();

        Set2D { rects: holed, graphs: graph_patches }
    }
}

fn subtract_rect(p: Piece, q: &RectPatch) -> Vec<Piece> {
    match p {
        Piece::Rect(r) => {
            let a_common = r.a.intersect(&q.a);
            if a_common.is_empty() {
                return vec![Piece::Rect(r)];
            }
            let b_common = r.b.intersect(&q.b);
            if b_common.is_empty() {
                return vec![Piece::Rect(r)];
            }
            let mut out = Vec::with_capacity(2 + q.holes.len());
            // Points of r inside q's holes survive the subtraction.
            for h in &q.holes {
                let d = h.domain.intersect(&r.graph_cover(&h.offset));
                if !d.is_empty() {
                    out.push(Piece::Graph(h.offset.clone(), d));
                }
            }
            let a_rest = r.a.difference(&q.a);
            if !a_rest.is_empty() {
                out.push(Piece::Rect(rect_raw(a_rest, r.b.clone(), r.holes.clone())));
            }
            let b_rest = r.b.difference(&q.b);
            if !b_rest.is_empty() {
                out.push(Piece::Rect(rect_raw(a_common, b_rest, r.holes)));
            }
            out
        }
        Piece::Graph(c, d) => {
            let d = d.difference(&q.graph_cover(&c));
            if d.is_empty() {
                Vec::new()
            } else {
                vec![Piece::Graph(c, d)]
            }
        }
    }
}

fn subtract_graph(p: Piece, g: &GraphSpec) -> Vec<Piece> {
    match p {
        Piece::Rect(mut r) => {
            if !r.graph_cover(&g.offset).intersect(&g.domain).is_empty() {
                r.holes.push(g.clone());
            }
            vec![Piece::Rect(r)]
        }
        Piece::Graph(c, d) if c == g.offset => {
            let d = d.difference(&g.domain);
            if d.is_empty() {
                Vec::new()
            } else {
                vec![Piece::Graph(c, d)]
            }
        }
        other => vec![other],
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph({}, {})", self.offset, self.domain)
    }
}

impl fmt::Display for RectPatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holes.is_empty() {
            return write!(f, "rect({}, {})", self.a, self.b);
        }
        write!(f, "(rect({}, {})", self.a, self.b)?;
        for h in &self.holes {
            write!(f, " \\ {h}")?;
        }
        f.write_str(")")
    }
}

/// Prints in the query language's syntax, so the text re-parses to the same set.
impl fmt::Display for Set2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("rect(empty, empty)");
        }
        let parts: Vec<String> =
            self.rects.iter().map(|r| r.to_string()).chain(self.graphs.iter().map(|g| g.spec.to_string())).collect();
        f.write_str(&parts.join(" | "))
    }
}

impl fmt::Debug for Set2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Set2D[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn unit_square() -> Set2D {
        Set2D::rect(Set1D::unit(), Set1D::unit()).unwrap()
    }

    #[test]
    fn rect_examples() {
        let seg = Set2D::rect(Set1D::point(q(1, 2)), Set1D::unit()).unwrap();
        assert_eq!(seg.rects().len(), 1);
        assert!(seg.graphs().is_empty());
        assert!(Set2D::rect(Set1D::unit(), Set1D::empty()).unwrap().is_empty());
        let sq = unit_square();
        assert_eq!(sq.rects()[0].a(), &Set1D::unit());
        assert_eq!(sq.rects()[0].b(), &Set1D::unit());
        assert!(Set2D::rect(Set1D::closed(z(0), z(2)), Set1D::unit()).is_err());
    }

    #[test]
    fn diagonal_and_shift() {
        let d = Set2D::diagonal();
        assert_eq!(d.graphs().len(), 1);
        assert_eq!(d.graphs()[0].offset(), &z(0));
        assert_eq!(d.graphs()[0].domain(), &Set1D::unit());
        let d1 = d.vshift(&z(1));
        assert_eq!(d1, Set2D::graph(z(1), Set1D::unit()).unwrap());
        let restricted = d.intersect(&Set2D::rect(Set1D::closed(z(0), q(1, 2)), Set1D::unit()).unwrap());
        assert_eq!(restricted, Set2D::graph(z(0), Set1D::closed(z(0), q(1, 2))).unwrap());
    }

    #[test]
    fn graph_examples() {
        assert_eq!(Set2D::graph(z(0), Set1D::unit()).unwrap(), Set2D::diagonal());
        let pt = Set2D::graph(z(2), Set1D::point(q(1, 2))).unwrap();
        assert!(pt.graphs().is_empty());
        assert_eq!(pt.rects()[0].a(), &Set1D::point(q(1, 2)));
        assert_eq!(pt.rects()[0].b(), &Set1D::point(q(5, 2)));
        assert!(Set2D::graph(z(0), Set1D::empty()).unwrap().is_empty());
        assert!(Set2D::graph(z(0), Set1D::closed(z(0), z(2))).is_err());
    }

    #[test]
    fn closure_rule_examples() {
        let holed = unit_square().difference(&Set2D::diagonal());
        assert!(holed.graphs().is_empty());
        assert_eq!(holed.rects().len(), 1);
        let r = &holed.rects()[0];
        assert_eq!((r.a(), r.b()), (&Set1D::unit(), &Set1D::unit()));
        assert_eq!(r.holes(), &[GraphSpec::new(z(0), Set1D::unit()).unwrap()]);

        assert!(Set2D::diagonal().intersect(&Set2D::diagonal().vshift(&z(1))).is_empty());
        assert!(holed.intersect(&Set2D::diagonal()).is_empty());
        // Filling the hole back in recovers the plain square.
        assert_eq!(holed.union(&Set2D::diagonal()), unit_square());
    }

    #[test]
    fn vshift_examples() {
        let sq = unit_square();
        assert_eq!(sq.vshift(&z(0)), sq);
        assert_eq!(sq.vshift(&z(-2)), Set2D::rect(Set1D::unit(), Set1D::closed(z(-2), z(-1))).unwrap());
    }

    #[test]
    fn diagonal_approx_examples() {
        assert_eq!(Set2D::diagonal_approx(1).unwrap(), unit_square());
        let two = Set2D::diagonal_approx(2).unwrap();
        let lo = Set1D::closed(z(0), q(1, 2));
        let hi = Set1D::closed(q(1, 2), z(1));
        let expected = Set2D::rect(lo.clone(), lo).unwrap().union(&Set2D::rect(hi.clone(), hi).unwrap());
        assert!(two.set_eq(&expected));
        assert!(Set2D::diagonal().is_subset(&Set2D::diagonal_approx(3).unwrap()));
        assert!(Set2D::diagonal().is_subset(&Set2D::diagonal_approx(5).unwrap()));
        assert!(Set2D::diagonal_approx(0).is_err());
    }

    #[test]
    fn diag_trace_examples() {
        assert_eq!(Set2D::diagonal().diag_trace(), Set1D::unit());
        assert_eq!(Set2D::diagonal().vshift(&z(1)).diag_trace(), Set1D::empty());
        assert_eq!(unit_square().difference(&Set2D::diagonal()).diag_trace(), Set1D::empty());
    }

    #[test]
    fn disjointify_example() {
        let e = unit_square().union(&Set2D::rect(Set1D::closed(q(1, 2), z(1)), Set1D::closed(z(2), z(3))).unwrap());
        let cells = e.disjointify_rects();
        // Oracle: atoms from the endpoint sweep {0, 1/2, 1}, membership by definition.
        let both = Set1D::unit().union(&Set1D::closed(z(2), z(3)));
        let expected = vec![
            (Set1D::point(z(0)), Set1D::unit()),
            (Set1D::open(z(0), q(1, 2)), Set1D::unit()),
            (Set1D::point(q(1, 2)), both.clone()),
            (Set1D::open(q(1, 2), z(1)), both.clone()),
            (Set1D::point(z(1)), both),
        ];
        assert_eq!(cells, expected);
        assert!(Set2D::empty().disjointify_rects().is_empty());
        for (cell, col) in unit_square().disjointify_rects() {
            assert!(cell.is_subset(&Set1D::unit()));
            assert_eq!(col, Set1D::unit());
        }
    }

    #[test]
    fn membership_examples() {
        let h = q(1, 2);
        assert!(Set2D::diagonal().contains_point(&h, &h));
        assert!(!unit_square().difference(&Set2D::diagonal()).contains_point(&h, &h));
        assert!(unit_square().difference(&Set2D::diagonal()).contains_point(&h, &q(1, 3)));
    }

    #[test]
    fn point_holes_split_into_columns() {
        // A single-point column minus the diagonal: the hole only removes (1/2, 1/2).
        let col = Set2D::rect(Set1D::point(q(1, 2)), Set1D::unit()).unwrap();
        let cut = col.difference(&Set2D::diagonal());
        assert!(cut.rects().iter().all(|r| r.holes().is_empty()));
        assert!(!cut.contains_point(&q(1, 2), &q(1, 2)));
        assert!(cut.contains_point(&q(1, 2), &q(1, 4)));
        // A finite rectangle eaten entirely by a hole becomes empty.
        let dot = Set2D::rect(Set1D::point(q(1, 2)), Set1D::point(q(1, 2))).unwrap();
        assert!(dot.difference(&Set2D::diagonal()).is_empty());
        // Horizontal segment minus the diagonal loses a single point.
        let seg = Set2D::rect(Set1D::unit(), Set1D::point(q(1, 3))).unwrap().difference(&Set2D::diagonal());
        assert!(seg.is_normalized());
        assert!(!seg.contains_point(&q(1, 3), &q(1, 3)));
        assert!(seg.contains_point(&q(1, 4), &q(1, 3)));
    }

    #[test]
    fn normal_form_is_idempotent_under_vshift_round_trip() {
        let e = unit_square()
            .difference(&Set2D::diagonal())
            .union(&Set2D::graph(z(2), Set1D::closed(z(0), q(1, 3))).unwrap())
            .union(&Set2D::rect(Set1D::points([z(0), q(1, 4)]), Set1D::closed(z(5), z(6))).unwrap());
        assert!(e.is_normalized());
        let c = q(7, 3);
        assert_eq!(e.vshift(&c).vshift(&-c), e);
    }
}
