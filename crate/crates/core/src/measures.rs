//! Exact evaluators for `π`, `ρ`, `ξ`, `η` and `η_t` on tame sets.
//!
//! Closed forms on a tame set `E`:
//!
//! * `ρ(E) = Σ_cells μ(cell) · ν(column)` over the disjointified rectangles.
//!   Graphs and holes contribute nothing: intersecting with a rectangle of
//!   finite `μ` leaves finitely many graph points.
//! * `π(E)` is `∞` as soon as `E` contains a graph segment of positive length;
//!   otherwise it equals the same cell sum. A hole removes at most one point
//!   per vertical fiber, so it never changes a column's Lebesgue measure nor
//!   the cardinality of the cell it sits over.
//! * `ξ(E) = ν(f⁻¹[E ∩ Δ])` with `f(x) = (x, x)`, computed from the diagonal
//!   trace of `E`.
//! * `η_t(E) = ρ(E) + t · ξ(E)` for `t ≥ 0`; `η = η_1`.
//!
//! The `oracle` module brackets `ρ` and `π` independently by brute force.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{ext_add, ext_mul, ExtReal, Rational};
use crate::set1d::{Set1D, SetError};
use crate::set2d::Set2D;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Domain(#[from] SetError),
    #[error("eta_t weight must be nonnegative, got {0}")]
    NegativeWeight(Rational),
}

/// Nonnegative rational weight `t` of `η_t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(Rational);

impl Weight {
    pub fn new(t: Rational) -> Result<Self, MeasureError> {
        if t.is_negative() {
            Err(MeasureError::NegativeWeight(t))
        } else {
            Ok(Weight(t))
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    fn as_ext(&self) -> ExtReal {
        ExtReal::finite(self.0.clone()).expect("weight is nonnegative")
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MeasureId {
    Pi,
    Rho,
    Xi,
    Eta,
    EtaT(Weight),
}

impl MeasureId {
    pub fn eta_t(t: Rational) -> Result<Self, MeasureError> {
        Ok(MeasureId::EtaT(Weight::new(t)?))
    }

    /// Whether the measure is expected to satisfy `m(A×B) = μ(A)ν(B)`.
    pub fn is_product_measure(&self) -> bool {
        !matches!(self, MeasureId::Xi)
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureId::Pi => f.write_str("pi"),
            MeasureId::Rho => f.write_str("rho"),
            MeasureId::Xi => f.write_str("xi"),
            MeasureId::Eta => f.write_str("eta"),
            MeasureId::EtaT(t) => write!(f, "eta_t({})", t.0),
        }
    }
}

impl Serialize for MeasureId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn cell_sum(e: &Set2D) -> ExtReal {
    e.disjointify_rects()
        .iter()
        .map(|(cell, column)| {
            let count = cell.counting().expect("rectangle cells lie in [0,1]");
            ext_mul(&count, &column.lebesgue())
        })
        .sum()
}

/// Carathéodory product outer measure `π`.
pub fn pi_outer(e: &Set2D) -> ExtReal {
    if !e.graphs().is_empty() {
        return ExtReal::INFINITY;
    }
    cell_sum(e)
}

/// C.l.d. product measure `ρ`.
pub fn rho_cld(e: &Set2D) -> ExtReal {
    cell_sum(e)
}

/// Lebesgue measure of the diagonal trace; always in `[0, 1]`.
pub fn xi(e: &Set2D) -> ExtReal {
    e.diag_trace().lebesgue()
}

/// `η = ρ + ξ`.
pub fn eta(e: &Set2D) -> ExtReal {
    ext_add(&rho_cld(e), &xi(e))
}

/// `η_t = ρ + t·ξ`.
pub fn eta_family(t: &Rational, e: &Set2D) -> Result<ExtReal, MeasureError> {
    let w = Weight::new(t.clone())?;
    Ok(eta_weighted(&w, e))
}

fn eta_weighted(w: &Weight, e: &Set2D) -> ExtReal {
    ext_add(&rho_cld(e), &ext_mul(&w.as_ext(), &xi(e)))
}

pub fn evaluate(m: &MeasureId, e: &Set2D) -> ExtReal {
    match m {
        MeasureId::Pi => pi_outer(e),
        MeasureId::Rho => rho_cld(e),
        MeasureId::Xi => xi(e),
        MeasureId::Eta => eta(e),
        MeasureId::EtaT(w) => eta_weighted(w, e),
    }
}

/// Both sides of `m(A×B) = μ(A)·ν(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub measured: ExtReal,
    pub expected: ExtReal,
}

impl ProductCheck {
    pub fn holds(&self) -> bool {
        self.measured == self.expected
    }
}

pub fn check_product_property(m: &MeasureId, a: &Set1D, b: &Set1D) -> Result<ProductCheck, SetError> {
    let expected = ext_mul(&a.counting()?, &b.lebesgue());
    let measured = evaluate(m, &Set2D::rect(a.clone(), b.clone())?);
    Ok(ProductCheck { measured, expected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftComparison {
    pub before: ExtReal,
    pub after: ExtReal,
    pub invariant: bool,
}

/// Evaluates `m` on `e` and on `e + c`.
pub fn shift_comparison(m: &MeasureId, e: &Set2D, c: &Rational) -> ShiftComparison {
    let before = evaluate(m, e);
    let after = evaluate(m, &e.vshift(c));
    let invariant = before == after;
    ShiftComparison { before, after, invariant }
}

/// Values of several measures on one set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub expression: String,
    pub values: BTreeMap<MeasureId, ExtReal>,
}

impl MeasureReport {
    /// Evaluates `π, ρ, ξ, η` and `η_t` for each given weight.
    pub fn evaluate_all(expression: impl Into<String>, e: &Set2D, weights: &[Weight]) -> Self {
        let mut ids = vec![MeasureId::Pi, MeasureId::Rho, MeasureId::Xi, MeasureId::Eta];
        ids.extend(weights.iter().cloned().map(MeasureId::EtaT));
        let values = ids.into_iter().map(|m| {
            let v = evaluate(&m, e);
            (m, v)
        });
        MeasureReport { expression: expression.into(), values: values.collect() }
    }

    /// `η = ρ + ξ` whenever all three are present.
    pub fn is_consistent(&self) -> bool {
        match (self.values.get(&MeasureId::Eta), self.values.get(&MeasureId::Rho), self.values.get(&MeasureId::Xi)) {
            (Some(e), Some(r), Some(x)) => *e == ext_add(r, x),
            _ => true,
        }
    }
}

impl Serialize for MeasureReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("expression", &self.expression)?;
        let values: BTreeMap<String, &ExtReal> = self.values.iter().map(|(k, v)| (k.to_string(), v)).collect();
        map.serialize_entry("values", &values)?;
        map.end()
    }
}
