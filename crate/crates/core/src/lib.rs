//! Exact evaluation of product measures on tame subsets of `[0,1] × ℝ`.
//!
//! With `μ` the counting measure on `[0,1]` and `ν` Lebesgue measure on `ℝ`,
//! this crate evaluates, exactly and symbolically,
//!
//! * `π`, the product outer measure built from rectangle covers,
//! * `ρ`, the completely locally determined (c.l.d.) product measure,
//! * `ξ(E) = ν({x : (x, x) ∈ E})`, Lebesgue measure pulled back along the diagonal,
//! * `η = ρ + ξ` and the family `η_t = ρ + t·ξ`,
//!
//! on a ring of sets built from rectangles and slope-1 graph segments. Every
//! `η_t` agrees with `μ(A)ν(B)` on rectangles, yet `η_t(Δ) = t` while
//! `η_t(Δ + 1) = 0`: product measures with a non-σ-finite factor need not be
//! translation invariant, and need not be unique.
//!
//! ```
//! use tame_measure::{measures, Rational, Set2D, ExtReal};
//!
//! let diag = Set2D::diagonal();
//! assert_eq!(measures::eta(&diag), ExtReal::one());
//! assert_eq!(measures::eta(&diag.vshift(&Rational::from_integer(1))), ExtReal::zero());
//! ```

pub mod arith;
pub mod dsl;
pub mod measures;
pub mod oracle;
pub mod report;
pub mod set1d;
pub mod set2d;
pub mod suites;

pub use arith::{ext_add, ext_mul, ext_sum, ExtReal, Rational};
pub use measures::MeasureId;
pub use set1d::{Endpoint, Interval, Set1D, SetError};
pub use set2d::{GraphPatch, GraphSpec, RectPatch, Set2D};
