//! # zetamoment
//!
//! A numerical laboratory for *mixed moments* of the Riemann zeta function on the
//! critical line,
//!
//! ```text
//!     I_{a,b,c}(T) = ∫₀ᵀ ζ(1/2 + ait) ζ(1/2 − bit) ζ(1/2 − cit) dt,
//! ```
//!
//! where the twists `a, b, c` may be positive integers, rationals, or real
//! algebraic numbers of the form `p + q√d`.  The crate provides:
//!
//! * a reference evaluator for ζ(1/2+it) (Euler–Maclaurin at small height,
//!   Riemann–Siegel beyond), the functional-equation factor χ, truncated
//!   Dirichlet polynomials `D_θ`, and the approximate-functional-equation
//!   combination `P(t)` ([`zeta`], [`chi`], [`dirichlet`]);
//! * deterministic composite Gauss–Legendre quadrature for the moment
//!   integrals and their six-component Dirichlet-polynomial decomposition
//!   ([`quad`]);
//! * exact enumeration of the diagonal `n₁^a = n₂^b n₃^c`, the singular-series
//!   constant `σ_{a,b,c}` through an Euler product, and the partial sums
//!   `J₁, J₃, J₄, S_{a,b}` that carry the main terms ([`diagonal`], [`sigma`]);
//! * off-diagonal gap scans: nearest-resonance distances, abc-quality
//!   statistics, and the oscillatory sums `J₂,₁`, `J₂,₂` ([`gaps`]);
//! * stationary-phase evaluation of the rotated component `I₅`, including the
//!   arithmetic split `K₁ + M₁` of the saddle-point sum ([`stationary`]);
//! * main-term models for the known asymptotic regimes, the constants they
//!   need (γ, γ₁, ν_b, c₁, c₀), and log–log residual-exponent fits
//!   ([`model`], [`constants`], [`fit`]);
//! * a batch experiment runner with reproducible, worker-count-independent
//!   output files ([`report`], [`config`]).
//!
//! Everything is plain `f64` with compensated summation; the heights reachable
//! in reasonable time (T ≤ 10⁵ or so) never require more precision, and the
//! few places where cancellation would bite (nearest-resonance gaps, phase
//! reduction of `e(n₁U₁)`) go through exact integer arithmetic instead.

pub mod chi;
pub mod config;
pub mod constants;
pub mod diagonal;
pub mod dirichlet;
pub mod fit;
pub mod gamma;
pub mod gaps;
pub mod kahan;
pub mod model;
pub mod quad;
pub mod report;
mod rs_tables;
pub mod sigma;
pub mod stationary;
pub mod triple;
pub mod zeta;

mod intutil;

/// 2π, the only constant the whole crate cares about.
pub(crate) const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
