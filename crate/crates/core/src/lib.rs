//! Numerical toolkit for the intelligent states of a pair of su(3) observables
//! on the symmetric irreps (λ,0).
//!
//! An intelligent state saturates the Robertson relation
//! ΔA·ΔB = ½|⟨[Â,B̂]⟩| exactly; equivalently it is an eigenstate of the
//! non-Hermitian operator Â − iαB̂ for some real α. This crate constructs
//! every such state of (λ,0) by coupling three SU(3) coherent states, and
//! verifies the construction against two independent routes: a direct dense
//! non-Hermitian eigendecomposition and a symmetrized tensor-product build.
//!
//! Module map:
//! - [`rep`]: the (λ,0) oscillator basis and the su(3) generator matrices.
//! - [`observables`]: the fixed 3×3 pair A′, B′, the diagonalizing frame,
//!   and promotion of one-body operators to collective operators.
//! - [`coherent`]: SU(2) subgroup rotations, coherent states, the
//!   fundamental eigenproblem, coherent-state angles, and D-functions.
//! - [`coupling`]: stretched Clebsch-Gordan coefficients and the coupled
//!   construction of all intelligent states.
//! - [`analysis`]: expectations, variances, closed-form predictions, and
//!   α-scan tables.
//! - [`oracle`]: the independent verification routes.

pub mod analysis;
pub mod coherent;
pub mod coupling;
mod error;
mod factorial;
pub mod observables;
pub mod oracle;
pub mod rep;

pub use error::Error;

/// Largest irrep label the library is tuned for. Clebsch-Gordan products
/// switch to log-space evaluation well before this; callers (e.g. the CLI)
/// reject larger requests up front.
pub const LAMBDA_CAP: u32 = 60;

/// Half-width of the excluded neighbourhoods of α = ±1, where Â − iαB̂
/// becomes defective and μ diverges.
pub const GUARD_BAND: f64 = 1e-6;

/// `true` iff α is outside both guard bands around ±1 (rejection is
/// strict: a distance of exactly one guard band is allowed).
pub fn alpha_is_regular(alpha: f64) -> bool {
    (alpha.abs() - 1.0).abs() >= GUARD_BAND
}
