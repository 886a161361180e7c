//! Global numeric tolerances.
//!
//! Two tiers: [`VALIDATION`] guards structural invariants checked at
//! construction time (norms, hermiticity, traces), while [`DERIVED`] compares
//! quantities that accumulate rounding through eigendecompositions and long
//! product chains. All matrices here are at most 16x16, so double precision
//! supports both comfortably.

/// Structural validation at construction time: norms, hermiticity, trace.
pub const VALIDATION: f64 = 1e-12;

/// Comparison of independently derived quantities.
pub const DERIVED: f64 = 1e-9;

/// Interaction unitarity and Kraus completeness residuals.
pub const UNITARITY: f64 = 1e-10;

/// Eigenvalues of positive semidefinite matrices may round slightly negative.
/// Anything in `[-PSD_CLAMP, 0)` is treated as zero; anything below is an
/// error rather than a rounding artifact.
pub const PSD_CLAMP: f64 = 1e-10;

/// Measurement outcomes with probability below this floor are undefined
/// events: their post-measurement state is excluded from averages.
pub const PROB_FLOOR: f64 = 1e-14;
