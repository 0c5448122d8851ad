//! Numerical tolerances shared across the crate.

/// Unit-modulus and cocycle-identity checks.
pub const UNIT_MODULUS: f64 = 1e-12;

/// Coefficients smaller than this are dropped after every operation.
pub const PRUNE: f64 = 1e-14;

/// Per-coefficient tolerance for element equality.
pub const ELEMENT_EQ: f64 = 1e-12;

/// Operator-norm agreement between independent constructions.
pub const NORM: f64 = 1e-10;

/// Entry-wise tolerance for representation identities and exact linear algebra.
pub const MATRIX: f64 = 1e-12;
