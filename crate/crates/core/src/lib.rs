//! Finite twisted groupoids, their C*-algebras and Dirichlet subalgebras.
//!
//! The crate models a finite principal groupoid (an equivalence relation on
//! named points) with a unit-modulus 2-cocycle, its twisted convolution
//! algebra, the diagonal masa and conditional expectation, normalizers and
//! their Weyl action, triangular orders, GNS representations at points, and
//! finite crossed products by a permutation.
//!
//! ```
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! use std::sync::Arc;
//!
//! use cartan_core::builders::{build_full_relation, upper_triangular_order};
//! use cartan_core::reps::invariant_lattice;
//! use cartan_core::GnsRep;
//!
//! let g = Arc::new(build_full_relation(4)?);
//! let order = upper_triangular_order(&g);
//! let rep = GnsRep::new(&g, g.point("1")?)?;
//! let lattice = invariant_lattice(&rep, &order)?;
//! assert!(lattice.is_nest);
//! assert_eq!(lattice.subspaces.len(), 5);
//! # Ok(())
//! # }
//! ```

pub mod algebra;
pub mod builders;
pub mod corpus;
pub mod dirichlet;
pub mod error;
pub mod groupoid;
pub mod linalg;
pub mod reps;
pub mod sample;
pub mod semicrossed;
pub mod spec_file;
pub mod tolerance;

pub use algebra::{AlgebraElement, Normalizer};
pub use dirichlet::{validate_order, ArrowOrder, DirichletOrder, OrderReport};
pub use error::{AlgebraError, DynamicsError, GraphError, GroupoidError, SpecError};
pub use groupoid::{Arrow, FiniteTwistedGroupoid, PartialBijection, PointId, UnitSpace, ValidationReport, Violation};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
pub use reps::{CartanReport, GnsRep, InvariantLattice, NormAchievement};
pub use semicrossed::{CrossedElement, CrossedState, FiniteDynamicalSystem, StateKind};
pub use spec_file::{GroupoidSpec, Model};
