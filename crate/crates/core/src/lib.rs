//! Exact determination of the sign of global epsilon constants attached to
//! orthogonal, dimension-zero, trivial-determinant virtual representations of
//! finite abelian groups acting tamely on elliptic surfaces.
//!
//! The global sign is assembled from an archimedean term and one fibral ratio
//! per bad place; each ratio is in turn a product of determinant values on
//! divisor classes, normalized Gauss sums at crossing points, and Frobenius
//! determinants. All arithmetic is exact: prime and extension finite fields,
//! cyclotomic integers, and big-integer Weierstrass models.
//!
//! Module map:
//! - [`exactmath`]: finite fields, cyclotomic values, characters, Gauss sums
//! - [`groupsrep`]: finite abelian groups and virtual representations
//! - [`ellcurve`]: Weierstrass models, Tate's algorithm, torsion, isogenies
//! - [`tameness`]: numerical tameness of a torsion action
//! - [`p1geom`]: differentials and generalized divisor classes on the line
//! - [`fibermodel`]: declarative special fibers with cover data
//! - [`epsengine`]: local factors, fibral ratios and the global sign

pub mod ellcurve;
pub mod epsengine;
pub mod error;
pub mod exactmath;
pub mod fibermodel;
pub mod groupsrep;
pub mod p1geom;
pub(crate) mod par;
pub mod tameness;

pub use error::{Error, Result};
