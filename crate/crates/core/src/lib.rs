//! Exact invariants of hyperplane (multi)arrangements.
//!
//! Everything is computed over Q with arbitrary-precision rationals: no
//! floating point, no unverified randomness. The library covers
//! intersection lattices and characteristic polynomials, graded modules of
//! logarithmic vector fields for multiarrangements, machine-checkable
//! freeness certificates, and Coxeter-arrangement deformations (Catalan and
//! Shi families) together with exact checkers for functional-equation,
//! shift and root-location conjectures about their characteristic
//! polynomials.
//!
//! All values are immutable and operations are pure; results use canonical
//! representatives (reduced fractions, content-one integer normal vectors,
//! echelon-form kernel bases) so outputs are deterministic byte-for-byte.

pub mod error;
pub mod scalar;
pub mod unipoly;
pub mod roots;
pub mod multipoly;
pub mod matrix;
pub mod hyperplane;
pub mod arrangement;
pub mod lattice;
pub mod charpoly;
pub mod derivations;
pub mod freeness;
pub mod coxeter;
pub mod format;

pub use arrangement::{Arrangement, Chart, Multiplicity};
pub use derivations::VectorField;
pub use error::{Error, Result};
pub use freeness::{FreenessCertificate, FreenessStatus};
pub use hyperplane::Hyperplane;
pub use lattice::IntersectionLattice;
pub use matrix::MatrixQ;
pub use multipoly::MultiPoly;
pub use scalar::Scalar;
pub use unipoly::UniPoly;
