//! Combinatorial topology of matroid complexes, deleted joins and deleted
//! products over the two-element field.

pub mod bounds;
pub mod complex;
pub mod deleted_product;
pub mod face;
pub mod homology;
pub mod iso;
pub mod join;
pub mod matroid;
pub mod shelling;

pub use complex::{ComplexError, FTriangle, FaceOracle, FaceTable, SimplicialComplex, VertexId};
pub use face::Face;
pub use join::{deleted_join, join, DeletedJoin};

/// Floating scalar used for reported bound values.
pub type Real = f64;
/// Exact scalar used for bound comparisons.
pub type Exact = num_rational::Ratio<i128>;
