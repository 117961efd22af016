//! Exact computations with representations of bound quivers, multisorted
//! pp formulas, and the category of finitely presented functors realised as
//! modules over the Auslander algebra.

pub mod artheory;
pub mod cache;
pub mod error;
pub mod exactfield;
pub mod funcat;
pub mod localization;
pub mod ppform;
pub mod project;
pub mod quiver;
pub mod rep;
pub mod tensorcat;

pub use artheory::{Bounds, Catalogue};
pub use error::{Error, Result};
pub use exactfield::{FieldSpec, Matrix, Scalar};
pub use funcat::{AuslanderAlgebra, FpFunctor};
pub use ppform::{PpFormula, PpPair, Subspace};
pub use quiver::{AlgebraElement, BoundQuiver, Path, Quiver, StructureAlgebra};
pub use rep::{Decomposition, RepMorphism, Representation};
pub use tensorcat::MonoidalStructure;
