//! Finite-dimensional modules over bound quiver algebras: exact linear algebra
//! over `F_p`, indecomposable catalogs, Ext, thick subcategories, the
//! triangular recollement and silting gluing.

pub mod error;
pub mod exactlin;
pub mod homology;
pub mod quiver;
pub mod recollement;
pub mod rep;
pub mod silting;
pub mod subcat;
pub mod thickmaps;

pub use error::{Error, Result};
pub use quiver::{parse_algebra, Algebra};
pub use rep::{IndecCatalog, Morphism, Representation};
