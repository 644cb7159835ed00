pub mod error;
pub mod field;
pub mod linalg;
pub mod poset;
pub mod algebra;
pub mod incidence;
pub mod tensor;
pub mod bocs;
pub mod burt_butler;
pub mod quiver;
pub mod module;
pub mod qh;
pub mod filtration;
pub mod remarks;
pub mod gallery;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Field, Fp, F101, F2, F3, F5, F7, Q};
pub use linalg::{Mat, RowReducer, Subspace};
pub use poset::{Marking, OrbitData, OrbitStep, Poset};
pub use algebra::{MatrixAlgebra, Radical};
