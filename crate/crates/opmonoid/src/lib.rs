//! Operator monoids on finite posets.
//!
//! Maps compose right to left: a word `a1 a2 … ak` acts as
//! `a1(a2(…ak(x)))`.

pub mod collapse;
pub mod data;
pub mod diagram;
pub mod error;
pub mod kuratowski;
pub mod locale;
pub mod monoid;
pub mod poset;
pub mod pseudo;
pub mod words;

pub use diagram::{CatalogReport, DiagramCatalog, EdgeKind};
pub use error::{DataError, DiagramError, FrameError, InstanceError, PosetError, WordError};
pub use monoid::{generate_monoid, hasse_edges, OperatorMonoid};
pub use poset::{circular_shift, enumerate_posets, CanonicalCode, EndoMap, Poset};
pub use words::{multiply, normal_form, NormalForm, Params, Word, WordAlgebra};
