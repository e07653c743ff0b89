//! Braided vector spaces and the free braided algebra `T(V)`.

mod algebra;
mod element;
mod presets;
mod space;

pub use algebra::{BracketKind, FreeAlgebra};
pub use element::{TensorElement, TensorPair};
pub use presets::{space_to_json, Preset, QParam, SpaceDescription, SpaceSource};
pub use space::{validate_braiding, BraidedSpace, Braiding, Direction, ValidationReport};

pub(crate) use space::consolidate;
