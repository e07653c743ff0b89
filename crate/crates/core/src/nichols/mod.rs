//! Graded quotients of `T(V)`: Nichols algebras, free algebras and presented
//! quotients, with their Hilbert series, subquotients and PBW data.

mod analysis;
mod guard;
mod quotient;
mod symmetrizer;

pub use analysis::{
    FactorizationReport, Height, NonnegReport, PBWDatum, PbwGenerator, SubquotientSeries,
};
pub use guard::{KindSpec, QuotientSpec};
pub use quotient::{GradedData, GradedQuotient, QuotientKind};
pub use symmetrizer::{symmetrizer, DEFAULT_MAX_MATRIX};
