//! Exact computations with Lyndon words and super-letters on free braided
//! algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: Lyndon words, Chen–Fox–Lyndon factorization, Shirshov decompositions
//!   and monotonic super-words.
//! * [`scalars`]: prime fields and the rationals.
//! * [`series`]: truncated power series with big-integer coefficients.
//! * [`linalg`]: dense and sparse exact linear algebra used by the rest of the crate.
//! * [`freealg`]: braided vector spaces, the tensor algebra with its bracket operations,
//!   the basis of monotonic bracket words, braided coproduct and antipode.
//! * [`nichols`]: graded quotients (Nichols algebras, free algebras, presented
//!   quotients), PBW data and the Hilbert-series factorization over Lyndon words.
//! * [`cli`]: the `lh` command-line front end.

pub mod cli;
pub mod error;
pub mod freealg;
pub mod linalg;
pub mod nichols;
pub mod scalars;
pub mod series;
pub mod words;

pub use error::{Error, Result};
pub use freealg::{BraidedSpace, Braiding, FreeAlgebra, Preset, TensorElement, TensorPair};
pub use nichols::{GradedQuotient, QuotientKind};
pub use scalars::{FieldSpec, Order, Scalar};
pub use series::PowerSeries;
pub use words::{cfl_factorize, enumerate_lyndon, is_lyndon, shirshov, MonotonicSuperWord, Word};
