//! Exact arithmetic in `Q(2cos(pi/L))` and the Tits bilinear form.

pub mod field;
pub mod form;
pub mod poly;

pub use field::{FieldElement, NumberField, Sign, DEFAULT_DEGREE_CAP};
pub use form::{gram_matrix, gram_matrix_in, BilinearForm, RootVector};
pub use poly::IntPoly;
