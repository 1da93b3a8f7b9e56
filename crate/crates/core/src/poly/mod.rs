//! Exact sparse multivariate polynomials over `Q` and number fields `Q(α)`.

pub mod field;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod univariate;

pub use field::{FieldElement, NumberField};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::{parse_document, parse_polynomial, PolyDocument};
pub use polynomial::{Polynomial, Ring};
pub use univariate::UniPoly;
