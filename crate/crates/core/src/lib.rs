pub mod defect;
pub mod error;
pub mod field;
pub mod ideal;
pub mod matrix;
pub mod poly;

pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIMES};
pub use matrix::{Echelon, Matrix, RowBasis};
pub use poly::{GradedRing, Monomial, Polynomial};
