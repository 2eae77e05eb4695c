//! Exact arithmetic foundation: coefficient domains, dense polynomials,
//! fraction-free determinants, Laurent polynomials and finitely generated
//! abelian groups.

mod domain;
mod group;
mod laurent;
mod matrix;
mod poly;

pub use domain::{is_prime, Domain, Prime};
pub use group::FgAbelianGroup;
pub use laurent::LaurentPoly;
pub use matrix::ExactMatrix;
pub use poly::Poly;
