//! Exact-arithmetic workbench for resultant-defined configuration schemes.
//!
//! The crate counts points of the families `Poly_ν^{d,m}` (squarefree
//! polynomials `C_d`, coprime pairs `F_d`, and their generalisations) over
//! prime fields, computes their Grothendieck-ring classes as Laurent
//! polynomials in the Lefschetz class `L`, implements the scanning map
//! `f ↦ (f, f + f')`, and models split mixed Tate motives with weight and
//! t-structure truncations, Betti realization and a homological-stability
//! checker.

pub mod cli;
pub mod enumeration;
pub mod error;
pub mod exact;
pub mod motives;
pub mod schemes;
pub mod tate;

pub use error::{Error, Result};
