//! Continued fractions of algebraic Laurent series over F_p, with the
//! hyperquadratic catalog over F_3 and its Diophantine diagnostics.

pub mod cfrac;
pub mod closedform;
pub mod diophantine;
pub mod gfpoly;
pub mod laurent;

pub use gfpoly::{FieldElement, Poly};
pub use laurent::{EquationSpec, Family, Laurent, QuarticSpec};
