//! Trigonometric polynomials and the exact finite-dimensional operations on
//! them: point sets, basis conversions, interpolation and evaluation.

mod dump;
mod interp;
mod interval;
mod poly;

pub use dump::{parse_coeff_dump, write_coeff_dump};
pub use interp::{alias_index, eval_barycentric, interp_coeffs, trig_points};
pub use interval::Interval;
pub use poly::TrigPoly;
