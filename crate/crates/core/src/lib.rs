pub mod error;
mod fft;
pub mod linalg;
pub mod trigcore;

pub use error::{Result, TrigError};
pub use num_complex::Complex64;
pub use trigcore::{Interval, TrigPoly};
pub mod constructor;

pub use constructor::{build_adaptive, build_fixed, build_from_coeffs, chop_tail, BuildOptions};
pub mod calculus;
pub mod ode;
pub mod approx;
