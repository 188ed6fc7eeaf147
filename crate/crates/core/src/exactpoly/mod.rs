//! Exact arithmetic kernel: integer polynomials in one variable and reduced
//! rational functions over them.

mod poly;
mod ratfunc;

pub use poly::IntPoly;
pub use ratfunc::RatFunc;
