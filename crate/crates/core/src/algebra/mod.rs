//! Exact arithmetic: rationals, polynomials, rational functions, quadratic
//! numbers, GCDs, root finding, integration and linear solving.

pub mod algnum;
pub mod gcd;
pub mod integrate;
pub mod linsolve;
pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod roots;

pub use algnum::AlgNum;
pub use gcd::{poly_gcd, poly_lcm};
pub use integrate::{integrate_rational, IntegralForm, LogTerm};
pub use linsolve::{solve_linear, LinearSolution};
pub use poly::Poly;
pub use rat::Rat;
pub use ratfn::RatFn;
pub use roots::{complex_roots, rational_roots, squarefree, squarefree_and_rational_roots, Factor};
