pub mod algebra;
pub mod equiv;
pub mod fuzz;
pub mod ode;
pub mod parse;
pub mod ratmin;
pub mod report;
pub mod solutions;
pub mod solver;
pub mod trace;
pub mod verify;
