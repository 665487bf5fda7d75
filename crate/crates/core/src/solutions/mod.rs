//! Solution bases of the seed equations and their transport to the input.

mod basis;
#[rustfmt::skip]
mod basis_table;
mod chain;
mod expr;

pub use basis::{
    detect_special, generate_basis_table, meijerg_replacement, native_slot, seed_basis, Affine,
    Basis, BasisElement, SlotShape, SlotStatus,
};
pub use chain::{apply_chain, gauge_factor, ChainStep, TransformChain};
pub use expr::{cancel_params, render_integral, Expr, MeijerG};
