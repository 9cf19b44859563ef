//! Lattice reduction of linear forms in elliptic logarithms.

pub mod lll;
pub mod reduce;

pub use lll::{is_lll_reduced, lll_reduce, LllResult};
pub use reduce::{
    build_lattice, chain_summary, minimal_c_exponent, reduce_bound, reduction_chain,
    required_digits, IntLattice, ReductionOptions, ReductionState,
};
