//! Exact integer matrices, Smith normal form and abelianization.

mod abelian;
mod matrix;
mod smith;

pub use abelian::{abelian_invariants, is_dual_finite_torsion, AbelianInvariants};
pub use matrix::IntMatrix;
pub use smith::{
    in_column_lattice, invariant_factors, invariant_factors_generic, rank, reduce,
    smith_normal_form, Dense, SmithForm, Transforms,
};
