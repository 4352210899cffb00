//! Exact invariant and fundamental-group calculus for surgeries on
//! symplectic 4-manifolds.
//!
//! The crate is `no_std` and needs only `alloc`. Everything is a pure
//! function over immutable values.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod coset;
pub mod constructions;
pub mod group;
pub mod linalg;
pub mod mcg;
pub mod surgery;

pub use group::{GroupHom, GroupPresentation, HomCheck, Letter, Word};
pub use linalg::{AbelianInvariants, IntMatrix, SmithForm};
