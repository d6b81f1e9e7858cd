//! Exact computations with the graded modules attached to truncated
//! polynomial algebras over prime fields.
//!
//! For a prime `p`, a height `n >= 1` and a dimension `d >= 1`, the algebra
//! `F_p[x_1..x_d]/(x_i^{p^n})` is graded by `Z/(p^n - 1)` and carries two
//! actions of `GL_d(F_p)`: the linear substitution action, and the twisted
//! action where a matrix moves the generators by iterated formal sums of the
//! height-`n` formal group law.  This crate builds the action matrices on
//! each graded piece exactly, computes Brauer characters of the pieces in two
//! independent ways, decomposes the pieces over several small groups, and
//! finds maximal permutation submodules over `p`-groups.  A CLI (`kbv`)
//! reproduces a set of built-in golden tables and runs the theorem checks.

pub mod error;
pub mod field;
pub mod matrix;
pub mod cyclotomic;
pub mod algebra;
pub mod action;

pub use error::{Error, Result};
