//! Exact linear algebra over `Z`, `Z/m` and `F_p`.

mod abelian;
mod fp;
mod int_matrix;
pub mod modular;

pub use abelian::{hom_kernel, normalize_factors, quotient_invariants, PresentedAbelianGroup};
pub use fp::{fp_orthogonal, FpSubspace};
pub use int_matrix::{snf, IntMatrix, SnfDecomposition};
pub use modular::{kernel_mod, solve_mod};
