use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::modular::is_prime;

/// A linear map `Λ²U → V` over `F_p`, stored as a `dim_v × C(dim_u, 2)`
/// matrix. Column order follows the lexicographic order of wedges `eᵢ∧eⱼ`,
/// `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaData {
    p: u64,
    #[serde(rename = "dimU")]
    dim_u: usize,
    #[serde(rename = "dimV")]
    dim_v: usize,
    matrix: Vec<Vec<u64>>,
}

/// `C(d, 2)`
pub fn wedge_dim(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

impl GammaData {
    pub fn new(p: u64, dim_u: usize, dim_v: usize, matrix: Vec<Vec<u64>>) -> Result<Self> {
        let g = GammaData {
            p,
            dim_u,
            dim_v,
            matrix,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks that `p` is prime and the matrix has the right shape and
    /// reduced entries.
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidSpec(format!("{} is not prime", self.p)));
        }
        let cols = wedge_dim(self.dim_u);
        if self.matrix.len() != self.dim_v || self.matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidSpec(format!(
                "gamma matrix must be {} x {cols}",
                self.dim_v
            )));
        }
        if self.matrix.iter().flatten().any(|&x| x >= self.p) {
            return Err(Error::InvalidSpec("gamma entries must be reduced mod p".into()));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.matrix[row][col]
    }

    /// Column of `eᵢ∧eⱼ` for `i < j`.
    pub fn wedge_index(&self, i: usize, j: usize) -> usize {
        wedge_index(self.dim_u, i, j)
    }

    /// The symplectic data `γ(xᵢ∧x_{i+n}) = z` on `U = F_p^{2n}`, `V = F_p`.
    pub fn symplectic(p: u64, n: usize) -> Result<Self> {
        let d = 2 * n;
        let mut row = vec![0u64; wedge_dim(d)];
        for i in 0..n {
            row[wedge_index(d, i, i + n)] = 1;
        }
        Self::new(p, d, 1, vec![row])
    }
}

/// Lexicographic position of `eᵢ∧eⱼ` (`i < j`) among the wedges of `F^d`.
pub fn wedge_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < d);
    i * d - i * (i + 1) / 2 + (j - i - 1)
}
