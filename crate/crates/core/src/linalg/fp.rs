//! Subspaces of `F_p^d` in reduced row echelon form.

use serde::{Deserialize, Serialize};

use super::modular::inv_mod;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpSubspace {
    p: u64,
    ambient_dim: usize,
    /// RREF rows: nonzero, pivots strictly increasing, pivot entries 1, pivot
    /// columns cleared in every other row.
    basis: Vec<Vec<u64>>,
}

impl FpSubspace {
    pub fn zero(p: u64, ambient_dim: usize) -> Self {
        FpSubspace {
            p,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u64, ambient_dim: usize) -> Self {
        let gens: Vec<Vec<u64>> = (0..ambient_dim)
            .map(|i| {
                let mut e = vec![0; ambient_dim];
                e[i] = 1;
                e
            })
            .collect();
        Self::span(p, ambient_dim, &gens)
    }

    pub fn span(p: u64, ambient_dim: usize, gens: &[Vec<u64>]) -> Self {
        let mut s = Self::zero(p, ambient_dim);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    fn pivot(row: &[u64]) -> usize {
        row.iter().position(|&x| x != 0).expect("nonzero basis row")
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| Self::pivot(r)).collect()
    }

    fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for row in &self.basis {
            let c = v[Self::pivot(row)];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w: Vec<u64> = v.iter().map(|x| x % self.p).collect();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        self.reduce(&mut w);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[piv], p).expect("p prime");
        for x in w.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.basis.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        let at = self.basis.partition_point(|r| Self::pivot(r) < piv);
        self.basis.insert(at, w);
        true
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        self.basis.iter().all(|r| other.contains(r))
    }

    /// `{x : ⟨x, s⟩ = 0 for all s}` under the standard dot product.
    pub fn orthogonal(&self) -> FpSubspace {
        let p = self.p;
        let pivots = self.pivots();
        let gens: Vec<Vec<u64>> = (0..self.ambient_dim)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut x = vec![0u64; self.ambient_dim];
                x[f] = 1;
                for (row, &pc) in self.basis.iter().zip(&pivots) {
                    x[pc] = (p - row[f]) % p;
                }
                x
            })
            .collect();
        FpSubspace::span(p, self.ambient_dim, &gens)
    }

    /// Enumerates every vector of the subspace (`p^dim` of them).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; self.ambient_dim]];
        for row in &self.basis {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                for c in 0..self.p {
                    next.push(
                        v.iter()
                            .zip(row)
                            .map(|(&a, &b)| (a + c * b) % self.p)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }
}

/// Orthogonal complement of `s` in its ambient space.
pub fn fp_orthogonal(s: &FpSubspace) -> FpSubspace {
    s.orthogonal()
}
