//! `B₀` of central-type p-groups by linear algebra over `F_p`.
//!
//! For a central extension `0 → V → G → U → 0` of elementary abelian
//! p-groups with commutator map `γ: Λ²U → V`, let `K²` be the image of the
//! dual map in `Λ²U^∨`, `S² = ker γ`, and `S²_dec` the span of the
//! decomposable wedges `u∧v` lying in `S²`. Then `B₀(G) ≅ K²_max / K²`
//! with `K²_max = (S²_dec)^⊥`, an elementary abelian group of dimension
//! `dim S² − dim S²_dec`.

mod extract;
mod gamma;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::FpSubspace;

pub use extract::gamma_from_group;
pub use gamma::{wedge_dim, wedge_index, GammaData};

/// Seed for [`search_nonzero`]; fixed so that searches are reproducible.
pub const SEARCH_SEED: u64 = 0x5eed_b0b0_0001;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FastpathCertificate {
    pub k2: FpSubspace,
    pub s2: FpSubspace,
    pub s2_dec: FpSubspace,
    pub k2_max: FpSubspace,
    pub b0_dim: usize,
}

impl FastpathCertificate {
    /// Checks `dim K² + dim S² = C(d,2)`, `S² = (K²)^⊥`, `S²_dec ⊆ S²`,
    /// `K² ⊆ K²_max = (S²_dec)^⊥` and the dimension count.
    pub fn verify(&self) -> bool {
        self.k2.dim() + self.s2.dim() == self.k2.ambient_dim()
            && self.s2 == self.k2.orthogonal()
            && self.s2_dec.is_subspace_of(&self.s2)
            && self.k2_max == self.s2_dec.orthogonal()
            && self.k2.is_subspace_of(&self.k2_max)
            && self.b0_dim == self.k2_max.dim() - self.k2.dim()
    }
}

/// `u∧v` in the lexicographic wedge basis.
pub fn wedge(u: &[u64], v: &[u64], p: u64) -> Vec<u64> {
    let d = u.len();
    let mut out = Vec::with_capacity(wedge_dim(d));
    for i in 0..d {
        for j in i + 1..d {
            out.push((u[i] * v[j] % p + p - u[j] * v[i] % p) % p);
        }
    }
    out
}

fn apply_gamma(gamma: &GammaData, w: &[u64]) -> Vec<u64> {
    let p = gamma.p();
    gamma
        .matrix()
        .iter()
        .map(|row| row.iter().zip(w).map(|(a, b)| a * b % p).sum::<u64>() % p)
        .collect()
}

/// Every 2-dimensional subspace of `F_p^d` exactly once, as the canonical
/// RREF pair of rows: pivots `i < j`, free entries right of each pivot
/// except in the other pivot column.
pub fn two_dim_subspaces(d: usize, p: u64) -> impl Iterator<Item = FpSubspace> {
    two_dim_rref_pairs(d, p).map(move |(r1, r2)| FpSubspace::span(p, d, &[r1, r2]))
}

fn two_dim_rref_pairs(d: usize, p: u64) -> impl Iterator<Item = (Vec<u64>, Vec<u64>)> {
    (0..d).flat_map(move |i| {
        (i + 1..d).flat_map(move |j| {
            // free slots: row 1 at columns > i except j; row 2 at columns > j
            let free1: Vec<usize> = (i + 1..d).filter(|&c| c != j).collect();
            let free2: Vec<usize> = (j + 1..d).collect();
            let slots = free1.len() + free2.len();
            let total = p.pow(slots as u32);
            (0..total).map(move |mut code| {
                let mut r1 = vec![0u64; d];
                let mut r2 = vec![0u64; d];
                r1[i] = 1;
                r2[j] = 1;
                for &c in &free1 {
                    r1[c] = code % p;
                    code /= p;
                }
                for &c in &free2 {
                    r2[c] = code % p;
                    code /= p;
                }
                (r1, r2)
            })
        })
    })
}

/// `[d choose 2]_p`, the number of 2-dimensional subspaces of `F_p^d`.
pub fn gaussian_binomial_2(d: usize, p: u64) -> u64 {
    if d < 2 {
        return 0;
    }
    let pd = p.pow(d as u32);
    (pd - 1) * (pd / p - 1) / ((p * p - 1) * (p - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposableScan {
    /// One wedge per 2-dimensional subspace.
    Subspaces,
    /// Every ordered pair of vectors.
    AllPairs,
}

/// Span of the decomposable wedges in `ker γ`.
pub fn decomposable_span(gamma: &GammaData, scan: DecomposableScan, s2: &FpSubspace) -> FpSubspace {
    let p = gamma.p();
    let d = gamma.dim_u();
    let mut span = FpSubspace::zero(p, wedge_dim(d));
    let consider = |u: &[u64], v: &[u64], span: &mut FpSubspace| {
        let w = wedge(u, v, p);
        if apply_gamma(gamma, &w).iter().all(|&x| x == 0) {
            span.insert(&w);
        }
        span.dim() == s2.dim()
    };
    match scan {
        DecomposableScan::Subspaces => {
            for (r1, r2) in two_dim_rref_pairs(d, p) {
                if consider(&r1, &r2, &mut span) {
                    break;
                }
            }
        }
        DecomposableScan::AllPairs => {
            let all = FpSubspace::full(p, d).elements();
            'outer: for u in &all {
                for v in &all {
                    if consider(u, v, &mut span) {
                        break 'outer;
                    }
                }
            }
        }
    }
    span
}

/// The certificate `K² ⊆ K²_max`, `S²_dec ⊆ S²` and `dim B₀`.
pub fn b0_fastpath(gamma: &GammaData) -> Result<FastpathCertificate> {
    b0_fastpath_with(gamma, DecomposableScan::Subspaces)
}

pub fn b0_fastpath_with(gamma: &GammaData, scan: DecomposableScan) -> Result<FastpathCertificate> {
    gamma.validate()?;
    let p = gamma.p();
    let dim = wedge_dim(gamma.dim_u());
    let k2 = FpSubspace::span(p, dim, gamma.matrix());
    let s2 = k2.orthogonal();
    let s2_dec = decomposable_span(gamma, scan, &s2);
    let k2_max = s2_dec.orthogonal();
    let b0_dim = k2_max.dim() - k2.dim();
    let cert = FastpathCertificate {
        k2,
        s2,
        s2_dec,
        k2_max,
        b0_dim,
    };
    assert!(cert.verify(), "fast-path certificate chain violated");
    Ok(cert)
}

/// Random surjective `γ: Λ²F_p^d → F_p^e` (deterministic seed) until one
/// has `b0_dim ≥ 1`, trying at most `budget` candidates.
pub fn search_nonzero(
    p: u64,
    dim_u: usize,
    dim_v: usize,
    budget: usize,
) -> Result<Option<(GammaData, FastpathCertificate)>> {
    if p == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    let cols = wedge_dim(dim_u);
    if dim_v > cols {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..budget {
        let matrix: Vec<Vec<u64>> = (0..dim_v)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if FpSubspace::span(p, cols, &matrix).dim() < dim_v {
            continue;
        }
        let gamma = GammaData::new(p, dim_u, dim_v, matrix)?;
        let cert = b0_fastpath(&gamma)?;
        if cert.b0_dim >= 1 {
            return Ok(Some((gamma, cert)));
        }
    }
    Ok(None)
}
