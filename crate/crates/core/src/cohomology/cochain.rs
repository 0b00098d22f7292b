use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::IntMatrix;

/// Default cap on the number of rows of the second boundary matrix,
/// `(|G| − 1)³`.
pub const DEFAULT_BOUNDARY_ROW_CAP: usize = 250_000;

/// Column index of the normalized cochain coordinate `(g, h)`, both non-identity.
#[inline]
pub(crate) fn pair_index(n: usize, g: usize, h: usize) -> usize {
    (g - 1) * (n - 1) + (h - 1)
}

pub(crate) type SparseRows = Vec<Vec<(usize, i64)>>;

fn push_merged(row: &mut Vec<(usize, i64)>, col: usize, v: i64) {
    match row.iter_mut().find(|(c, _)| *c == col) {
        Some(e) => e.1 += v,
        None => row.push((col, v)),
    }
}

/// Rows of `d1`: `(d1 φ)(g,h) = φ(g) − φ(gh) + φ(h)` with `φ(1) = 0`.
pub(crate) fn d1_rows(g: &FiniteGroup) -> SparseRows {
    let n = g.order();
    let mut rows = Vec::with_capacity((n - 1) * (n - 1));
    for a in 1..n {
        for b in 1..n {
            let mut row = Vec::with_capacity(3);
            push_merged(&mut row, a - 1, 1);
            let ab = g.mul(a, b);
            if ab != 0 {
                push_merged(&mut row, ab - 1, -1);
            }
            push_merged(&mut row, b - 1, 1);
            row.retain(|e| e.1 != 0);
            rows.push(row);
        }
    }
    rows
}

/// Rows of `d2`: `(d2 f)(g,h,k) = f(h,k) − f(gh,k) + f(g,hk) − f(g,h)` with
/// terms involving the identity dropped.
pub(crate) fn d2_rows(g: &FiniteGroup, row_cap: usize) -> Result<SparseRows> {
    let n = g.order();
    let rows_needed = (n - 1).pow(3);
    if rows_needed > row_cap {
        return Err(Error::cap("boundary matrix rows", row_cap, rows_needed));
    }
    let mut rows = Vec::with_capacity(rows_needed);
    for a in 1..n {
        for b in 1..n {
            let ab = g.mul(a, b);
            for c in 1..n {
                let bc = g.mul(b, c);
                let mut row = Vec::with_capacity(4);
                push_merged(&mut row, pair_index(n, b, c), 1);
                if ab != 0 {
                    push_merged(&mut row, pair_index(n, ab, c), -1);
                }
                if bc != 0 {
                    push_merged(&mut row, pair_index(n, a, bc), 1);
                }
                push_merged(&mut row, pair_index(n, a, b), -1);
                row.retain(|e| e.1 != 0);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// Checks `d2 · d1 = 0` over the integers. `acc` stays zero between rows
/// exactly when the check passes.
pub(crate) fn assert_complex(n: usize, d1: &SparseRows, d2: &SparseRows) {
    let mut acc = vec![0i64; n - 1];
    for row in d2 {
        for &(pair, v) in row {
            for &(x, w) in &d1[pair] {
                acc[x] += v * w;
            }
        }
        for &(pair, _) in row {
            for &(x, _) in &d1[pair] {
                assert_eq!(acc[x], 0, "d2·d1 ≠ 0");
            }
        }
    }
}

/// Normalized boundary matrices `d1: C¹ → C²` and `d2: C² → C³` of the bar
/// resolution, as sparse integer matrices.
pub fn boundary_matrices(g: &FiniteGroup, row_cap: usize) -> Result<(IntMatrix, IntMatrix)> {
    let n = g.order();
    if n == 1 {
        return Ok((IntMatrix::sparse_zeros(0, 0), IntMatrix::sparse_zeros(0, 0)));
    }
    let r1 = d1_rows(g);
    let r2 = d2_rows(g, row_cap)?;
    assert_complex(n, &r1, &r2);
    Ok((
        IntMatrix::from_sparse_rows(n - 1, r1),
        IntMatrix::from_sparse_rows((n - 1) * (n - 1), r2),
    ))
}

/// A normalized 2-cochain with values in `Z/m`, indexed by ordered pairs of
/// non-identity elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleVector {
    pub group_order: usize,
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl CocycleVector {
    pub fn new(group_order: usize, modulus: u64, values: Vec<u64>) -> Self {
        assert_eq!(values.len(), (group_order.max(1) - 1).pow(2));
        CocycleVector {
            group_order,
            modulus,
            values,
        }
    }

    /// `f(g, h)` for arbitrary elements, zero when either is the identity.
    pub fn value(&self, g: usize, h: usize) -> u64 {
        if g == 0 || h == 0 {
            0
        } else {
            self.values[pair_index(self.group_order, g, h)]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// Checks the 2-cocycle identity on every triple.
    pub fn is_cocycle(&self, g: &FiniteGroup) -> bool {
        let m = self.modulus;
        let n = g.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let lhs = self.value(b, c) + self.value(a, g.mul(b, c));
                    let rhs = self.value(g.mul(a, b), c) + self.value(a, b);
                    (lhs + 2 * m - rhs).is_multiple_of(m)
                })
            })
        })
    }

    /// Restriction to `sub`, as a cochain on the subgroup viewed as a group in
    /// its own right (elements in increasing index order). Keeps the modulus.
    pub fn restrict(&self, g: &FiniteGroup, sub: &Subgroup) -> Result<(FiniteGroup, CocycleVector)> {
        if !sub.is_closed(g) {
            return Err(Error::NotSubgroup);
        }
        let (a, emb) = g.subgroup_as_group(sub);
        let c = self.restrict_along(&a, &emb);
        Ok((a, c))
    }

    /// Pulls back along an injective homomorphism given by `emb`.
    pub(crate) fn restrict_along(&self, a: &FiniteGroup, emb: &[usize]) -> CocycleVector {
        let k = a.order();
        let mut values = Vec::with_capacity((k.max(1) - 1).pow(2));
        for x in 1..k {
            for y in 1..k {
                values.push(self.value(emb[x], emb[y]));
            }
        }
        CocycleVector::new(k, self.modulus, values)
    }
}
