//! Linear algebra over `Z/m`.
//!
//! Every computation is split along `Z/m ≅ ∏ Z/pᵉ` and done over the local
//! rings `Z/pᵉ`, where an entry of minimal `p`-valuation divides every other
//! entry of the active block. Results are glued back with the CRT.
//!
//! Kernels of tall sparse matrices (the bar-resolution boundaries) are found by
//! streaming rows into an echelon accumulator whose unit pivots are kept fully
//! reduced; only the small block of non-unit pivots needs a Smith
//! elimination afterwards.

use num_bigint::BigInt;
use num_integer::Integer;

use super::IntMatrix;

/// Prime factorisation as `(p, e)` pairs in increasing order of `p`.
pub fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == [(n, 1)]
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let ext = (a as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}

pub fn residue(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue fits")
}

/// Idempotent of `Z/m` selecting the `q`-primary component: `≡ 1 (mod q)`,
/// `≡ 0 (mod m/q)`.
fn crt_idempotent(m: u64, q: u64) -> u64 {
    let cof = m / q;
    let inv = inv_mod(cof % q, q).expect("coprime cofactor");
    ((cof as u128 * inv as u128) % m as u128) as u64
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct LocalRing {
    pub p: u64,
    pub e: u32,
    pub q: u64,
}

impl LocalRing {
    pub fn new(p: u64, e: u32) -> Self {
        LocalRing {
            p,
            e,
            q: p.pow(e),
        }
    }

    /// `p`-adic valuation of a nonzero residue.
    pub fn val(&self, mut x: u64) -> u32 {
        debug_assert!(x != 0 && x < self.q);
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// `(v, u⁻¹)` with `x = u·pᵛ`.
    pub fn split(&self, x: u64) -> (u32, u64) {
        let v = self.val(x);
        let unit = x / self.p.pow(v);
        (v, inv_mod(unit, self.q).expect("unit"))
    }

    pub fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.q - x
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    /// `dst[k] += c·src[k]` for `k ≥ from`.
    pub fn axpy(&self, dst: &mut [u64], src: &[u64], c: u64, from: usize) {
        if c == 0 {
            return;
        }
        let q = self.q;
        if q.is_power_of_two() {
            let mask = q - 1;
            for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
                *d = d.wrapping_add(c.wrapping_mul(s)) & mask;
            }
        } else {
            for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
                *d = (*d + c * s) % q;
            }
        }
    }

    pub fn scale(&self, row: &mut [u64], c: u64) {
        for x in row.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}

struct PivotRow {
    col: usize,
    val: u32,
    data: Vec<u64>,
}

/// Echelon basis of a row module over `Z/pᵉ`. Pivot entries are normalised
/// to `p^val`; every stored row vanishes on the unit-pivot columns other than
/// its own.
struct LocalEchelon {
    ring: LocalRing,
    cols: usize,
    slot_of_col: Vec<Option<usize>>,
    rows: Vec<PivotRow>,
}

impl LocalEchelon {
    fn new(ring: LocalRing, cols: usize) -> Self {
        LocalEchelon {
            ring,
            cols,
            slot_of_col: vec![None; cols],
            rows: Vec::new(),
        }
    }

    fn insert(&mut self, mut r: Vec<u64>) {
        let ring = self.ring;
        let mut start = 0;
        loop {
            let Some(j) = (start..self.cols).find(|&k| r[k] != 0) else {
                return;
            };
            match self.slot_of_col[j] {
                Some(slot) => {
                    let pv = self.rows[slot].val;
                    let rv = ring.val(r[j]);
                    if rv >= pv {
                        let c = r[j] / ring.p.pow(pv);
                        ring.axpy(&mut r, &self.rows[slot].data, ring.neg(c), j);
                        debug_assert_eq!(r[j], 0);
                        start = j + 1;
                    } else {
                        self.normalise(&mut r, j);
                        let old = std::mem::replace(&mut self.rows[slot].data, r);
                        self.rows[slot].val = rv;
                        self.finalise(slot);
                        r = old;
                        start = j;
                    }
                }
                None => {
                    let val = ring.val(r[j]);
                    self.normalise(&mut r, j);
                    let slot = self.rows.len();
                    self.rows.push(PivotRow { col: j, val, data: r });
                    self.slot_of_col[j] = Some(slot);
                    self.finalise(slot);
                    return;
                }
            }
        }
    }

    fn normalise(&self, r: &mut [u64], j: usize) {
        let (_, inv) = self.ring.split(r[j]);
        self.ring.scale(&mut r[j..], inv);
    }

    fn is_unit_col(&self, k: usize) -> bool {
        self.slot_of_col[k].is_some_and(|s| self.rows[s].val == 0)
    }

    fn finalise(&mut self, slot: usize) {
        let ring = self.ring;
        let j = self.rows[slot].col;
        let mut data = std::mem::take(&mut self.rows[slot].data);
        for k in j + 1..self.cols {
            if data[k] != 0 && self.is_unit_col(k) {
                let other = self.slot_of_col[k].unwrap();
                let c = ring.neg(data[k]);
                ring.axpy(&mut data, &self.rows[other].data, c, k);
            }
        }
        if self.rows[slot].val == 0 {
            for (t, row) in self.rows.iter_mut().enumerate() {
                if t != slot && !row.data.is_empty() && row.data[j] != 0 {
                    let c = ring.neg(row.data[j]);
                    ring.axpy(&mut row.data, &data, c, j);
                }
            }
        }
        self.rows[slot].data = data;
    }

    /// Generators of `{x : r·x = 0 for every row r}`.
    fn kernel(&self) -> Vec<Vec<u64>> {
        let ring = self.ring;
        let residual_cols: Vec<usize> = (0..self.cols).filter(|&k| !self.is_unit_col(k)).collect();
        let block: Vec<Vec<u64>> = self
            .rows
            .iter()
            .filter(|r| r.val > 0)
            .map(|r| residual_cols.iter().map(|&k| r.data[k]).collect())
            .collect();
        let small = local_smith_kernel(ring, block, residual_cols.len());
        small
            .into_iter()
            .map(|y| {
                let mut x = vec![0u64; self.cols];
                for (&k, &yk) in residual_cols.iter().zip(&y) {
                    x[k] = yk;
                }
                for row in self.rows.iter().filter(|r| r.val == 0) {
                    let mut acc = 0u64;
                    for (&k, &yk) in residual_cols.iter().zip(&y) {
                        if k > row.col && row.data[k] != 0 && yk != 0 {
                            acc = (acc + ring.mul(row.data[k], yk)) % ring.q;
                        }
                    }
                    x[row.col] = ring.neg(acc);
                }
                x
            })
            .collect()
    }
}

/// Kernel generators of a small dense matrix over `Z/pᵉ` via Smith
/// elimination with minimal-valuation pivots (lowest row, then column).
fn local_smith_kernel(ring: LocalRing, mut m: Vec<Vec<u64>>, cols: usize) -> Vec<Vec<u64>> {
    let rows = m.len();
    // v stored by columns: vcols[j] is column j of V.
    let mut vcols: Vec<Vec<u64>> = (0..cols)
        .map(|j| {
            let mut c = vec![0u64; cols];
            c[j] = 1;
            c
        })
        .collect();
    let mut diag_val: Vec<Option<u32>> = Vec::new();

    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = ring.val(x);
                    if best.is_none_or(|(_, _, b)| v < b) {
                        best = Some((i, j, v));
                        if v == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        m.swap(pi, t);
        for row in m.iter_mut() {
            row.swap(pj, t);
        }
        vcols.swap(pj, t);

        let (_, inv) = ring.split(m[t][t]);
        ring.scale(&mut m[t][t..], inv);
        let pv = ring.p.pow(v);
        let pivot_row = m[t].clone();
        for row in m.iter_mut().skip(t + 1) {
            if row[t] != 0 {
                let c = row[t] / pv;
                ring.axpy(row, &pivot_row, ring.neg(c), t);
            }
        }
        for j in t + 1..cols {
            if m[t][j] != 0 {
                let c = ring.neg(m[t][j] / pv);
                for row in m.iter_mut().skip(t) {
                    let add = ring.mul(c, row[t]);
                    row[j] = (row[j] + add) % ring.q;
                }
                let (head, tail) = vcols.split_at_mut(j);
                ring.axpy(&mut tail[0], &head[t], c, 0);
            }
        }
        diag_val.push(Some(v));
    }

    let mut gens = Vec::new();
    for (j, col) in vcols.into_iter().enumerate() {
        match diag_val.get(j).copied().flatten() {
            Some(0) => {}
            Some(v) => {
                let mut g = col;
                ring.scale(&mut g, ring.p.pow(ring.e - v));
                gens.push(g);
            }
            None => gens.push(col),
        }
    }
    gens
}

fn local_kernel<'a>(
    ring: LocalRing,
    cols: usize,
    rows: impl Iterator<Item = &'a [(usize, i64)]>,
) -> Vec<Vec<u64>> {
    let mut acc = LocalEchelon::new(ring, cols);
    for row in rows {
        let mut dense = vec![0u64; cols];
        for &(c, v) in row {
            let r = v.rem_euclid(ring.q as i64) as u64;
            dense[c] = (dense[c] + r) % ring.q;
        }
        acc.insert(dense);
    }
    acc.kernel()
}

/// Generators of `{x ∈ (Z/m)^cols : A·x ≡ 0}` where `A` is given by sparse
/// rows of machine integers.
pub fn kernel_mod_rows(rows: &[Vec<(usize, i64)>], cols: usize, m: u64) -> Vec<Vec<u64>> {
    assert!(m >= 2, "modulus must be at least 2");
    assert!(m < 1 << 32, "modulus too large");
    let mut out = Vec::new();
    for (p, e) in factor(m) {
        let ring = LocalRing::new(p, e);
        let idem = crt_idempotent(m, ring.q);
        for g in local_kernel(ring, cols, rows.iter().map(Vec::as_slice)) {
            out.push(
                g.iter()
                    .map(|&x| ((x as u128 * idem as u128) % m as u128) as u64)
                    .collect(),
            );
        }
    }
    out
}

/// Generators of `{x : A·x ≡ 0 (mod m)}`.
pub fn kernel_mod(a: &IntMatrix, m: u64) -> Vec<Vec<u64>> {
    let rows: Vec<Vec<(usize, i64)>> = (0..a.rows())
        .map(|i| {
            a.row_entries(i)
                .into_iter()
                .map(|(c, v)| (c, residue(&v, m) as i64))
                .collect()
        })
        .collect();
    kernel_mod_rows(&rows, a.cols(), m)
}

/// Kernel of the `len × columns.len()` matrix whose columns are given as
/// residue vectors mod `m`.
pub(crate) fn kernel_of_columns(columns: &[&[u64]], len: usize, m: u64) -> Vec<Vec<u64>> {
    let rows: Vec<Vec<(usize, i64)>> = (0..len)
        .map(|i| {
            columns
                .iter()
                .enumerate()
                .filter(|(_, c)| c[i] != 0)
                .map(|(j, c)| (j, c[i] as i64))
                .collect()
        })
        .collect();
    kernel_mod_rows(&rows, columns.len(), m)
}

/// Solves `Σ xⱼ·columns[j] ≡ b (mod m)`.
pub fn solve_mod(columns: &[Vec<u64>], b: &[u64], m: u64) -> Option<Vec<u64>> {
    let k = columns.len();
    let len = b.len();
    let neg_b: Vec<u64> = b.iter().map(|&x| (m - x % m) % m).collect();
    let mut out = vec![0u64; k];
    for (p, e) in factor(m) {
        let ring = LocalRing::new(p, e);
        let rows: Vec<Vec<(usize, i64)>> = (0..len)
            .map(|i| {
                let mut row: Vec<(usize, i64)> = columns
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c[i] % ring.q != 0)
                    .map(|(j, c)| (j, (c[i] % ring.q) as i64))
                    .collect();
                if !neg_b[i].is_multiple_of(ring.q) {
                    row.push((k, (neg_b[i] % ring.q) as i64));
                }
                row
            })
            .collect();
        let kernel = local_kernel(ring, k + 1, rows.iter().map(Vec::as_slice));
        let g = kernel.into_iter().find(|g| g[k] % p != 0)?;
        let inv = inv_mod(g[k], ring.q).expect("unit");
        let idem = crt_idempotent(m, ring.q);
        for j in 0..k {
            let xj = ring.mul(g[j], inv);
            out[j] = ((out[j] as u128 + xj as u128 * idem as u128) % m as u128) as u64;
        }
    }
    Some(out)
}
