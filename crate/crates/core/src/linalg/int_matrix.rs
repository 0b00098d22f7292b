//! Integer matrices with arbitrary-precision entries and their Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<BigInt>),
    /// One list per row, sorted by column, no explicit zeros.
    Sparse(Vec<Vec<(usize, BigInt)>>),
}

/// A `rows × cols` integer matrix. Storage is dense or sparse (per-row
/// triplets); both behave identically through the public API.
#[derive(Clone)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            storage: Storage::Dense(vec![BigInt::zero(); rows * cols]),
        }
    }

    pub fn sparse_zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            storage: Storage::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a dense matrix from rows of machine integers. All rows must have
    /// length `cols`.
    pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row.iter().map(|&x| x.into()));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            storage: Storage::Dense(data),
        }
    }

    /// Builds a sparse matrix from `(col, value)` lists. Duplicate coordinates
    /// within a row are summed and zeros dropped.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let n = rows.len();
        let storage = rows
            .into_iter()
            .map(|mut row| {
                row.sort_unstable_by_key(|&(c, _)| c);
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    assert!(c < cols, "column {c} out of range");
                    match out.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => out.push((c, BigInt::from(v))),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        IntMatrix {
            rows: n,
            cols,
            storage: Storage::Sparse(storage),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j].clone(),
            Storage::Sparse(s) => match s[i].binary_search_by_key(&j, |&(c, _)| c) {
                Ok(k) => s[i][k].1.clone(),
                Err(_) => BigInt::zero(),
            },
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols);
        match &mut self.storage {
            Storage::Dense(d) => d[i * self.cols + j] = v,
            Storage::Sparse(s) => {
                let row = &mut s[i];
                match row.binary_search_by_key(&j, |&(c, _)| c) {
                    Ok(k) if v.is_zero() => {
                        row.remove(k);
                    }
                    Ok(k) => row[k].1 = v,
                    Err(_) if v.is_zero() => {}
                    Err(k) => row.insert(k, (j, v)),
                }
            }
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row_entries(&self, i: usize) -> Vec<(usize, BigInt)> {
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
            Storage::Sparse(s) => s[i].clone(),
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|v| !v.is_zero()).count(),
            Storage::Sparse(s) => s.iter().map(Vec::len).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (j, v) in self.row_entries(i) {
                out.set(j, i, v);
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let b = other.to_dense();
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.row_entries(i) {
                for j in 0..other.cols {
                    let bkj = b.get(k, j);
                    if !bkj.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, cur + &a * bkj);
                    }
                }
            }
        }
        out
    }

    /// Row-major dense copy as nested vectors.
    pub fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    fn from_nested(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        IntMatrix {
            rows,
            cols,
            storage: Storage::Dense(data.into_iter().flatten().collect()),
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_nested();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| self.row_entries(i) == other.row_entries(i))
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_nested() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative, with
/// each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, kept because generators of a presented group are read
    /// off its rows.
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form. Pivots are the nonzero entries of minimal absolute
/// value in the active block, ties broken by lowest row then lowest column.
pub fn snf(a: &IntMatrix) -> SnfDecomposition {
    let (r, c) = (a.rows(), a.cols());
    let mut m = a.to_nested();
    let mut u = IntMatrix::identity(r).to_nested();
    let mut v = IntMatrix::identity(c).to_nested();
    let mut v_inv = IntMatrix::identity(c).to_nested();

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_pivot(&m, t) else {
                return finish(r, c, m, u, v, v_inv);
            };
            if pi != t {
                m.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                for row in m.iter_mut() {
                    row.swap(pj, t);
                }
                for row in v.iter_mut() {
                    row.swap(pj, t);
                }
                v_inv.swap(pj, t);
            }

            let mut clean = true;
            let pivot = m[t][t].clone();
            for i in t + 1..r {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&pivot);
                if !q.is_zero() {
                    row_axpy(&mut m, i, t, &q, t);
                    row_axpy(&mut u, i, t, &q, 0);
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..c {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&pivot);
                if !q.is_zero() {
                    // col_j -= q col_t  on m and v; row_t += q row_j on v_inv
                    for row in m.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    for row in v.iter_mut() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    let neg = -q.clone();
                    row_axpy(&mut v_inv, t, j, &neg, 0);
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row and redo.
            let offending = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !m[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut m, t, i, &minus_one, t);
                    row_axpy(&mut u, t, i, &minus_one, 0);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish(r, c, m, u, v, v_inv)
}

fn finish(
    r: usize,
    c: usize,
    m: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
) -> SnfDecomposition {
    SnfDecomposition {
        u: IntMatrix::from_nested(r, r, u),
        d: IntMatrix::from_nested(r, c, m),
        v: IntMatrix::from_nested(c, c, v),
        v_inv: IntMatrix::from_nested(c, c, v_inv),
    }
}

/// row_dst -= q · row_src, touching columns from `start` on.
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt, start: usize) {
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for j in start..d.len() {
        if !s[j].is_zero() {
            d[j] -= q * &s[j];
        }
    }
}

fn min_pivot(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                let unit = a.is_one();
                best = Some((i, j, a));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
