use super::cochain::{assert_complex, d1_rows, d2_rows, pair_index, CocycleVector, SparseRows};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::modular::{kernel_mod_rows, solve_mod};
use crate::linalg::{quotient_invariants, PresentedAbelianGroup};

/// Default cap on `|G|` for cocycle computations.
pub const DEFAULT_COHOMOLOGY_CAP: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct CohomologyCaps {
    pub max_order: usize,
    pub max_boundary_rows: usize,
}

impl Default for CohomologyCaps {
    fn default() -> Self {
        CohomologyCaps {
            max_order: DEFAULT_COHOMOLOGY_CAP,
            max_boundary_rows: super::DEFAULT_BOUNDARY_ROW_CAP,
        }
    }
}

/// `H²(G, Q/Z)` realised as `Z²(G, Z/m) / (B²(G, Z/m) + Bockstein images)`.
#[derive(Clone, Debug)]
pub struct SchurMultiplier {
    pub group_order: usize,
    pub modulus: u64,
    /// Invariant factors; `witnesses` holds one cocycle per factor.
    pub presentation: PresentedAbelianGroup,
    /// Generators of the subgroup that is divided out.
    pub trivial_classes: Vec<Vec<u64>>,
}

impl SchurMultiplier {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.presentation.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }

    /// One cocycle per invariant factor.
    pub fn witnesses(&self) -> Vec<CocycleVector> {
        self.witness_vectors()
            .iter()
            .map(|w| CocycleVector::new(self.group_order, self.modulus, w.clone()))
            .collect()
    }

    fn witness_vectors(&self) -> &[Vec<u64>] {
        self.presentation
            .witnesses
            .as_deref()
            .expect("quotient_invariants records witnesses")
    }

    /// Coordinates of the class of `c` in the invariant-factor basis, each
    /// reduced mod its factor. `None` if `c` is not a cocycle.
    pub fn class_coordinates(&self, c: &CocycleVector) -> Option<Vec<u64>> {
        assert_eq!(c.modulus, self.modulus);
        let ws = self.witness_vectors();
        let mut columns: Vec<Vec<u64>> = ws.to_vec();
        columns.extend(self.trivial_classes.iter().cloned());
        if columns.is_empty() {
            return c.is_zero().then(Vec::new);
        }
        let x = solve_mod(&columns, &c.values, self.modulus)?;
        Some(
            x.iter()
                .zip(self.invariant_factors())
                .map(|(&xi, &d)| xi % d)
                .collect(),
        )
    }
}

/// Bockstein image of a character `χ: G → Z/m`:
/// `β(χ)(g,h) = (c(g) + c(h) − c(gh)) / m`, with `c` the lift to `0..m`.
pub fn bockstein(g: &FiniteGroup, chi: &[u64], m: u64) -> Vec<u64> {
    let n = g.order();
    let lift = |x: usize| if x == 0 { 0 } else { chi[x - 1] % m };
    let mut out = vec![0u64; (n - 1) * (n - 1)];
    for a in 1..n {
        for b in 1..n {
            let s = lift(a) + lift(b);
            let ab = lift(g.mul(a, b));
            debug_assert_eq!((s + m - ab) % m, 0, "not a character");
            out[pair_index(n, a, b)] = ((s - ab) / m) % m;
        }
    }
    out
}

/// Columns of `d1`, i.e. the coboundaries of the basis 1-cochains.
fn coboundary_columns(n: usize, d1: &SparseRows, m: u64) -> Vec<Vec<u64>> {
    let mut cols = vec![vec![0u64; (n - 1) * (n - 1)]; n - 1];
    for (r, row) in d1.iter().enumerate() {
        for &(c, v) in row {
            cols[c][r] = v.rem_euclid(m as i64) as u64;
        }
    }
    cols
}

/// Schur multiplier `H²(G, Q/Z)` with coefficients modelled in `Z/|G|`.
pub fn schur_multiplier(g: &FiniteGroup) -> Result<SchurMultiplier> {
    schur_multiplier_with(g, g.order() as u64, &CohomologyCaps::default())
}

/// As [`schur_multiplier`] with an explicit modulus, which must be a multiple
/// of `|G|`.
pub fn schur_multiplier_with(
    g: &FiniteGroup,
    m: u64,
    caps: &CohomologyCaps,
) -> Result<SchurMultiplier> {
    let n = g.order();
    if n > caps.max_order {
        return Err(Error::cap("cohomology group order", caps.max_order, n));
    }
    assert!(m.is_multiple_of(n as u64), "modulus must be a multiple of |G|");
    if n == 1 {
        return Ok(SchurMultiplier {
            group_order: 1,
            modulus: m.max(1),
            presentation: PresentedAbelianGroup::trivial(),
            trivial_classes: Vec::new(),
        });
    }
    let r1 = d1_rows(g);
    let r2 = d2_rows(g, caps.max_boundary_rows)?;
    assert_complex(n, &r1, &r2);
    let cocycles = kernel_mod_rows(&r2, (n - 1) * (n - 1), m);
    let characters = kernel_mod_rows(&r1, n - 1, m);
    let mut trivial = coboundary_columns(n, &r1, m);
    trivial.extend(characters.iter().map(|chi| bockstein(g, chi, m)));
    trivial.retain(|v| v.iter().any(|&x| x != 0));
    let presentation = quotient_invariants(&cocycles, &trivial, m)?;
    debug_assert!(presentation
        .witnesses
        .iter()
        .flatten()
        .all(|w| CocycleVector::new(n, m, w.clone()).is_cocycle(g)));
    Ok(SchurMultiplier {
        group_order: n,
        modulus: m,
        presentation,
        trivial_classes: trivial,
    })
}
