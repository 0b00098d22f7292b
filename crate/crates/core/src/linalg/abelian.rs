//! Finite abelian groups given by generators and relations.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::modular::{kernel_of_columns, residue, solve_mod};
use super::{snf, IntMatrix};
use crate::error::{Error, Result};

/// `Z^g / ⟨relations⟩`, normalised to invariant factors `d₁ | d₂ | …` with the
/// 1s stripped. The trivial group has no invariant factors.
#[derive(Clone, Debug, Serialize)]
pub struct PresentedAbelianGroup {
    pub generators: usize,
    #[serde(skip)]
    pub relations: IntMatrix,
    pub invariant_factors: Vec<u64>,
    /// One payload per invariant factor, in the same order. For
    /// [`quotient_invariants`] these are vectors mod `m`; for [`hom_kernel`]
    /// they are coordinates in the domain's generators.
    #[serde(skip)]
    pub witnesses: Option<Vec<Vec<u64>>>,
}

impl PresentedAbelianGroup {
    pub fn trivial() -> Self {
        PresentedAbelianGroup {
            generators: 0,
            relations: IntMatrix::zeros(0, 0),
            invariant_factors: Vec::new(),
            witnesses: Some(Vec::new()),
        }
    }

    /// Reduces `relations` (one relator per row, `generators` columns).
    /// Returns, along with the group, the rows of `V⁻¹` picking out one
    /// generator per invariant factor.
    pub fn from_relations(
        generators: usize,
        relations: IntMatrix,
    ) -> Result<(Self, Vec<Vec<BigInt>>)> {
        assert_eq!(relations.cols(), generators);
        let dec = snf(&relations);
        let diag = dec.diagonal();
        let mut factors = Vec::new();
        let mut picks = Vec::new();
        for i in 0..generators {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                return Err(Error::InfiniteQuotient);
            }
            if d.is_one() {
                continue;
            }
            factors.push(u64::try_from(d).expect("invariant factor fits in u64"));
            picks.push((0..generators).map(|j| dec.v_inv.get(i, j)).collect());
        }
        Ok((
            PresentedAbelianGroup {
                generators,
                relations,
                invariant_factors: factors,
                witnesses: None,
            },
            picks,
        ))
    }

    /// Abelian group `⊕ Z/dᵢ` presented on `ds.len()` generators.
    pub fn from_cyclic_factors(ds: &[u64]) -> Result<Self> {
        let g = ds.len();
        let mut rel = IntMatrix::zeros(g, g);
        for (i, &d) in ds.iter().enumerate() {
            rel.set(i, i, BigInt::from(d));
        }
        let (mut grp, picks) = Self::from_relations(g, rel)?;
        grp.witnesses = Some(
            picks
                .into_iter()
                .map(|row| {
                    row.iter()
                        .zip(ds)
                        .map(|(x, &d)| residue(x, d.max(1)))
                        .collect()
                })
                .collect(),
        );
        Ok(grp)
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of cyclic factors of `p`-power order, i.e. the rank of the
    /// elementary abelian `p`-group `G/pG` restricted to the `p`-part.
    pub fn p_rank(&self, p: u64) -> usize {
        self.invariant_factors.iter().filter(|&&d| d % p == 0).count()
    }
}

/// Normal form of `⊕ Z/dᵢ` as invariant factors with 1s stripped.
pub fn normalize_factors(ds: &[u64]) -> Vec<u64> {
    PresentedAbelianGroup::from_cyclic_factors(ds)
        .expect("finite cyclic factors")
        .invariant_factors
}

/// Invariants of `⟨span_gens⟩ / ⟨sub_gens⟩` inside `(Z/m)^len`. Witnesses are
/// representative vectors of the invariant-factor generators.
pub fn quotient_invariants(
    span_gens: &[Vec<u64>],
    sub_gens: &[Vec<u64>],
    m: u64,
) -> Result<PresentedAbelianGroup> {
    let Some(len) = span_gens.first().or(sub_gens.first()).map(Vec::len) else {
        return Ok(PresentedAbelianGroup::trivial());
    };
    for (index, b) in sub_gens.iter().enumerate() {
        if solve_mod(span_gens, b, m).is_none() {
            return Err(Error::Membership { index });
        }
    }
    let k = span_gens.len();
    let neg_sub: Vec<Vec<u64>> = sub_gens
        .iter()
        .map(|b| b.iter().map(|&x| (m - x % m) % m).collect())
        .collect();
    let columns: Vec<&[u64]> = span_gens
        .iter()
        .chain(neg_sub.iter())
        .map(Vec::as_slice)
        .collect();
    let kernel = kernel_of_columns(&columns, len, m);

    let mut rel_rows: Vec<Vec<i64>> = kernel
        .iter()
        .map(|g| g[..k].iter().map(|&x| x as i64).collect())
        .filter(|r: &Vec<i64>| r.iter().any(|&x| x != 0))
        .collect();
    for i in 0..k {
        let mut r = vec![0i64; k];
        r[i] = m as i64;
        rel_rows.push(r);
    }
    let rel = IntMatrix::from_rows(k, &rel_rows);
    let (mut grp, picks) = PresentedAbelianGroup::from_relations(k, rel)?;
    let witnesses = picks
        .iter()
        .map(|coef| {
            let mut w = vec![0u64; len];
            for (c, s) in coef.iter().zip(span_gens) {
                let c = residue(c, m);
                if c == 0 {
                    continue;
                }
                for (wi, &si) in w.iter_mut().zip(s) {
                    *wi = ((*wi as u128 + c as u128 * si as u128) % m as u128) as u64;
                }
            }
            w
        })
        .collect();
    grp.witnesses = Some(witnesses);
    Ok(grp)
}

/// Integer kernel of `Z^t → ⊕ Z/moduli[j]`, `ν ↦ F·ν`, as generator columns
/// (returned as a list of vectors in `Z^t`).
fn lattice_kernel(f: &[Vec<BigInt>], t: usize, moduli: &[u64]) -> Vec<Vec<BigInt>> {
    let s = moduli.len();
    if s == 0 {
        return (0..t)
            .map(|i| {
                let mut e = vec![BigInt::zero(); t];
                e[i] = BigInt::one();
                e
            })
            .collect();
    }
    let mut m = IntMatrix::zeros(s, t + s);
    for j in 0..s {
        for i in 0..t {
            m.set(j, i, f[j][i].clone());
        }
        m.set(j, t + j, BigInt::from(moduli[j]));
    }
    let dec = snf(&m);
    let rank = dec.rank();
    (rank..t + s)
        .map(|col| (0..t).map(|i| dec.v.get(i, col)).collect())
        .filter(|g: &Vec<BigInt>| g.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Kernel of a homomorphism `⊕ Z/dᵢ → ⊕ Z/eⱼ` given by the images of the
/// domain's invariant-factor generators. `images[i][j]` is the `j`-th
/// coordinate of the image of generator `i`. Witnesses are coordinates in the
/// domain generators, reduced mod the corresponding `dᵢ`.
pub fn hom_kernel(
    domain: &[u64],
    codomain: &[u64],
    images: &[Vec<u64>],
) -> Result<PresentedAbelianGroup> {
    let r = domain.len();
    assert_eq!(images.len(), r);
    for (i, (&d, img)) in domain.iter().zip(images).enumerate() {
        assert_eq!(img.len(), codomain.len());
        let respects = img
            .iter()
            .zip(codomain)
            .all(|(&x, &e)| (x as u128 * d as u128).is_multiple_of(e as u128));
        if !respects {
            return Err(Error::IllFormedHom { generator: i });
        }
    }
    if r == 0 {
        return Ok(PresentedAbelianGroup::trivial());
    }
    // F is codomain.len() × r
    let f: Vec<Vec<BigInt>> = (0..codomain.len())
        .map(|j| (0..r).map(|i| BigInt::from(images[i][j])).collect())
        .collect();
    let lattice = lattice_kernel(&f, r, codomain);
    let t = lattice.len();
    // relations among lattice generators: ν with Σ νₖ·lₖ ∈ ⊕ dᵢZ
    let g_rows: Vec<Vec<BigInt>> = (0..r)
        .map(|i| lattice.iter().map(|l| l[i].clone()).collect())
        .collect();
    let rel_gens = lattice_kernel(&g_rows, t, domain);
    let mut rel = IntMatrix::zeros(rel_gens.len(), t);
    for (a, row) in rel_gens.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            rel.set(a, b, x.clone());
        }
    }
    let (mut grp, picks) = PresentedAbelianGroup::from_relations(t, rel)?;
    let witnesses = picks
        .iter()
        .map(|nu| {
            (0..r)
                .map(|i| {
                    let mut acc = BigInt::zero();
                    for (k, c) in nu.iter().enumerate() {
                        acc += c * &lattice[k][i];
                    }
                    residue(&acc, domain[i])
                })
                .collect()
        })
        .collect();
    grp.witnesses = Some(witnesses);
    Ok(grp)
}

/// Brute-force order of a subgroup of `(Z/m)^len` generated by `gens`.
#[cfg(test)]
pub(crate) fn span_size(gens: &[Vec<u64>], len: usize, m: u64) -> usize {
    let mut seen = std::collections::HashSet::new();
    let zero = vec![0u64; len];
    seen.insert(zero.clone());
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_examples() {
        let q = quotient_invariants(&[vec![1]], &[vec![2]], 4).unwrap();
        assert_eq!(q.invariant_factors, vec![2]);
        let q = quotient_invariants(&[vec![1]], &[vec![1]], 4).unwrap();
        assert!(q.is_trivial());
        let q = quotient_invariants(&[vec![1, 0], vec![0, 1]], &[vec![2, 0]], 4).unwrap();
        assert_eq!(q.invariant_factors, vec![2, 4]);
    }

    #[test]
    fn quotient_witnesses_have_the_right_orders() {
        let span = vec![vec![1, 0], vec![0, 1]];
        let q = quotient_invariants(&span, &[vec![2, 0]], 4).unwrap();
        let ws = q.witnesses.unwrap();
        for (w, &d) in ws.iter().zip(&q.invariant_factors) {
            // d·w lies in the subgroup, (d/p)·w does not
            let dw: Vec<u64> = w.iter().map(|x| x * d % 4).collect();
            assert!(solve_mod(&[vec![2, 0]], &dw, 4).is_some());
        }
    }

    #[test]
    fn membership_is_checked() {
        let err = quotient_invariants(&[vec![2]], &[vec![1]], 4).unwrap_err();
        assert!(matches!(err, Error::Membership { index: 0 }));
    }

    #[test]
    fn hom_kernel_examples() {
        // Z/4 → Z/2 reduction
        let k = hom_kernel(&[4], &[2], &[vec![1]]).unwrap();
        assert_eq!(k.invariant_factors, vec![2]);
        // zero map Z/6 → Z/5
        let k = hom_kernel(&[6], &[5], &[vec![0]]).unwrap();
        assert_eq!(k.invariant_factors, vec![6]);
        // (x, y) ↦ x + y on Z/2 ⊕ Z/2
        let k = hom_kernel(&[2, 2], &[2], &[vec![1], vec![1]]).unwrap();
        assert_eq!(k.invariant_factors, vec![2]);
        assert_eq!(k.witnesses.unwrap(), vec![vec![1, 1]]);
    }

    #[test]
    fn hom_kernel_rejects_ill_formed() {
        // Z/2 → Z/4 sending the generator to 1 is not a homomorphism
        let err = hom_kernel(&[2], &[4], &[vec![1]]).unwrap_err();
        assert!(matches!(err, Error::IllFormedHom { generator: 0 }));
    }

    #[test]
    fn hom_kernel_into_nothing_is_everything() {
        let k = hom_kernel(&[2, 6], &[], &[vec![], vec![]]).unwrap();
        assert_eq!(k.invariant_factors, vec![2, 6]);
    }

    #[test]
    fn normal_form() {
        assert_eq!(normalize_factors(&[2, 3]), vec![6]);
        assert_eq!(normalize_factors(&[4, 2, 1]), vec![2, 4]);
        assert_eq!(normalize_factors(&[]), Vec::<u64>::new());
        assert_eq!(normalize_factors(&[6, 4]), vec![2, 12]);
    }

    #[test]
    fn quotient_order_matches_enumeration() {
        let span = vec![vec![2, 1, 0], vec![0, 3, 3], vec![1, 1, 1]];
        let sub = vec![vec![4, 2, 0], vec![0, 0, 0], vec![3, 3, 3]];
        let q = quotient_invariants(&span, &sub, 6).unwrap();
        let expected = span_size(&span, 3, 6) / span_size(&sub, 3, 6);
        assert_eq!(q.order() as usize, expected);
    }
}
