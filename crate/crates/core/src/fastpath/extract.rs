use super::gamma::{wedge_dim, wedge_index, GammaData};
use super::{apply_gamma, wedge};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::FpSubspace;

fn not_applicable(why: &str) -> Error {
    Error::NotApplicable(why.to_string())
}

/// Coordinates with respect to a greedily chosen basis of an elementary
/// abelian section. `key` maps an element to its class in the section (the
/// element itself for a subgroup, the coset minimum for a quotient).
struct SectionBasis {
    lifts: Vec<usize>,
    coords: Vec<Option<Vec<u64>>>,
}

impl SectionBasis {
    fn new(g: &FiniteGroup, p: u64, candidates: &[usize], key: impl Fn(usize) -> usize) -> Self {
        let n = g.order();
        let mut coords: Vec<Option<Vec<u64>>> = vec![None; n];
        // (representative element, coordinates) for every class spanned so far
        let mut spanned: Vec<(usize, Vec<u64>)> = vec![(0, Vec::new())];
        coords[key(0)] = Some(Vec::new());
        let mut lifts = Vec::new();
        for &x in candidates {
            if coords[key(x)].is_some() {
                continue;
            }
            let i = lifts.len();
            lifts.push(x);
            let mut grown = Vec::with_capacity(spanned.len() * p as usize);
            for (rep, c) in &spanned {
                let mut y = *rep;
                for k in 0..p {
                    let mut cy = c.clone();
                    cy.push(k);
                    if k > 0 {
                        coords[key(y)] = Some(cy.clone());
                    }
                    grown.push((y, cy));
                    y = g.mul(y, x);
                }
            }
            spanned = grown;
            debug_assert!(i + 1 == spanned[0].1.len());
        }
        let d = lifts.len();
        for c in coords.iter_mut().flatten() {
            c.resize(d, 0);
        }
        SectionBasis { lifts, coords }
    }

    fn coords_of(&self, class: usize) -> &[u64] {
        self.coords[class]
            .as_deref()
            .expect("element lies in the section")
    }
}

/// Commutator data of the central extension `0 → V → G → G/V → 0`, with
/// `V = Φ(G)` unless given.
///
/// Requires `p` odd, `V` central and elementary abelian, `G/V` elementary
/// abelian, `[G,G] ≤ V`, and the commutator map onto `V`.
pub fn gamma_from_group(g: &FiniteGroup, v: Option<&Subgroup>) -> Result<GammaData> {
    let p = g
        .p_group_prime()
        .ok_or_else(|| not_applicable("not a nontrivial p-group"))?;
    if p == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    let v = match v {
        Some(v) => {
            if !v.is_closed(g) {
                return Err(Error::NotSubgroup);
            }
            v.clone()
        }
        None => g.frattini_subgroup()?,
    };
    let n = g.order();
    if !v.iter().all(|z| g.elements().all(|x| g.commutes(x, z))) {
        return Err(not_applicable("V is not central"));
    }
    if !v.iter().all(|z| g.pow(z, p as usize) == 0) {
        return Err(not_applicable("V is not elementary abelian"));
    }
    if !g.elements().all(|x| v.contains(g.pow(x, p as usize))) {
        return Err(not_applicable("G/V is not elementary abelian"));
    }
    if !g
        .elements()
        .all(|x| (x + 1..n).all(|y| v.contains(g.commutator(x, y))))
    {
        return Err(not_applicable("[G,G] is not contained in V"));
    }

    let mut coset_min = vec![usize::MAX; n];
    for x in g.elements() {
        if coset_min[x] == usize::MAX {
            for z in v.iter() {
                coset_min[g.mul(x, z)] = x;
            }
        }
    }
    let all: Vec<usize> = g.elements().collect();
    let vb = SectionBasis::new(g, p, &v.elements(), |x| x);
    let ub = SectionBasis::new(g, p, &all, |x| coset_min[x]);
    let (d, e) = (ub.lifts.len(), vb.lifts.len());

    let mut matrix = vec![vec![0u64; wedge_dim(d)]; e];
    for i in 0..d {
        for j in i + 1..d {
            let c = g.commutator(ub.lifts[i], ub.lifts[j]);
            for (row, &x) in matrix.iter_mut().zip(vb.coords_of(c)) {
                row[wedge_index(d, i, j)] = x;
            }
        }
    }
    let gamma = GammaData::new(p, d, e, matrix)?;

    // Bilinearity: γ(x̄∧ȳ) = [x,y] for every pair, not only basis lifts.
    for x in g.elements() {
        let cx = ub.coords_of(coset_min[x]);
        for y in g.elements() {
            let w = wedge(cx, ub.coords_of(coset_min[y]), p);
            assert_eq!(
                apply_gamma(&gamma, &w),
                vb.coords_of(g.commutator(x, y)),
                "commutator map is not well defined on G/V"
            );
        }
    }
    if FpSubspace::span(p, wedge_dim(d), gamma.matrix()).dim() < e {
        return Err(not_applicable("commutator map is not onto V"));
    }
    Ok(gamma)
}
