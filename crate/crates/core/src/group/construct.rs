use super::{all_subgroups, is_isomorphic, FiniteGroup, GroupHom, Subgroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use crate::fastpath::GammaData;

/// Largest order produced by [`from_central_data`].
pub const CENTRAL_DATA_ORDER_CAP: usize = 4096;

/// `G/N` with the projection `G → G/N`. Cosets are numbered by their
/// lowest-index element, so the identity coset is 0.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps: Vec<usize> = Vec::new();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        for y in n.iter() {
            coset[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * k + j] = coset[g.mul(a, b)] as u32;
        }
    }
    let names = reps.iter().map(|&r| format!("{}N", g.name(r))).collect();
    let q = FiniteGroup::from_flat(k, table, names, format!("({})/N", g.origin()));
    let proj = GroupHom::from_images(coset);
    debug_assert!(g.order() > 32 || proj.is_homomorphism(g, &q));
    Ok((q, proj))
}

/// `G₁ × G₂`, element `(a, b)` at index `a·|G₂| + b`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_capped(g1, g2, DEFAULT_ORDER_CAP)
}

pub fn direct_product_capped(g1: &FiniteGroup, g2: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    if n > cap {
        return Err(Error::cap("group order", cap, n));
    }
    let mut table = vec![0u32; n * n];
    for a1 in 0..n1 {
        for a2 in 0..n2 {
            let row = (a1 * n2 + a2) * n;
            for b1 in 0..n1 {
                let c1 = g1.mul(a1, b1) * n2;
                for b2 in 0..n2 {
                    table[row + b1 * n2 + b2] = (c1 + g2.mul(a2, b2)) as u32;
                }
            }
        }
    }
    let names = (0..n)
        .map(|x| format!("({},{})", g1.name(x / n2), g2.name(x % n2)))
        .collect();
    Ok(FiniteGroup::from_flat(
        n,
        table,
        names,
        format!("product:{}*{}", g1.origin(), g2.origin()),
    ))
}

/// `(G₁ × G₂) / {(z, ident(z)⁻¹) : z ∈ Z₁}` where `ident` lists pairs
/// `(z, ident(z))` and must be an isomorphism of central subgroups
/// `Z₁ → Z₂`.
pub fn central_product(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    ident: &[(usize, usize)],
) -> Result<FiniteGroup> {
    let z1 = Subgroup::from_elements(g1.order(), ident.iter().map(|p| p.0));
    let z2 = Subgroup::from_elements(g2.order(), ident.iter().map(|p| p.1));
    if z1.order() != ident.len() || z2.order() != ident.len() {
        return Err(Error::NotIso);
    }
    if !z1.is_closed(g1) || !z2.is_closed(g2) {
        return Err(Error::NotSubgroup);
    }
    if !z1.is_subgroup_of(&g1.center()) || !z2.is_subgroup_of(&g2.center()) {
        return Err(Error::NotCentral);
    }
    let mut map = vec![usize::MAX; g1.order()];
    for &(a, b) in ident {
        map[a] = b;
    }
    for &(a, b) in ident {
        for &(c, d) in ident {
            if map[g1.mul(a, c)] != g2.mul(b, d) {
                return Err(Error::NotIso);
            }
        }
    }
    let prod = direct_product(g1, g2)?;
    let n2 = g2.order();
    let diag = Subgroup::from_elements(
        prod.order(),
        ident.iter().map(|&(a, b)| a * n2 + g2.inv(b)),
    );
    let (mut q, _) = quotient(&prod, &diag)?;
    q.set_origin(format!("centralproduct:{},{}", g1.origin(), g2.origin()));
    Ok(q)
}

/// Central product over the largest pair of isomorphic subgroups of the two
/// centers. Ties go to the first pair in canonical subgroup order.
pub fn central_product_default(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    central_product_identifying(g1, g2, None)
}

/// Central product identifying isomorphic central subgroups of order
/// `order`, or the largest such pair when `None`. Ties go to the first pair
/// in canonical subgroup order.
pub fn central_product_identifying(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    order: Option<usize>,
) -> Result<FiniteGroup> {
    let (z1g, e1) = g1.subgroup_as_group(&g1.center());
    let (z2g, e2) = g2.subgroup_as_group(&g2.center());
    let cap = DEFAULT_ORDER_CAP;
    let mut subs1 = all_subgroups(&z1g, cap)?;
    let subs2 = all_subgroups(&z2g, cap)?;
    subs1.sort_by(|a, b| b.order().cmp(&a.order()).then(a.cmp(b)));
    for a in subs1.iter().filter(|a| order.is_none_or(|k| a.order() == k)) {
        for b in subs2.iter().filter(|b| b.order() == a.order()) {
            let (ag, ea) = z1g.subgroup_as_group(a);
            let (bg, eb) = z2g.subgroup_as_group(b);
            if let Some(h) = is_isomorphic(&ag, &bg) {
                let ident: Vec<(usize, usize)> = (0..ag.order())
                    .map(|x| (e1[ea[x]], e2[eb[h.apply(x)]]))
                    .collect();
                return central_product(g1, g2, &ident);
            }
        }
    }
    Err(Error::NotApplicable(format!(
        "no isomorphic central subgroups of order {}",
        order.unwrap_or(1)
    )))
}

/// Class-2 group of exponent `p` on pairs `(u, v) ∈ F_p^d × F_p^e` with
/// `(u₁,v₁)(u₂,v₂) = (u₁+u₂, v₁+v₂+β(u₁,u₂))`, where `β(eᵢ,eⱼ) = γ(eᵢ∧eⱼ)`
/// for `i < j` and zero otherwise. Element `(u, v)` has index
/// `Σ uᵢpⁱ + p^d Σ vⱼpʲ`.
pub fn from_central_data(gamma: &GammaData) -> Result<FiniteGroup> {
    let p = gamma.p() as usize;
    if p == 2 {
        return Err(Error::EvenPrimeUnsupported);
    }
    gamma.validate()?;
    let (d, e) = (gamma.dim_u(), gamma.dim_v());
    let n = (p as u128).pow((d + e) as u32);
    if n > CENTRAL_DATA_ORDER_CAP as u128 {
        return Err(Error::cap("central-data order", CENTRAL_DATA_ORDER_CAP, n.min(usize::MAX as u128) as usize));
    }
    let n = n as usize;
    let pu = p.pow(d as u32);
    let pv = p.pow(e as u32);
    let digits = |mut x: usize, len: usize| -> Vec<usize> {
        (0..len)
            .map(|_| {
                let r = x % p;
                x /= p;
                r
            })
            .collect()
    };
    let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * p + c);
    let us: Vec<Vec<usize>> = (0..pu).map(|x| digits(x, d)).collect();
    let vs: Vec<Vec<usize>> = (0..pv).map(|x| digits(x, e)).collect();
    // β(u₁,u₂) as an index into F_p^e, for every pair of U-indices.
    let mut beta = vec![0usize; pu * pu];
    for a in 0..pu {
        for b in 0..pu {
            let mut v = vec![0usize; e];
            for i in 0..d {
                for j in i + 1..d {
                    let c = us[a][i] * us[b][j] % p;
                    if c == 0 {
                        continue;
                    }
                    let col = gamma.wedge_index(i, j);
                    for (k, vk) in v.iter_mut().enumerate() {
                        *vk = (*vk + c * gamma.entry(k, col) as usize) % p;
                    }
                }
            }
            beta[a * pu + b] = encode(&v);
        }
    }
    let vadd = |a: usize, b: usize| -> usize {
        let s: Vec<usize> = vs[a].iter().zip(&vs[b]).map(|(x, y)| (x + y) % p).collect();
        encode(&s)
    };
    let mut vsum = vec![0usize; pv * pv];
    for a in 0..pv {
        for b in 0..pv {
            vsum[a * pv + b] = vadd(a, b);
        }
    }
    let mut usum = vec![0usize; pu * pu];
    for a in 0..pu {
        for b in 0..pu {
            let s: Vec<usize> = us[a].iter().zip(&us[b]).map(|(x, y)| (x + y) % p).collect();
            usum[a * pu + b] = encode(&s);
        }
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (ux, vx) = (x % pu, x / pu);
        for y in 0..n {
            let (uy, vy) = (y % pu, y / pu);
            let v = vsum[vsum[vx * pv + vy] * pv + beta[ux * pu + uy]];
            table[x * n + y] = (usum[ux * pu + uy] + pu * v) as u32;
        }
    }
    let names = (0..n)
        .map(|x| {
            let mut parts: Vec<String> = Vec::new();
            for (i, &c) in us[x % pu].iter().enumerate() {
                if c != 0 {
                    parts.push(format!("x{}^{}", i + 1, c));
                }
            }
            for (j, &c) in vs[x / pu].iter().enumerate() {
                if c != 0 {
                    parts.push(format!("z{}^{}", j + 1, c));
                }
            }
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        })
        .collect();
    Ok(FiniteGroup::from_flat(
        n,
        table,
        names,
        format!("central-data:p={p},dimU={d},dimV={e}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::perm_from_cycles;

    fn perm(cycles: &[&[usize]], d: usize) -> Vec<usize> {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        perm_from_cycles(&cs, d).unwrap()
    }

    fn d8() -> FiniteGroup {
        FiniteGroup::from_permutations(&[perm(&[&[0, 1, 2, 3]], 4), perm(&[&[0, 2]], 4)]).unwrap()
    }

    fn q8() -> FiniteGroup {
        FiniteGroup::from_permutations(&[
            perm(&[&[0, 1, 2, 3], &[4, 5, 6, 7]], 8),
            perm(&[&[0, 4, 2, 6], &[1, 7, 3, 5]], 8),
        ])
        .unwrap()
    }

    fn cyclic(n: usize) -> FiniteGroup {
        let p: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::from_permutations(&[p]).unwrap()
    }

    fn is_extraspecial(g: &FiniteGroup) -> bool {
        let z = g.center();
        z.order() == 2 && g.derived_subgroup() == z && g.frattini_subgroup().unwrap() == z
    }

    #[test]
    fn d8_mod_center_is_klein() {
        let g = d8();
        let (q, proj) = quotient(&g, &g.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert_eq!(q.exponent(), 2);
        assert!(proj.is_homomorphism(&g, &q));
        q.validate().unwrap();
    }

    #[test]
    fn quotient_by_whole_group() {
        let g = d8();
        let (q, _) = quotient(&g, &g.whole()).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_requires_normality() {
        let g = d8();
        let reflection = (0..8).find(|&x| g.element_order(x) == 2 && !g.center().contains(x));
        let h = g.subgroup_generated(&[reflection.unwrap()]);
        assert!(matches!(quotient(&g, &h), Err(Error::NotNormal)));
    }

    #[test]
    fn products() {
        let c6 = direct_product(&cyclic(2), &cyclic(3)).unwrap();
        c6.validate().unwrap();
        assert!(is_isomorphic(&c6, &cyclic(6)).is_some());
        let q = direct_product(&q8(), &cyclic(3)).unwrap();
        assert_eq!(q.order(), 24);
        assert_eq!(direct_product(&d8(), &cyclic(2)).unwrap().order(), 16);
    }

    #[test]
    fn central_products() {
        let g = central_product_default(&d8(), &cyclic(4)).unwrap();
        assert_eq!(g.order(), 16);
        g.validate().unwrap();
        let dd = central_product_default(&d8(), &d8()).unwrap();
        assert_eq!(dd.order(), 32);
        assert!(is_extraspecial(&dd));
        let qq = central_product_default(&q8(), &q8()).unwrap();
        assert_eq!(qq.order(), 32);
        assert!(is_extraspecial(&qq));
        assert!(is_isomorphic(&dd, &qq).is_some());
    }

    #[test]
    fn central_product_checks() {
        let g = d8();
        let c4 = cyclic(4);
        let refl = (0..8)
            .find(|&x| g.element_order(x) == 2 && !g.center().contains(x))
            .unwrap();
        let two = c4.pow(1, 2);
        assert!(matches!(
            central_product(&g, &c4, &[(0, 0), (refl, two)]),
            Err(Error::NotCentral)
        ));
        let z = g.center().elements()[1];
        assert!(matches!(
            central_product(&g, &c4, &[(0, 0), (z, 1)]),
            Err(Error::NotSubgroup) | Err(Error::NotIso)
        ));
    }

    #[test]
    fn central_data_extraspecial_27() {
        let gamma = GammaData::new(3, 2, 1, vec![vec![1]]).unwrap();
        let g = from_central_data(&gamma).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.center().order(), 3);
        g.validate().unwrap();
    }

    #[test]
    fn central_data_zero_gamma_is_abelian() {
        let gamma = GammaData::new(3, 1, 1, vec![vec![]]).unwrap();
        let g = from_central_data(&gamma).unwrap();
        assert_eq!(g.order(), 9);
        assert!(g.is_abelian());
    }

    #[test]
    fn central_data_commutators_match_gamma() {
        // d = 4, e = 1, γ(x1∧x3) = γ(x2∧x4) = z
        let gamma = GammaData::new(5, 4, 1, vec![vec![0, 1, 0, 0, 1, 0]]).unwrap();
        let g = from_central_data(&gamma).unwrap();
        assert_eq!(g.order(), 3125);
        assert_eq!(g.center().order(), 5);
        let basis = |i: usize| 5usize.pow(i as u32);
        for i in 0..4 {
            for j in i + 1..4 {
                let c = g.commutator(basis(i), basis(j));
                let expected = gamma.entry(0, gamma.wedge_index(i, j)) as usize * 625;
                assert_eq!(c, expected);
            }
        }
        assert!(g.elements().all(|x| g.pow(x, 5) == 0));
    }

    #[test]
    fn central_data_rejects_two() {
        let gamma = GammaData::new(2, 2, 1, vec![vec![1]]);
        let err = gamma.and_then(|gm| from_central_data(&gm)).unwrap_err();
        assert!(matches!(err, Error::EvenPrimeUnsupported));
    }
}
