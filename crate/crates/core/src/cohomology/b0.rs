use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::cochain::CocycleVector;
use super::schur::{schur_multiplier_with, CohomologyCaps, SchurMultiplier};
use crate::error::Result;
use crate::group::{all_subgroups, sylow_subgroup, FiniteGroup, Subgroup};
use crate::linalg::modular::factor;
use crate::linalg::{hom_kernel, PresentedAbelianGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupFamily {
    Bicyclic,
    AllAbelian,
}

/// Subgroups `⟨a, b⟩` over all commuting pairs, including the cyclic ones,
/// in canonical order.
pub fn bicyclic_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for a in g.elements() {
        for b in a..g.order() {
            if g.commutes(a, b) {
                seen.insert(g.subgroup_generated(&[a, b]));
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort();
    out
}

/// Every abelian subgroup, in canonical order.
pub fn abelian_subgroups(g: &FiniteGroup, lattice_cap: usize) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g, lattice_cap)?
        .into_iter()
        .filter(|s| s.is_abelian(g))
        .collect())
}

/// Reduces a family of subgroups to those whose restriction maps can matter:
/// drops cyclic members (their multiplier vanishes), keeps only members not
/// contained in another member, and keeps one member per conjugacy class.
pub fn essential_members(g: &FiniteGroup, family: &[Subgroup]) -> Vec<Subgroup> {
    let candidates: Vec<&Subgroup> = family.iter().filter(|s| !s.is_cyclic(g)).collect();
    let maximal: Vec<&Subgroup> = candidates
        .iter()
        .copied()
        .filter(|s| {
            !candidates
                .iter()
                .any(|t| t.order() > s.order() && s.is_subgroup_of(t))
        })
        .collect();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut out = Vec::new();
    for s in maximal {
        if seen.contains(s) {
            continue;
        }
        for a in g.elements() {
            seen.insert(s.conjugate(g, a));
        }
        out.push(s.clone());
    }
    out
}

/// `B₀(G)`: the kernel of `H²(G, Q/Z) → ⊕_A H²(A, Q/Z)` over the family.
/// Witnesses are kernel cocycles on `G`.
#[derive(Clone, Debug)]
pub struct BogomolovMultiplier {
    pub schur: SchurMultiplier,
    pub kernel: PresentedAbelianGroup,
    pub witnesses: Vec<CocycleVector>,
    pub subgroups_checked: usize,
}

impl BogomolovMultiplier {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.kernel.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel.is_trivial()
    }
}

pub fn b0(g: &FiniteGroup, family: SubgroupFamily) -> Result<BogomolovMultiplier> {
    b0_with(g, family, &CohomologyCaps::default())
}

pub fn b0_with(
    g: &FiniteGroup,
    family: SubgroupFamily,
    caps: &CohomologyCaps,
) -> Result<BogomolovMultiplier> {
    let members = match family {
        SubgroupFamily::Bicyclic => bicyclic_subgroups(g),
        SubgroupFamily::AllAbelian => abelian_subgroups(g, caps.max_order.max(128))?,
    };
    b0_over_family(g, &members, caps)
}

/// Kernel of the restriction map to an arbitrary family of subgroups.
pub fn b0_over_family(
    g: &FiniteGroup,
    family: &[Subgroup],
    caps: &CohomologyCaps,
) -> Result<BogomolovMultiplier> {
    let m = g.order() as u64;
    let schur = schur_multiplier_with(g, m, caps)?;
    if schur.is_trivial() {
        return Ok(BogomolovMultiplier {
            kernel: PresentedAbelianGroup::trivial(),
            witnesses: Vec::new(),
            subgroups_checked: 0,
            schur,
        });
    }
    let members = essential_members(g, family);
    let witnesses = schur.witnesses();
    // Per subgroup: its multiplier's factors and the coordinates of every
    // restricted witness.
    let blocks: Vec<(Vec<u64>, Vec<Vec<u64>>)> = members
        .par_iter()
        .map(|a| -> Result<(Vec<u64>, Vec<Vec<u64>>)> {
            let (ag, emb) = g.subgroup_as_group(a);
            let sa = schur_multiplier_with(&ag, m, caps)?;
            if sa.is_trivial() {
                return Ok((Vec::new(), vec![Vec::new(); witnesses.len()]));
            }
            let coords = witnesses
                .iter()
                .map(|w| {
                    sa.class_coordinates(&w.restrict_along(&ag, &emb))
                        .expect("restriction of a cocycle is a cocycle")
                })
                .collect();
            Ok((sa.invariant_factors().to_vec(), coords))
        })
        .collect::<Result<_>>()?;
    let codomain: Vec<u64> = blocks.iter().flat_map(|b| b.0.iter().copied()).collect();
    let images: Vec<Vec<u64>> = (0..witnesses.len())
        .map(|i| blocks.iter().flat_map(|b| b.1[i].iter().copied()).collect())
        .collect();
    let kernel = hom_kernel(schur.invariant_factors(), &codomain, &images)?;
    let n = g.order();
    let kernel_witnesses = kernel
        .witnesses
        .iter()
        .flatten()
        .map(|coeffs| {
            let mut values = vec![0u64; (n - 1) * (n - 1)];
            for (w, &c) in witnesses.iter().zip(coeffs) {
                for (v, &x) in values.iter_mut().zip(&w.values) {
                    *v = (*v + c * x) % m;
                }
            }
            CocycleVector::new(n, m, values)
        })
        .collect();
    Ok(BogomolovMultiplier {
        schur,
        kernel,
        witnesses: kernel_witnesses,
        subgroups_checked: members.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SylowFactor {
    pub prime: u64,
    pub sylow_order: usize,
    pub cyclic: bool,
    /// `B₀` of the Sylow subgroup; empty when trivial.
    pub b0: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SylowVerdict {
    /// Every Sylow subgroup has trivial `B₀`, hence so does `G`.
    Zero { factors: Vec<SylowFactor> },
    /// Some Sylow subgroup has nontrivial `B₀`; nothing follows for `G`.
    Unknown { factors: Vec<SylowFactor> },
}

impl SylowVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, SylowVerdict::Zero { .. })
    }

    pub fn factors(&self) -> &[SylowFactor] {
        match self {
            SylowVerdict::Zero { factors } | SylowVerdict::Unknown { factors } => factors,
        }
    }
}

/// Vanishing of `B₀(G)` from vanishing on every Sylow subgroup. Caps apply to
/// each Sylow subgroup rather than to `G`.
pub fn b0_sylow_reduction(g: &FiniteGroup, caps: &CohomologyCaps) -> Result<SylowVerdict> {
    let mut factors = Vec::new();
    for (p, _) in factor(g.order() as u64) {
        let s = sylow_subgroup(g, p);
        let cyclic = s.is_cyclic(g);
        let b0 = if cyclic {
            Vec::new()
        } else {
            let (sg, _) = g.subgroup_as_group(&s);
            b0_with(&sg, SubgroupFamily::Bicyclic, caps)?
                .invariant_factors()
                .to_vec()
        };
        factors.push(SylowFactor {
            prime: p,
            sylow_order: s.order(),
            cyclic,
            b0,
        });
    }
    Ok(if factors.iter().all(|f| f.b0.is_empty()) {
        SylowVerdict::Zero { factors }
    } else {
        SylowVerdict::Unknown { factors }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    #[test]
    fn bicyclic_examples() {
        let g = build("sym:3").unwrap();
        assert_eq!(bicyclic_subgroups(&g).len(), 5);
        let q = build("quaternion:8").unwrap();
        let bq = bicyclic_subgroups(&q);
        assert_eq!(bq.len(), 5);
        assert!(bq.iter().all(|s| s.order() < 8));
        let v = build("abelian:[2,2]").unwrap();
        assert!(bicyclic_subgroups(&v).contains(&v.whole()));
    }

    #[test]
    fn abelian_groups_have_trivial_b0() {
        for s in ["abelian:[2,2]", "abelian:[2,4]", "abelian:[2,2,2]", "abelian:[3,3]"] {
            let g = build(s).unwrap();
            assert!(b0(&g, SubgroupFamily::Bicyclic).unwrap().is_trivial(), "{s}");
            assert!(b0(&g, SubgroupFamily::AllAbelian).unwrap().is_trivial(), "{s}");
        }
    }

    #[test]
    fn cyclic_family_gives_whole_multiplier() {
        let g = build("abelian:[2,2]").unwrap();
        let cyclic: Vec<Subgroup> = g.elements().map(|x| g.subgroup_generated(&[x])).collect();
        let r = b0_over_family(&g, &cyclic, &CohomologyCaps::default()).unwrap();
        assert_eq!(r.invariant_factors(), &[2]);
        assert!(r.witnesses[0].is_cocycle(&g));
    }

    #[test]
    fn small_nonabelian_groups() {
        for s in ["dihedral:8", "quaternion:8", "sym:4", "alt:4", "extraspecial:p=3,n=1,exp=p"] {
            let g = build(s).unwrap();
            assert!(b0(&g, SubgroupFamily::Bicyclic).unwrap().is_trivial(), "{s}");
        }
    }

    #[test]
    fn sylow_reduction() {
        let v = b0_sylow_reduction(&build("sym:3").unwrap(), &CohomologyCaps::default()).unwrap();
        assert!(v.is_zero());
        assert!(v.factors().iter().all(|f| f.cyclic));
        let v = b0_sylow_reduction(&build("dicyclic:12").unwrap(), &CohomologyCaps::default())
            .unwrap();
        assert!(v.is_zero());
        assert!(v.factors().iter().all(|f| f.cyclic));
        let v = b0_sylow_reduction(&build("sym:4").unwrap(), &CohomologyCaps::default()).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.factors()[0].sylow_order, 8);
        assert!(!v.factors()[0].cyclic);
    }
}
