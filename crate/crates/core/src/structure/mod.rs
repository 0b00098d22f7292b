//! Structural predicates for the rigid-group classes, and isoclinism.

mod isoclinism;

use serde::Serialize;

use crate::catalog::build;
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, is_isomorphic, quotient, sylow_subgroup, FiniteGroup, Subgroup,
    DEFAULT_LATTICE_CAP,
};
use crate::linalg::modular::factor;

pub use isoclinism::{
    isoclinic, isoclinic_with, omega_isoclinism_check, IsoclinismWitness, OmegaCheck,
    ISOCLINISM_QUOTIENT_CAP,
};

/// Every subgroup is normal.
pub fn is_dedekind(g: &FiniteGroup) -> Result<bool> {
    is_dedekind_with(g, DEFAULT_LATTICE_CAP)
}

pub fn is_dedekind_with(g: &FiniteGroup, lattice_cap: usize) -> Result<bool> {
    let subs = all_subgroups(g, lattice_cap)?;
    let dedekind = subs.iter().all(|s| s.is_normal(g));
    if dedekind && !g.is_abelian() && !has_hamiltonian_shape(g, &subs) {
        log::warn!(
            "{}: Dedekind but not of the form Q8 × A with A abelian without elements of order 4",
            g.origin()
        );
    }
    Ok(dedekind)
}

/// `G = Q × A` with `Q ≅ Q₈`, `A` abelian without elements of order 4.
fn has_hamiltonian_shape(g: &FiniteGroup, subs: &[Subgroup]) -> bool {
    let q8 = build("quaternion:8").expect("catalog builds Q8");
    let n = g.order();
    if !n.is_multiple_of(8) {
        return false;
    }
    let quaternions: Vec<&Subgroup> = subs
        .iter()
        .filter(|s| s.order() == 8 && is_isomorphic(&g.subgroup_as_group(s).0, &q8).is_some())
        .collect();
    let complements: Vec<&Subgroup> = subs
        .iter()
        .filter(|a| {
            a.order() == n / 8 && a.is_abelian(g) && a.iter().all(|x| g.element_order(x) != 4)
        })
        .collect();
    quaternions.iter().any(|q| {
        complements.iter().any(|a| {
            q.intersection(a).is_trivial()
                && q.iter().all(|x| a.iter().all(|y| g.commutes(x, y)))
        })
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BlackburnVerdict {
    Dedekind,
    /// Non-Dedekind with nontrivial intersection of all non-normal subgroups.
    Blackburn { intersection: Vec<usize> },
    Neither { intersection: Vec<usize> },
}

impl BlackburnVerdict {
    pub fn is_blackburn(&self) -> bool {
        matches!(self, BlackburnVerdict::Blackburn { .. })
    }
}

pub fn is_blackburn(g: &FiniteGroup) -> Result<BlackburnVerdict> {
    is_blackburn_with(g, DEFAULT_LATTICE_CAP)
}

/// Intersects the non-normal subgroups in increasing order of size, stopping
/// once the intersection is trivial.
pub fn is_blackburn_with(g: &FiniteGroup, lattice_cap: usize) -> Result<BlackburnVerdict> {
    if is_dedekind_with(g, lattice_cap)? {
        return Ok(BlackburnVerdict::Dedekind);
    }
    let subs = all_subgroups(g, lattice_cap)?;
    let mut acc = g.whole();
    for s in subs.iter().filter(|s| !s.is_normal(g)) {
        acc = acc.intersection(s);
        if acc.is_trivial() {
            break;
        }
    }
    let intersection = acc.elements();
    Ok(if acc.is_trivial() {
        BlackburnVerdict::Neither { intersection }
    } else {
        BlackburnVerdict::Blackburn { intersection }
    })
}

/// An abelian normal subgroup with cyclic quotient, the largest in canonical
/// order.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianByCyclic {
    pub normal: Vec<usize>,
    /// An element whose image generates `G/N`.
    pub quotient_generator: usize,
}

pub fn is_abelian_by_cyclic(g: &FiniteGroup) -> Result<Option<AbelianByCyclic>> {
    is_abelian_by_cyclic_with(g, DEFAULT_LATTICE_CAP)
}

pub fn is_abelian_by_cyclic_with(
    g: &FiniteGroup,
    lattice_cap: usize,
) -> Result<Option<AbelianByCyclic>> {
    // Largest first, so an abelian group is its own witness.
    for n in all_subgroups(g, lattice_cap)?.into_iter().rev() {
        if !n.is_abelian(g) || !n.is_normal(g) {
            continue;
        }
        let mut gens = n.elements();
        gens.push(0);
        let last = gens.len() - 1;
        for x in g.elements() {
            gens[last] = x;
            if g.subgroup_generated(&gens).order() == g.order() {
                return Ok(Some(AbelianByCyclic {
                    normal: n.elements(),
                    quotient_generator: x,
                }));
            }
        }
    }
    Ok(None)
}

/// Some cyclic subgroup has index dividing `pk`.
pub fn has_cyclic_of_index(g: &FiniteGroup, pk: usize) -> Result<bool> {
    if g.order() == 1 {
        return Ok(true);
    }
    g.p_group_prime().ok_or(Error::NotPGroup)?;
    let largest = g.elements().map(|x| g.element_order(x)).max().unwrap_or(1);
    Ok(pk.is_multiple_of(g.order() / largest))
}

/// `|Z| = p`, `Z = [G,G] = Φ(G)` and `G/Z` elementary abelian.
pub fn is_extraspecial(g: &FiniteGroup) -> Result<bool> {
    let p = g.p_group_prime().ok_or(Error::NotPGroup)? as usize;
    let z = g.center();
    if z.order() != p || g.derived_subgroup() != z || g.frattini_subgroup()? != z {
        return Ok(false);
    }
    Ok(g.elements().all(|x| z.contains(g.pow(x, p))))
}

/// `Z ≅ C_{p²}` and `Φ(G) = [G,G]` of order `p`.
pub fn is_almost_extraspecial(g: &FiniteGroup) -> Result<bool> {
    let p = g.p_group_prime().ok_or(Error::NotPGroup)? as usize;
    let z = g.center();
    if z.order() != p * p || !z.is_cyclic(g) {
        return Ok(false);
    }
    let d = g.derived_subgroup();
    Ok(d.order() == p && g.frattini_subgroup()? == d)
}

/// Nontrivial with no proper nontrivial normal subgroup.
pub fn is_simple(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return false;
    }
    g.conjugacy_classes()
        .iter()
        .skip(1)
        .all(|class| g.subgroup_generated(class).order() == g.order())
}

/// `G ≅ S_k` for some `k`.
pub fn is_symmetric(g: &FiniteGroup) -> bool {
    let mut k = 1;
    let mut fact = 1;
    while fact < g.order() {
        k += 1;
        fact *= k;
    }
    fact == g.order()
        && build(&format!("sym:{k}")).is_ok_and(|s| is_isomorphic(g, &s).is_some())
}

/// Odd Sylow subgroups cyclic; the Sylow 2-subgroup cyclic, dihedral (Klein
/// four included) or generalized quaternion.
pub fn has_restricted_sylows(g: &FiniteGroup) -> bool {
    factor(g.order() as u64).into_iter().all(|(p, _)| {
        let s = sylow_subgroup(g, p);
        if s.is_cyclic(g) {
            return true;
        }
        if p != 2 {
            return false;
        }
        let (sg, _) = g.subgroup_as_group(&s);
        let n = sg.order();
        if n == 4 {
            return true;
        }
        ["dihedral", "quaternion"].iter().any(|family| {
            build(&format!("{family}:{n}")).is_ok_and(|h| is_isomorphic(&sg, &h).is_some())
        })
    })
}

/// The classes of groups known to be Sha-rigid for which `B₀` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RigidClass {
    Symmetric,
    Simple,
    SmallPGroup,
    CyclicMaximal,
    CyclicIndexP2,
    AbelianByCyclic,
    RestrictedSylow,
    Blackburn,
    Extraspecial,
}

impl RigidClass {
    pub const ALL: [RigidClass; 9] = [
        RigidClass::Symmetric,
        RigidClass::Simple,
        RigidClass::SmallPGroup,
        RigidClass::CyclicMaximal,
        RigidClass::CyclicIndexP2,
        RigidClass::AbelianByCyclic,
        RigidClass::RestrictedSylow,
        RigidClass::Blackburn,
        RigidClass::Extraspecial,
    ];

    /// Roman-numeral label, `"(i)"` to `"(ix)"`.
    pub fn label(self) -> &'static str {
        const LABELS: [&str; 9] = ["(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)", "(viii)", "(ix)"];
        LABELS[self as usize]
    }
}

impl std::fmt::Display for RigidClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Every class the group belongs to, decided by the predicates above.
pub fn rigid_classes(g: &FiniteGroup) -> Result<Vec<RigidClass>> {
    let mut out = Vec::new();
    if is_symmetric(g) {
        out.push(RigidClass::Symmetric);
    }
    if is_simple(g) {
        out.push(RigidClass::Simple);
    }
    if let Some(p) = g.p_group_prime() {
        let p = p as usize;
        if g.order() <= p.pow(4) {
            out.push(RigidClass::SmallPGroup);
        }
        if has_cyclic_of_index(g, p)? {
            out.push(RigidClass::CyclicMaximal);
        }
        if has_cyclic_of_index(g, p * p)? {
            out.push(RigidClass::CyclicIndexP2);
        }
    }
    if is_abelian_by_cyclic(g)?.is_some() {
        out.push(RigidClass::AbelianByCyclic);
    }
    if has_restricted_sylows(g) {
        out.push(RigidClass::RestrictedSylow);
    }
    if is_blackburn(g)?.is_blackburn() {
        out.push(RigidClass::Blackburn);
    }
    if g.is_p_group() && is_extraspecial(g)? {
        out.push(RigidClass::Extraspecial);
    }
    Ok(out)
}

/// `G/Z(G)` with the projection.
pub(crate) fn central_quotient(g: &FiniteGroup) -> (FiniteGroup, crate::group::GroupHom) {
    quotient(g, &g.center()).expect("the center is normal")
}
