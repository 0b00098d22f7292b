//! Class-preserving automorphisms and `Out_c(G) = Sha(G)`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{search_homs, FiniteGroup, GroupHom, HomSearch};

/// Default cap on `|G|` for automorphism enumeration.
pub const DEFAULT_RIGIDITY_CAP: usize = 128;

/// All class-preserving automorphisms of a group, split into cosets of the
/// inner automorphisms.
#[derive(Clone, Debug)]
pub struct AutcSet {
    pub group_order: usize,
    /// Sorted by image table.
    pub autos: Vec<GroupHom>,
    pub inn_order: usize,
    pub outc_order: usize,
    /// One representative per coset `φ·Inn(G)`, the smallest in each; the
    /// first is the identity.
    pub coset_reps: Vec<GroupHom>,
}

/// The inner automorphism `x ↦ a x a⁻¹`.
pub fn inner_automorphism(g: &FiniteGroup, a: usize) -> GroupHom {
    GroupHom::from_images(g.elements().map(|x| g.conj(a, x)).collect())
}

/// Whether `phi` maps every element into its own conjugacy class.
pub fn is_class_preserving(class_ids: &[usize], phi: &GroupHom) -> bool {
    phi.images()
        .iter()
        .enumerate()
        .all(|(x, &y)| class_ids[x] == class_ids[y])
}

/// Distinct inner automorphisms, sorted.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    let set: HashSet<GroupHom> = g.elements().map(|a| inner_automorphism(g, a)).collect();
    let mut out: Vec<GroupHom> = set.into_iter().collect();
    out.sort();
    out
}

pub fn autc_enumerate(g: &FiniteGroup) -> Result<AutcSet> {
    autc_enumerate_with(g, DEFAULT_RIGIDITY_CAP)
}

/// Backtracking over generator images inside their own classes. The partial
/// map is pruned as soon as an element would leave its class or a relation
/// fails; every completed map is then checked element by element.
pub fn autc_enumerate_with(g: &FiniteGroup, cap: usize) -> Result<AutcSet> {
    let n = g.order();
    if n > cap {
        return Err(Error::cap("rigidity group order", cap, n));
    }
    let (classes, ids) = g.class_ids();
    let gens = g.generating_set();
    let accept = |x: usize, y: usize| ids[x] == ids[y];

    let mut autos: Vec<GroupHom> = if gens.is_empty() {
        vec![GroupHom::identity(g)]
    } else {
        classes[ids[gens[0]]]
            .par_iter()
            .map(|&first| {
                let mut candidates: Vec<Vec<usize>> =
                    gens.iter().map(|&x| classes[ids[x]].clone()).collect();
                candidates[0] = vec![first];
                let search = HomSearch {
                    src: g,
                    tgt: g,
                    gens: &gens,
                    candidates,
                    injective: true,
                    accept: &accept,
                };
                let mut found = Vec::new();
                search_homs(&search, &mut |images| {
                    found.push(GroupHom::from_images(images.to_vec()));
                    false
                });
                found
            })
            .flatten()
            .collect()
    };
    autos.sort();
    for phi in &autos {
        assert!(
            phi.is_homomorphism(g, g) && phi.is_bijective(g) && is_class_preserving(&ids, phi),
            "search produced a map that is not a class-preserving automorphism"
        );
    }

    let inn = inner_automorphisms(g);
    let inn_order = inn.len();
    assert_eq!(inn_order, n / g.center().order(), "|Inn(G)| = |G/Z(G)|");
    let members: HashSet<&GroupHom> = autos.iter().collect();
    for c in &inn {
        assert!(is_class_preserving(&ids, c), "inner automorphism moved a class");
        assert!(members.contains(c), "inner automorphism missing from Aut_c");
    }
    assert_group_closed(&autos, &members);

    let coset_reps = split_cosets(&autos, &inn);
    assert_eq!(autos.len() % inn_order, 0);
    assert_eq!(coset_reps.len() * inn_order, autos.len());
    Ok(AutcSet {
        group_order: n,
        outc_order: coset_reps.len(),
        autos,
        inn_order,
        coset_reps,
    })
}

fn assert_group_closed(autos: &[GroupHom], members: &HashSet<&GroupHom>) {
    for a in autos {
        assert!(members.contains(&a.inverse()), "Aut_c not closed under inverse");
        for b in autos {
            assert!(members.contains(&a.after(b)), "Aut_c not closed under composition");
        }
    }
}

/// Explicit left-coset splitting `φ·Inn`, taking the smallest remaining map
/// as each representative.
fn split_cosets(autos: &[GroupHom], inn: &[GroupHom]) -> Vec<GroupHom> {
    let mut remaining: HashSet<&GroupHom> = autos.iter().collect();
    let mut reps = Vec::new();
    for phi in autos {
        if !remaining.contains(phi) {
            continue;
        }
        for c in inn {
            let member = phi.after(c);
            assert!(remaining.remove(&member), "cosets of Inn overlap or leave Aut_c");
        }
        reps.push(phi.clone());
    }
    reps
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ShaVerdict {
    Rigid,
    /// A class-preserving automorphism that is not inner.
    NonRigid { witness: Vec<usize>, outc_order: usize },
}

impl ShaVerdict {
    pub fn is_rigid(&self) -> bool {
        matches!(self, ShaVerdict::Rigid)
    }
}

pub fn sha_rigid(g: &FiniteGroup) -> Result<ShaVerdict> {
    sha_rigid_with(g, DEFAULT_RIGIDITY_CAP)
}

pub fn sha_rigid_with(g: &FiniteGroup, cap: usize) -> Result<ShaVerdict> {
    Ok(verdict_of(&autc_enumerate_with(g, cap)?))
}

pub fn verdict_of(set: &AutcSet) -> ShaVerdict {
    match set.coset_reps.get(1) {
        None => ShaVerdict::Rigid,
        Some(w) => ShaVerdict::NonRigid {
            witness: w.images().to_vec(),
            outc_order: set.outc_order,
        },
    }
}
