use serde::Serialize;

use super::{central_quotient, is_almost_extraspecial, is_extraspecial};
use crate::error::{Error, Result};
use crate::group::{invariant_fingerprint, search_homs, FiniteGroup, GroupHom, HomSearch};

/// Largest central quotient searched by [`isoclinic`].
pub const ISOCLINISM_QUOTIENT_CAP: usize = 256;

/// Compatible isomorphisms `α: G₁/Z₁ → G₂/Z₂` and `β: [G₁,G₁] → [G₂,G₂]`.
///
/// `alpha` acts on central-quotient indices; `beta` acts on the derived
/// subgroups as standalone groups, whose elements are listed in `derived`
/// (in increasing order of their index in `G₁` and `G₂`).
#[derive(Clone, Debug)]
pub struct IsoclinismWitness {
    pub alpha: GroupHom,
    pub beta: GroupHom,
    pub derived: (Vec<usize>, Vec<usize>),
    pub compatibility: bool,
}

/// Central quotient, coset lifts, derived subgroup and its local indexing.
struct CommutatorData {
    quotient: FiniteGroup,
    lifts: Vec<usize>,
    derived_group: FiniteGroup,
    derived: Vec<usize>,
    local: Vec<usize>,
}

impl CommutatorData {
    fn new(g: &FiniteGroup) -> Self {
        let (quotient, proj) = central_quotient(g);
        let mut lifts = vec![usize::MAX; quotient.order()];
        for x in g.elements() {
            let q = proj.apply(x);
            if lifts[q] == usize::MAX {
                lifts[q] = x;
            }
        }
        let (derived_group, derived) = g.subgroup_as_group(&g.derived_subgroup());
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in derived.iter().enumerate() {
            local[x] = i;
        }
        CommutatorData {
            quotient,
            lifts,
            derived_group,
            derived,
            local,
        }
    }

    /// `[x, y]` for lifts of `q, r`, as a local index in the derived subgroup.
    fn commutator(&self, g: &FiniteGroup, q: usize, r: usize) -> usize {
        self.local[g.commutator(self.lifts[q], self.lifts[r])]
    }
}

impl IsoclinismWitness {
    /// Rechecks that both maps are isomorphisms and that
    /// `β([x, y]) = [x', y']` for lifts `x', y'` of `α(x̄), α(ȳ)`.
    pub fn verify(&self, g1: &FiniteGroup, g2: &FiniteGroup) -> bool {
        let (c1, c2) = (CommutatorData::new(g1), CommutatorData::new(g2));
        self.derived == (c1.derived.clone(), c2.derived.clone())
            && self.alpha.is_homomorphism(&c1.quotient, &c2.quotient)
            && self.alpha.is_bijective(&c2.quotient)
            && self.beta.is_homomorphism(&c1.derived_group, &c2.derived_group)
            && self.beta.is_bijective(&c2.derived_group)
            && compatible(g1, g2, &c1, &c2, &self.alpha, &self.beta)
    }

    /// The witness for the pair in the other order.
    pub fn inverse(&self) -> IsoclinismWitness {
        IsoclinismWitness {
            alpha: self.alpha.inverse(),
            beta: self.beta.inverse(),
            derived: (self.derived.1.clone(), self.derived.0.clone()),
            compatibility: self.compatibility,
        }
    }
}

fn compatible(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    c1: &CommutatorData,
    c2: &CommutatorData,
    alpha: &GroupHom,
    beta: &GroupHom,
) -> bool {
    c1.quotient.elements().all(|q| {
        c1.quotient.elements().all(|r| {
            beta.apply(c1.commutator(g1, q, r)) == c2.commutator(g2, alpha.apply(q), alpha.apply(r))
        })
    })
}

/// `β` forced by `α` on commutators, if it is a well-defined isomorphism.
fn forced_beta(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    c1: &CommutatorData,
    c2: &CommutatorData,
    alpha: &[usize],
) -> Option<GroupHom> {
    let k = c1.quotient.order();
    let mut on_commutators = vec![usize::MAX; c1.derived.len()];
    for q in 0..k {
        for r in 0..k {
            let x = c1.commutator(g1, q, r);
            let y = c2.commutator(g2, alpha[q], alpha[r]);
            let slot = &mut on_commutators[x];
            if *slot == usize::MAX {
                *slot = y;
            } else if *slot != y {
                return None;
            }
        }
    }
    let gens: Vec<usize> = (1..on_commutators.len())
        .filter(|&x| on_commutators[x] != usize::MAX)
        .collect();
    let images: Vec<usize> = gens.iter().map(|&x| on_commutators[x]).collect();
    let beta = GroupHom::from_generators(&c1.derived_group, &c2.derived_group, &gens, &images).ok()?;
    beta.is_bijective(&c2.derived_group).then_some(beta)
}

pub fn isoclinic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Option<IsoclinismWitness>> {
    isoclinic_with(g1, g2, ISOCLINISM_QUOTIENT_CAP)
}

/// Backtracks over isomorphisms `α` of the central quotients (generator
/// images restricted to matching element order and class size), forcing
/// `β` on commutators and accepting the first `α` for which `β` is a
/// well-defined isomorphism.
pub fn isoclinic_with(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    quotient_cap: usize,
) -> Result<Option<IsoclinismWitness>> {
    let (c1, c2) = (CommutatorData::new(g1), CommutatorData::new(g2));
    let (q1, q2) = (&c1.quotient, &c2.quotient);
    let largest = q1.order().max(q2.order());
    if largest > quotient_cap {
        return Err(Error::cap("central quotient order", quotient_cap, largest));
    }
    if q1.order() != q2.order()
        || c1.derived.len() != c2.derived.len()
        || invariant_fingerprint(q1) != invariant_fingerprint(q2)
        || invariant_fingerprint(&c1.derived_group) != invariant_fingerprint(&c2.derived_group)
    {
        return Ok(None);
    }
    let (cl1, id1) = q1.class_ids();
    let (cl2, id2) = q2.class_ids();
    let (o1, o2) = (q1.element_orders(), q2.element_orders());
    let key1 = |x: usize| (o1[x], cl1[id1[x]].len());
    let key2 = |y: usize| (o2[y], cl2[id2[y]].len());
    let gens = q1.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| q2.elements().filter(|&y| key2(y) == key1(x)).collect())
        .collect();
    let accept = |x: usize, y: usize| key1(x) == key2(y);
    let search = HomSearch {
        src: q1,
        tgt: q2,
        gens: &gens,
        candidates,
        injective: true,
        accept: &accept,
    };
    let mut found = None;
    search_homs(&search, &mut |alpha| {
        if let Some(beta) = forced_beta(g1, g2, &c1, &c2, alpha) {
            found = Some((GroupHom::from_images(alpha.to_vec()), beta));
            true
        } else {
            false
        }
    });
    Ok(found.map(|(alpha, beta)| {
        let compatibility = compatible(g1, g2, &c1, &c2, &alpha, &beta);
        assert!(compatibility, "forced β is not compatible with α");
        IsoclinismWitness {
            alpha,
            beta,
            derived: (c1.derived.clone(), c2.derived.clone()),
            compatibility,
        }
    }))
}

/// Outcome of comparing an almost extraspecial group with `Ω₁(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaCheck {
    pub omega_order: usize,
    pub omega_extraspecial: bool,
    pub isoclinic: bool,
}

impl OmegaCheck {
    pub fn passed(&self) -> bool {
        self.omega_extraspecial && self.isoclinic
    }
}

/// For almost extraspecial `G`, whether `H = Ω₁(G)` is extraspecial and
/// isoclinic to `G`.
pub fn omega_isoclinism_check(g: &FiniteGroup) -> Result<OmegaCheck> {
    if !g.is_p_group() || !is_almost_extraspecial(g)? {
        return Err(Error::NotApplicable("group is not almost extraspecial".into()));
    }
    let omega = g.omega1()?;
    let (h, _) = g.subgroup_as_group(&omega);
    let omega_extraspecial = h.order() > 1 && is_extraspecial(&h)?;
    Ok(OmegaCheck {
        omega_order: h.order(),
        omega_extraspecial,
        isoclinic: isoclinic(g, &h)?.is_some(),
    })
}
