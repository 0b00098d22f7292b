use std::collections::HashSet;

use serde::Serialize;

use super::{quotient, FiniteGroup, Subgroup, DEFAULT_LATTICE_CAP};
use crate::error::{Error, Result};
use crate::linalg::modular::factor;
use crate::linalg::normalize_factors;

/// Center, derived subgroup, Frattini subgroup and (for p-groups) the
/// subgroup generated by elements of order `p`.
#[derive(Clone, Debug)]
pub struct CharacteristicSubgroups {
    pub center: Subgroup,
    pub derived: Subgroup,
    pub frattini: Subgroup,
    pub omega1: Option<Subgroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicOrders {
    pub center: usize,
    pub derived: usize,
    pub frattini: usize,
    pub omega1: Option<usize>,
}

impl CharacteristicSubgroups {
    pub fn orders(&self) -> CharacteristicOrders {
        CharacteristicOrders {
            center: self.center.order(),
            derived: self.derived.order(),
            frattini: self.frattini.order(),
            omega1: self.omega1.as_ref().map(Subgroup::order),
        }
    }
}

impl FiniteGroup {
    pub fn center(&self) -> Subgroup {
        self.whole().centralizer(self)
    }

    /// `[G, G]`
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order()];
        for x in self.elements() {
            for y in self.elements() {
                let c = self.commutator(x, y);
                if !std::mem::replace(&mut seen[c], true) {
                    comms.push(c);
                }
            }
        }
        self.subgroup_generated(&comms)
    }

    /// `Φ(G)`: for p-groups `G^p[G,G]`, otherwise the intersection of the
    /// maximal subgroups from the full lattice (subject to the lattice cap).
    pub fn frattini_subgroup(&self) -> Result<Subgroup> {
        if let Some(p) = self.p_group_prime() {
            let mut gens: Vec<usize> = self.derived_subgroup().elements();
            gens.extend(self.elements().map(|x| self.pow(x, p as usize)));
            gens.sort_unstable();
            gens.dedup();
            return Ok(self.subgroup_generated(&gens));
        }
        if self.order() == 1 {
            return Ok(self.whole());
        }
        let subs = all_subgroups(self, DEFAULT_LATTICE_CAP)?;
        let proper: Vec<&Subgroup> = subs.iter().filter(|s| s.order() < self.order()).collect();
        let mut acc = self.whole();
        for h in &proper {
            let maximal = !proper
                .iter()
                .any(|k| k.order() > h.order() && h.is_subgroup_of(k));
            if maximal {
                acc = acc.intersection(h);
            }
        }
        Ok(acc)
    }

    /// `Ω₁(G)` for a p-group: the subgroup generated by elements of order `p`.
    pub fn omega1(&self) -> Result<Subgroup> {
        let p = self.p_group_prime().ok_or(Error::NotPGroup)? as usize;
        let gens: Vec<usize> = self
            .elements()
            .filter(|&x| self.element_order(x) == p)
            .collect();
        Ok(self.subgroup_generated(&gens))
    }

    /// Invariant factors of an abelian group, read off from the sizes of
    /// `{x : x^{p^k} = 1}`; `None` for nonabelian groups.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let orders = self.element_orders();
        let mut prime_powers = Vec::new();
        for (p, e) in factor(self.order() as u64) {
            // ranks[k] = log_p |{x : x^{p^k} = 1}|
            let ranks: Vec<u32> = (0..=e)
                .map(|k| {
                    let bound = p.pow(k) as usize;
                    let count = orders.iter().filter(|&&o| bound.is_multiple_of(o)).count() as u64;
                    count.ilog(p)
                })
                .collect();
            for k in 1..=e as usize {
                // factors of order at least p^k minus those of order at least p^{k+1}
                let at_least = ranks[k] - ranks[k - 1];
                let beyond = ranks.get(k + 1).map_or(0, |r| r - ranks[k]);
                prime_powers.extend(std::iter::repeat_n(p.pow(k as u32), (at_least - beyond) as usize));
            }
        }
        Some(normalize_factors(&prime_powers))
    }

    /// Invariant factors of `G / [G, G]`.
    pub fn abelianization_invariants(&self) -> Result<Vec<u64>> {
        let (ab, _) = quotient(self, &self.derived_subgroup())?;
        Ok(ab.abelian_invariants().expect("G/[G,G] is abelian"))
    }
}

pub fn characteristic_subgroups(g: &FiniteGroup) -> Result<CharacteristicSubgroups> {
    let out = CharacteristicSubgroups {
        center: g.center(),
        derived: g.derived_subgroup(),
        frattini: g.frattini_subgroup()?,
        omega1: if g.is_p_group() { Some(g.omega1()?) } else { None },
    };
    for s in [&out.center, &out.derived, &out.frattini]
        .into_iter()
        .chain(out.omega1.as_ref())
    {
        assert!(s.is_normal(g), "characteristic subgroup is not normal");
    }
    Ok(out)
}

/// Every subgroup of `g`, in canonical order (by size, then element list).
///
/// Starts from the cyclic subgroups and joins each known subgroup with every
/// cyclic subgroup until no new subgroup appears.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::cap("order for subgroup enumeration", cap, g.order()));
    }
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    for x in g.elements() {
        let c = g.subgroup_generated(&[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let mut queue: Vec<(Vec<usize>, Subgroup)> = cyclic
        .iter()
        .map(|(x, c)| (vec![*x], c.clone()))
        .collect();
    let mut head = 0;
    while head < queue.len() {
        let (gens, h) = queue[head].clone();
        head += 1;
        for (x, c) in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let mut joined = gens.clone();
            joined.push(*x);
            let k = g.subgroup_generated(&joined);
            if seen.insert(k.clone()) {
                queue.push((joined, k));
            }
        }
    }
    let mut out: Vec<Subgroup> = queue.into_iter().map(|(_, s)| s).collect();
    out.sort();
    Ok(out)
}

/// A Sylow `p`-subgroup, grown greedily: repeatedly adjoin the lowest-index
/// `p`-element that normalizes the current subgroup without lying in it.
pub fn sylow_subgroup(g: &FiniteGroup, p: u64) -> Subgroup {
    let p = p as usize;
    let mut target = 1;
    let mut n = g.order();
    while p > 1 && n.is_multiple_of(p) {
        n /= p;
        target *= p;
    }
    let is_p_power = |mut k: usize| {
        while k.is_multiple_of(p) {
            k /= p;
        }
        k == 1
    };
    let mut gens: Vec<usize> = Vec::new();
    let mut current = g.trivial_subgroup();
    while current.order() < target {
        let norm = current.normalizer(g);
        let x = norm
            .iter()
            .find(|&x| !current.contains(x) && is_p_power(g.element_order(x)))
            .expect("a proper p-subgroup is properly contained in its normalizer's p-part");
        gens.push(x);
        current = g.subgroup_generated(&gens);
    }
    current
}
