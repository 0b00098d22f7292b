//! Finite groups as Cayley tables.
//!
//! Elements are indices `0..n` with `0` the identity. Every construction in
//! this module is deterministic, so element indices are stable across runs
//! and can be used as cache keys.

mod construct;
mod hom;
mod iso;
mod lattice;
mod subgroup;

use std::collections::HashMap;
use std::hash::Hash;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use construct::{
    central_product, central_product_default, central_product_identifying, direct_product, from_central_data, quotient,
};
pub use hom::GroupHom;
pub(crate) use hom::{search_homs, HomSearch};
pub(crate) use iso::invariant_fingerprint;
pub use iso::is_isomorphic;
pub use lattice::{all_subgroups, characteristic_subgroups, sylow_subgroup, CharacteristicSubgroups};
pub use subgroup::Subgroup;

/// Default cap on the order of groups built by closure.
pub const DEFAULT_ORDER_CAP: usize = 2048;

/// Default cap for subgroup-lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 128;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    origin: String,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table and validates the
    /// group axioms (associativity exhaustively when `n ≤ 64`).
    pub fn from_table(mul: Vec<Vec<usize>>, names: Vec<String>, origin: &str) -> Result<Self> {
        let n = mul.len();
        if n == 0 || names.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSpec("malformed multiplication table".into()));
        }
        let flat: Vec<u32> = mul.iter().flatten().map(|&x| x as u32).collect();
        let g = Self::from_flat(n, flat, names, origin.to_string());
        g.validate()?;
        Ok(g)
    }

    fn from_flat(n: usize, mul: Vec<u32>, names: Vec<String>, origin: String) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&x| x == 0).unwrap_or(0) as u32;
        }
        FiniteGroup {
            order: n,
            mul,
            inv,
            names,
            origin,
        }
    }

    /// Checks identity, Latin-square and inverse properties, and associativity
    /// for groups of order at most 64.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let bad = |msg: &str| Err(Error::InvalidSpec(format!("not a group: {msg}")));
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return bad("index 0 is not the identity");
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return bad("inverse table");
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == a {
                    return bad("row is not a permutation");
                }
                seen[c] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == b {
                    return bad("column is not a permutation");
                }
                seen[c] = b;
            }
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return bad("multiplication is not associative");
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// BFS closure of `gens` under right multiplication, starting from
    /// `identity`. Elements are indexed in discovery order; generators are
    /// applied in the order given.
    pub(crate) fn from_closure<T, F, N>(
        identity: T,
        gens: &[T],
        mul: F,
        name: N,
        cap: usize,
        origin: String,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
        N: Fn(&T) -> String,
    {
        let k = gens.len();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut right: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < elems.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = mul(&elems[head], g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elems.len();
                        if i >= cap {
                            return Err(Error::cap("group order", cap, i + 1));
                        }
                        index.insert(y.clone(), i as u32);
                        elems.push(y);
                        parent.push((head as u32, gi as u32));
                        i as u32
                    }
                };
                right.push(idx);
            }
            head += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (pb, g) = parent[b];
                let ap = table[a * n + pb as usize] as usize;
                table[a * n + b] = right[ap * k + g as usize];
            }
        }
        let names = elems.iter().map(name).collect();
        Ok(Self::from_flat(n, table, names, origin))
    }

    /// The group generated by permutations of `{0..d-1}` (each generator is
    /// the image list of a bijection). Products compose right to left:
    /// `(a·b)(x) = a(b(x))`. Generators are sorted before the BFS so that the
    /// element order does not depend on how they were listed.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_capped(gens, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutations_capped(gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        let degree = gens.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut sorted: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generators have different degrees ({} vs {degree})",
                    g.len()
                )));
            }
            let mut hit = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::InvalidPermutation(format!("{g:?} is not a bijection")));
                }
            }
            sorted.push(g.iter().map(|&x| x as u32).collect());
        }
        sorted.sort();
        sorted.dedup();
        let identity: Vec<u32> = (0..degree as u32).collect();
        sorted.retain(|g| *g != identity);
        let origin = format!(
            "perm:[{}]",
            sorted.iter().map(|g| cycle_string(g)).collect::<Vec<_>>().join(",")
        );
        Self::from_closure(
            identity,
            &sorted,
            |a, b| b.iter().map(|&x| a[x as usize]).collect(),
            |p| cycle_string(p),
            cap,
            origin,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn set_origin(&mut self, origin: impl Into<String>) {
        self.origin = origin.into();
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    /// `a·x·a⁻¹`
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(a, x), self.inv(a))
    }

    /// `[x, y] = x⁻¹y⁻¹xy`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(
            self.mul(self.inv(x), self.inv(y)),
            self.mul(x, y),
        )
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| (x + 1..self.order).all(|y| self.commutes(x, y)))
    }

    /// `Some(p)` if the order is a power of the prime `p` (including the
    /// trivial group, for which `None` is returned).
    pub fn p_group_prime(&self) -> Option<u64> {
        match crate::linalg::modular::factor(self.order as u64).as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        }
    }

    pub fn is_p_group(&self) -> bool {
        self.p_group_prime().is_some()
    }

    /// Hex SHA-256 of the multiplication table.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        for &x in &self.mul {
            h.update(x.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut list = vec![0];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    list.push(y);
                }
            }
            head += 1;
        }
        Subgroup::from_elements(self.order, list)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements(self.order, self.elements())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_elements(self.order, [0])
    }

    /// Conjugacy classes, each sorted, listed by increasing minimal element
    /// (so the class of the identity comes first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut class: Vec<usize> = Vec::new();
            for a in 0..n {
                let y = self.conj(a, x);
                if !assigned[y] {
                    assigned[y] = true;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Class index of every element (indices into [`Self::conjugacy_classes`]).
    pub fn class_ids(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let classes = self.conjugacy_classes();
        let mut ids = vec![0; self.order];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                ids[x] = i;
            }
        }
        (classes, ids)
    }

    /// Small generating set, chosen greedily: each step adds the element that
    /// enlarges the generated subgroup most, preferring elements in small
    /// conjugacy classes, then low indices.
    pub fn generating_set(&self) -> Vec<usize> {
        let (classes, ids) = self.class_ids();
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.trivial_subgroup();
        while current.order() < self.order {
            let mut best: Option<(usize, usize, usize)> = None; // (size, class size, elt)
            for x in self.elements() {
                if current.contains(x) {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(x);
                let size = self.subgroup_generated(&trial).order();
                let cs = classes[ids[x]].len();
                let better = match best {
                    None => true,
                    Some((bs, bc, _)) => size > bs || (size == bs && cs < bc),
                };
                if better {
                    best = Some((size, cs, x));
                }
            }
            let (_, _, x) = best.expect("proper subgroup has a complement element");
            gens.push(x);
            current = self.subgroup_generated(&gens);
        }
        gens
    }

    /// Elements of `H`, as a standalone group, with the embedding into `self`.
    /// Elements keep their relative order, so the identity stays at index 0.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let elems = h.elements();
        let n = elems.len();
        let mut local = vec![u32::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            local[x] = i as u32;
        }
        let mut table = vec![0u32; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * n + j] = local[self.mul(a, b)];
            }
        }
        let names = elems.iter().map(|&x| self.names[x].clone()).collect();
        let g = Self::from_flat(n, table, names, format!("subgroup of {}", self.origin));
        (g, elems)
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("origin", &self.origin)
            .finish()
    }
}

/// Cycle notation of a permutation image list, `()` for the identity.
pub fn cycle_string(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Image list of a permutation on `{0..degree-1}` given as a product of
/// cycles (applied right to left).
pub fn perm_from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..degree).collect();
    for cycle in cycles.iter().rev() {
        let mut seen = std::collections::HashSet::new();
        for &x in cycle {
            if x >= degree || !seen.insert(x) {
                return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
            }
        }
        let mut c: Vec<usize> = (0..degree).collect();
        for (i, &x) in cycle.iter().enumerate() {
            c[x] = cycle[(i + 1) % cycle.len()];
        }
        p = p.iter().map(|&x| c[x]).collect();
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(cycles: &[&[usize]], degree: usize) -> Vec<usize> {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        perm_from_cycles(&cs, degree).unwrap()
    }

    #[test]
    fn s3_from_transposition_and_three_cycle() {
        let g = FiniteGroup::from_permutations(&[perm(&[&[0, 1]], 3), perm(&[&[0, 1, 2]], 3)])
            .unwrap();
        assert_eq!(g.order(), 6);
        g.validate().unwrap();
        assert!(!g.is_abelian());
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn cyclic_and_klein() {
        let c4 = FiniteGroup::from_permutations(&[perm(&[&[0, 1, 2, 3]], 4)]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert_eq!(c4.exponent(), 4);
        let v4 =
            FiniteGroup::from_permutations(&[perm(&[&[0, 1]], 4), perm(&[&[2, 3]], 4)]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.is_abelian());
        assert_eq!(v4.exponent(), 2);
    }

    #[test]
    fn invalid_permutation_rejected() {
        let err = FiniteGroup::from_permutations(&[vec![0, 0, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidPermutation(_)));
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::from_permutations_capped(
            &[perm(&[&[0, 1]], 5), perm(&[&[0, 1, 2, 3, 4]], 5)],
            100,
        )
        .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = perm(&[&[0, 1]], 4);
        let b = perm(&[&[0, 1, 2, 3]], 4);
        let g1 = FiniteGroup::from_permutations(&[a.clone(), b.clone()]).unwrap();
        let g2 = FiniteGroup::from_permutations(&[b, a]).unwrap();
        assert_eq!(g1.fingerprint(), g2.fingerprint());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = perm(&[&[0, 2], &[1, 3, 4]], 5);
        assert_eq!(cycle_string(&p.iter().map(|&x| x as u32).collect::<Vec<_>>()), "(0 2)(1 3 4)");
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_permutations(&[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generating_set().is_empty());
    }
}
