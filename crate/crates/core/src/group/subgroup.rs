use fixedbitset::FixedBitSet;

use super::FiniteGroup;

/// A subset of a group's elements that is closed under multiplication.
///
/// The ambient group is not stored; every method that needs the
/// multiplication takes it as an argument and must be given the group the
/// subgroup was built in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_elements(ambient: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut members = FixedBitSet::with_capacity(ambient);
        for x in elems {
            members.insert(x);
        }
        let elements = members.ones().collect();
        Subgroup { members, elements }
    }

    /// Builds a subgroup from an explicit element list, checking closure.
    pub fn try_from_elements(g: &FiniteGroup, elems: &[usize]) -> Option<Self> {
        let s = Self::from_elements(g.order(), elems.iter().copied());
        s.is_closed(g).then_some(s)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    /// Members in increasing index order.
    pub fn elements(&self) -> Vec<usize> {
        self.elements.clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        let elements = m.ones().collect();
        Subgroup {
            members: m,
            elements,
        }
    }

    pub fn is_closed(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self
                .iter()
                .all(|a| self.iter().all(|b| self.contains(g.mul(a, b))))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.elements()
            .all(|a| self.iter().all(|x| self.contains(g.conj(a, x))))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.iter()
            .all(|a| self.iter().all(|b| g.commutes(a, b)))
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.iter().any(|x| g.element_order(x) == self.order())
    }

    /// `a·H·a⁻¹`
    pub fn conjugate(&self, g: &FiniteGroup, a: usize) -> Subgroup {
        Subgroup::from_elements(g.order(), self.iter().map(|x| g.conj(a, x)))
    }

    /// `{a : a·H·a⁻¹ = H}`
    pub fn normalizer(&self, g: &FiniteGroup) -> Subgroup {
        Subgroup::from_elements(
            g.order(),
            g.elements()
                .filter(|&a| self.iter().all(|x| self.contains(g.conj(a, x)))),
        )
    }

    /// `{a : a commutes with every element of H}`
    pub fn centralizer(&self, g: &FiniteGroup) -> Subgroup {
        Subgroup::from_elements(
            g.order(),
            g.elements().filter(|&a| self.iter().all(|x| g.commutes(a, x))),
        )
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by size, then lexicographically by element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}
