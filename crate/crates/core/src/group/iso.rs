use super::{search_homs, FiniteGroup, GroupHom, HomSearch};

/// Sorted multiset of (element order, class size) pairs, plus the sorted
/// class sizes. Equal for isomorphic groups.
pub(crate) fn invariant_fingerprint(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let (classes, ids) = g.class_ids();
    let mut v: Vec<(usize, usize)> = g
        .elements()
        .map(|x| (g.element_order(x), classes[ids[x]].len()))
        .collect();
    v.sort_unstable();
    v
}

/// An isomorphism `g1 → g2` if one exists.
///
/// Generators of `g1` are mapped to elements of `g2` with the same order and
/// class size; every element reached by the partial map must keep both
/// invariants, and the map must stay injective.
pub fn is_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<GroupHom> {
    if g1.order() != g2.order() {
        return None;
    }
    if invariant_fingerprint(g1) != invariant_fingerprint(g2) {
        return None;
    }
    let (c1, id1) = g1.class_ids();
    let (c2, id2) = g2.class_ids();
    let o1 = g1.element_orders();
    let o2 = g2.element_orders();
    let key1 = |x: usize| (o1[x], c1[id1[x]].len());
    let key2 = |y: usize| (o2[y], c2[id2[y]].len());
    let gens = g1.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| g2.elements().filter(|&y| key2(y) == key1(x)).collect())
        .collect();
    let accept = |x: usize, y: usize| key1(x) == key2(y);
    let search = HomSearch {
        src: g1,
        tgt: g2,
        gens: &gens,
        candidates,
        injective: true,
        accept: &accept,
    };
    let mut found = None;
    search_homs(&search, &mut |m| {
        found = Some(GroupHom::from_images(m.to_vec()));
        true
    });
    if let Some(h) = &found {
        assert!(h.is_bijective(g2) && h.is_homomorphism(g1, g2));
    }
    found
}
