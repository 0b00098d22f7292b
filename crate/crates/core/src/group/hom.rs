use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism given by the image of every element.
///
/// Source and target are not stored; callers keep track of them and pass
/// them to the checking methods.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupHom {
    images: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl GroupHom {
    /// Wraps an image table without checking it.
    pub fn from_images(images: Vec<usize>) -> Self {
        GroupHom { images }
    }

    /// Extends an assignment on generators; fails with `IllFormedHom` if the
    /// assignment does not respect the relations of the source.
    pub fn from_generators(
        src: &FiniteGroup,
        tgt: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Result<Self> {
        let mut map = vec![UNSET; src.order()];
        map[0] = 0;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (i, (&g, &t)) in gens.iter().zip(images).enumerate() {
                let y = src.mul(x, g);
                let ty = tgt.mul(map[x], t);
                if map[y] == UNSET {
                    map[y] = ty;
                    queue.push(y);
                } else if map[y] != ty {
                    return Err(Error::IllFormedHom { generator: i });
                }
            }
        }
        if queue.len() != src.order() {
            return Err(Error::InvalidSpec(
                "generators do not generate the source group".into(),
            ));
        }
        Ok(GroupHom { images: map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            images: g.elements().collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other` (apply `other` first).
    pub fn after(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_homomorphism(&self, src: &FiniteGroup, tgt: &FiniteGroup) -> bool {
        self.images.len() == src.order()
            && self.images.iter().all(|&y| y < tgt.order())
            && self.images[0] == 0
            && src.elements().all(|a| {
                src.elements()
                    .all(|b| self.images[src.mul(a, b)] == tgt.mul(self.images[a], self.images[b]))
            })
    }

    pub fn is_bijective(&self, tgt: &FiniteGroup) -> bool {
        if self.images.len() != tgt.order() {
            return false;
        }
        let mut hit = vec![false; tgt.order()];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn inverse(&self) -> GroupHom {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        GroupHom { images: inv }
    }

    pub fn kernel(&self, src: &FiniteGroup) -> Subgroup {
        Subgroup::from_elements(
            src.order(),
            src.elements().filter(|&x| self.images[x] == 0),
        )
    }

    pub fn image(&self, tgt: &FiniteGroup) -> Subgroup {
        Subgroup::from_elements(tgt.order(), self.images.iter().copied())
    }
}

/// Backtracking search for homomorphisms determined by generator images.
///
/// Each generator `gens[i]` ranges over `candidates[i]`. After every
/// assignment the partial map is extended to the subgroup generated so far;
/// every newly mapped pair `(x, y)` must satisfy `accept`, and when
/// `injective` is set, distinct elements must get distinct images.
pub(crate) struct HomSearch<'a> {
    pub src: &'a FiniteGroup,
    pub tgt: &'a FiniteGroup,
    pub gens: &'a [usize],
    pub candidates: Vec<Vec<usize>>,
    pub injective: bool,
    pub accept: &'a dyn Fn(usize, usize) -> bool,
}

struct SearchState {
    map: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

/// Runs the search, calling `visit` on each complete image table (indexed by
/// source element). `visit` returns `true` to stop. Returns whether the
/// search was stopped early.
pub(crate) fn search_homs(s: &HomSearch<'_>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut st = SearchState {
        map: vec![UNSET; s.src.order()],
        used: vec![false; s.tgt.order()],
        domain: vec![0],
    };
    st.map[0] = 0;
    st.used[0] = true;
    if !(s.accept)(0, 0) {
        return false;
    }
    descend(s, &mut st, 0, &mut Vec::new(), visit)
}

fn descend(
    s: &HomSearch<'_>,
    st: &mut SearchState,
    level: usize,
    images: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if level == s.gens.len() {
        debug_assert!(st.domain.len() == s.src.order(), "gens must generate");
        return visit(&st.map);
    }
    for &t in &s.candidates[level] {
        images.push(t);
        let mark = st.domain.len();
        let ok = extend(s, st, level, images);
        if ok && descend(s, st, level + 1, images, visit) {
            return true;
        }
        for &x in &st.domain[mark..] {
            if s.injective {
                st.used[st.map[x]] = false;
            }
            st.map[x] = UNSET;
        }
        st.domain.truncate(mark);
        images.pop();
    }
    false
}

/// Closes the partial map under generators `0..=level`. New elements are
/// appended to `st.domain`; on conflict, returns false and leaves the caller
/// to roll back.
fn extend(s: &HomSearch<'_>, st: &mut SearchState, level: usize, images: &[usize]) -> bool {
    let (src, tgt) = (s.src, s.tgt);
    let g = s.gens[level];
    let t = images[level];
    let old = st.domain.len();
    // Edges of old elements along the new generator.
    for i in 0..old {
        let x = st.domain[i];
        if !assign(s, st, src.mul(x, g), tgt.mul(st.map[x], t)) {
            return false;
        }
    }
    // New elements along every generator so far.
    let mut head = old;
    while head < st.domain.len() {
        let x = st.domain[head];
        head += 1;
        for j in 0..=level {
            if !assign(s, st, src.mul(x, s.gens[j]), tgt.mul(st.map[x], images[j])) {
                return false;
            }
        }
    }
    true
}

fn assign(s: &HomSearch<'_>, st: &mut SearchState, y: usize, ty: usize) -> bool {
    if st.map[y] != UNSET {
        return st.map[y] == ty;
    }
    if (s.injective && st.used[ty]) || !(s.accept)(y, ty) {
        return false;
    }
    st.map[y] = ty;
    if s.injective {
        st.used[ty] = true;
    }
    st.domain.push(y);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::perm_from_cycles;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[
            perm_from_cycles(&[vec![0, 1]], 3).unwrap(),
            perm_from_cycles(&[vec![0, 1, 2]], 3).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn automorphisms_of_s3_are_six() {
        let g = s3();
        let gens = g.generating_set();
        let all: Vec<usize> = g.elements().collect();
        let search = HomSearch {
            src: &g,
            tgt: &g,
            gens: &gens,
            candidates: vec![all; gens.len()],
            injective: true,
            accept: &|_, _| true,
        };
        let mut count = 0;
        search_homs(&search, &mut |m| {
            let h = GroupHom::from_images(m.to_vec());
            assert!(h.is_homomorphism(&g, &g));
            assert!(h.is_bijective(&g));
            count += 1;
            false
        });
        assert_eq!(count, 6);
    }

    #[test]
    fn homs_s3_to_c2() {
        let g = s3();
        let c2 = FiniteGroup::from_permutations(&[vec![1, 0]]).unwrap();
        let gens = g.generating_set();
        let search = HomSearch {
            src: &g,
            tgt: &c2,
            gens: &gens,
            candidates: vec![vec![0, 1]; gens.len()],
            injective: false,
            accept: &|_, _| true,
        };
        let mut count = 0;
        search_homs(&search, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 2);
    }

    #[test]
    fn ill_formed_generator_images() {
        let g = s3();
        let c3 = FiniteGroup::from_permutations(&[vec![1, 2, 0]]).unwrap();
        let gens = g.generating_set();
        let img: Vec<usize> = gens.iter().map(|_| 1).collect();
        // S3 is not generated by its 3-cycles, so some generator is an involution.
        let r = GroupHom::from_generators(&g, &c3, &gens, &img);
        assert!(matches!(r, Err(Error::IllFormedHom { .. })));
    }
}
