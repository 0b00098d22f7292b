use std::path::Path;

use serde::Deserialize;

use super::spec::{ExtraspecialKind, GroupSpec};
use crate::error::{Error, Result};
use crate::fastpath::GammaData;
use crate::group::{
    central_product_default, direct_product, from_central_data, perm_from_cycles, FiniteGroup,
};

/// Builds the group described by `spec`. The result's origin is the spec's
/// canonical string.
pub fn make(spec: &GroupSpec) -> Result<FiniteGroup> {
    spec.validate()?;
    let mut g = build(spec)?;
    g.set_origin(spec.to_string());
    Ok(g)
}

fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
    use GroupSpec::*;
    match spec {
        Cyclic(n) => cyclic(*n),
        Abelian(ds) => {
            let degree: usize = ds.iter().sum();
            let mut gens = Vec::new();
            let mut offset = 0;
            for &d in ds {
                if d > 1 {
                    let cycle: Vec<usize> = (offset..offset + d).collect();
                    gens.push(perm_from_cycles(&[cycle], degree)?);
                }
                offset += d;
            }
            FiniteGroup::from_permutations(&gens)
        }
        Dihedral(n) => Metacyclic::new(n / 2, 2, n / 2 - 1, 0).build(),
        Dicyclic(n) => Metacyclic::new(n / 2, 2, n / 2 - 1, n / 4).build(),
        Quaternion(n) => Metacyclic::new(n / 2, 2, n / 2 - 1, n / 4).build(),
        Semidihedral(n) => Metacyclic::new(n / 2, 2, n / 4 - 1, 0).build(),
        Modular(n) => Metacyclic::new(n / 2, 2, n / 4 + 1, 0).build(),
        Symmetric(n) => {
            let n = *n;
            if n == 1 {
                return FiniteGroup::from_permutations(&[]);
            }
            let t = perm_from_cycles(&[vec![0, 1]], n)?;
            let c = perm_from_cycles(&[(0..n).collect()], n)?;
            FiniteGroup::from_permutations(&[t, c])
        }
        Alternating(n) => {
            let n = *n;
            let t = perm_from_cycles(&[vec![0, 1, 2]], n)?;
            let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
            let c = perm_from_cycles(&[long], n)?;
            FiniteGroup::from_permutations(&[t, c])
        }
        Extraspecial { p, n, kind } => extraspecial(*p, *n, *kind),
        AlmostExtraspecial { p, n } => {
            let (p, n) = (*p, *n);
            let e = if p == 2 {
                extraspecial(2, n, ExtraspecialKind::TypeD)?
            } else {
                extraspecial(p, n, ExtraspecialKind::ExponentP)?
            };
            central_product_default(&cyclic((p * p) as usize)?, &e)
        }
        Product(a, b) => direct_product(&make(a)?, &make(b)?),
        CentralProduct(a, b) => central_product_default(&make(a)?, &make(b)?),
        Perm(gens) => {
            let degree = gens
                .iter()
                .flatten()
                .flatten()
                .max()
                .map_or(1, |&m| m + 1);
            let perms: Vec<Vec<usize>> = gens
                .iter()
                .map(|cycles| perm_from_cycles(cycles, degree))
                .collect::<Result<_>>()?;
            FiniteGroup::from_permutations(&perms)
        }
        File(path) => load_file(path),
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 1 {
        return FiniteGroup::from_permutations(&[]);
    }
    FiniteGroup::from_permutations(&[perm_from_cycles(&[(0..n).collect()], n)?])
}

fn extraspecial(p: u64, n: usize, kind: ExtraspecialKind) -> Result<FiniteGroup> {
    use ExtraspecialKind::*;
    match kind {
        ExponentP => from_central_data(&GammaData::symplectic(p, n)?),
        ExponentP2 => {
            let p = p as usize;
            // a^{p²} = b^p = 1, b a b⁻¹ = a^{1+p}
            let m = Metacyclic::new(p * p, p, 1 + p, 0).build()?;
            if n == 1 {
                Ok(m)
            } else {
                central_product_default(&m, &extraspecial(p as u64, n - 1, ExponentP)?)
            }
        }
        TypeD | TypeQ => {
            let d8 = Metacyclic::new(4, 2, 3, 0).build()?;
            let mut g = if kind == TypeQ {
                Metacyclic::new(4, 2, 3, 2).build()?
            } else {
                d8.clone()
            };
            for _ in 1..n {
                g = central_product_default(&g, &d8)?;
            }
            Ok(g)
        }
    }
}

/// `⟨a, b | a^n = 1, b^k = a^s, b a b⁻¹ = a^r⟩` on normal forms `a^i b^j`,
/// `0 ≤ i < n`, `0 ≤ j < k`. Requires `r^k ≡ 1` and `r·s ≡ s (mod n)`.
struct Metacyclic {
    n: usize,
    k: usize,
    r: usize,
    s: usize,
}

impl Metacyclic {
    fn new(n: usize, k: usize, r: usize, s: usize) -> Self {
        Metacyclic { n, k, r: r % n.max(1), s: s % n.max(1) }
    }

    fn mul(&self, (i, j): (usize, usize), (a, b): (usize, usize)) -> (usize, usize) {
        let n = self.n;
        let twist = (0..j).fold(a, |acc, _| acc * self.r % n);
        let mut x = (i + twist) % n;
        let mut y = j + b;
        if y >= self.k {
            y -= self.k;
            x = (x + self.s) % n;
        }
        (x, y)
    }

    /// Left-regular permutation representation on the normal forms.
    fn build(&self) -> Result<FiniteGroup> {
        let (n, k) = (self.n, self.k);
        let mut rk = 1 % n;
        for _ in 0..k {
            rk = rk * self.r % n;
        }
        debug_assert!(rk == 1 % n && self.r * self.s % n == self.s);
        let index = |(i, j): (usize, usize)| i * k + j;
        let regular = |g: (usize, usize)| -> Vec<usize> {
            (0..n * k).map(|x| index(self.mul(g, (x / k, x % k)))).collect()
        };
        FiniteGroup::from_permutations(&[regular((1 % n, 0)), regular((0, 1 % k))])
    }
}

#[derive(Deserialize)]
struct GroupFile {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

fn load_file(path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)?;
    let file: GroupFile = serde_json::from_str(&text)?;
    if let Some(g) = file.generators.iter().find(|g| g.len() != file.degree) {
        return Err(Error::InvalidPermutation(format!(
            "generator of length {} in a file of degree {}",
            g.len(),
            file.degree
        )));
    }
    FiniteGroup::from_permutations(&file.generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;

    fn g(s: &str) -> FiniteGroup {
        make(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        for (s, n) in [
            ("cyclic:1", 1),
            ("cyclic:12", 12),
            ("abelian:[2,4]", 8),
            ("dihedral:8", 8),
            ("dihedral:6", 6),
            ("dicyclic:12", 12),
            ("quaternion:8", 8),
            ("quaternion:16", 16),
            ("semidihedral:16", 16),
            ("modular:16", 16),
            ("sym:4", 24),
            ("alt:4", 12),
            ("alt:5", 60),
            ("extraspecial:p=3,n=1,exp=p", 27),
            ("extraspecial:p=3,n=1,exp=p^2", 27),
            ("extraspecial:p=2,n=2,type=D", 32),
            ("extraspecial:p=2,n=2,type=Q", 32),
            ("almostextra:p=3,n=1", 81),
            ("almostextra:p=2,n=1", 16),
            ("product:dihedral:8*cyclic:2", 16),
            ("centralproduct:dihedral:8,cyclic:4", 16),
            ("perm:[(0 1),(0 1 2)]", 6),
        ] {
            let grp = g(s);
            assert_eq!(grp.order(), n, "{s}");
            assert_eq!(grp.origin(), s);
            if n <= 64 {
                grp.validate().unwrap();
            }
        }
    }

    #[test]
    fn family_shapes() {
        assert_eq!(g("dihedral:8").center().order(), 2);
        assert_eq!(g("quaternion:8").element_orders().iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(g("quaternion:16").element_orders().iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(g("dicyclic:12").element_orders().iter().filter(|&&o| o == 2).count(), 1);
        let sd = g("semidihedral:16");
        let m = g("modular:16");
        assert_eq!(sd.center().order(), 2);
        assert_eq!(m.center().order(), 4);
        assert!(is_isomorphic(&g("dihedral:6"), &g("sym:3")).is_some());
        assert!(is_isomorphic(&g("extraspecial:p=2,n=1,type=D"), &g("dihedral:8")).is_some());
        assert!(is_isomorphic(&g("extraspecial:p=2,n=1,type=Q"), &g("quaternion:8")).is_some());
        assert!(is_isomorphic(&g("abelian:[2,3]"), &g("cyclic:6")).is_some());
    }

    #[test]
    fn extraspecial_27_exponents() {
        let a = g("extraspecial:p=3,n=1,exp=p");
        let b = g("extraspecial:p=3,n=1,exp=p^2");
        assert_eq!(a.exponent(), 3);
        assert_eq!(b.exponent(), 9);
        assert_eq!(a.center().order(), 3);
        assert_eq!(b.center().order(), 3);
        assert!(is_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn almost_extraspecial_81() {
        let grp = g("almostextra:p=3,n=1");
        let z = grp.center();
        assert_eq!(z.order(), 9);
        assert!(z.is_cyclic(&grp));
        let phi = grp.frattini_subgroup().unwrap();
        assert_eq!(phi.order(), 3);
        assert_eq!(phi, grp.derived_subgroup());
    }

    #[test]
    fn type_d_and_q_differ_at_32() {
        let d = g("extraspecial:p=2,n=2,type=D");
        let q = g("extraspecial:p=2,n=2,type=Q");
        assert!(is_isomorphic(&d, &q).is_none());
    }

    #[test]
    fn file_loader() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        std::fs::write(&path, r#"{"degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        let grp = make(&GroupSpec::File(path.clone())).unwrap();
        assert_eq!(grp.order(), 6);
        std::fs::write(&path, r#"{"degree":3,"generators":[[1,0]]}"#).unwrap();
        assert!(make(&GroupSpec::File(path)).is_err());
    }
}
