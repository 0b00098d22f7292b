use std::collections::HashMap;

use rayon::prelude::*;

use super::{make, GroupSpec};
use crate::error::{Error, Result};
use crate::group::{invariant_fingerprint, is_isomorphic, FiniteGroup, DEFAULT_LATTICE_CAP};
use crate::structure::{rigid_classes, RigidClass};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    pub tags: Vec<RigidClass>,
}

/// Products of a small nonabelian group with a small group; all of them are
/// listed and filtered by order.
const PRODUCTS: &[&str] = &[
    "product:sym:3*cyclic:2",
    "product:sym:3*cyclic:3",
    "product:sym:3*cyclic:4",
    "product:sym:3*abelian:[2,2]",
    "product:dihedral:8*cyclic:2",
    "product:quaternion:8*cyclic:2",
    "product:dihedral:8*cyclic:3",
    "product:quaternion:8*cyclic:3",
    "product:alt:4*cyclic:2",
    "product:dihedral:8*cyclic:4",
    "product:quaternion:8*cyclic:4",
    "product:dihedral:8*abelian:[2,2]",
    "product:quaternion:8*abelian:[2,2]",
    "product:dicyclic:12*cyclic:2",
    "product:sym:3*sym:3",
    "product:sym:3*dihedral:8",
    "product:sym:3*quaternion:8",
    "product:dihedral:8*dihedral:8",
    "product:extraspecial:p=3,n=1,exp=p*cyclic:3",
];

const CENTRAL_PRODUCTS: &[(&str, usize)] = &[("centralproduct:dihedral:8,cyclic:4", 16)];

/// Abelian invariant-factor lists `d₁ | d₂ | …` with at least two factors
/// and product `n`.
fn noncyclic_abelian(n: usize) -> Vec<Vec<usize>> {
    fn chains(rest: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            if acc.len() >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        for d in min.max(2)..=rest {
            let divides_prev = acc.last().is_none_or(|&prev| d % prev == 0);
            if rest.is_multiple_of(d) && divides_prev {
                acc.push(d);
                chains(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    chains(n, 2, &mut Vec::new(), &mut out);
    out
}

fn candidate_specs(max_order: usize) -> Vec<String> {
    let mut out: Vec<(String, usize)> = Vec::new();
    for n in 1..=max_order {
        out.push((format!("cyclic:{n}"), n));
    }
    for n in 4..=max_order {
        for ds in noncyclic_abelian(n) {
            let list: Vec<String> = ds.iter().map(usize::to_string).collect();
            out.push((format!("abelian:[{}]", list.join(",")), n));
        }
    }
    for k in 3..=5 {
        let spec = format!("sym:{k}");
        let order = (1..=k).product();
        out.push((spec, order));
    }
    for k in 4..=5 {
        out.push((format!("alt:{k}"), (1..=k).product::<usize>() / 2));
    }
    for n in (6..=max_order).step_by(2) {
        out.push((format!("dihedral:{n}"), n));
    }
    // dicyclic groups of 2-power order are the generalized quaternion groups
    for n in (12..=max_order).step_by(4).filter(|n| !n.is_power_of_two()) {
        out.push((format!("dicyclic:{n}"), n));
    }
    let mut n = 8;
    while n <= max_order {
        out.push((format!("quaternion:{n}"), n));
        if n >= 16 {
            out.push((format!("semidihedral:{n}"), n));
            out.push((format!("modular:{n}"), n));
        }
        n *= 2;
    }
    for p in [2u64, 3, 5, 7] {
        for k in 1..=3usize {
            let order = (p as usize).pow(2 * k as u32 + 1);
            if order > max_order {
                break;
            }
            let kinds = if p == 2 { ["type=D", "type=Q"] } else { ["exp=p", "exp=p^2"] };
            for kind in kinds {
                out.push((format!("extraspecial:p={p},n={k},{kind}"), order));
            }
        }
        for k in 1..=3usize {
            let order = (p as usize).pow(2 * k as u32 + 2);
            if order > max_order {
                break;
            }
            out.push((format!("almostextra:p={p},n={k}"), order));
        }
    }
    for s in PRODUCTS {
        let spec: GroupSpec = s.parse().expect("corpus product specs parse");
        out.push((s.to_string(), spec.expected_order().expect("products of named families")));
    }
    for (s, order) in CENTRAL_PRODUCTS {
        out.push((s.to_string(), *order));
    }
    out.into_iter()
        .filter(|(_, order)| *order <= max_order)
        .map(|(s, _)| s)
        .collect()
}

/// The deterministic theorem corpus: every listed family member of order at
/// most `max_order`, one entry per isomorphism class (the first listed
/// wins), each tagged with the rigid classes it belongs to.
pub fn corpus(max_order: usize) -> Result<Vec<CorpusEntry>> {
    if max_order > DEFAULT_LATTICE_CAP {
        return Err(Error::cap("corpus order", DEFAULT_LATTICE_CAP, max_order));
    }
    let built: Vec<(GroupSpec, FiniteGroup)> = candidate_specs(max_order)
        .par_iter()
        .map(|s| {
            let spec: GroupSpec = s.parse()?;
            let g = make(&spec)?;
            Ok((spec, g))
        })
        .collect::<Result<_>>()?;

    let mut kept: Vec<(GroupSpec, FiniteGroup)> = Vec::new();
    let mut buckets: HashMap<(usize, Vec<(usize, usize)>), Vec<usize>> = HashMap::new();
    for (spec, g) in built {
        let key = (g.order(), invariant_fingerprint(&g));
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().any(|&i| is_isomorphic(&kept[i].1, &g).is_some()) {
            continue;
        }
        bucket.push(kept.len());
        kept.push((spec, g));
    }

    kept.into_par_iter()
        .map(|(spec, group)| {
            let tags = rigid_classes(&group)?;
            Ok(CorpusEntry { spec, group, tags })
        })
        .collect()
}
