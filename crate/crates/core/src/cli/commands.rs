use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{
    b0_sylow_reduction, b0_with, schur_multiplier_with, CohomologyCaps, SubgroupFamily,
    SylowVerdict,
};
use crate::error::{Error, Result};
use crate::fastpath::{b0_fastpath, gamma_from_group};
use crate::group::{central_product_identifying, characteristic_subgroups, FiniteGroup};
use crate::rigidity::{autc_enumerate_with, verdict_of, DEFAULT_RIGIDITY_CAP};
use crate::structure::{
    is_abelian_by_cyclic, is_almost_extraspecial, is_blackburn, is_dedekind, is_extraspecial,
    is_simple, is_symmetric, has_restricted_sylows, isoclinic, rigid_classes, BlackburnVerdict,
};

/// Order caps for the two expensive pipelines.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub cohomology: CohomologyCaps,
    pub rigidity: usize,
}

impl Caps {
    pub fn new(max_cohomology_order: usize, max_boundary_rows: usize, max_rigidity_order: usize) -> Self {
        Caps {
            cohomology: CohomologyCaps {
                max_order: max_cohomology_order,
                max_boundary_rows,
            },
            rigidity: max_rigidity_order,
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cohomology: CohomologyCaps::default(),
            rigidity: DEFAULT_RIGIDITY_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum B0Method {
    /// Fast path if applicable, else Sylow reduction for non-p-groups, else cocycles.
    Auto,
    Cocycle,
    Fastpath,
    Sylow,
}

impl B0Method {
    pub fn name(self) -> &'static str {
        match self {
            B0Method::Auto => "auto",
            B0Method::Cocycle => "cocycle",
            B0Method::Fastpath => "fastpath",
            B0Method::Sylow => "sylow",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleB0 {
    pub invariant_factors: Vec<u64>,
    pub schur: Vec<u64>,
    pub subgroups_checked: usize,
}

/// `B₀ ≅ (Z/p)^dimension` from the fast-path certificate.
#[derive(Clone, Debug, Serialize)]
pub struct FastpathB0 {
    pub invariant_factors: Vec<u64>,
    pub p: u64,
    pub dimension: usize,
    pub dim_u: usize,
    pub dim_v: usize,
    pub dim_k2: usize,
    pub dim_s2: usize,
    pub dim_s2_dec: usize,
    pub dim_k2_max: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum B0Outcome {
    Cocycle(CocycleB0),
    Fastpath(FastpathB0),
    Sylow(SylowVerdict),
}

impl B0Outcome {
    pub fn method(&self) -> &'static str {
        match self {
            B0Outcome::Cocycle(_) => "cocycle",
            B0Outcome::Fastpath(_) => "fastpath",
            B0Outcome::Sylow(_) => "sylow",
        }
    }

    /// Invariant factors when the method determines the group.
    pub fn invariant_factors(&self) -> Option<&[u64]> {
        match self {
            B0Outcome::Cocycle(c) => Some(&c.invariant_factors),
            B0Outcome::Fastpath(f) => Some(&f.invariant_factors),
            B0Outcome::Sylow(SylowVerdict::Zero { .. }) => Some(&[]),
            B0Outcome::Sylow(SylowVerdict::Unknown { .. }) => None,
        }
    }

    /// `None` when the Sylow reduction is inconclusive.
    pub fn is_trivial(&self) -> Option<bool> {
        self.invariant_factors().map(<[u64]>::is_empty)
    }
}

pub fn compute_b0(g: &FiniteGroup, method: B0Method, caps: &Caps) -> Result<B0Outcome> {
    match method {
        B0Method::Cocycle => {
            let b = b0_with(g, SubgroupFamily::Bicyclic, &caps.cohomology)?;
            Ok(B0Outcome::Cocycle(CocycleB0 {
                invariant_factors: b.invariant_factors().to_vec(),
                schur: b.schur.invariant_factors().to_vec(),
                subgroups_checked: b.subgroups_checked,
            }))
        }
        B0Method::Fastpath => {
            let gamma = gamma_from_group(g, None)?;
            let cert = b0_fastpath(&gamma)?;
            Ok(B0Outcome::Fastpath(FastpathB0 {
                invariant_factors: vec![gamma.p(); cert.b0_dim],
                p: gamma.p(),
                dimension: cert.b0_dim,
                dim_u: gamma.dim_u(),
                dim_v: gamma.dim_v(),
                dim_k2: cert.k2.dim(),
                dim_s2: cert.s2.dim(),
                dim_s2_dec: cert.s2_dec.dim(),
                dim_k2_max: cert.k2_max.dim(),
            }))
        }
        B0Method::Sylow => Ok(B0Outcome::Sylow(b0_sylow_reduction(g, &caps.cohomology)?)),
        B0Method::Auto => match compute_b0(g, B0Method::Fastpath, caps) {
            Err(Error::NotApplicable(_) | Error::EvenPrimeUnsupported) if !g.is_p_group() => {
                compute_b0(g, B0Method::Sylow, caps)
            }
            Err(Error::NotApplicable(_) | Error::EvenPrimeUnsupported) => {
                compute_b0(g, B0Method::Cocycle, caps)
            }
            other => other,
        },
    }
}

pub fn info(g: &FiniteGroup) -> Result<Value> {
    let chars = characteristic_subgroups(g)?;
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    let p_only = |f: fn(&FiniteGroup) -> Result<bool>| -> Result<bool> {
        if g.is_p_group() {
            f(g)
        } else {
            Ok(false)
        }
    };
    let tags: Vec<&str> = rigid_classes(g)?.into_iter().map(|c| c.label()).collect();
    Ok(json!({
        "order": g.order(),
        "trivial": g.order() == 1,
        "abelian": g.is_abelian(),
        "p_group_prime": g.p_group_prime(),
        "exponent": g.exponent(),
        "center_order": chars.center.order(),
        "derived_order": chars.derived.order(),
        "frattini_order": chars.frattini.order(),
        "omega1_order": chars.omega1.as_ref().map(|s| s.order()),
        "class_count": class_sizes.len(),
        "class_sizes": class_sizes,
        "abelianization": g.abelianization_invariants()?,
        "predicates": {
            "dedekind": is_dedekind(g)?,
            "blackburn": is_blackburn(g)?.is_blackburn(),
            "abelian_by_cyclic": is_abelian_by_cyclic(g)?.is_some(),
            "extraspecial": p_only(is_extraspecial)?,
            "almost_extraspecial": p_only(is_almost_extraspecial)?,
            "simple": is_simple(g),
            "symmetric": is_symmetric(g),
            "restricted_sylows": has_restricted_sylows(g),
        },
        "rigid_classes": tags,
    }))
}

pub fn schur(g: &FiniteGroup, caps: &Caps) -> Result<Value> {
    let m = schur_multiplier_with(g, g.order() as u64, &caps.cohomology)?;
    Ok(json!({ "invariant_factors": m.invariant_factors() }))
}

pub fn outc(g: &FiniteGroup, caps: &Caps) -> Result<Value> {
    let set = autc_enumerate_with(g, caps.rigidity)?;
    Ok(json!({
        "outc_order": set.outc_order,
        "autc_order": set.autos.len(),
        "inn_order": set.inn_order,
    }))
}

pub fn rigid(g: &FiniteGroup, caps: &Caps) -> Result<Value> {
    let set = autc_enumerate_with(g, caps.rigidity)?;
    let mut v = serde_json::to_value(verdict_of(&set))?;
    v["outc_order"] = json!(set.outc_order);
    Ok(v)
}

pub fn blackburn(g: &FiniteGroup) -> Result<Value> {
    let verdict = is_blackburn(g)?;
    let intersection_order = match &verdict {
        BlackburnVerdict::Dedekind => None,
        BlackburnVerdict::Blackburn { intersection } | BlackburnVerdict::Neither { intersection } => {
            Some(intersection.len())
        }
    };
    let mut v = serde_json::to_value(&verdict)?;
    v["blackburn"] = json!(verdict.is_blackburn());
    v["intersection_order"] = json!(intersection_order);
    Ok(v)
}

pub fn isoclinism(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Value> {
    Ok(match isoclinic(g1, g2)? {
        None => json!({ "isoclinic": false }),
        Some(w) => json!({
            "isoclinic": true,
            "central_quotient_order": w.alpha.images().len(),
            "derived_order": w.derived.0.len(),
            "alpha": w.alpha.images(),
            "beta": w.beta.images(),
        }),
    })
}

/// `B₀` of both factors and of their central product, with the verdict on
/// whether vanishing carries over. `order` selects the identified central
/// subgroups; by default the largest isomorphic pair is used.
pub fn central_product_experiment(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    order: Option<usize>,
    caps: &Caps,
) -> Result<(FiniteGroup, Value)> {
    let prod = central_product_identifying(g1, g2, order)?;
    let identified = g1.order() * g2.order() / prod.order();
    let b1 = compute_b0(g1, B0Method::Auto, caps)?;
    let b2 = compute_b0(g2, B0Method::Auto, caps)?;
    let bp = compute_b0(&prod, B0Method::Auto, caps)?;
    let factors_trivial = b1.is_trivial() == Some(true) && b2.is_trivial() == Some(true);
    let preserved = match (factors_trivial, bp.is_trivial()) {
        (true, Some(t)) => Some(t),
        _ => None,
    };
    let tags: Vec<&str> = rigid_classes(&prod)?.into_iter().map(|c| c.label()).collect();
    let summary = |b: &B0Outcome| json!({ "method": b.method(), "b0": b.invariant_factors() });
    let result = json!({
        "identified_order": identified,
        "product_order": prod.order(),
        "product_extraspecial": prod.is_p_group() && is_extraspecial(&prod)?,
        "product_rigid_classes": tags,
        "factors": [summary(&b1), summary(&b2)],
        "product": summary(&bp),
        "vanishing_preserved": preserved,
    });
    Ok((prod, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    fn g(s: &str) -> FiniteGroup {
        build(s).unwrap()
    }

    #[test]
    fn auto_method_choice() {
        let caps = Caps::default();
        let pick = |s: &str| compute_b0(&g(s), B0Method::Auto, &caps).unwrap().method();
        assert_eq!(pick("extraspecial:p=3,n=1,exp=p"), "fastpath");
        assert_eq!(pick("sym:4"), "sylow");
        assert_eq!(pick("dihedral:8"), "cocycle");
        assert_eq!(pick("cyclic:9"), "cocycle");
    }

    #[test]
    fn method_examples() {
        let caps = Caps::default();
        let d8 = compute_b0(&g("dihedral:8"), B0Method::Cocycle, &caps).unwrap();
        assert_eq!(d8.invariant_factors(), Some(&[][..]));
        let es = compute_b0(&g("extraspecial:p=3,n=2,exp=p"), B0Method::Fastpath, &caps).unwrap();
        assert_eq!(es.is_trivial(), Some(true));
        let s4 = compute_b0(&g("sym:4"), B0Method::Sylow, &caps).unwrap();
        assert!(matches!(s4, B0Outcome::Sylow(SylowVerdict::Zero { .. })));
        assert!(matches!(
            compute_b0(&g("dihedral:8"), B0Method::Fastpath, &caps),
            Err(Error::EvenPrimeUnsupported | Error::NotApplicable(_))
        ));
    }

    #[test]
    fn info_examples() {
        let es = info(&g("extraspecial:p=3,n=1,exp=p")).unwrap();
        assert_eq!((es["order"].as_u64(), es["center_order"].as_u64()), (Some(27), Some(3)));
        assert_eq!(es["predicates"]["extraspecial"], json!(true));
        let trivial = info(&g("cyclic:1")).unwrap();
        assert_eq!(trivial["trivial"], json!(true));
        assert_eq!(trivial["abelianization"], json!([]));
        let s4 = info(&g("sym:4")).unwrap();
        assert_eq!((s4["order"].as_u64(), s4["class_count"].as_u64()), (Some(24), Some(5)));
        assert_eq!(s4["abelianization"], json!([2]));
    }

    #[test]
    fn central_product_examples() {
        let caps = Caps::default();
        let (p, r) = central_product_experiment(&g("dihedral:8"), &g("dihedral:8"), None, &caps).unwrap();
        assert_eq!(p.order(), 32);
        assert_eq!(r["product_extraspecial"], json!(true));
        assert_eq!(r["product"]["b0"], json!([]));
        assert_eq!(r["vanishing_preserved"], json!(true));
        let (p, r) = central_product_experiment(&g("dihedral:8"), &g("cyclic:4"), None, &caps).unwrap();
        assert_eq!(p.order(), 16);
        assert_eq!(r["product"]["b0"], json!([]));
        assert!(matches!(
            central_product_experiment(&g("dihedral:8"), &g("cyclic:4"), Some(4), &caps),
            Err(Error::NotApplicable(_))
        ));
    }
}
