use bgm::catalog::{build, corpus};
use bgm::rigidity::{sha_rigid, ShaVerdict};
use bgm::structure::{
    is_blackburn, is_dedekind, isoclinic, omega_isoclinism_check, BlackburnVerdict,
};

#[test]
fn isoclinism_is_reflexive_and_symmetric_on_corpus() {
    let entries = corpus(16).unwrap();
    for a in &entries {
        let w = isoclinic(&a.group, &a.group).unwrap().expect("reflexive");
        assert!(w.verify(&a.group, &a.group), "{}", a.spec);
        for b in &entries {
            let ab = isoclinic(&a.group, &b.group).unwrap();
            let ba = isoclinic(&b.group, &a.group).unwrap();
            assert_eq!(ab.is_some(), ba.is_some(), "{} / {}", a.spec, b.spec);
            if let Some(w) = ab {
                assert!(w.inverse().verify(&b.group, &a.group), "{} / {}", a.spec, b.spec);
            }
        }
    }
}

#[test]
fn blackburn_and_dedekind_are_exclusive() {
    for e in corpus(32).unwrap() {
        let dedekind = is_dedekind(&e.group).unwrap();
        let verdict = is_blackburn(&e.group).unwrap();
        assert_eq!(dedekind, matches!(verdict, BlackburnVerdict::Dedekind), "{}", e.spec);
        assert!(!(dedekind && verdict.is_blackburn()), "{}", e.spec);
    }
}

#[test]
fn omega_check_at_two_gives_the_whole_group() {
    // C4 ∘ D8^n is generated by its involutions, so Ω₁(G) = G is not extraspecial
    for (spec, order) in [("almostextra:p=2,n=1", 16), ("almostextra:p=2,n=2", 64)] {
        let r = omega_isoclinism_check(&build(spec).unwrap()).unwrap();
        assert_eq!(r.omega_order, order, "{spec}");
        assert!(!r.omega_extraspecial && r.isoclinic, "{spec}");
    }
    assert!(omega_isoclinism_check(&build("almostextra:p=3,n=1").unwrap()).unwrap().passed());
}

#[test]
fn holomorph_of_c8_is_the_negative_control() {
    let hol = build("perm:[(0 1 2 3 4 5 6 7),(1 3)(2 6)(5 7),(1 5)(3 7)]").unwrap();
    assert_eq!(hol.order(), 32);
    match sha_rigid(&hol).unwrap() {
        ShaVerdict::NonRigid { outc_order, .. } => assert_eq!(outc_order, 2),
        other => panic!("expected non-rigid, got {other:?}"),
    }
}
