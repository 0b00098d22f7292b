//! Class-preserving automorphisms: enumerates Aut_c(G) and reports
//! Out_c(G) = Aut_c(G)/Inn(G) for a few groups, including a non-rigid one.
//!
//! ```text
//! cargo run --release --example rigidity -- quaternion:16
//! ```

use bgm::catalog::build;
use bgm::rigidity::{autc_enumerate, sha_rigid, ShaVerdict};
use bgm::structure::rigid_classes;

fn main() -> bgm::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = [
            "sym:4",
            "extraspecial:p=2,n=2,type=Q",
            "semidihedral:16",
            // holomorph of C8: classical non-rigid group of order 32
            "perm:[(0 1 2 3 4 5 6 7),(1 3)(2 6)(5 7),(1 5)(3 7)]",
        ]
        .map(String::from)
        .to_vec();
    }
    for spec in &specs {
        let g = build(spec)?;
        let autc = autc_enumerate(&g)?;
        let classes: Vec<&str> = rigid_classes(&g)?.iter().map(|c| c.label()).collect();
        let verdict = match sha_rigid(&g)? {
            ShaVerdict::Rigid => "rigid".to_string(),
            ShaVerdict::NonRigid { witness, .. } => format!("non-rigid, witness images {witness:?}"),
        };
        println!(
            "{spec}: |Aut_c| = {}, |Inn| = {}, |Out_c| = {}, classes {classes:?}: {verdict}",
            autc.autos.len(),
            autc.inn_order,
            autc.outc_order
        );
    }
    Ok(())
}
