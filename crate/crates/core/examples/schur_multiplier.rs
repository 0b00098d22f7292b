//! Schur multiplier and Bogomolov multiplier of a group given as a spec.
//!
//! ```text
//! cargo run --release --example schur_multiplier -- extraspecial:p=2,n=2,type=Q
//! ```

use std::time::Instant;

use bgm::catalog::build;
use bgm::cohomology::{b0, schur_multiplier, SubgroupFamily};

fn main() -> bgm::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "dihedral:8".to_string());
    let g = build(&spec)?;
    println!("{spec}: order {}", g.order());

    let t = Instant::now();
    let m = schur_multiplier(&g)?;
    println!(
        "H^2(G, Q/Z) = {:?}  ({} ms)",
        m.invariant_factors(),
        t.elapsed().as_millis()
    );

    let t = Instant::now();
    let b = b0(&g, SubgroupFamily::Bicyclic)?;
    println!(
        "B0(G) = {:?} after checking {} bicyclic subgroups  ({} ms)",
        b.invariant_factors(),
        b.subgroups_checked,
        t.elapsed().as_millis()
    );
    Ok(())
}
