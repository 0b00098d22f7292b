//! Isoclinism: finds a witness (α, β) between two groups and checks that
//! `B₀` agrees, then runs the Ω₁ comparison for an almost extraspecial group.
//!
//! ```text
//! cargo run --release --example isoclinism -- dihedral:16 semidihedral:16
//! ```

use bgm::catalog::build;
use bgm::cohomology::{b0, SubgroupFamily};
use bgm::structure::{isoclinic, omega_isoclinism_check};

fn main() -> bgm::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (s1, s2) = match args.as_slice() {
        [a, b] => (a.as_str(), b.as_str()),
        _ => ("dihedral:8", "quaternion:8"),
    };
    let (g1, g2) = (build(s1)?, build(s2)?);
    match isoclinic(&g1, &g2)? {
        Some(w) => {
            println!("{s1} and {s2} are isoclinic; witness verifies: {}", w.verify(&g1, &g2));
            println!("  alpha on G/Z: {:?}", w.alpha.images());
            println!("  beta on G':   {:?}", w.beta.images());
        }
        None => println!("{s1} and {s2} are not isoclinic"),
    }
    let b1 = b0(&g1, SubgroupFamily::Bicyclic)?;
    let b2 = b0(&g2, SubgroupFamily::Bicyclic)?;
    println!("B0: {:?} and {:?}", b1.invariant_factors(), b2.invariant_factors());

    let spec = "almostextra:p=3,n=1";
    println!("{spec}: {:?}", omega_isoclinism_check(&build(spec)?)?);
    Ok(())
}
