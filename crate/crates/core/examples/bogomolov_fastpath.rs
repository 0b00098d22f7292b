//! Fast-path certificate for a p-group of class 2: extracts the commutator
//! map γ: Λ²(G/Φ) → Φ and prints the subspace dimensions behind `B₀`.
//!
//! ```text
//! cargo run --release --example bogomolov_fastpath -- extraspecial:p=5,n=1,exp=p
//! ```

use bgm::catalog::build;
use bgm::fastpath::{b0_fastpath, gamma_from_group, GammaData};

fn print_certificate(label: &str, gamma: &GammaData) -> bgm::Result<()> {
    let cert = b0_fastpath(gamma)?;
    println!(
        "{label}: p={} dimU={} dimV={}  dim K2={} S2={} S2_dec={} K2_max={}  B0 = F_{}^{}  (certificate verifies: {})",
        gamma.p(),
        gamma.dim_u(),
        gamma.dim_v(),
        cert.k2.dim(),
        cert.s2.dim(),
        cert.s2_dec.dim(),
        cert.k2_max.dim(),
        gamma.p(),
        cert.b0_dim,
        cert.verify()
    );
    Ok(())
}

fn main() -> bgm::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "extraspecial:p=3,n=2,exp=p".to_string());
    let g = build(&spec)?;
    print_certificate(&spec, &gamma_from_group(&g, None)?)?;

    // symplectic forms need no group at all
    for (p, n) in [(3, 3), (7, 2)] {
        print_certificate(&format!("symplectic p={p} n={n}"), &GammaData::symplectic(p, n)?)?;
    }

    let fixture: GammaData = serde_json::from_str(include_str!("../tests/fixtures/gamma_p3_d4_e3.json"))?;
    fixture.validate()?;
    print_certificate("stored nonzero fixture", &fixture)
}
