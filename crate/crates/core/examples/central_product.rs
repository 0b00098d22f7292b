//! Central products: B₀ of the factors and of the product, with the central
//! subgroups chosen by order.
//!
//! ```text
//! cargo run --release --example central_product -- quaternion:8 dihedral:8
//! ```

use bgm::catalog::build;
use bgm::cli::{central_product_experiment, Caps};

fn main() -> bgm::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(String, String)> = match args.as_slice() {
        [a, b] => vec![(a.clone(), b.clone())],
        _ => [("quaternion:8", "quaternion:8"), ("dihedral:8", "cyclic:4"), ("extraspecial:p=3,n=1,exp=p", "cyclic:9")]
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .to_vec(),
    };
    for (s1, s2) in pairs {
        let (product, summary) = central_product_experiment(&build(&s1)?, &build(&s2)?, None, &Caps::default())?;
        println!("{s1} o {s2}: order {}", product.order());
        println!("{}", serde_json::to_string_pretty(&summary)?);
    }
    Ok(())
}
