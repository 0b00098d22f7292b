//! Searches for commutator data whose fast-path certificate has `b0_dim ≥ 1`
//! and prints it as JSON, ready to be stored as a fixture.
//!
//! ```text
//! cargo run --release --example positive_control -- 3 4 2 100000
//! ```

use bgm::fastpath::{b0_fastpath_with, search_nonzero, DecomposableScan};

fn main() -> bgm::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("arguments are integers: p dimU dimV budget"))
        .collect();
    let [p, dim_u, dim_v, budget] = match args.as_slice() {
        [] => [3, 4, 2, 100_000],
        [a, b, c, d] => [*a, *b, *c, *d],
        _ => panic!("usage: positive_control [p dimU dimV budget]"),
    };
    match search_nonzero(p, dim_u as usize, dim_v as usize, budget as usize)? {
        None => println!("no candidate with nonzero B0 within {budget} tries"),
        Some((gamma, cert)) => {
            let all_pairs = b0_fastpath_with(&gamma, DecomposableScan::AllPairs)?;
            assert_eq!(all_pairs, cert, "subspace and pair scans disagree");
            eprintln!(
                "dim S2 = {}, dim S2_dec = {}, b0_dim = {}",
                cert.s2.dim(),
                cert.s2_dec.dim(),
                cert.b0_dim
            );
            println!("{}", serde_json::to_string(&gamma)?);
        }
    }
    Ok(())
}
