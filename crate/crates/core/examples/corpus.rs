//! Lists the theorem corpus up to a given order with the rigid classes each
//! group belongs to.
//!
//! ```text
//! cargo run --release --example corpus -- 32
//! ```

use bgm::catalog::corpus;

fn main() -> bgm::Result<()> {
    let max_order: usize = std::env::args()
        .nth(1)
        .map_or(32, |a| a.parse().expect("max order is an integer"));
    let entries = corpus(max_order)?;
    for e in &entries {
        let tags: Vec<&str> = e.tags.iter().map(|t| t.label()).collect();
        println!("{:>4}  {:<48} {}", e.group.order(), e.spec, tags.join(" "));
    }
    println!("{} groups", entries.len());
    Ok(())
}
