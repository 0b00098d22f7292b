//! Library form of `bgm verify-theorem`: checks `B₀ = 0` and rigidity over
//! the tagged corpus and prints one line per class tag.
//!
//! ```text
//! cargo run --release --example verify_theorem -- 32
//! ```

use std::collections::BTreeMap;

use bgm::cli::{verify_theorem, Caps, RowStatus};

fn main() -> bgm::Result<()> {
    let max_order = std::env::args().nth(1).map_or(24, |a| a.parse().expect("max order"));
    let bundle = verify_theorem(max_order, &Caps::default(), None)?;
    let mut per_tag: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for row in &bundle.rows {
        for tag in &row.tags {
            let slot = match row.status {
                RowStatus::Pass => 0,
                RowStatus::Fail => 1,
                RowStatus::Skipped => 2,
            };
            per_tag.entry(tag).or_default()[slot] += 1;
        }
        if row.status == RowStatus::Fail {
            println!("FAIL {}: {:?}", row.spec, row.notes);
        }
    }
    for (tag, [pass, fail, skipped]) in &per_tag {
        println!("{tag:<20} pass {pass:>3}  fail {fail}  skipped {skipped}");
    }
    let s = &bundle.summary;
    println!("{} groups up to order {max_order}: {} pass, {} fail, {} skipped ({} ms)", s.total, s.pass, s.fail, s.skipped, bundle.wall_time_ms);
    Ok(())
}
