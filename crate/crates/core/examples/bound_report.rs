//! Evaluate every bound kind at a handful of points and print the reports.
//!
//! cargo run -p pibound --example bound_report --release

use pibound::bounds::{comparison_bounds, evaluate, BoundKind};
use pibound::build_table;

fn main() -> pibound::Result<()> {
    let table = build_table(100_000)?;
    for x in [5.0, 10.0, 100.0, 1e4, 1e5] {
        println!("x = {x}, pi = {}", table.pi(x)?);
        for kind in BoundKind::ALL {
            match evaluate(kind, x, &table) {
                Ok(r) => println!(
                    "  {:<16} bound {:>14.4}  margin {:>12.4}  {}{}",
                    kind.to_string(),
                    r.bound,
                    r.margin,
                    if r.holds { "holds" } else { "fails" },
                    if r.asserted { "" } else { " (not asserted here)" }
                ),
                Err(e) => println!("  {:<16} {e}", kind.to_string()),
            }
        }
    }

    println!("comparison bounds at 1e5:");
    for c in comparison_bounds(1e5)? {
        println!("  {:<16} {:?} applicable = {}", c.kind.to_string(), c.value, c.applicable);
    }
    Ok(())
}
