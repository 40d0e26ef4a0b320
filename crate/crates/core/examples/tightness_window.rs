//! CSV table of the ceiling bound where it coincides with π(x).
//!
//! cargo run -p pibound --example tightness_window --release > window.csv

use pibound::bounds::BoundKind;
use pibound::build_table;
use pibound::scan::table_csv;

fn main() -> pibound::Result<()> {
    let table = build_table(1000)?;
    let kinds = [BoundKind::Theorem1Ceiling, BoundKind::Theorem1Sharp, BoundKind::Asymptotic13];
    print!("{}", table_csv(&table, 2.0, 70.0, 1.0, &kinds)?);
    Ok(())
}
