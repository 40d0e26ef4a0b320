//! Scan bounds over a range, then estimate "sufficiently large" thresholds.
//!
//! cargo run -p pibound --example verify_range --release

use pibound::bounds::BoundKind;
use pibound::build_table;
use pibound::scan::{threshold, verify, Grid};

fn main() -> pibound::Result<()> {
    let table = build_table(1_000_000)?;
    let grids = [Grid::Integers, Grid::PrimeAdjacent];

    for kind in [
        BoundKind::Theorem1Ceiling,
        BoundKind::Asymptotic13,
        BoundKind::LinearRest,
        BoundKind::IntroUpper,
    ] {
        let r = verify(kind, &table, kind.domain_min().max(3.0), 1e6, &grids)?;
        println!("{r}");
    }

    for kind in [
        BoundKind::LiGap,
        BoundKind::CHEBYSHEV_LOWER,
        BoundKind::CHEBYSHEV_UPPER,
        BoundKind::DusartLower,
        BoundKind::DusartUpper,
    ] {
        println!("{}", threshold(kind, &table, 2.0, 1e6, &[Grid::Integers])?);
    }
    Ok(())
}
