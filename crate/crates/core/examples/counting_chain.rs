//! Replay the even-multiple counting argument at a few odd x.
//!
//! cargo run -p pibound --example counting_chain --release -- 9999

use pibound::build_table;
use pibound::proof::floor_sum_by_halving;
use pibound::scan::chain_report;

fn main() -> pibound::Result<()> {
    let xs: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let xs = if xs.is_empty() { vec![3, 15, 9999, 100_001] } else { xs };
    let table = build_table(*xs.iter().max().unwrap())?;
    for x in xs {
        let (text, _) = chain_report(x, &table)?;
        print!("{text}");
        println!("halving identity: {}\n", floor_sum_by_halving(x, &table)?);
    }
    Ok(())
}
