//! Sieve a prime table, query π and θ, and round-trip it through the cache format.
//!
//! cargo run -p pibound --example prime_table --release

use pibound::{build_table, cache, sum::SumMode};

fn main() -> pibound::Result<()> {
    let table = build_table(1_000_000)?;
    println!("{} primes up to {}", table.len(), table.limit());

    for x in [1.5, 10.0, 100.0, 1e4, 1e6] {
        println!("pi({x}) = {:>6}   theta({x}) = {}", table.pi(x)?, table.theta(x)?);
    }
    println!("primes in (10, 20]: {:?}", table.primes_in(10.0, 20.0)?);

    let bytes = cache::encode(&table);
    println!("cache image: {} bytes ({} bytes per prime)", bytes.len(), bytes.len() as f64 / table.len() as f64);
    let back = cache::decode(&bytes, SumMode::Compensated)?;
    assert_eq!(back, table);
    Ok(())
}
