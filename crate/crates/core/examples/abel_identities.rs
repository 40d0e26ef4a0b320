//! Li(x), the two piecewise-exact prime integrals, and the Abel summation
//! residuals that tie them to π and θ.
//!
//! cargo run -p pibound --example abel_identities --release

use pibound::analytic::{
    abel_pi_residual, abel_theta_residual, li, li_pi_integral_crossover, pi_integral,
    theta_integral, DEFAULT_LI_TOL,
};
use pibound::build_table;

fn main() -> pibound::Result<()> {
    let table = build_table(1_000_000)?;
    let ln2 = 2f64.ln();
    println!("{:>9} {:>14} {:>14} {:>14} {:>10} {:>10}", "x", "Li", "int theta", "int pi", "res pi", "res theta");
    for x in [10.0, 100.0, 1e3, 1e4, 1e5, 1e6] {
        let l = li(x, DEFAULT_LI_TOL)?;
        let ti = theta_integral(x, &table)?;
        let pi = pi_integral(x, &table)?;
        println!(
            "{x:>9} {:>14.6} {:>14.6} {:>14.6} {:>10.1e} {:>10.1e}",
            l.value,
            ti.value,
            pi.value,
            abel_pi_residual(x, &table)?,
            abel_theta_residual(x, &table)?
        );
        let theta_rhs = 0.5 * (x - 1.0) * ln2 / x.ln() + 1.0;
        let pi_rhs = 0.5 * (x - 1.0) * ln2 + x.ln();
        println!("{:>9} slack {:.4} / {:.4}", "", theta_rhs - ti.value, pi_rhs - pi.value);
    }
    match li_pi_integral_crossover(&table, 1_000_000)? {
        Some(x0) => println!("Li(x) <= int_2^x pi(t)/t dt for every integer x in [{x0}, 10^6]"),
        None => println!("Li(x) exceeds the pi integral at 10^6"),
    }
    Ok(())
}
