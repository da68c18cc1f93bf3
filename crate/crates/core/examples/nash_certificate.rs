//! Stage-game Nash check, cross-checked against the brute-force oracle.

use pag::{brute_force_nash_oracle, check_nash, PowerVector, SignedGraph, StrategyMatrix};

fn main() -> pag::Result<()> {
    let g = SignedGraph::new(3, [(1, 2)], [(1, 3)])?;
    let p = PowerVector::new(vec![2.0, 1.0, 1.0])?;
    // country 1 gives everything to its friend and is left exposed to 3
    let u = StrategyMatrix::new(
        g,
        p,
        vec![
            vec![0.0, 2.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0],
        ],
    )?;
    let cert = check_nash(&u)?;
    for c in &cert.countries {
        println!(
            "country {}: {} (sigma {}, tau {}, best {}), deviates: {}",
            c.country,
            c.state.as_str(),
            c.support,
            c.threat,
            c.best_achievable_support,
            c.deviates
        );
    }
    let oracle = brute_force_nash_oracle(&u, 4)?;
    println!("analytic: {}, oracle: {}", cert.holds, oracle.holds);
    println!("deviators: {:?}", cert.deviators());
    Ok(())
}
