//! Support, threat and state of each country under one allocation.

use pag::{PowerVector, SignedGraph, StrategyMatrix};

fn main() -> pag::Result<()> {
    // 1 and 2 are friends, both oppose 3
    let g = SignedGraph::new(3, [(1, 2)], [(1, 3), (2, 3)])?;
    let p = PowerVector::new(vec![2.0, 1.0, 2.5])?;
    let u = StrategyMatrix::new(
        g,
        p,
        vec![
            vec![0.5, 0.5, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![1.5, 1.0, 0.0],
        ],
    )?;
    println!("country  sigma  tau  state");
    for i in 1..=3 {
        println!(
            "{i:>7}  {:>5}  {:>3}  {}",
            u.support(i),
            u.threat(i),
            u.state(i).as_str()
        );
    }
    Ok(())
}
