//! Counting the graphs between a chain layer and its target.

use pag::{count_extensions, enumerate_extensions, outcome_space_size, SignedGraph};

fn main() -> pag::Result<()> {
    let current = SignedGraph::new(4, [(1, 2)], [])?;
    let target = SignedGraph::new(4, [(1, 2), (3, 4)], [(1, 3), (2, 4)])?;
    let ext = enumerate_extensions(&current, &target)?;
    println!("{} graphs between current and target", ext.len());
    for m in 0..=5u32 {
        let c = count_extensions(m, 1.min(m))?;
        println!(
            "m = {m}, alpha = {}: exact {}, formula {}",
            c.alpha, c.exact, c.printed_formula
        );
    }
    println!(
        "state vectors for 10 countries: {}",
        outcome_space_size(10)?
    );
    Ok(())
}
