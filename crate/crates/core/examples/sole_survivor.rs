//! Two-layer chain on a complete adversary graph that leaves only the
//! target safe.

use pag::{check_spne, sole_survivor, terminal_outcome, PowerVector, SignedGraph};

fn main() -> pag::Result<()> {
    let g = SignedGraph::complete_adversary(3);
    for powers in [[3.0, 3.0, 1.0], [1.0, 2.0, 2.0], [1.0, 3.0, 2.0]] {
        let s = sole_survivor(&g, &PowerVector::new(powers.to_vec())?, 1)?;
        println!("p = {powers:?}: {:?}, {:?}", s.case, s.guarantee);
        for (t, u) in s.path.matrices().iter().enumerate() {
            println!("  U({t}) = {:?}", u.rows());
        }
        println!(
            "  terminal {:?}, subgame perfect {}",
            terminal_outcome(&s.path)?.as_slice(),
            check_spne(&s.path)?.holds
        );
    }
    Ok(())
}
