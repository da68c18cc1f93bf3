//! Balanced equilibrium on the Petersen scenario and the two-layer path
//! that realises it.

use pag::{
    balanced_spne, check_balanced, check_spne, construct_balanced, lexicographic_ordering,
    pair_traversal, petersen_graph, terminal_outcome, PowerVector,
};

fn main() -> pag::Result<()> {
    let g = petersen_graph();
    let p = PowerVector::uniform(10, 1.0)?;

    let greedy = pair_traversal(&g, &p, &lexicographic_ordering(&g))?;
    let cert = check_balanced(greedy.final_matrix())?;
    println!(
        "pair traversal balanced: {} (violated condition {:?})",
        cert.holds, cert.violated_condition
    );

    let u = construct_balanced(&g, &p)?
        .found()
        .expect("equal powers on a 2-regular adversary graph");
    println!("linear program balanced: {}", check_balanced(&u)?.holds);
    let path = balanced_spne(&g, &p, &u, None)?;
    println!("subgame perfect: {}", check_spne(&path)?.holds);
    println!("terminal: {:?}", terminal_outcome(&path)?.as_slice());
    Ok(())
}
