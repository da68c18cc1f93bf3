//! Pair traversal on a signed graph, with the certificate of the emitted path.

use pag::{check_spne, pair_traversal, DecisionRule, Pair, PowerVector, SignedGraph};

fn main() -> pag::Result<()> {
    let g = SignedGraph::new(5, [(1, 2), (4, 5)], [(1, 3), (2, 3), (2, 4), (3, 5)])?;
    let p = PowerVector::new(vec![2.0, 1.0, 3.0, 1.5, 2.0])?;
    let order: Vec<Pair> = [(3, 5), (1, 3), (2, 4), (2, 3)].map(Pair::from).to_vec();
    let trace = pair_traversal(&g, &p, &order)?;
    for (step, res) in trace.steps.iter().zip(&trace.residuals[1..]) {
        println!(
            "{:?} commits {} each, residuals {res:?}",
            step.pair, step.amount
        );
    }
    let u = trace.final_matrix();
    println!("states: {:?}", u.classify().as_slice());
    println!("rule 1.1: {}", check_spne(&trace.path)?.holds);
    println!(
        "rule 1:   {}",
        check_spne(&trace.path.with_rule(DecisionRule::Rule1))?.holds
    );
    Ok(())
}
