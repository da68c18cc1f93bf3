//! Building a scenario in code, saving it and loading it back.

use pag::{
    lexicographic_ordering, load_scenario, pair_traversal, PowerVector, Scenario, SignedGraph,
};

fn main() -> pag::Result<()> {
    let g = SignedGraph::complete_adversary(3);
    let p = PowerVector::new(vec![1.0, 1.0, 1.0])?;
    let trace = pair_traversal(&g, &p, &lexicographic_ordering(&g))?;
    let scenario = Scenario::new(g, p).with_path(trace.path);
    let text = scenario.to_json_string();
    print!("{text}");

    let back = load_scenario(text.as_bytes()).expect("round trip");
    assert_eq!(back, scenario);

    match load_scenario(br#"{"n": 2, "friends": [], "adversaries": [[1, 2]], "powers": [1]}"#) {
        Ok(_) => unreachable!(),
        Err(issues) => issues.iter().for_each(|i| eprintln!("{i}")),
    }
    Ok(())
}
