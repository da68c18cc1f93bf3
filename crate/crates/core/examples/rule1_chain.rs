//! Stage equilibria on every layer of an ascending chain and of its reverse.

use pag::{check_spne, spne_rule1, ChainKind, GraphChain, PowerVector, SignedGraph};

fn main() -> pag::Result<()> {
    let layers = vec![
        SignedGraph::new(4, [(1, 2)], [])?,
        SignedGraph::new(4, [(1, 2)], [(2, 3)])?,
        SignedGraph::new(4, [(1, 2), (3, 4)], [(2, 3), (1, 4)])?,
    ];
    let chain = GraphChain::new(layers, ChainKind::Ascending)?;
    let p = PowerVector::new(vec![1.0, 2.0, 2.0, 0.5])?;
    for c in [chain.clone(), chain.reversed()] {
        let path = spne_rule1(&c, &p)?;
        let cert = check_spne(&path)?;
        println!("{:?} chain: subgame perfect {}", c.kind(), cert.holds);
        for (t, u) in path.matrices().iter().enumerate() {
            println!("  layer {t}: {:?}", u.classify().as_slice());
        }
    }
    Ok(())
}
