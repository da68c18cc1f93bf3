//! Visiting a country's adversary pairs first leaves it exactly precarious
//! when its adversaries together are at least as strong.

use pag::{precarious_ordering, PowerVector, SignedGraph};

fn main() -> pag::Result<()> {
    let g = SignedGraph::new(4, [(2, 3)], [(1, 2), (1, 3), (1, 4), (3, 4)])?;
    let p = PowerVector::new(vec![3.0, 1.0, 1.5, 2.0])?;
    let trace = precarious_ordering(&g, &p, 1)?;
    let order: Vec<String> = trace.ordering().iter().map(ToString::to_string).collect();
    println!("ordering: {}", order.join(" "));
    let u = trace.final_matrix();
    println!(
        "country 1: sigma {}, tau {}, {}",
        u.support(1),
        u.threat(1),
        u.state(1).as_str()
    );
    Ok(())
}
