//! Two agents and two roads; the order in which roads open picks the
//! equilibrium.

use pag::congestion::{solve_chain, Payoffs, RoadGame, Schedule};

fn main() -> pag::Result<()> {
    for name in ["a-first", "b-first", "simultaneous"] {
        let game = RoadGame::new(Payoffs::default(), Schedule::by_name(name).unwrap());
        println!("{name}: {:?}", solve_chain(&game)?);
    }
    let skewed = Payoffs::from_table([[[0.0, 3.0], [2.0, 0.0]], [[0.0, 2.0], [2.0, 0.0]]]);
    let game = RoadGame::new(skewed, Schedule::simultaneous());
    println!("agent 1 prefers A: {:?}", solve_chain(&game)?);
    Ok(())
}
