//! Graphviz text for a scenario file, or the Petersen graph by default.
//!
//! ```text
//! cargo run --example dot_export -- fixtures/pair.json | dot -Tsvg > pair.svg
//! ```

use pag::{export_dot, load_scenario, petersen_graph};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(file) => {
            let bytes = std::fs::read(&file).unwrap_or_else(|e| panic!("{file}: {e}"));
            match load_scenario(&bytes) {
                Ok(s) => export_dot(&s.graph, s.matrix.as_ref()),
                Err(issues) => {
                    for issue in issues {
                        eprintln!("{issue}");
                    }
                    std::process::exit(1);
                }
            }
        }
        None => export_dot(&petersen_graph(), None),
    };
    print!("{text}");
}
