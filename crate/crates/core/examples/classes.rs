//! Class membership tests.
//!
//! ```bash
//! cargo run --example classes
//! ```

use homcount::classes::{has_minor, is_outerplanar, is_planar, pathwidth, treewidth, GraphClass};
use homcount::Graph;

fn main() -> homcount::Result<()> {
    let budget = 5_000_000;
    let graphs = [
        ("K4", Graph::complete(4)),
        ("K5", Graph::complete(5)),
        ("K3,3", Graph::complete_bipartite(3, 3)),
        ("petersen", Graph::petersen()),
        ("C6", Graph::cycle(6)),
    ];
    for (name, g) in &graphs {
        println!(
            "{name:>8}: planar {:5} outerplanar {:5} tw {} pw {} K5-minor {}",
            is_planar(g),
            is_outerplanar(g),
            treewidth(g, budget)?,
            pathwidth(g, budget)?,
            has_minor(g, &Graph::complete(5), budget)?,
        );
    }

    // Classes parse from the same ids the CLI takes.
    for id in [
        "forests",
        "treewidth:2",
        "minor-free:K3,3",
        "planar+forbid-cycles:4-4",
        "degenerate:2",
    ] {
        let class: GraphClass = id.parse()?;
        let members: Vec<&str> = graphs
            .iter()
            .filter(|(_, g)| class.contains(g).unwrap_or(false))
            .map(|(n, _)| *n)
            .collect();
        println!("{class}: rule {:?}, contains {members:?}", class.dup_rule());
    }
    Ok(())
}
