//! Gluing copies of a pattern along the shared part of a collection.
//!
//! ```bash
//! cargo run --example wedge
//! ```

use homcount::counting::Counter;
use homcount::duplication::{verify_lower_bound, wedge_collection};
use homcount::graph::to_graph6;
use homcount::separations::IndependentCollection;
use homcount::Graph;

fn main() -> homcount::Result<()> {
    let counter = Counter::new(50_000_000);
    // The two end blocks of P4 hanging off the middle edge.
    let p4 = Graph::path(4);
    let ends = IndependentCollection::from_flaps(&p4, &[vec![0], vec![3]])?;
    for k in 1..=4 {
        let w = wedge_collection(&p4, &ends, k)?;
        println!(
            "k={k}: {} vertices, {} edges, {} induced P4, g6 {}",
            w.graph.n(),
            w.graph.m(),
            counter.induced_copies(&p4, &w.graph)?,
            to_graph6(&w.graph)
        );
        assert!(verify_lower_bound(&p4, &ends, k, &counter)?);
    }

    // Copy `i` of a flap vertex: shared vertices come first, then copies.
    let w = wedge_collection(&p4, &ends, 2)?;
    println!("copies: {:?}", w.copies);
    Ok(())
}
