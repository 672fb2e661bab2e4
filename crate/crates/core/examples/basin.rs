//! Extracting an independent collection from a homomorphism into an
//! ordered host, and the container count it bounds.
//!
//! ```bash
//! cargo run --example basin
//! ```

use homcount::basin::{
    basin, check_extraction, container_bound_check, extract_collection, OrderedHost,
};
use homcount::counting::{Counter, MapKind};
use homcount::Graph;

fn main() -> homcount::Result<()> {
    let host = OrderedHost::degeneracy(Graph::star(6));
    println!(
        "order {:?}",
        (1..=host.n())
            .map(|i| host.vertex_at(i))
            .collect::<Vec<_>>()
    );
    for i in 1..=host.n() {
        println!(
            "  position {i}: |S| = {}, 1-basin {:?}",
            host.s(i).len(),
            basin(&host, 1, i)?.to_vec()
        );
    }

    let p3 = Graph::path(3);
    let mut phis = Vec::new();
    Counter::new(1_000_000).for_each_map(&p3, host.graph(), MapKind::Homomorphism, |f| {
        phis.push(f.to_vec());
        true
    })?;
    let ex = extract_collection(&p3, &host, &phis[0])?;
    check_extraction(&p3, &host, &phis[0], &ex)?;
    println!(
        "phi {:?} -> flaps {:?}, iota {:?}",
        phis[0],
        ex.collection.canonical_flaps(),
        ex.iota
    );

    let report = container_bound_check(&p3, &host, 2, &phis, None, None)?;
    println!("{}", serde_json::to_string(&report).unwrap());
    Ok(())
}
