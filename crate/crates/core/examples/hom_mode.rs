//! Homomorphism counts: the exponent is the best over homomorphic images.
//!
//! ```bash
//! cargo run --example hom_mode
//! ```

use homcount::classes::GraphClass;
use homcount::counting::{CountMode, Counter};
use homcount::exponent::{dup_exponent, hom_exponent, homomorphic_images};
use homcount::graph::to_graph6;
use homcount::Graph;

fn main() -> homcount::Result<()> {
    let c4 = Graph::cycle(4);
    for img in homomorphic_images(&c4) {
        println!("image {} ({} vertices)", to_graph6(&img), img.n());
    }

    let forests = GraphClass::forests();
    // C4 is not a forest, so no subgraph copies exist, but it folds onto P3.
    assert!(dup_exponent(&forests, &c4, CountMode::Subgraph).is_err());
    let r = hom_exponent(&forests, &c4)?;
    println!(
        "hom exponent of C4 in forests: {} via image {}",
        r.exponent,
        to_graph6(r.image.as_ref().unwrap())
    );

    let counter = Counter::new(10_000_000);
    for leaves in [4, 8, 16] {
        println!(
            "  hom(C4, K1,{leaves}) = {}",
            counter.homomorphisms(&c4, &Graph::star(leaves))?
        );
    }
    Ok(())
}
