//! Flaps, independent collections and their torsos.
//!
//! ```bash
//! cargo run --example separations
//! ```

use homcount::separations::{enumerate_essential_collections, flap_d, IndependentCollection};
use homcount::Graph;

fn main() -> homcount::Result<()> {
    let p5 = Graph::path(5);
    for d in 0..3 {
        println!(
            "P5: flap_{d} = {}, alpha_{d} = {}",
            flap_d(&p5, d)?,
            p5.alpha_d(d)
        );
    }

    let all = enumerate_essential_collections(&p5, 1)?;
    println!("{} essential collections of order <= 1", all.len());
    for c in all.iter().filter(|c| c.len() == 2) {
        println!("  {:?}", c.canonical_flaps());
    }

    // Two opposite vertices of C6 carry flaps of order 2.
    let c6 = Graph::cycle(6);
    let c = IndependentCollection::from_flaps(&c6, &[vec![1], vec![4]])?;
    assert!(c.validate() && c.is_essential());
    println!("C6 shared set: {:?}", c.shared_set().to_vec());
    for (i, t) in c.torsos().iter().enumerate() {
        println!(
            "  torso {i}: vertices {:?}, added edges {:?}",
            t.vertices, t.peripheral_edges
        );
    }
    println!("{}", serde_json::to_string(&c.to_json()).unwrap());
    Ok(())
}
