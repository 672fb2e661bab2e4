//! Homomorphism, embedding and copy counts.
//!
//! ```bash
//! cargo run --example counting
//! ```

use homcount::counting::{CountMode, Counter};
use homcount::Graph;

fn main() -> homcount::Result<()> {
    let counter = Counter::new(50_000_000);
    let c4 = Graph::cycle(4);
    let petersen = Graph::petersen();

    println!("aut(petersen) = {}", counter.automorphisms(&petersen)?);
    for mode in [
        CountMode::Homomorphism,
        CountMode::Subgraph,
        CountMode::Induced,
    ] {
        println!(
            "{mode:>12}: C5 in petersen = {}",
            counter.count(mode, &Graph::cycle(5), &petersen)?
        );
    }

    // hom(C4, star) = 2 n^2: both colour classes may sit on the centre.
    for leaves in [2, 5, 10] {
        let hom = counter.homomorphisms(&c4, &Graph::star(leaves))?;
        println!("hom(C4, K1,{leaves}) = {hom}");
    }

    // A tiny budget turns a long search into an error instead of a hang.
    let tight = Counter::new(10);
    match tight.subgraph_copies(&petersen, &petersen) {
        Err(e) => println!("with budget 10: {e}"),
        Ok(n) => println!("with budget 10: {n}"),
    }
    Ok(())
}
