//! The growth exponent of a pattern in a class, with its witness.
//!
//! ```bash
//! cargo run --example exponent
//! ```

use homcount::classes::{GraphClass, Pattern};
use homcount::counting::CountMode;
use homcount::exponent::{dup_exponent, duplicable};

fn main() -> homcount::Result<()> {
    let cases = [
        ("P3", "forests"),
        ("P5", "forests"),
        ("C4", "outerplanar"),
        ("K4", "planar"),
        ("P4", "pathwidth:1"),
        ("C6", "planar+forbid-cycles:4-4"),
    ];
    for (pattern, class) in cases {
        let h = Pattern::parse(pattern)?.graph;
        let class: GraphClass = class.parse()?;
        let r = dup_exponent(&class, &h, CountMode::Subgraph)?;
        println!(
            "{pattern} in {class}: exponent {} via {:?}, witness {:?}",
            r.exponent,
            r.method,
            r.witness.canonical_flaps()
        );
    }

    // A single verdict, with the evidence behind a refusal.
    let p4 = Pattern::parse("P4")?.graph;
    let pw1: GraphClass = "pathwidth:1".parse()?;
    let c = homcount::separations::IndependentCollection::from_flaps(&p4, &[vec![0], vec![3]])?;
    let v = duplicable(&pw1, &p4, &c)?;
    println!("P4 ends in pathwidth:1: {:?}", v.status);

    // Reports serialize to the JSON the CLI prints.
    let r = dup_exponent(&GraphClass::forests(), &p4, CountMode::Induced)?;
    println!("{}", r.to_json());
    Ok(())
}
