//! A family where the closed formula for d-degenerate classes beats the
//! naive flap bound.
//!
//! ```bash
//! cargo run --example degeneracy_gap
//! ```

use homcount::exponent::{degeneracy_gap_flaps, degeneracy_gap_graph, exponent_degenerate};
use homcount::separations::flap_d;

fn main() -> homcount::Result<()> {
    for d in 2..=3 {
        for x in 1..=3 {
            let h = degeneracy_gap_graph(d, x)?;
            let r = exponent_degenerate(&h, d);
            println!(
                "d={d} x={x}: n={} alpha_d={} flap_d={} exponent={} flaps {:?}",
                h.n(),
                h.alpha_d(d),
                flap_d(&h, d)?,
                r.exponent,
                degeneracy_gap_flaps(d, x)
            );
        }
    }
    Ok(())
}
