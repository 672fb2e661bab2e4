//! Reading and writing graphs, and canonical forms.
//!
//! ```bash
//! cargo run --example graph_io
//! ```

use homcount::graph::{
    canonical_form, is_isomorphic, parse_edge_list, parse_graph6, to_edge_list, to_graph6,
};
use homcount::Graph;

fn main() -> homcount::Result<()> {
    let petersen = Graph::petersen();
    let code = to_graph6(&petersen);
    println!("petersen as graph6: {code}");
    assert_eq!(parse_graph6(&code)?, petersen);

    // Edge lists start with the vertex count; `#` lines are comments.
    let c5 = parse_edge_list("# a pentagon\n5\n0 1\n1 2\n2 3\n3 4\n4 0\n")?;
    print!("{}", to_edge_list(&c5));

    // Relabelled copies share a canonical form.
    let shuffled = c5.relabel(&[3, 0, 4, 1, 2]);
    assert!(is_isomorphic(&c5, &shuffled));
    assert_eq!(canonical_form(&c5), canonical_form(&shuffled));
    println!(
        "canonical C5: {}",
        to_graph6(&canonical_form(&shuffled).to_graph())
    );
    Ok(())
}
