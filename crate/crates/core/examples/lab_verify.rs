//! Checking a predicted exponent against exhaustive search and the wedge
//! construction.
//!
//! ```bash
//! cargo run --release --example lab_verify
//! ```

use homcount::classes::{GraphClass, Pattern};
use homcount::counting::CountMode;
use homcount::lab::{
    brute_ex, enumerate_class_members, verify_exponent, write_series_csv, LabConfig,
};

fn main() -> homcount::Result<()> {
    let outer: GraphClass = "outerplanar".parse()?;
    for n in 1..=6 {
        println!(
            "n={n}: {} outerplanar graphs",
            enumerate_class_members(&outer, n)?.len()
        );
    }
    let p3 = Pattern::parse("P3")?.graph;
    println!(
        "ex(P3, outerplanar, 5) = {}",
        brute_ex(&p3, &outer, 5, CountMode::Subgraph)?
    );

    let cfg = LabConfig::from_toml("n_range = [1, 6]\nconstruction_n = [10, 60]\n")?;
    let report = verify_exponent(&p3, &outer, CountMode::Subgraph, &cfg)?;
    println!(
        "predicted {} slope {:.3} passed {}",
        report.predicted,
        report.slope.unwrap_or(f64::NAN),
        report.passed
    );
    let mut series = vec![report.exhaustive.clone()];
    series.extend(report.construction.clone());
    write_series_csv(&series, std::io::stdout())?;

    Ok(())
}
