//! The full identity suite on the test corpus.
//!
//! cargo run --release --example verify_suite -- [order]

use ihara_zeta::verify::{run_suite, SuiteConfig};
use ihara_zeta::{make_family, FamilySpec, Graph};

fn main() -> ihara_zeta::Result<()> {
    let order = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let config = SuiteConfig { order, ..SuiteConfig::default() };
    let mut corpus: Vec<Graph> = [
        FamilySpec::complete(4),
        FamilySpec::cycle(6),
        FamilySpec::petersen(),
        FamilySpec::complete_bipartite(3, 3),
        FamilySpec::bowtie(),
        FamilySpec::tree_ball(3, 3),
        FamilySpec::grid_ball(2, 3),
    ]
    .iter()
    .map(make_family)
    .collect::<Result<_, _>>()?;
    corpus.push(Graph::build(&[(0, 1), (1, 2), (2, 0), (0, 1)], 3)?.with_name("doubled triangle"));

    let mut failed = false;
    for g in &corpus {
        let report = run_suite(g, &config)?;
        print!("{}", report.table());
        failed |= !report.all_pass();
    }
    if failed {
        std::process::exit(1);
    }
    Ok(())
}
