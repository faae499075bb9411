//! Every zeta method side by side, with the comparison table, as JSON or CSV.
//!
//! cargo run --example compare_methods -- [csv]

use ihara_zeta::oracle::OracleLimits;
use ihara_zeta::zeta::{compare_methods, Method};
use ihara_zeta::{make_family, FamilySpec};

fn main() -> ihara_zeta::Result<()> {
    let csv = std::env::args().nth(1).as_deref() == Some("csv");
    let limits = OracleLimits::default();

    let k4 = make_family(&FamilySpec::complete(4))?;
    let report = compare_methods(&k4, 0, 0, 8, &Method::ALL, &limits)?;
    if csv {
        print!("{}", report.to_csv());
    } else {
        println!("{}", report.to_json());
    }

    let bowtie = make_family(&FamilySpec::bowtie())?;
    let report = compare_methods(&bowtie, 0, 0, 8, &Method::ALL, &limits)?;
    for r in &report.refused {
        eprintln!("bowtie refused {}: {}", r.method, r.reason);
    }
    for c in &report.comparisons {
        eprintln!("bowtie {} vs {}: {:e} ({})", c.left, c.right, c.max_deviation, if c.pass() { "ok" } else { "FAIL" });
    }
    Ok(())
}
