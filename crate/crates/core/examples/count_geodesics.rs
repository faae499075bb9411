//! Brute-force counts of geodesic loops and closed geodesics.
//!
//! cargo run --example count_geodesics

use ihara_zeta::oracle::{count_closed_geodesics, edge_refined_counts, geodesic_count_matrix, OracleLimits};
use ihara_zeta::{make_family, FamilySpec, Graph};

fn main() -> ihara_zeta::Result<()> {
    let limits = OracleLimits::default();
    for spec in [FamilySpec::complete(4), FamilySpec::petersen(), FamilySpec::bowtie()] {
        let g = make_family(&spec)?;
        let t = count_closed_geodesics(&g, 0, 8, &limits)?;
        println!("{}", g.name());
        println!("  c_m(0), m = 0..8: {:?}", t.c.iter().map(ToString::to_string).collect::<Vec<_>>());
        println!("  N_m(0), m = 1..8: {:?}", t.closed.iter().map(ToString::to_string).collect::<Vec<_>>());
    }

    // A triangle with a doubled edge: the oracle accepts multigraphs.
    let multi = Graph::build(&[(0, 1), (1, 2), (2, 0), (0, 1)], 3)?;
    let t = count_closed_geodesics(&multi, 0, 6, &limits)?;
    println!("doubled triangle: N_m(0) = {:?}", t.closed.iter().map(ToString::to_string).collect::<Vec<_>>());

    // Loops at vertex 1 of the bowtie that start along half-edge 2 (1 -> 2).
    let bowtie = make_family(&FamilySpec::bowtie())?;
    let e = bowtie.outgoing(1)[1];
    let r = edge_refined_counts(&bowtie, 1, e, 6, &limits)?;
    println!("bowtie, half-edge {e}: {}", serde_json::to_string(&r)?);

    let c3 = geodesic_count_matrix(&make_family(&FamilySpec::complete(4))?, 3, &limits)?;
    println!("K4 geodesic paths of length 3 from 0 to 1: {}", c3.get(0, 1));

    // Large enumerations are refused up front.
    let k8 = make_family(&FamilySpec::complete(8))?;
    if let Err(e) = count_closed_geodesics(&k8, 0, 14, &limits) {
        println!("K8 at length 14: {e}");
    }
    Ok(())
}
