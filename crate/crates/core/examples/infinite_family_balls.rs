//! Infinite regular trees and lattices enter through finite balls: counts of
//! length `m` at the root only see radius `m / 2`, so growing the ball leaves
//! them unchanged.
//!
//! cargo run --example infinite_family_balls

use ihara_zeta::oracle::{count_closed_geodesics, OracleLimits};
use ihara_zeta::{ball, make_family, validate, FamilySpec};

fn main() -> ihara_zeta::Result<()> {
    let limits = OracleLimits::default();
    for (name, small, large) in [
        ("tree", FamilySpec::tree_ball(3, 3), FamilySpec::tree_ball(3, 4)),
        ("grid", FamilySpec::grid_ball(2, 3), FamilySpec::grid_ball(2, 4)),
    ] {
        let a = make_family(&small)?;
        let b = make_family(&large)?;
        let ta = count_closed_geodesics(&a, 0, 6, &limits)?;
        let tb = count_closed_geodesics(&b, 0, 6, &limits)?;
        println!("{name}: {} vertices -> {} vertices", a.vertex_count(), b.vertex_count());
        println!("  c_m(root) r=3: {:?}", ta.c.iter().map(ToString::to_string).collect::<Vec<_>>());
        println!("  c_m(root) r=4: {:?}", tb.c.iter().map(ToString::to_string).collect::<Vec<_>>());
        println!("  boundary: {:?}", validate(&a).violations.first());
    }

    let tree = make_family(&FamilySpec::tree_ball(3, 3))?;
    let inner = ball(&tree, 0, 2)?;
    println!("ball of radius 2 in tree_ball(3,3): {} vertices, {} edges", inner.graph.vertex_count(), inner.graph.edge_count());
    Ok(())
}
