//! The four-factor product for `Z(u, x0, x)` at the bowtie center, where all
//! four factors are nontrivial.
//!
//! cargo run --example four_factor_zeta

use ihara_zeta::oracle::{count_closed_geodesics, OracleLimits};
use ihara_zeta::zeta::{zeta_from_counts, Theorem44Context};
use ihara_zeta::{make_family, FamilySpec, ScalarSeries};

fn show(label: &str, s: &ScalarSeries) {
    let coeffs: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
    println!("{label:8} {}", coeffs.join(" "));
}

fn main() -> ihara_zeta::Result<()> {
    let g = make_family(&FamilySpec::bowtie())?;
    let order = 10;
    let ctx = Theorem44Context::new(&g, order)?;

    let t = ctx.evaluate(0, 0)?;
    show("F1", &t.f1);
    show("F2", &t.f2);
    show("F3", &t.f3);
    show("F4", &t.f4);
    show("product", &t.product);
    show("direct", &t.direct);

    let oracle = count_closed_geodesics(&g, 0, order, &OracleLimits::default())?;
    let counted = zeta_from_counts(&oracle.closed, order);
    println!("product == direct: {}", t.holds());
    println!("product == exp(sum N_m u^m / m) from enumeration: {}", t.product == counted);

    let off = ctx.evaluate(0, 3)?;
    show("Z(u,0,3)", &off.product);
    println!("off-diagonal F1 and F4 trivial: {}", off.f1 == ScalarSeries::one(order) && off.f4 == ScalarSeries::one(order));
    Ok(())
}
