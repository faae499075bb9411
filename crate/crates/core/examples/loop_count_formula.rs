//! Closed geodesics at a vertex recovered from geodesic-loop counts at the
//! vertex and its neighbors, and the generating functions behind it.
//!
//! cargo run --example loop_count_formula

use ihara_zeta::local::{auxiliary_series, n_from_c, n_series_theorem31};
use ihara_zeta::oracle::{count_closed_geodesics, verify_counting_recursion, OracleLimits};
use ihara_zeta::{make_family, FamilySpec, Graph};

fn main() -> ihara_zeta::Result<()> {
    let limits = OracleLimits::default();
    let bowtie = make_family(&FamilySpec::bowtie())?;
    let multi = Graph::build(&[(0, 1), (1, 2), (2, 0), (0, 1)], 3)?.with_name("doubled triangle");

    for g in [&bowtie, &multi] {
        for x in 0..2 {
            let formula = n_from_c(g, x, 10, &limits)?;
            let oracle = count_closed_geodesics(g, x, 10, &limits)?.closed;
            println!(
                "{} vertex {x}: N = {:?} ({})",
                g.name(),
                formula.iter().map(ToString::to_string).collect::<Vec<_>>(),
                if formula == oracle { "matches enumeration" } else { "MISMATCH" }
            );
        }
    }

    let r = verify_counting_recursion(&bowtie, 0, 7, &limits)?;
    println!("recursion at the bowtie center, m = 7: lhs {} rhs {}", r.lhs, r.rhs);

    let b = auxiliary_series(&bowtie, 0, 10, &limits)?;
    println!("C(u) = {:?}", b.c_series.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("R(u) = {:?}", b.r_series.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("R closed form agrees: {}", b.r_forms_agree());
    println!("B closed form agrees: {}", b.b_forms_agree());
    println!("N = B + R: {}", b.assembly_holds());

    let n = n_series_theorem31(&bowtie, 0, 10, &limits)?;
    println!("N(u) from C(u): {}", n.to_json());
    Ok(())
}
