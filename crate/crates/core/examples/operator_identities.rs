//! Geodesic path operators `C_m` and the identities they satisfy.
//!
//! cargo run --example operator_identities

use ihara_zeta::operators::{
    bm_rm_sequences, build_operators, cm_sequence, commutator_correction_series, norm_bound_check,
    verify_generating_identities, verify_prop42, verify_prop43,
};
use ihara_zeta::oracle::{geodesic_count_matrices, OracleLimits};
use ihara_zeta::{make_family, FamilySpec};

fn main() -> ihara_zeta::Result<()> {
    let order = 10;
    for spec in [FamilySpec::complete(4), FamilySpec::cycle(6), FamilySpec::bowtie()] {
        let g = make_family(&spec)?;
        let ops = build_operators(&g);
        let cm = cm_sequence(&ops, order)?;
        let oracle = geodesic_count_matrices(&g, order, &OracleLimits::default())?;
        let agree = (0..=order).all(|m| oracle[m].to_rational() == *cm.get(m));
        println!("{}: C_m equals enumeration for m <= {order}: {agree}", g.name());

        let counting = bm_rm_sequences(&ops, &cm, order)?;
        let mut residuals = verify_generating_identities(&ops, &cm, order)?;
        residuals.extend(verify_prop42(&ops, &counting, order)?);
        residuals.push(verify_prop43(&ops, order)?);
        for r in residuals {
            println!("  {:45} residual {}", r.name, r.residual);
        }

        let norms = norm_bound_check(&ops, &cm);
        let last = norms.per_m.last().expect("nonempty");
        println!(
            "  ||C_{}|| ~ {:.3} <= alpha^{} = {:.3}",
            last.m, last.estimate, last.m, last.bound
        );
    }

    // On the bowtie [A, Q] != 0 and the commutator correction is nonzero.
    let bowtie = build_operators(&make_family(&FamilySpec::bowtie())?);
    let g = commutator_correction_series(&bowtie, 6)?;
    println!("bowtie correction: valuation {:?}", g.valuation());
    println!("  u^4 coefficient at the center: {}", g.coeff(4).get(0, 0));
    Ok(())
}
