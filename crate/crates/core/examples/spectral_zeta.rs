//! Local spectra of the Laplacian and the spectral forms of the zeta
//! function on regular graphs.
//!
//! cargo run --example spectral_zeta

use ihara_zeta::spectral::{laplacian_decomposition, zeta_cor45, zeta_local_determinant};
use ihara_zeta::{make_family, FamilySpec, FloatSeries};

fn main() -> ihara_zeta::Result<()> {
    let k4 = make_family(&FamilySpec::complete(4))?;
    let d = laplacian_decomposition(&k4)?;
    println!("K4 eigenvalues: {:?}", d.eigenvalues);
    println!("K4 local spectrum at 0: {:?}", d.local_spectrum(0).pairs);

    let z = zeta_cor45(&k4, 0, 0, 8)?;
    let log = z.log()?;
    println!("log Z coefficients: u^3 {:.12}, u^4 {:.12}", log.coeff(3), log.coeff(4));
    println!("N_3 = {:.0}, N_4 = {:.0}", 3.0 * log.coeff(3), 4.0 * log.coeff(4));

    let closed = [(0.0, -1.0, -0.5), (-1.0, 0.0, -0.25), (-2.0, 0.0, -0.25), (1.0, 2.0, -0.75)]
        .iter()
        .map(|&(c1, c2, e)| FloatSeries::quadratic(8, 1.0, c1, c2).pow(e))
        .try_fold(FloatSeries::one(8), |acc, f| acc.mul(&f?))?;
    println!("max deviation from the closed form: {:.2e}", z.max_abs_diff(&closed)?);

    let det = zeta_local_determinant(&k4, 0, 8)?;
    println!("local determinant vs measure form: {:.2e}", det.max_abs_diff(&z)?);

    let bowtie = make_family(&FamilySpec::bowtie())?;
    let d = laplacian_decomposition(&bowtie)?;
    println!("bowtie center local spectrum: {:?}", d.local_spectrum(0).pairs);
    println!("bowtie outer local spectrum:  {:?}", d.local_spectrum(1).pairs);
    println!("measure from 0 to 1: {:?}", d.measure(0, 1).atoms);
    Ok(())
}
