//! Truncated power series over exact rationals: products, inverses, log/exp
//! and fractional powers, plus matrix-valued series.
//!
//! cargo run --example series_engine

use ihara_zeta::linalg::{rat, ratio, RatMatrix};
use ihara_zeta::{binomial_power, MatrixSeries, ScalarSeries};

fn main() -> ihara_zeta::Result<()> {
    let order = 8;
    let one_minus_u2 = ScalarSeries::polynomial(order, &[(0, rat(1)), (2, rat(-1))]);
    println!("1/(1-u^2)        = {}", one_minus_u2.invert()?.to_json());
    println!("(1-u^2)^(-1/2)   = {}", binomial_power(&one_minus_u2, &ratio(-1, 2))?.to_json());

    let log = one_minus_u2.log()?;
    println!("log(1-u^2)       = {}", log.to_json());
    println!("exp(log) round trip: {}", log.exp()? == one_minus_u2);

    // I - uA + u^2 Q for the triangle: A = J - I, Q = I.
    let a = RatMatrix::from_integers(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    let k = MatrixSeries::polynomial(order, 3, &[(0, RatMatrix::identity(3)), (1, a.neg()), (2, RatMatrix::identity(3))])?;
    let trace_log = k.log()?.trace();
    println!("-tr log(I - uA + u^2 Q) = {}", trace_log.neg().to_json());
    println!("inverse * original = I: {}", k.invert()?.mul(&k)? == MatrixSeries::identity(order, 3));
    Ok(())
}
