//! Closed-geodesic counts from geodesic-loop counts at a single vertex.
//!
//! For `m >= 3`,
//!
//! ```text
//! N_m(x0) = c_m(x0) - (deg x0 - 2) Σ_{i=1}^{⌈m/2⌉-1} c_{m-2i}(x0)
//!                   + Σ_{i=1}^{⌈m/2⌉-1} i (Δ c_{m-2i})(x0)
//! ```
//!
//! with `(Δ c_k)(x) = deg(x) c_k(x) - Σ_{e ∈ E_x} c_k(t(e))`. In series form
//! `N(u) = (1 - u²)^{-2} {1 - (deg x0 - Δ) u² + (deg x0 - 1) u⁴} C(u)`.
//! The loop counts come from the brute-force oracle, so multigraphs are
//! accepted here.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::graph::{check_vertex, require_formula_assumptions, Graph};
use crate::linalg::{rat, Rational};
use crate::oracle::{count_closed_geodesics, CountTable, OracleLimits};
use crate::series::ScalarSeries;

/// Oracle count tables for `x0` and each of its neighbors.
#[derive(Clone, Debug)]
pub struct NeighborhoodCounts {
    pub base_vertex: usize,
    pub max_length: usize,
    tables: Vec<Option<CountTable>>,
}

impl NeighborhoodCounts {
    pub fn collect(g: &Graph, x0: usize, max_length: usize, limits: &OracleLimits) -> Result<Self> {
        check_vertex(g, x0)?;
        limits.check(g, g.degree(x0) + 1, max_length)?;
        let mut tables = vec![None; g.vertex_count()];
        tables[x0] = Some(count_closed_geodesics(g, x0, max_length, limits)?);
        for &e in g.outgoing(x0) {
            let y = g.terminus(e);
            if tables[y].is_none() {
                tables[y] = Some(count_closed_geodesics(g, y, max_length, limits)?);
            }
        }
        Ok(Self {
            base_vertex: x0,
            max_length,
            tables,
        })
    }

    pub fn base(&self) -> &CountTable {
        self.tables[self.base_vertex].as_ref().expect("base table present")
    }

    fn c(&self, x: usize, k: usize) -> &BigInt {
        self.tables[x].as_ref().expect("neighbor table present").c(k)
    }

    /// `(Δ c_k)(x0) = deg(x0) c_k(x0) - Σ_{e ∈ E_x0} c_k(t(e))`.
    pub fn laplacian_c(&self, g: &Graph, k: usize) -> BigInt {
        let x0 = self.base_vertex;
        let mut acc = BigInt::from(g.degree(x0)) * self.c(x0, k);
        for &e in g.outgoing(x0) {
            acc -= self.c(g.terminus(e), k);
        }
        acc
    }
}

fn half_ceiling_minus_one(m: usize) -> usize {
    m.div_ceil(2).saturating_sub(1)
}

/// `N_1 .. N_L` at `x0` from geodesic-loop counts. `N_1` and `N_2` are taken
/// from the oracle directly.
pub fn n_from_c(g: &Graph, x0: usize, max_length: usize, limits: &OracleLimits) -> Result<Vec<BigInt>> {
    require_formula_assumptions(g)?;
    let counts = NeighborhoodCounts::collect(g, x0, max_length, limits)?;
    Ok(n_from_counts(g, &counts))
}

pub fn n_from_counts(g: &Graph, counts: &NeighborhoodCounts) -> Vec<BigInt> {
    let x0 = counts.base_vertex;
    let base = counts.base();
    let shifted_degree = BigInt::from(g.degree(x0) as i64 - 2);
    (1..=counts.max_length)
        .map(|m| {
            if m <= 2 {
                return base.n(m).clone();
            }
            let mut value = base.c(m).clone();
            for i in 1..=half_ceiling_minus_one(m) {
                value -= &shifted_degree * base.c(m - 2 * i);
                value += BigInt::from(i) * counts.laplacian_c(g, m - 2 * i);
            }
            value
        })
        .collect()
}

/// Generating functions at one vertex, each built two ways where a closed
/// form exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeriesBundle {
    pub base_vertex: usize,
    pub order: usize,
    /// `C(u) = Σ_{m≥1} c_m(x0) u^m`.
    pub c_series: ScalarSeries,
    /// `N(u) = Σ_{m≥1} N_m(x0) u^m` from the oracle.
    pub n_series: ScalarSeries,
    /// `Σ_m (Δ c_m)(x0) u^m`, `m >= 1`.
    pub laplacian_c_series: ScalarSeries,
    /// `R_m = Σ_{i=1}^{⌈m/2⌉-1} i (Δ c_{m-2i})(x0)`.
    pub r_series: ScalarSeries,
    /// `u² (1 - u²)^{-2} Δ C(u)`.
    pub r_closed_form: ScalarSeries,
    /// `b_m = c_m - (deg - 2) Σ_{j=1}^{⌈m/2⌉-1} c_{m-2j}` for `m >= 3`.
    pub b_series: ScalarSeries,
    /// `(1 - u²)^{-1} (1 - (deg - 1) u²) C(u)`.
    pub b_closed_form: ScalarSeries,
    /// `R̃_m = R_m - R_{m-2}` (`R̃_1 = R_1`, `R̃_2 = R_2`), indexed by `m - 1`.
    pub r_tilde: Vec<Rational>,
}

impl LocalSeriesBundle {
    pub fn r_forms_agree(&self) -> bool {
        self.r_series == self.r_closed_form
    }

    pub fn b_forms_agree(&self) -> bool {
        self.b_series == self.b_closed_form
    }

    /// `N(u) = B(u) + R(u)`.
    pub fn assembly_holds(&self) -> bool {
        self.b_series.add(&self.r_series).ok().as_ref() == Some(&self.n_series)
    }
}

fn one_minus_u2(order: usize) -> ScalarSeries {
    ScalarSeries::polynomial(order, &[(0, rat(1)), (2, rat(-1))])
}

pub fn auxiliary_series(g: &Graph, x0: usize, order: usize, limits: &OracleLimits) -> Result<LocalSeriesBundle> {
    require_formula_assumptions(g)?;
    let counts = NeighborhoodCounts::collect(g, x0, order, limits)?;
    auxiliary_series_from(g, &counts)
}

pub fn auxiliary_series_from(g: &Graph, counts: &NeighborhoodCounts) -> Result<LocalSeriesBundle> {
    let order = counts.max_length;
    let x0 = counts.base_vertex;
    let base = counts.base();
    let deg = g.degree(x0) as i64;
    let big = |v: &BigInt| Rational::from_integer(v.clone());
    let zero = Rational::zero;

    let c_series = ScalarSeries::from_coeffs(order, (0..=order).map(|m| if m == 0 { zero() } else { big(base.c(m)) }));
    let n_series = ScalarSeries::from_coeffs(order, (0..=order).map(|m| if m == 0 { zero() } else { big(base.n(m)) }));
    let lap: Vec<Rational> = (0..=order).map(|k| big(&counts.laplacian_c(g, k))).collect();
    let laplacian_c_series = ScalarSeries::from_coeffs(order, (0..=order).map(|m| if m == 0 { zero() } else { lap[m].clone() }));

    let r_coeffs: Vec<Rational> = (0..=order)
        .map(|m| {
            (1..=half_ceiling_minus_one(m)).fold(zero(), |acc, i| acc + rat(i as i64) * &lap[m - 2 * i])
        })
        .collect();
    let r_series = ScalarSeries::from_coeffs(order, r_coeffs.iter().cloned());
    let inv_sq = one_minus_u2(order).mul(&one_minus_u2(order))?.invert()?;
    let r_closed_form = laplacian_c_series.shift(2).mul(&inv_sq)?;

    let b_coeffs = (0..=order).map(|m| {
        if m == 0 {
            return zero();
        }
        let mut b = big(base.c(m));
        if m >= 3 {
            for j in 1..=half_ceiling_minus_one(m) {
                b -= rat(deg - 2) * big(base.c(m - 2 * j));
            }
        }
        b
    });
    let b_series = ScalarSeries::from_coeffs(order, b_coeffs);
    let b_factor = ScalarSeries::polynomial(order, &[(0, rat(1)), (2, rat(-(deg - 1)))]);
    let b_closed_form = one_minus_u2(order).invert()?.mul(&b_factor)?.mul(&c_series)?;

    let r_tilde = (1..=order)
        .map(|m| {
            if m <= 2 {
                r_coeffs[m].clone()
            } else {
                &r_coeffs[m] - &r_coeffs[m - 2]
            }
        })
        .collect();

    Ok(LocalSeriesBundle {
        base_vertex: x0,
        order,
        c_series,
        n_series,
        laplacian_c_series,
        r_series,
        r_closed_form,
        b_series,
        b_closed_form,
        r_tilde,
    })
}

/// `(1 - u²)^{-2} [C - deg u² C + u² ΔC + (deg - 1) u⁴ C]` at `x0`.
pub fn n_series_theorem31(g: &Graph, x0: usize, order: usize, limits: &OracleLimits) -> Result<ScalarSeries> {
    require_formula_assumptions(g)?;
    let counts = NeighborhoodCounts::collect(g, x0, order, limits)?;
    n_series_from(g, &counts)
}

pub fn n_series_from(g: &Graph, counts: &NeighborhoodCounts) -> Result<ScalarSeries> {
    let bundle = auxiliary_series_from(g, counts)?;
    let order = counts.max_length;
    let deg = g.degree(counts.base_vertex) as i64;
    let c = &bundle.c_series;
    let bracket = c
        .sub(&c.shift(2).scale(&rat(deg)))?
        .add(&bundle.laplacian_c_series.shift(2))?
        .add(&c.shift(4).scale(&rat(deg - 1)))?;
    let inv_sq = one_minus_u2(order).mul(&one_minus_u2(order))?.invert()?;
    bracket.mul(&inv_sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};

    fn lim() -> OracleLimits {
        OracleLimits::default()
    }

    fn oracle_n(g: &Graph, x0: usize, l: usize) -> Vec<BigInt> {
        count_closed_geodesics(g, x0, l, &lim()).unwrap().closed
    }

    #[test]
    fn k4_and_cycle() {
        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        let n = n_from_c(&k4, 0, 4, &lim()).unwrap();
        assert_eq!(n[2], BigInt::from(6));
        assert_eq!(n[3], BigInt::from(6));
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        let n = n_from_c(&c6, 0, 6, &lim()).unwrap();
        assert_eq!(n[5], BigInt::from(2));
    }

    #[test]
    fn bowtie_all_vertices() {
        let g = make_family(&FamilySpec::bowtie()).unwrap();
        for x in 0..5 {
            assert_eq!(n_from_c(&g, x, 10, &lim()).unwrap(), oracle_n(&g, x, 10), "vertex {x}");
        }
    }

    #[test]
    fn degree_one_rejected() {
        let path = Graph::build(&[(0, 1), (1, 2)], 3).unwrap();
        assert!(n_from_c(&path, 1, 4, &lim()).is_err());
    }

    #[test]
    fn auxiliary_forms() {
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        let b = auxiliary_series(&c6, 0, 12, &lim()).unwrap();
        assert!(b.r_series.is_zero());
        assert_eq!(b.b_series, b.c_series);
        assert!(b.r_forms_agree() && b.b_forms_agree() && b.assembly_holds());

        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        let b = auxiliary_series(&k4, 0, 10, &lim()).unwrap();
        assert!(b.b_forms_agree() && b.assembly_holds());

        let bow = make_family(&FamilySpec::bowtie()).unwrap();
        let b = auxiliary_series(&bow, 0, 10, &lim()).unwrap();
        assert_eq!(b.r_series.valuation(), Some(5));
        // (Δc_3)(center) = 4 * 4 - 4 * 2
        assert_eq!(*b.r_series.coeff(5), rat(8));
        assert!(b.r_forms_agree() && b.b_forms_agree() && b.assembly_holds());
        assert_eq!(b.r_tilde[4], rat(8));
    }

    #[test]
    fn generating_function_identity() {
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        let s = n_series_theorem31(&c6, 0, 12, &lim()).unwrap();
        let expected = ScalarSeries::polynomial(12, &[(6, rat(2)), (12, rat(2))]);
        assert_eq!(s, expected);

        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        let s = n_series_theorem31(&k4, 0, 8, &lim()).unwrap();
        assert_eq!(*s.coeff(3), rat(6));
        assert_eq!(*s.coeff(4), rat(6));
    }

    #[test]
    fn multigraph_matches_oracle() {
        let g = Graph::build(&[(0, 1), (1, 2), (2, 0), (0, 1)], 3).unwrap();
        for x in 0..3 {
            assert_eq!(n_from_c(&g, x, 10, &lim()).unwrap(), oracle_n(&g, x, 10), "vertex {x}");
            let s = n_series_theorem31(&g, x, 10, &lim()).unwrap();
            let b = auxiliary_series(&g, x, 10, &lim()).unwrap();
            assert_eq!(s, b.n_series);
        }
    }
}
