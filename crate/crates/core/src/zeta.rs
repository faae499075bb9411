//! Zeta series `Z(u, x0)` and `Z(u, x0, x)`: from counts, from the loop-count
//! generating function, from the four-factor operator formula and from the
//! spectral and determinant forms, with cross-method comparison.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{check_vertex, require_formula_assumptions, Graph};
use crate::linalg::{rat, rational_string, rational_to_f64, Rational};
use crate::local::{n_series_from, NeighborhoodCounts};
use crate::operators::{bm_rm_sequences, build_operators, cm_sequence, commutator_correction_series, CountingOperators, OperatorSet};
use crate::oracle::{all_count_tables, count_closed_geodesics, OracleLimits};
use crate::series::{binomial_power, FloatSeries, MatrixSeries, ScalarSeries};
use crate::spectral::{ihara_global_determinant, zeta_cor45, zeta_local_determinant};

/// Tolerance for comparisons that involve a floating-point method.
pub const FLOAT_TOLERANCE: f64 = 1e-8;

/// `exp(Σ_{m=1}^{L} N_m u^m / m)` with `n[m - 1] = N_m`.
pub fn zeta_from_counts(n: &[BigInt], order: usize) -> ScalarSeries {
    let log = ScalarSeries::from_coeffs(
        order,
        (0..=order).map(|m| match m {
            0 => Rational::zero(),
            m if m <= n.len() => Rational::new(n[m - 1].clone(), BigInt::from(m)),
            _ => Rational::zero(),
        }),
    );
    log.exp().expect("constant term is zero")
}

/// `exp(Σ_{m≥1} a_m u^m / m)` for a series `Σ a_m u^m`.
pub fn zeta_from_series(s: &ScalarSeries) -> Result<ScalarSeries> {
    let order = s.order();
    ScalarSeries::from_coeffs(
        order,
        (0..=order).map(|m| if m == 0 { Rational::zero() } else { s.coeff(m) / rat(m as i64) }),
    )
    .exp()
}

/// The four scalar factors of `Z(u, x0, x)` and the series they must match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem44Factors {
    pub x0: usize,
    pub x: usize,
    /// `(1 - u²)^{-(deg x0 - 2)/2 δ_x0(x)}`.
    pub f1: ScalarSeries,
    /// `exp(-[log(I - uA + u²Q)](x0, x))`.
    pub f2: ScalarSeries,
    /// `exp(G(x0, x))`, the commutator correction.
    pub f3: ScalarSeries,
    /// `exp(Σ R_m(x0, x) u^m / m)`.
    pub f4: ScalarSeries,
    pub product: ScalarSeries,
    /// `exp(Σ N_{X,m}(x0, x) u^m / m)`.
    pub direct: ScalarSeries,
}

impl Theorem44Factors {
    pub fn holds(&self) -> bool {
        self.product == self.direct
    }
}

/// Per-graph data shared by every vertex pair: the counting operators, the
/// matrix logarithm and the commutator correction.
#[derive(Clone, Debug)]
pub struct Theorem44Context {
    pub order: usize,
    pub ops: OperatorSet,
    pub counting: CountingOperators,
    log_k: MatrixSeries,
    correction: MatrixSeries,
}

impl Theorem44Context {
    pub fn new(g: &Graph, order: usize) -> Result<Self> {
        require_formula_assumptions(g)?;
        Self::from_operators(build_operators(g), order)
    }

    pub fn from_operators(ops: OperatorSet, order: usize) -> Result<Self> {
        let cm = cm_sequence(&ops, order)?;
        let counting = bm_rm_sequences(&ops, &cm, order)?;
        let log_k = ops.ihara_polynomial(order).log()?;
        let correction = commutator_correction_series(&ops, order)?;
        Ok(Self {
            order,
            ops,
            counting,
            log_k,
            correction,
        })
    }

    pub fn evaluate(&self, x0: usize, x: usize) -> Result<Theorem44Factors> {
        let n = self.ops.dim();
        for v in [x0, x] {
            if v >= n {
                return Err(Error::Input(format!("vertex {v} out of range (graph has {n} vertices)")));
            }
        }
        let order = self.order;
        let f1 = if x0 == x {
            let exponent = -(self.ops.degree(x0) - rat(2)) / rat(2);
            let base = ScalarSeries::polynomial(order, &[(0, rat(1)), (2, rat(-1))]);
            binomial_power(&base, &exponent)?
        } else {
            ScalarSeries::one(order)
        };
        let f2 = self.log_k.entry(x0, x).neg().exp()?;
        let f3 = self.correction.entry(x0, x).exp()?;
        let r = ScalarSeries::from_coeffs(
            order,
            (0..=order).map(|m| self.counting.r.get(m).get(x0, x).clone()),
        );
        let f4 = zeta_from_series(&r)?;
        let product = f1.mul(&f2)?.mul(&f3)?.mul(&f4)?;
        let nx = ScalarSeries::from_coeffs(
            order,
            (0..=order).map(|m| if m == 0 { Rational::zero() } else { self.counting.n_x.get(m).get(x0, x).clone() }),
        );
        let direct = zeta_from_series(&nx)?;
        Ok(Theorem44Factors {
            x0,
            x,
            f1,
            f2,
            f3,
            f4,
            product,
            direct,
        })
    }
}

pub fn zeta_theorem44(g: &Graph, x0: usize, x: usize, order: usize) -> Result<Theorem44Factors> {
    check_vertex(g, x0)?;
    check_vertex(g, x)?;
    Theorem44Context::new(g, order)?.evaluate(x0, x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Counts,
    Theorem31,
    Theorem44,
    Cor45,
    LocalDet,
    GlobalDet,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Counts,
        Method::Theorem31,
        Method::Theorem44,
        Method::Cor45,
        Method::LocalDet,
        Method::GlobalDet,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Counts => "counts",
            Method::Theorem31 => "theorem31",
            Method::Theorem44 => "theorem44",
            Method::Cor45 => "cor45",
            Method::LocalDet => "local_det",
            Method::GlobalDet => "global_det",
        }
    }

    /// Parses a comma-separated list, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Method>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out: Vec<Method> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s || m.as_str().replace('_', "-") == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesValues {
    Exact(ScalarSeries),
    Float(FloatSeries),
}

impl SeriesValues {
    pub fn is_exact(&self) -> bool {
        matches!(self, SeriesValues::Exact(_))
    }

    pub fn to_float(&self) -> FloatSeries {
        match self {
            SeriesValues::Exact(s) => s.to_float(),
            SeriesValues::Float(s) => s.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            SeriesValues::Exact(s) => s.order(),
            SeriesValues::Float(s) => s.order(),
        }
    }

    fn json_coeffs(&self) -> Vec<Value> {
        match self {
            SeriesValues::Exact(s) => s.coeffs().iter().map(|c| Value::String(rational_string(c))).collect(),
            SeriesValues::Float(s) => s.coeffs().iter().map(|&c| json!(c)).collect(),
        }
    }

    fn csv_cell(&self, k: usize) -> String {
        match self {
            SeriesValues::Exact(s) => rational_string(s.coeff(k)),
            SeriesValues::Float(s) => format_float(s.coeff(k)),
        }
    }
}

/// 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub exact: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Comparison {
    pub fn pass(&self) -> bool {
        if self.exact {
            self.max_deviation == 0.0
        } else {
            self.max_deviation <= self.tolerance
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refusal {
    pub method: Method,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaReport {
    pub graph: String,
    pub x0: usize,
    pub x: usize,
    pub order: usize,
    pub series: Vec<(Method, SeriesValues)>,
    pub comparisons: Vec<Comparison>,
    pub refused: Vec<Refusal>,
}

impl ZetaReport {
    pub fn get(&self, method: Method) -> Option<&SeriesValues> {
        self.series.iter().find(|(m, _)| *m == method).map(|(_, s)| s)
    }

    pub fn all_pass(&self) -> bool {
        self.comparisons.iter().all(Comparison::pass)
    }

    pub fn to_json_value(&self) -> Value {
        let mut series = serde_json::Map::new();
        for (m, s) in &self.series {
            series.insert(
                m.as_str().to_string(),
                json!({ "exact": s.is_exact(), "coeffs": s.json_coeffs() }),
            );
        }
        let comparisons: Vec<Value> = self
            .comparisons
            .iter()
            .map(|c| {
                json!({
                    "pair": [c.left, c.right],
                    "exact": c.exact,
                    "max_deviation": c.max_deviation,
                    "tolerance": c.tolerance,
                    "pass": c.pass(),
                })
            })
            .collect();
        let refused: Vec<Value> = self
            .refused
            .iter()
            .map(|r| json!({ "method": r.method.as_str(), "reason": r.reason }))
            .collect();
        json!({
            "graph": self.graph,
            "x0": self.x0,
            "x": self.x,
            "order": self.order,
            "series": series,
            "comparisons": comparisons,
            "refused": refused,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }

    /// One row per coefficient index, one column per method.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m");
        for (m, _) in &self.series {
            out.push(',');
            out.push_str(m.as_str());
        }
        out.push('\n');
        for k in 0..=self.order {
            out.push_str(&k.to_string());
            for (_, s) in &self.series {
                out.push(',');
                out.push_str(&s.csv_cell(k));
            }
            out.push('\n');
        }
        out
    }
}

fn refusable(e: &Error) -> bool {
    matches!(e, Error::Assumption(_) | Error::NonSimple(_))
}

fn run_method(g: &Graph, x0: usize, x: usize, order: usize, method: Method, limits: &OracleLimits) -> Result<SeriesValues> {
    let local_only = |what: &str| Error::Assumption(format!("{what} is defined only for x = x0"));
    match method {
        Method::Counts => {
            if x != x0 {
                return Err(local_only("the count zeta"));
            }
            let table = count_closed_geodesics(g, x0, order, limits)?;
            Ok(SeriesValues::Exact(zeta_from_counts(&table.closed, order)))
        }
        Method::Theorem31 => {
            if x != x0 {
                return Err(local_only("the loop-count formula"));
            }
            require_formula_assumptions(g)?;
            let counts = NeighborhoodCounts::collect(g, x0, order, limits)?;
            Ok(SeriesValues::Exact(zeta_from_series(&n_series_from(g, &counts)?)?))
        }
        Method::Theorem44 => Ok(SeriesValues::Exact(zeta_theorem44(g, x0, x, order)?.product)),
        Method::Cor45 => Ok(SeriesValues::Float(zeta_cor45(g, x0, x, order)?)),
        Method::LocalDet => {
            if x != x0 {
                return Err(local_only("the local determinant"));
            }
            Ok(SeriesValues::Float(zeta_local_determinant(g, x0, order)?))
        }
        Method::GlobalDet => Ok(SeriesValues::Exact(ihara_global_determinant(g, order)?)),
    }
}

fn compare(left: &str, a: &SeriesValues, right: &str, b: &SeriesValues) -> Result<Comparison> {
    let (exact, max_deviation) = match (a, b) {
        (SeriesValues::Exact(a), SeriesValues::Exact(b)) => (true, rational_to_f64(&a.max_abs_diff(b)?)),
        _ => (false, a.to_float().max_abs_diff(&b.to_float())?),
    };
    Ok(Comparison {
        left: left.to_string(),
        right: right.to_string(),
        exact,
        max_deviation,
        tolerance: if exact { 0.0 } else { FLOAT_TOLERANCE },
    })
}

/// Runs each requested method at `(x0, x)`. Methods whose assumptions fail
/// are listed in `refused`; the oracle work cap and input errors are fatal.
///
/// Local methods are compared pairwise. `global_det` is a different series
/// (the whole-graph zeta), so it is compared against the product of the count
/// zetas over all base vertices instead.
pub fn compare_methods(
    g: &Graph,
    x0: usize,
    x: usize,
    order: usize,
    methods: &[Method],
    limits: &OracleLimits,
) -> Result<ZetaReport> {
    check_vertex(g, x0)?;
    check_vertex(g, x)?;
    let mut methods = methods.to_vec();
    methods.sort();
    methods.dedup();

    let mut series = Vec::new();
    let mut refused = Vec::new();
    for &m in &methods {
        match run_method(g, x0, x, order, m, limits) {
            Ok(s) => series.push((m, s)),
            Err(e) if refusable(&e) => refused.push(Refusal {
                method: m,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }

    let mut comparisons = Vec::new();
    let local: Vec<&(Method, SeriesValues)> = series.iter().filter(|(m, _)| *m != Method::GlobalDet).collect();
    for (i, (ma, a)) in local.iter().enumerate() {
        for (mb, b) in &local[i + 1..] {
            comparisons.push(compare(ma.as_str(), a, mb.as_str(), b)?);
        }
    }
    if let Some((_, global)) = series.iter().find(|(m, _)| *m == Method::GlobalDet) {
        let totals = global_count_zeta(g, order, limits)?;
        comparisons.push(compare(
            Method::GlobalDet.as_str(),
            global,
            "counts_all_vertices",
            &SeriesValues::Exact(totals),
        )?);
    }

    Ok(ZetaReport {
        graph: g.name().to_string(),
        x0,
        x,
        order,
        series,
        comparisons,
        refused,
    })
}

/// `exp(Σ_m Σ_x0 N_m(x0) u^m / m)`.
pub fn global_count_zeta(g: &Graph, order: usize, limits: &OracleLimits) -> Result<ScalarSeries> {
    let tables = all_count_tables(g, order, limits)?;
    let totals: Vec<BigInt> = (1..=order)
        .map(|m| tables.iter().map(|t| t.n(m)).sum())
        .collect();
    Ok(zeta_from_counts(&totals, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};
    use crate::linalg::ratio;

    fn lim() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn zeta_from_counts_examples() {
        assert_eq!(zeta_from_counts(&vec![BigInt::zero(); 5], 5), ScalarSeries::one(5));
        let mut n = vec![BigInt::zero(); 12];
        n[5] = BigInt::from(2);
        n[11] = BigInt::from(2);
        let z = zeta_from_counts(&n, 12);
        assert_eq!(*z.coeff(6), ratio(1, 3));
        assert_eq!(*z.coeff(12), ratio(2, 9));
        assert!(z.coeffs().iter().enumerate().all(|(k, c)| k % 6 == 0 || c.is_zero()));
    }

    #[test]
    fn four_factor_bowtie_center() {
        let g = make_family(&FamilySpec::bowtie()).unwrap();
        let t = zeta_theorem44(&g, 0, 0, 10).unwrap();
        assert!(t.holds());
        for f in [&t.f1, &t.f2, &t.f3, &t.f4] {
            assert_ne!(*f, ScalarSeries::one(10));
        }
        let oracle = count_closed_geodesics(&g, 0, 10, &lim()).unwrap();
        assert_eq!(t.product, zeta_from_counts(&oracle.closed, 10));
    }

    #[test]
    fn factor_gating() {
        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        let ctx = Theorem44Context::new(&k4, 8).unwrap();
        let t = ctx.evaluate(0, 0).unwrap();
        assert_eq!(t.f3, ScalarSeries::one(8));
        let oracle = count_closed_geodesics(&k4, 0, 8, &lim()).unwrap();
        assert_eq!(t.product, zeta_from_counts(&oracle.closed, 8));
        let off = ctx.evaluate(0, 1).unwrap();
        assert!(off.holds());
        assert_eq!(off.f1, ScalarSeries::one(8));
        assert_eq!(off.f4, ScalarSeries::one(8));

        let bow = make_family(&FamilySpec::bowtie()).unwrap();
        let ctx = Theorem44Context::new(&bow, 8).unwrap();
        for x0 in 0..5 {
            for x in 0..5 {
                assert!(ctx.evaluate(x0, x).unwrap().holds(), "({x0}, {x})");
            }
        }
    }

    #[test]
    fn k4_all_methods() {
        let g = make_family(&FamilySpec::complete(4)).unwrap();
        let r = compare_methods(&g, 0, 0, 8, &Method::ALL, &lim()).unwrap();
        assert!(r.refused.is_empty());
        assert_eq!(r.series.len(), 6);
        assert!(r.all_pass(), "{:?}", r.comparisons);
        assert_eq!(r.comparisons.len(), 11);
    }

    #[test]
    fn bowtie_refusals() {
        let g = make_family(&FamilySpec::bowtie()).unwrap();
        let r = compare_methods(&g, 0, 0, 8, &Method::ALL, &lim()).unwrap();
        let refused: Vec<Method> = r.refused.iter().map(|r| r.method).collect();
        assert_eq!(refused, vec![Method::Cor45, Method::LocalDet]);
        assert!(r.all_pass());
        assert!(r.comparisons.iter().all(|c| c.exact));
    }

    #[test]
    fn off_diagonal_methods() {
        let g = make_family(&FamilySpec::cycle(6)).unwrap();
        let r = compare_methods(&g, 0, 2, 8, &[Method::Theorem44, Method::Cor45, Method::Counts], &lim()).unwrap();
        assert_eq!(r.refused.len(), 1);
        assert!(r.all_pass(), "{:?}", r.comparisons);
    }

    #[test]
    fn report_formats() {
        let g = make_family(&FamilySpec::cycle(6)).unwrap();
        let r = compare_methods(&g, 0, 0, 6, &[Method::Counts, Method::Cor45], &lim()).unwrap();
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("m,counts,cor45"));
        assert_eq!(lines.next(), Some("0,1/1,1.0000000000000000e0"));
        assert!(csv.contains("\n6,1/3,"));
        let v = r.to_json_value();
        assert_eq!(v["series"]["counts"]["coeffs"][6], "1/3");
        assert_eq!(r.to_json(), r.clone().to_json());
    }

    #[test]
    fn method_parsing() {
        assert_eq!(Method::parse_list("all").unwrap().len(), 6);
        assert_eq!(
            Method::parse_list("local-det,counts").unwrap(),
            vec![Method::Counts, Method::LocalDet]
        );
        assert!(matches!("bogus".parse::<Method>(), Err(Error::UnknownMethod(_))));
    }
}
