//! Brute-force enumeration of non-backtracking walks.
//!
//! This is the ground truth every formula is checked against. Walks are
//! enumerated depth-first over half-edges with the single rule
//! `next != bar(current)`; only counts are kept.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_vertex, Graph};
use crate::linalg::{RatMatrix, Rational};

/// Guards against runaway enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_length: usize,
    /// Cap on the estimated number of walk steps, summed over start vertices.
    pub work_cap: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_length: 16,
            work_cap: 1_000_000_000,
        }
    }
}

impl OracleLimits {
    pub fn unlimited() -> Self {
        Self {
            max_length: usize::MAX,
            work_cap: u128::MAX,
        }
    }

    /// `starts * M (M - 1)^(length - 1)` with `M` the maximum degree.
    pub fn estimated_work(g: &Graph, starts: usize, length: usize) -> u128 {
        if length == 0 {
            return starts as u128;
        }
        let m = g.max_degree() as u128;
        let mut per_start = m;
        for _ in 1..length {
            per_start = per_start.saturating_mul(m.saturating_sub(1));
        }
        per_start.saturating_mul(starts as u128)
    }

    pub fn check(&self, g: &Graph, starts: usize, length: usize) -> Result<()> {
        let estimated = Self::estimated_work(g, starts, length);
        if length > self.max_length || estimated > self.work_cap {
            return Err(Error::OracleCap {
                estimated,
                cap: self.work_cap,
                length,
            });
        }
        Ok(())
    }
}

/// Depth-first walk over every non-backtracking walk of length `1..=max_len`
/// starting with half-edge `first`. `visit(len, last)` is called once per walk.
fn walk_from(g: &Graph, first: usize, max_len: usize, visit: &mut impl FnMut(usize, usize)) {
    fn rec(g: &Graph, current: usize, len: usize, max_len: usize, visit: &mut impl FnMut(usize, usize)) {
        visit(len, current);
        if len == max_len {
            return;
        }
        let back = g.bar(current);
        for &next in g.outgoing(g.terminus(current)) {
            if next != back {
                rec(g, next, len + 1, max_len, visit);
            }
        }
    }
    if max_len > 0 {
        rec(g, first, 1, max_len, visit);
    }
}

/// Square matrix of arbitrary-precision counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    fn from_u64(dim: usize, data: &[u64]) -> Self {
        Self {
            dim,
            data: data.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_fn(self.dim, |i, j| Rational::from_integer(self.get(i, j).clone()))
    }
}

/// Matrices `[m = 0, 1, ..., L]` whose `(x, y)` entry counts geodesic
/// paths of length `m` from `x` to `y`.
pub fn geodesic_count_matrices(g: &Graph, max_length: usize, limits: &OracleLimits) -> Result<Vec<IntMatrix>> {
    let n = g.vertex_count();
    limits.check(g, n, max_length)?;
    let mut raw = vec![vec![0u64; n * n]; max_length + 1];
    for x in 0..n {
        raw[0][x * n + x] = 1;
        for &e in g.outgoing(x) {
            walk_from(g, e, max_length, &mut |len, last| {
                raw[len][x * n + g.terminus(last)] += 1;
            });
        }
    }
    Ok(raw.iter().map(|m| IntMatrix::from_u64(n, m)).collect())
}

pub fn geodesic_count_matrix(g: &Graph, m: usize, limits: &OracleLimits) -> Result<IntMatrix> {
    Ok(geodesic_count_matrices(g, m, limits)?.pop().expect("m + 1 matrices"))
}

/// Geodesic-loop and closed-geodesic counts at one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub base_vertex: usize,
    pub max_length: usize,
    /// `c[m]` for `m = 0..=L`: geodesic loops of length `m` at the base.
    #[serde(serialize_with = "serialize_counts")]
    pub c: Vec<BigInt>,
    /// `closed[m - 1]` for `m = 1..=L`: closed geodesics of length `m`.
    #[serde(rename = "N", serialize_with = "serialize_counts")]
    pub closed: Vec<BigInt>,
}

impl CountTable {
    /// `N_m(x0)` for `m >= 1`.
    pub fn n(&self, m: usize) -> &BigInt {
        &self.closed[m - 1]
    }

    pub fn c(&self, m: usize) -> &BigInt {
        &self.c[m]
    }
}

// Counts are written as JSON numbers when they fit in u64, else as strings.
fn serialize_counts<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        match u64::try_from(c) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

fn serialize_count<S: serde::Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(c) {
        Ok(small) => s.serialize_i64(small),
        Err(_) => s.serialize_str(&c.to_string()),
    }
}

pub fn count_closed_geodesics(g: &Graph, x0: usize, max_length: usize, limits: &OracleLimits) -> Result<CountTable> {
    check_vertex(g, x0)?;
    if max_length == 0 {
        return Err(Error::Input("maximum length must be at least 1".into()));
    }
    limits.check(g, 1, max_length)?;
    let mut loops = vec![0u64; max_length + 1];
    let mut closed = vec![0u64; max_length + 1];
    loops[0] = 1;
    for &first in g.outgoing(x0) {
        let tail = g.bar(first);
        walk_from(g, first, max_length, &mut |len, last| {
            if g.terminus(last) == x0 {
                loops[len] += 1;
                if last != tail {
                    closed[len] += 1;
                }
            }
        });
    }
    Ok(CountTable {
        base_vertex: x0,
        max_length,
        c: loops.iter().map(|&v| BigInt::from(v)).collect(),
        closed: closed[1..].iter().map(|&v| BigInt::from(v)).collect(),
    })
}

/// Count tables at every vertex.
pub fn all_count_tables(g: &Graph, max_length: usize, limits: &OracleLimits) -> Result<Vec<CountTable>> {
    limits.check(g, g.vertex_count(), max_length)?;
    (0..g.vertex_count())
        .map(|x| count_closed_geodesics(g, x, max_length, &OracleLimits::unlimited()))
        .collect()
}

/// Counts at `x` restricted to walks that use a given half-edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRefinedCounts {
    /// Geodesic loops through the edge.
    #[serde(serialize_with = "serialize_count")]
    pub c_through: BigInt,
    /// Closed geodesics through the edge.
    #[serde(serialize_with = "serialize_count")]
    pub n_through: BigInt,
    /// Geodesic loops whose tail is formed by the edge pair.
    #[serde(serialize_with = "serialize_count")]
    pub cwt: BigInt,
}

/// Edge-refined counts of length `m` at `x`.
///
/// When `origin(e) = x` the walks are those whose first edge is `e`, and
/// `cwt` counts those whose last edge is `bar(e)`. When only
/// `terminus(e) = x` the walks are those whose last edge is `e`, and `cwt`
/// counts those whose first edge is `bar(e)`.
pub fn edge_refined_counts(
    g: &Graph,
    x: usize,
    e: usize,
    m: usize,
    limits: &OracleLimits,
) -> Result<EdgeRefinedCounts> {
    check_vertex(g, x)?;
    if e >= g.half_edges().len() {
        return Err(Error::Input(format!("half-edge {e} does not exist")));
    }
    if m == 0 {
        return Err(Error::Input("edge-refined counts need m >= 1".into()));
    }
    let (first_edge, last_edge) = if g.origin(e) == x {
        (Some(e), None)
    } else if g.terminus(e) == x {
        (None, Some(e))
    } else {
        return Err(Error::NotIncident { vertex: x, edge: e });
    };
    limits.check(g, 1, m)?;

    let (mut c, mut n, mut cwt) = (0u64, 0u64, 0u64);
    let starts: Vec<usize> = match first_edge {
        Some(f) => vec![f],
        None => g.outgoing(x).to_vec(),
    };
    for first in starts {
        walk_from(g, first, m, &mut |len, last| {
            if len != m || g.terminus(last) != x {
                return;
            }
            if let Some(required_last) = last_edge {
                if last != required_last {
                    return;
                }
            }
            c += 1;
            if last == g.bar(first) {
                cwt += 1;
            } else {
                n += 1;
            }
        });
    }
    Ok(EdgeRefinedCounts {
        c_through: c.into(),
        n_through: n.into(),
        cwt: cwt.into(),
    })
}

/// Both sides of the geodesic-loop / closed-geodesic counting recursion
/// `c_m - N_m = deg c_{m-2} - (Δc_{m-2}) - 2 N_{m-2} - Σ_e cwt_{m-2}(t(e), bar e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionCheck {
    pub vertex: usize,
    pub length: usize,
    #[serde(serialize_with = "serialize_count")]
    pub lhs: BigInt,
    #[serde(serialize_with = "serialize_count")]
    pub rhs: BigInt,
    #[serde(serialize_with = "serialize_count")]
    pub residual: BigInt,
}

impl RecursionCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn verify_counting_recursion(g: &Graph, x0: usize, m: usize, limits: &OracleLimits) -> Result<RecursionCheck> {
    check_vertex(g, x0)?;
    if m < 3 {
        return Err(Error::Input(format!("counting recursion needs m >= 3, got {m}")));
    }
    let here = count_closed_geodesics(g, x0, m, limits)?;
    let deg = BigInt::from(g.degree(x0));
    let mut neighbor_loops = BigInt::zero();
    let mut tails = BigInt::zero();
    for &e in g.outgoing(x0) {
        let y = g.terminus(e);
        let at_y = count_closed_geodesics(g, y, m - 2, limits)?;
        neighbor_loops += at_y.c(m - 2);
        tails += edge_refined_counts(g, y, g.bar(e), m - 2, limits)?.cwt;
    }
    let c_prev = here.c(m - 2);
    let laplacian_c_prev = &deg * c_prev - &neighbor_loops;
    let lhs = here.c(m) - here.n(m);
    let rhs = &deg * c_prev - laplacian_c_prev - BigInt::from(2) * here.n(m - 2) - tails;
    let residual = &lhs - &rhs;
    Ok(RecursionCheck {
        vertex: x0,
        length: m,
        lhs,
        rhs,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};

    fn k4() -> Graph {
        make_family(&FamilySpec::complete(4)).unwrap()
    }

    fn lim() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn k4_two_step_matrix() {
        let m = geodesic_count_matrix(&k4(), 2, &lim()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 0 } else { 2 };
                assert_eq!(*m.get(i, j), BigInt::from(expected));
            }
        }
    }

    #[test]
    fn one_step_is_adjacency() {
        let g = make_family(&FamilySpec::petersen()).unwrap();
        let m = geodesic_count_matrix(&g, 1, &lim()).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let adjacent = g.outgoing(i).iter().any(|&e| g.terminus(e) == j);
                assert_eq!(*m.get(i, j), BigInt::from(adjacent as u8));
            }
        }
    }

    #[test]
    fn cycle_six_windings() {
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        let m = geodesic_count_matrix(&c6, 6, &lim()).unwrap();
        assert_eq!(*m.get(0, 0), BigInt::from(2));
        let t = count_closed_geodesics(&c6, 0, 12, &lim()).unwrap();
        for k in 1..=12 {
            let expected = if k % 6 == 0 { 2 } else { 0 };
            assert_eq!(*t.n(k), BigInt::from(expected), "N_{k}");
        }
    }

    #[test]
    fn k4_counts() {
        let t = count_closed_geodesics(&k4(), 0, 4, &lim()).unwrap();
        assert_eq!(t.c[0], BigInt::from(1));
        assert_eq!((t.n(1), t.n(2)), (&BigInt::from(0), &BigInt::from(0)));
        assert_eq!((t.c(3), t.n(3)), (&BigInt::from(6), &BigInt::from(6)));
        assert_eq!((t.c(4), t.n(4)), (&BigInt::from(6), &BigInt::from(6)));
    }

    #[test]
    fn bowtie_triangles() {
        let g = make_family(&FamilySpec::bowtie()).unwrap();
        let center = count_closed_geodesics(&g, 0, 3, &lim()).unwrap();
        assert_eq!((center.c(3), center.n(3)), (&BigInt::from(4), &BigInt::from(4)));
        let outer = count_closed_geodesics(&g, 1, 3, &lim()).unwrap();
        assert_eq!(outer.c(3), &BigInt::from(2));
    }

    #[test]
    fn edge_refined() {
        let g = k4();
        for &e in g.outgoing(0) {
            let r = edge_refined_counts(&g, 0, e, 3, &lim()).unwrap();
            assert_eq!(r.c_through, BigInt::from(2));
            let r = edge_refined_counts(&g, 0, e, 1, &lim()).unwrap();
            assert_eq!(r.cwt, BigInt::from(0));
        }
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        for &e in c6.outgoing(0) {
            let r = edge_refined_counts(&c6, 0, e, 6, &lim()).unwrap();
            assert_eq!(r.n_through, BigInt::from(1));
            let r = edge_refined_counts(&c6, 0, c6.bar(e), 6, &lim()).unwrap();
            assert_eq!(r.n_through, BigInt::from(1));
        }
        let e_far = g.outgoing(1).iter().copied().find(|&e| g.terminus(e) == 2).unwrap();
        assert!(matches!(
            edge_refined_counts(&g, 0, e_far, 3, &lim()),
            Err(Error::NotIncident { .. })
        ));
    }

    #[test]
    fn recursion_examples() {
        let r = verify_counting_recursion(&k4(), 0, 3, &lim()).unwrap();
        assert_eq!(r.lhs, BigInt::from(0));
        assert!(r.holds());
        let c6 = make_family(&FamilySpec::cycle(6)).unwrap();
        assert!(verify_counting_recursion(&c6, 0, 8, &lim()).unwrap().holds());
        let bow = make_family(&FamilySpec::bowtie()).unwrap();
        assert!(verify_counting_recursion(&bow, 0, 5, &lim()).unwrap().holds());
        assert!(verify_counting_recursion(&bow, 0, 2, &lim()).is_err());
    }

    #[test]
    fn cap_refuses_large_enumerations() {
        let g = make_family(&FamilySpec::complete(8)).unwrap();
        let tight = OracleLimits {
            max_length: 16,
            work_cap: 1000,
        };
        match count_closed_geodesics(&g, 0, 10, &tight) {
            Err(Error::OracleCap { estimated, .. }) => assert_eq!(estimated, 7 * 6u128.pow(9)),
            other => panic!("expected refusal, got {other:?}"),
        }
        assert!(count_closed_geodesics(&g, 0, 17, &OracleLimits::default()).is_err());
    }
}
