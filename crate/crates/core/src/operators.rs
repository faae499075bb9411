//! Adjacency, valency and Laplacian operators, and the geodesic counting
//! operators built from them.
//!
//! `C_m` (geodesic path counts) follows the three-term recursion
//! `C_2 = C_1^2 - Q - I`, `C_m = C_{m-1} C_1 - C_{m-2} Q`. From it:
//!
//! * `B_m = C_m - (Q - I) Σ_{j=1}^{⌊m/2⌋} C_{m-2j}` for `m >= 3`, else `C_m`;
//! * `R_m = diag_x Σ_{j=1}^{⌈m/2⌉-1} j (Δ c_{m-2j})(x)` with `c_k(x) = C_k(x, x)`;
//! * `R_m^+ = (Q - I)[m even] + R_m` for `m >= 3`, else `0`;
//! * `N_{X,m} = B_m + R_m^+`, whose diagonal counts closed geodesics.
//!
//! The floor-indexed sum in `B_m` picks up `C_0 = I` for even `m`; the even
//! indicator in `R_m^+` cancels it again.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{rat, FloatMatrix, RatMatrix, Rational};
use crate::series::{MatrixSeries, ScalarSeries};

/// `A_X`, `D_X`, `Q_X = D_X - I` and `Δ_X = D_X - A_X` of a finite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSet {
    pub adjacency: RatMatrix,
    pub valency: RatMatrix,
    pub q_operator: RatMatrix,
    pub laplacian: RatMatrix,
}

pub fn build_operators(g: &Graph) -> OperatorSet {
    let n = g.vertex_count();
    let mut adjacency = RatMatrix::zeros(n);
    for he in g.half_edges() {
        let v = adjacency.get(he.origin, he.terminus) + Rational::one();
        adjacency.set(he.origin, he.terminus, v);
    }
    let degrees: Vec<Rational> = g.degrees().into_iter().map(|d| rat(d as i64)).collect();
    OperatorSet::from_parts(adjacency, RatMatrix::diagonal(&degrees))
}

impl OperatorSet {
    /// Derives `Q` and `Δ` from an adjacency and a valency matrix.
    pub fn from_parts(adjacency: RatMatrix, valency: RatMatrix) -> Self {
        let n = adjacency.dim();
        let q_operator = valency.sub(&RatMatrix::identity(n));
        let laplacian = valency.sub(&adjacency);
        Self {
            adjacency,
            valency,
            q_operator,
            laplacian,
        }
    }

    pub fn dim(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn degree(&self, x: usize) -> Rational {
        self.valency.get(x, x).clone()
    }

    pub fn max_degree(&self) -> usize {
        self.valency
            .diag()
            .iter()
            .map(|d| d.to_integer().try_into().unwrap_or(0usize))
            .max()
            .unwrap_or(0)
    }

    /// Zero diagonal and 0/1 entries.
    pub fn is_simple(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.adjacency.get(i, i).is_zero()
                && (0..n).all(|j| {
                    let a = self.adjacency.get(i, j);
                    a.is_zero() || a.is_one()
                })
        })
    }

    /// `I - u A + u^2 Q` as an order-`L` matrix series.
    pub fn ihara_polynomial(&self, order: usize) -> MatrixSeries {
        let n = self.dim();
        MatrixSeries::polynomial(
            order,
            n,
            &[
                (0, RatMatrix::identity(n)),
                (1, self.adjacency.neg()),
                (2, self.q_operator.clone()),
            ],
        )
        .expect("operator dimensions agree")
    }

    /// `f(u) = A u - Q u^2`.
    pub fn f_series(&self, order: usize) -> MatrixSeries {
        let n = self.dim();
        MatrixSeries::polynomial(order, n, &[(1, self.adjacency.clone()), (2, self.q_operator.neg())])
            .expect("operator dimensions agree")
    }

    /// `[A, Q] = AQ - QA`.
    pub fn commutator(&self) -> RatMatrix {
        self.adjacency.commutator(&self.q_operator)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SequenceKind {
    C,
    B,
    R,
    RPlus,
    NX,
}

/// Operators indexed by length `0..=L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSequence {
    pub kind: SequenceKind,
    pub matrices: Vec<RatMatrix>,
}

impl OperatorSequence {
    pub fn max_length(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn get(&self, m: usize) -> &RatMatrix {
        &self.matrices[m]
    }

    /// `Σ_{m=from}^{L} M_m u^m` truncated at `order`.
    pub fn generating_series(&self, from: usize, order: usize) -> MatrixSeries {
        let n = self.matrices[0].dim();
        let coeffs = (0..=order).map(|m| {
            if m >= from && m < self.matrices.len() {
                self.matrices[m].clone()
            } else {
                RatMatrix::zeros(n)
            }
        });
        MatrixSeries::from_coeffs(order, n, coeffs).expect("dimensions agree")
    }
}

/// Geodesic path operators `C_0 .. C_L` from the three-term recursion.
pub fn cm_sequence(ops: &OperatorSet, max_length: usize) -> Result<OperatorSequence> {
    if !ops.is_simple() {
        return Err(Error::NonSimple(
            "the geodesic operator recursion needs a loop-free graph without multiple edges".into(),
        ));
    }
    let n = ops.dim();
    let id = RatMatrix::identity(n);
    let mut matrices = vec![id.clone()];
    if max_length >= 1 {
        matrices.push(ops.adjacency.clone());
    }
    if max_length >= 2 {
        let c2 = ops.adjacency.mul(&ops.adjacency).sub(&ops.q_operator).sub(&id);
        matrices.push(c2);
    }
    for m in 3..=max_length {
        let next = matrices[m - 1]
            .mul(&ops.adjacency)
            .sub(&matrices[m - 2].mul(&ops.q_operator));
        matrices.push(next);
    }
    Ok(OperatorSequence {
        kind: SequenceKind::C,
        matrices,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingOperators {
    pub b: OperatorSequence,
    pub r: OperatorSequence,
    pub r_plus: OperatorSequence,
    pub n_x: OperatorSequence,
}

fn ceil_half_minus_one(m: usize) -> usize {
    m.div_ceil(2).saturating_sub(1)
}

/// `(Δ c_k)(x)` for every `k <= L` and vertex `x`, with `c_k(x) = C_k(x, x)`.
pub fn laplacian_of_loop_counts(ops: &OperatorSet, cm: &OperatorSequence) -> Vec<Vec<Rational>> {
    let n = ops.dim();
    cm.matrices
        .iter()
        .map(|c| {
            let diag = c.diag();
            (0..n)
                .map(|x| {
                    (0..n).fold(Rational::zero(), |acc, y| {
                        let l = ops.laplacian.get(x, y);
                        if l.is_zero() {
                            acc
                        } else {
                            acc + l * &diag[y]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn bm_rm_sequences(ops: &OperatorSet, cm: &OperatorSequence, max_length: usize) -> Result<CountingOperators> {
    if cm.max_length() < max_length {
        return Err(Error::SeriesMismatch(format!(
            "C_m known up to {}, need {max_length}",
            cm.max_length()
        )));
    }
    let n = ops.dim();
    let id = RatMatrix::identity(n);
    let q_minus_i = ops.q_operator.sub(&id);
    let lap_c = laplacian_of_loop_counts(ops, cm);

    let mut b = Vec::with_capacity(max_length + 1);
    let mut r = Vec::with_capacity(max_length + 1);
    let mut r_plus = Vec::with_capacity(max_length + 1);
    let mut n_x = Vec::with_capacity(max_length + 1);
    for m in 0..=max_length {
        let bm = if m >= 3 {
            let mut tail = RatMatrix::zeros(n);
            for j in 1..=m / 2 {
                tail.add_assign(cm.get(m - 2 * j));
            }
            cm.get(m).sub(&q_minus_i.mul(&tail))
        } else {
            cm.get(m).clone()
        };
        let rm = if m >= 3 {
            let diag: Vec<Rational> = (0..n)
                .map(|x| {
                    (1..=ceil_half_minus_one(m)).fold(Rational::zero(), |acc, j| {
                        acc + rat(j as i64) * &lap_c[m - 2 * j][x]
                    })
                })
                .collect();
            RatMatrix::diagonal(&diag)
        } else {
            RatMatrix::zeros(n)
        };
        let rpm = if m >= 3 {
            if m % 2 == 0 {
                q_minus_i.add(&rm)
            } else {
                rm.clone()
            }
        } else {
            RatMatrix::zeros(n)
        };
        n_x.push(bm.add(&rpm));
        b.push(bm);
        r.push(rm);
        r_plus.push(rpm);
    }
    let seq = |kind, matrices| OperatorSequence { kind, matrices };
    Ok(CountingOperators {
        b: seq(SequenceKind::B, b),
        r: seq(SequenceKind::R, r),
        r_plus: seq(SequenceKind::RPlus, r_plus),
        n_x: seq(SequenceKind::NX, n_x),
    })
}

/// Outcome of checking one exact series identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub order: usize,
    /// Largest absolute coefficient entry of `lhs - rhs`.
    pub residual: Rational,
}

impl IdentityResidual {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

fn residual(name: &'static str, lhs: &MatrixSeries, rhs: &MatrixSeries) -> Result<IdentityResidual> {
    Ok(IdentityResidual {
        name,
        order: lhs.order(),
        residual: lhs.sub(rhs)?.max_abs(),
    })
}

/// `(Σ C_m u^m)(I - uA + u²Q) = (1 - u²) I` and
/// `(Σ_m Σ_k C_{m-2k} u^m)(I - uA + u²Q) = I`.
pub fn verify_generating_identities(
    ops: &OperatorSet,
    cm: &OperatorSequence,
    order: usize,
) -> Result<Vec<IdentityResidual>> {
    if cm.max_length() < order {
        return Err(Error::SeriesMismatch("C_m sequence shorter than the order".into()));
    }
    let n = ops.dim();
    let k = ops.ihara_polynomial(order);
    let id = RatMatrix::identity(n);

    let c_series = cm.generating_series(0, order);
    let one_minus_u2 = MatrixSeries::polynomial(order, n, &[(0, id.clone()), (2, id.neg())])?;
    let first = residual("geodesic generating function", &c_series.mul(&k)?, &one_minus_u2)?;

    let partial_sums = (0..=order).map(|m| {
        let mut s = RatMatrix::zeros(n);
        for j in 0..=m / 2 {
            s.add_assign(cm.get(m - 2 * j));
        }
        s
    });
    let s_series = MatrixSeries::from_coeffs(order, n, partial_sums)?;
    let second = residual(
        "alternating partial-sum generating function",
        &s_series.mul(&k)?,
        &MatrixSeries::identity(order, n),
    )?;
    Ok(vec![first, second])
}

/// The `B_m` and `N_{X,m}` generating-function identities:
///
/// * `(Σ_{m≥1} B_m u^m)(I - f) = Au - 2Qu² + (Q - I)(I - f)u²`
/// * `Σ_{m≥1} N_{X,m} u^m = u(A - 2Qu)(I - f)^{-1} + (Q - I)u²/(1 - u²) + Σ_{m≥3} R_m u^m`
pub fn verify_prop42(ops: &OperatorSet, seqs: &CountingOperators, order: usize) -> Result<Vec<IdentityResidual>> {
    if seqs.b.max_length() < order {
        return Err(Error::SeriesMismatch("counting operators shorter than the order".into()));
    }
    let n = ops.dim();
    let id = RatMatrix::identity(n);
    let q_minus_i = ops.q_operator.sub(&id);
    let k = ops.ihara_polynomial(order);

    let b_series = seqs.b.generating_series(1, order);
    let rhs1 = MatrixSeries::polynomial(
        order,
        n,
        &[(1, ops.adjacency.clone()), (2, ops.q_operator.scale(&rat(-2)))],
    )?
    .add(&k.shift(2).left_mul(&q_minus_i))?;
    let first = residual("B_m generating function", &b_series.mul(&k)?, &rhs1)?;

    let nx_series = seqs.n_x.generating_series(1, order);
    let u_fprime = MatrixSeries::polynomial(
        order,
        n,
        &[(1, ops.adjacency.clone()), (2, ops.q_operator.scale(&rat(-2)))],
    )?;
    let even_tail = ScalarSeries::from_coeffs(
        order,
        (0..=order).map(|m| if m >= 2 && m % 2 == 0 { rat(1) } else { rat(0) }),
    );
    let q_term = MatrixSeries::identity(order, n)
        .left_mul(&q_minus_i)
        .mul_scalar_series(&even_tail)?;
    let rhs2 = u_fprime
        .mul(&k.invert()?)?
        .add(&q_term)?
        .add(&seqs.r.generating_series(3, order))?;
    let second = residual("N_X,m generating function", &nx_series, &rhs2)?;
    Ok(vec![first, second])
}

/// `u² Σ_{n≥1} (1/n) Σ_{j=1}^{n-1} j f^{n-1-j} [A, Q] f^{j-1}` with `f = Au - Qu²`.
pub fn commutator_kernel(ops: &OperatorSet, order: usize) -> Result<MatrixSeries> {
    let n = ops.dim();
    let comm = ops.commutator();
    let mut acc = MatrixSeries::zero(order, n);
    if comm.is_zero() {
        return Ok(acc);
    }
    let powers = ops.f_series(order).powers()?;
    let left: Vec<MatrixSeries> = powers.iter().map(|p| p.right_mul(&comm)).collect();
    // f^a has valuation a, so the (n, j) term has valuation n after the u² shift.
    for big_n in 2..=order {
        let mut inner = MatrixSeries::zero(order, n);
        for j in 1..big_n {
            let term = left[big_n - 1 - j].mul(&powers[j - 1])?;
            inner = inner.add(&term.scale(&rat(j as i64)))?;
        }
        acc = acc.add(&inner.scale(&Rational::new(1.into(), (big_n as i64).into())))?;
    }
    Ok(acc.shift(2))
}

/// `G(u) = ∫_0^u` of [`commutator_kernel`], the correction that separates
/// `Σ N_{X,m} u^m / m` from `-log(I - f)` on irregular graphs.
pub fn commutator_correction_series(ops: &OperatorSet, order: usize) -> Result<MatrixSeries> {
    Ok(commutator_kernel(ops, order)?.integrate())
}

/// Checks `f'(I - f)^{-1} + d/du log(I - f) = commutator_kernel` to order `L - 1`.
pub fn verify_prop43(ops: &OperatorSet, order: usize) -> Result<IdentityResidual> {
    if order < 1 {
        return Err(Error::SeriesMismatch("order must be at least 1".into()));
    }
    let n = ops.dim();
    let k = ops.ihara_polynomial(order);
    let f_prime = MatrixSeries::polynomial(order, n, &[(0, ops.adjacency.clone()), (1, ops.q_operator.scale(&rat(-2)))])?;
    let lhs = f_prime
        .mul(&k.invert()?)?
        .truncate(order - 1)
        .add(&k.log()?.derivative())?;
    let kernel = commutator_kernel(ops, order)?.truncate(order - 1);
    residual("commutator rearrangement", &lhs, &kernel)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormBoundEntry {
    pub m: usize,
    pub estimate: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormBoundReport {
    pub max_degree: usize,
    /// `(M + sqrt(M² + 4M)) / 2`.
    pub alpha: f64,
    pub per_m: Vec<NormBoundEntry>,
}

impl NormBoundReport {
    pub fn all_pass(&self) -> bool {
        self.per_m.iter().all(|e| e.pass)
    }
}

pub const NORM_RELATIVE_SLACK: f64 = 1e-6;

pub fn alpha(max_degree: usize) -> f64 {
    let m = max_degree as f64;
    (m + (m * m + 4.0 * m).sqrt()) / 2.0
}

/// Largest singular value by power iteration on `CᵀC`; the estimate
/// `‖C v‖` for unit `v` never exceeds the true norm.
pub fn spectral_norm_estimate(c: &FloatMatrix, rel_tol: f64, max_iter: usize) -> f64 {
    let n = c.dim();
    if n == 0 {
        return 0.0;
    }
    let ct = {
        let mut t = FloatMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(i, j, c.get(j, i));
            }
        }
        t
    };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i % 7) as f64 / 7.0).collect();
    let s = norm(&v);
    v.iter_mut().for_each(|x| *x /= s);
    let mut estimate = 0.0;
    for _ in 0..max_iter {
        let w = c.mul_vec(&v);
        let next = norm(&w);
        let z = ct.mul_vec(&w);
        let zn = norm(&z);
        if zn == 0.0 {
            return next;
        }
        v = z.into_iter().map(|x| x / zn).collect();
        if (next - estimate).abs() <= rel_tol * next.max(f64::MIN_POSITIVE) {
            return next.max(estimate);
        }
        estimate = next;
    }
    estimate
}

pub fn norm_bound_check(ops: &OperatorSet, cm: &OperatorSequence) -> NormBoundReport {
    let max_degree = ops.max_degree();
    let a = alpha(max_degree);
    let per_m = cm
        .matrices
        .iter()
        .enumerate()
        .map(|(m, c)| {
            let estimate = spectral_norm_estimate(&c.to_float(), 1e-9, 10_000);
            let bound = a.powi(m as i32);
            NormBoundEntry {
                m,
                estimate,
                bound,
                pass: estimate <= bound * (1.0 + NORM_RELATIVE_SLACK),
            }
        })
        .collect();
    NormBoundReport {
        max_degree,
        alpha: a,
        per_m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};
    use crate::oracle::{geodesic_count_matrices, OracleLimits};

    fn family(spec: FamilySpec) -> Graph {
        make_family(&spec).unwrap()
    }

    #[test]
    fn k4_operators() {
        let ops = build_operators(&family(FamilySpec::complete(4)));
        let expected_a = RatMatrix::from_fn(4, |i, j| rat((i != j) as i64));
        assert_eq!(ops.adjacency, expected_a);
        assert_eq!(ops.q_operator, RatMatrix::identity(4).scale(&rat(2)));
        assert_eq!(ops.laplacian, RatMatrix::identity(4).scale(&rat(3)).sub(&expected_a));
        assert!(ops.commutator().is_zero());
    }

    #[test]
    fn bowtie_commutator_nonzero() {
        let ops = build_operators(&family(FamilySpec::bowtie()));
        assert_eq!(ops.valency.diag(), vec![rat(4), rat(2), rat(2), rat(2), rat(2)]);
        assert!(!ops.commutator().is_zero());
        // [A, D] = [A, Q] since D - Q = I
        assert_eq!(ops.adjacency.commutator(&ops.valency), ops.commutator());
    }

    #[test]
    fn loop_counts_double_on_adjacency_diagonal() {
        let g = Graph::build(&[(0, 1), (1, 2), (2, 0), (0, 0)], 3).unwrap();
        let ops = build_operators(&g);
        assert_eq!(*ops.adjacency.get(0, 0), rat(2));
        assert_eq!(ops.degree(0), rat(4));
        assert!(matches!(cm_sequence(&ops, 3), Err(Error::NonSimple(_))));
    }

    #[test]
    fn recursion_matches_oracle() {
        for spec in [FamilySpec::complete(4), FamilySpec::cycle(6), FamilySpec::bowtie()] {
            let g = family(spec);
            let ops = build_operators(&g);
            let cm = cm_sequence(&ops, 8).unwrap();
            let oracle = geodesic_count_matrices(&g, 8, &OracleLimits::default()).unwrap();
            for m in 0..=8 {
                assert_eq!(*cm.get(m), oracle[m].to_rational(), "{} m={m}", g.name());
                assert!(cm.get(m).is_symmetric());
            }
        }
    }

    #[test]
    fn k4_second_operator() {
        let cm = cm_sequence(&build_operators(&family(FamilySpec::complete(4))), 2).unwrap();
        assert_eq!(*cm.get(2), RatMatrix::from_fn(4, |i, j| rat(if i == j { 0 } else { 2 })));
    }

    #[test]
    fn regular_vertex_transitive_r_vanishes() {
        let ops = build_operators(&family(FamilySpec::complete(4)));
        let cm = cm_sequence(&ops, 10).unwrap();
        let seqs = bm_rm_sequences(&ops, &cm, 10).unwrap();
        assert!(seqs.r.matrices.iter().all(RatMatrix::is_zero));
        for m in 1..=2 {
            assert!(seqs.n_x.get(m).diag().iter().all(Zero::is_zero));
        }
        assert!(seqs.r_plus.matrices.iter().all(RatMatrix::is_diagonal));
    }

    #[test]
    fn identities_on_small_graphs() {
        for spec in [FamilySpec::complete(4), FamilySpec::cycle(6), FamilySpec::bowtie()] {
            let ops = build_operators(&family(spec));
            let cm = cm_sequence(&ops, 10).unwrap();
            for r in verify_generating_identities(&ops, &cm, 10).unwrap() {
                assert!(r.holds(), "{}", r.name);
            }
            let seqs = bm_rm_sequences(&ops, &cm, 10).unwrap();
            for r in verify_prop42(&ops, &seqs, 10).unwrap() {
                assert!(r.holds(), "{}", r.name);
            }
            assert!(verify_prop43(&ops, 10).unwrap().holds());
        }
    }

    #[test]
    fn commutator_series_gating() {
        let ops = build_operators(&family(FamilySpec::petersen()));
        assert!(commutator_correction_series(&ops, 8).unwrap().is_zero());
        let ops = build_operators(&family(FamilySpec::bowtie()));
        let g = commutator_correction_series(&ops, 8).unwrap();
        // lowest term: (1/2)[A, Q] z^2, integrated to [A, Q] u^3 / 6
        assert_eq!(g.valuation(), Some(3));
        assert_eq!(*g.coeff(3), ops.commutator().scale(&Rational::new(1.into(), 6.into())));
        // [A, Q] has a zero diagonal; the diagonal starts at u^4 with
        // (AK + 2KA)(x, x) / 12 = Σ_y A(x, y)(q_y - q_x) / 12, K = [A, Q]
        let diag_valuation = (0..5).filter_map(|x| g.entry(x, x).valuation()).min();
        assert_eq!(diag_valuation, Some(4));
        assert_eq!(*g.entry(0, 0).coeff(4), Rational::new((-2).into(), 3.into()));
        for x in 1..5 {
            assert_eq!(*g.entry(x, x).coeff(4), Rational::new(1.into(), 6.into()));
        }
    }

    #[test]
    fn norm_bounds() {
        assert!((alpha(3) - (3.0 + 21f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!(alpha(3) > 3.0);
        let ops = build_operators(&family(FamilySpec::complete(4)));
        let cm = cm_sequence(&ops, 10).unwrap();
        let rep = norm_bound_check(&ops, &cm);
        assert!(rep.all_pass());
        assert!((rep.per_m[0].estimate - 1.0).abs() < 1e-9);
        // K4 is regular, so ‖C_m‖ is the row sum 3 * 2^(m-1)
        assert!((rep.per_m[5].estimate - 48.0).abs() < 1e-6);
    }
}
