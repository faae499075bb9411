//! Symmetric eigendecomposition, local spectra, spectral measures and the
//! spectral and determinant forms of the zeta function.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_vertex, require_formula_assumptions, Graph};
use crate::linalg::{rat, rational_to_f64, FloatMatrix};
use crate::operators::{bm_rm_sequences, build_operators, cm_sequence};
use crate::series::{binomial_power, FloatSeries, ScalarSeries};

pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
pub const CLUSTER_TOLERANCE: f64 = 1e-7;
pub const LOCAL_MULTIPLICITY_THRESHOLD: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues sharing one eigenspace, with its orthogonal projector.
#[derive(Clone, Debug)]
pub struct EigenCluster {
    pub value: f64,
    pub indices: Vec<usize>,
    pub projector: FloatMatrix,
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: FloatMatrix,
    pub clusters: Vec<EigenCluster>,
}

fn off_diagonal_mass(a: &FloatMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j) * a.get(i, j);
            }
        }
    }
    s.sqrt()
}

fn frobenius(a: &FloatMatrix) -> f64 {
    let n = a.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j) * a.get(i, j))
        .sum::<f64>()
        .sqrt()
}

pub fn eigendecompose(sym: &FloatMatrix) -> Result<EigenDecomposition> {
    eigendecompose_with(sym, CLUSTER_TOLERANCE)
}

/// Cyclic Jacobi. `cluster_tolerance` is relative to the spectral diameter
/// (or to 1 when the diameter is smaller).
pub fn eigendecompose_with(sym: &FloatMatrix, cluster_tolerance: f64) -> Result<EigenDecomposition> {
    let n = sym.dim();
    let asym = sym.max_asymmetry();
    if asym > SYMMETRY_TOLERANCE * sym.max_abs().max(1.0) {
        return Err(Error::Asymmetric(asym));
    }
    let mut a = sym.clone();
    let mut v = FloatMatrix::identity(n);
    let target = OFF_DIAGONAL_TOLERANCE * frobenius(sym);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut eigenvectors = FloatMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            eigenvectors.set(k, new, v.get(k, old));
        }
    }

    let diameter = match (eigenvalues.first(), eigenvalues.last()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0.0,
    };
    let tol = cluster_tolerance * diameter.max(1.0);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if lambda - eigenvalues[g[0]] <= tol => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    let clusters = groups
        .into_iter()
        .map(|indices| {
            let value = indices.iter().map(|&k| eigenvalues[k]).sum::<f64>() / indices.len() as f64;
            let mut projector = FloatMatrix::zeros(n);
            for &k in &indices {
                for i in 0..n {
                    for j in 0..n {
                        projector.add_to(i, j, eigenvectors.get(i, k) * eigenvectors.get(j, k));
                    }
                }
            }
            EigenCluster {
                value,
                indices,
                projector,
            }
        })
        .collect();

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        clusters,
    })
}

/// Worst deviations of the decomposition from its defining identities.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DecompositionResiduals {
    pub reconstruction: f64,
    pub completeness: f64,
    pub orthogonality: f64,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvectors.dim()
    }

    /// `Σ_λ λ E_λ`.
    pub fn reconstruct(&self) -> FloatMatrix {
        let n = self.dim();
        let mut out = FloatMatrix::zeros(n);
        for c in &self.clusters {
            for i in 0..n {
                for j in 0..n {
                    out.add_to(i, j, c.value * c.projector.get(i, j));
                }
            }
        }
        out
    }

    pub fn residuals(&self, original: &FloatMatrix) -> DecompositionResiduals {
        let n = self.dim();
        let reconstruction = self.reconstruct().sub(original).max_abs();
        let mut sum = FloatMatrix::zeros(n);
        for c in &self.clusters {
            for i in 0..n {
                for j in 0..n {
                    sum.add_to(i, j, c.projector.get(i, j));
                }
            }
        }
        let completeness = sum.sub(&FloatMatrix::identity(n)).max_abs();
        let mut orthogonality: f64 = 0.0;
        for (a, ca) in self.clusters.iter().enumerate() {
            for cb in &self.clusters[a + 1..] {
                orthogonality = orthogonality.max(ca.projector.mul(&cb.projector).max_abs());
            }
        }
        DecompositionResiduals {
            reconstruction,
            completeness,
            orthogonality,
        }
    }

    /// Reconstruction within `1e-9 (1 + ‖M‖_max)`, completeness within `1e-9`
    /// and orthogonality within `1e-8`.
    pub fn satisfies_invariants(&self, original: &FloatMatrix) -> bool {
        let r = self.residuals(original);
        r.reconstruction <= 1e-9 * (1.0 + original.max_abs()) && r.completeness <= 1e-9 && r.orthogonality <= 1e-8
    }

    pub fn measure(&self, x0: usize, x: usize) -> SpectralMeasure {
        SpectralMeasure {
            source: x0,
            target: x,
            atoms: self
                .clusters
                .iter()
                .map(|c| (c.value, c.projector.get(x0, x)))
                .collect(),
        }
    }

    pub fn local_spectrum(&self, x: usize) -> LocalSpectrum {
        LocalSpectrum {
            vertex: x,
            pairs: self
                .clusters
                .iter()
                .map(|c| (c.value, c.projector.get(x, x)))
                .filter(|&(_, m)| m > LOCAL_MULTIPLICITY_THRESHOLD)
                .collect(),
        }
    }
}

pub fn laplacian_decomposition(g: &Graph) -> Result<EigenDecomposition> {
    eigendecompose(&build_operators(g).laplacian.to_float())
}

/// Eigenvalues `λ` of the Laplacian with local multiplicities `E_λ(x, x)`.
#[derive(Clone, Debug, Serialize)]
pub struct LocalSpectrum {
    pub vertex: usize,
    pub pairs: Vec<(f64, f64)>,
}

impl LocalSpectrum {
    pub fn total_multiplicity(&self) -> f64 {
        self.pairs.iter().map(|p| p.1).sum()
    }
}

pub fn local_spectrum(g: &Graph, x: usize) -> Result<LocalSpectrum> {
    check_vertex(g, x)?;
    Ok(laplacian_decomposition(g)?.local_spectrum(x))
}

/// Atoms `(λ, E_λ(x0, x))` of the measure `<E(·) δ_x0, δ_x>`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralMeasure {
    pub source: usize,
    pub target: usize,
    pub atoms: Vec<(f64, f64)>,
}

impl SpectralMeasure {
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }
}

pub fn spectral_measure(g: &Graph, x0: usize, x: usize) -> Result<SpectralMeasure> {
    check_vertex(g, x0)?;
    check_vertex(g, x)?;
    Ok(laplacian_decomposition(g)?.measure(x0, x))
}

fn require_regular(g: &Graph) -> Result<usize> {
    require_formula_assumptions(g)?;
    if !g.is_simple() {
        return Err(Error::NonSimple(format!("{} has loops or multiple edges", g.name())));
    }
    g.regular_degree()
        .ok_or_else(|| Error::Assumption(format!("{} is not regular", g.name())))
}

/// `exp(Σ_{m≥1} R_m(x, x)/m u^m)` as floats.
fn r_factor(g: &Graph, x0: usize, x: usize, order: usize) -> Result<FloatSeries> {
    if x0 != x {
        return Ok(FloatSeries::one(order));
    }
    let ops = build_operators(g);
    let cm = cm_sequence(&ops, order)?;
    let seqs = bm_rm_sequences(&ops, &cm, order)?;
    let mut coeffs = vec![0.0; order + 1];
    for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = rational_to_f64(seqs.r.get(m).get(x0, x0)) / m as f64;
    }
    FloatSeries::from_coeffs(coeffs).exp()
}

fn quadratic_for(q: f64, lambda: f64, order: usize) -> FloatSeries {
    FloatSeries::quadratic(order, 1.0, -((q + 1.0) - lambda), q)
}

/// Spectral-measure form of `Z(u, x0, x)` on a finite regular graph.
pub fn zeta_cor45(g: &Graph, x0: usize, x: usize, order: usize) -> Result<FloatSeries> {
    let degree = require_regular(g)?;
    check_vertex(g, x0)?;
    check_vertex(g, x)?;
    let q = degree as f64 - 1.0;
    let decomposition = laplacian_decomposition(g)?;
    let measure = decomposition.measure(x0, x);

    let mut log_sum = FloatSeries::zero(order);
    for &(lambda, mu) in &measure.atoms {
        log_sum = log_sum.add(&quadratic_for(q, lambda, order).log()?.scale(-mu))?;
    }
    let mut z = log_sum.exp()?;
    if x0 == x {
        z = z.mul(&FloatSeries::quadratic(order, 1.0, 0.0, -1.0).pow(-(q - 1.0) / 2.0)?)?;
    }
    z.mul(&r_factor(g, x0, x, order)?)
}

/// Product over the local spectrum at `x0` of
/// `(1 - (q + 1 - λ) u + q u²)^{-m_x0(λ)}`, with the boundary factors.
pub fn zeta_local_determinant(g: &Graph, x0: usize, order: usize) -> Result<FloatSeries> {
    let degree = require_regular(g)?;
    check_vertex(g, x0)?;
    let q = degree as f64 - 1.0;
    let spectrum = laplacian_decomposition(g)?.local_spectrum(x0);
    let mut z = FloatSeries::quadratic(order, 1.0, 0.0, -1.0).pow(-(q - 1.0) / 2.0)?;
    for &(lambda, m) in &spectrum.pairs {
        z = z.mul(&quadratic_for(q, lambda, order).pow(-m)?)?;
    }
    z.mul(&r_factor(g, x0, x0, order)?)
}

/// `Z_X(u) = (1 - u²)^{χ} exp(-tr log(I - uA + u²Q))`, exactly.
pub fn ihara_global_determinant(g: &Graph, order: usize) -> Result<ScalarSeries> {
    require_formula_assumptions(g)?;
    if !g.is_simple() {
        return Err(Error::NonSimple(format!("{} has loops or multiple edges", g.name())));
    }
    let ops = build_operators(g);
    let trace_log = ops.ihara_polynomial(order).log()?.trace();
    let one_minus_u2 = ScalarSeries::polynomial(order, &[(0, rat(1)), (2, rat(-1))]);
    let boundary = binomial_power(&one_minus_u2, &rat(g.euler_characteristic()))?;
    boundary.mul(&trace_log.neg().exp()?)
}

/// Lifts an exact series to floats for comparison with spectral output.
pub fn max_float_deviation(exact: &ScalarSeries, float: &FloatSeries) -> Result<f64> {
    exact.to_float().max_abs_diff(float)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilySpec};
    use crate::linalg::ratio;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn k4_laplacian() {
        let g = make_family(&FamilySpec::complete(4)).unwrap();
        let lap = build_operators(&g).laplacian.to_float();
        let d = eigendecompose(&lap).unwrap();
        assert!(close(d.eigenvalues[0], 0.0, 1e-12));
        for k in 1..4 {
            assert!(close(d.eigenvalues[k], 4.0, 1e-12));
        }
        assert_eq!(d.clusters.len(), 2);
        for i in 0..4 {
            for j in 0..4 {
                assert!(close(d.clusters[0].projector.get(i, j), 0.25, 1e-12));
            }
        }
        assert!(d.satisfies_invariants(&lap));
        let ls = d.local_spectrum(2);
        assert_eq!(ls.pairs.len(), 2);
        assert!(close(ls.pairs[1].1, 0.75, 1e-12));
    }

    #[test]
    fn cycle_laplacian() {
        let g = make_family(&FamilySpec::cycle(6)).unwrap();
        let lap = build_operators(&g).laplacian.to_float();
        let d = eigendecompose(&lap).unwrap();
        for (got, want) in d.eigenvalues.iter().zip([0.0, 1.0, 1.0, 3.0, 3.0, 4.0]) {
            assert!(close(*got, want, 1e-12), "{got} vs {want}");
        }
        assert!(d.satisfies_invariants(&lap));
        let ls = d.local_spectrum(3);
        let want = [(0.0, 1.0 / 6.0), (1.0, 1.0 / 3.0), (3.0, 1.0 / 3.0), (4.0, 1.0 / 6.0)];
        assert_eq!(ls.pairs.len(), 4);
        for (got, want) in ls.pairs.iter().zip(want) {
            assert!(close(got.0, want.0, 1e-12) && close(got.1, want.1, 1e-12));
        }
        let m = d.measure(0, 3);
        assert!(close(m.total_mass(), 0.0, 1e-12));
    }

    #[test]
    fn diagonal_input() {
        let m = FloatMatrix::from_rows(&[vec![3.0, 0.0, 0.0], vec![0.0, -1.0, 0.0], vec![0.0, 0.0, 2.0]]);
        let d = eigendecompose(&m).unwrap();
        assert_eq!(d.eigenvalues, vec![-1.0, 2.0, 3.0]);
        assert_eq!(d.eigenvectors.get(1, 0).abs(), 1.0);
        assert_eq!(d.eigenvectors.get(0, 2).abs(), 1.0);
    }

    #[test]
    fn asymmetric_rejected() {
        let m = FloatMatrix::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]);
        assert!(matches!(eigendecompose(&m), Err(Error::Asymmetric(_))));
    }

    #[test]
    fn bowtie_local_spectra_differ() {
        let g = make_family(&FamilySpec::bowtie()).unwrap();
        let center = local_spectrum(&g, 0).unwrap();
        let outer = local_spectrum(&g, 1).unwrap();
        assert!(close(center.total_multiplicity(), 1.0, 1e-9));
        assert!(close(outer.total_multiplicity(), 1.0, 1e-9));
        // Laplacian spectrum {0, 1, 3, 3, 5}; the center only sees 0 and 5.
        assert_eq!(center.pairs.len(), 2);
        assert!(close(center.pairs[0].1, 0.2, 1e-12));
        assert!(close(center.pairs[1].0, 5.0, 1e-12));
        assert!(close(center.pairs[1].1, 0.8, 1e-12));
        assert_eq!(outer.pairs.len(), 4);
    }

    #[test]
    fn k4_spectral_zeta() {
        let g = make_family(&FamilySpec::complete(4)).unwrap();
        let z = zeta_cor45(&g, 0, 0, 8).unwrap();
        let log = z.log().unwrap();
        assert!(close(log.coeff(3), 2.0, 1e-10));
        assert!(close(log.coeff(4), 1.5, 1e-10));
        let closed = {
            let f = |c1: f64, c2: f64, e: f64| FloatSeries::quadratic(8, 1.0, c1, c2).pow(e).unwrap();
            f(0.0, -1.0, -0.5)
                .mul(&f(-1.0, 0.0, -0.25))
                .unwrap()
                .mul(&f(-2.0, 0.0, -0.25))
                .unwrap()
                .mul(&f(1.0, 2.0, -0.75))
                .unwrap()
        };
        assert!(z.max_abs_diff(&closed).unwrap() < 1e-10);
        let det = zeta_local_determinant(&g, 0, 8).unwrap();
        assert!(det.max_abs_diff(&z).unwrap() < 1e-10);
    }

    #[test]
    fn cycle_spectral_zeta() {
        let g = make_family(&FamilySpec::cycle(6)).unwrap();
        let z = zeta_cor45(&g, 0, 0, 12).unwrap();
        let mut want = vec![0.0; 13];
        want[0] = 1.0;
        want[6] = 1.0 / 3.0;
        want[12] = 2.0 / 9.0;
        assert!(z.max_abs_diff(&FloatSeries::from_coeffs(want)).unwrap() < 1e-9);
    }

    #[test]
    fn petersen_pentagons() {
        let g = make_family(&FamilySpec::petersen()).unwrap();
        let log = zeta_cor45(&g, 0, 0, 6).unwrap().log().unwrap();
        assert!(close(log.coeff(5), 12.0 / 5.0, 1e-9));
        let global = ihara_global_determinant(&g, 6).unwrap().log().unwrap();
        assert_eq!(*global.coeff(5), rat(24));
    }

    #[test]
    fn global_determinant_examples() {
        let g = make_family(&FamilySpec::cycle(6)).unwrap();
        let z = ihara_global_determinant(&g, 12).unwrap();
        let want = ScalarSeries::polynomial(12, &[(0, rat(1)), (6, rat(2)), (12, rat(3))]);
        assert_eq!(z, want);
        let k4 = make_family(&FamilySpec::complete(4)).unwrap();
        let log = ihara_global_determinant(&k4, 6).unwrap().log().unwrap();
        assert_eq!(*log.coeff(3), rat(8));
        assert_eq!(*log.coeff(4), ratio(24, 4));
    }

    #[test]
    fn irregular_refused() {
        let g = make_family(&FamilySpec::bowtie()).unwrap();
        assert!(matches!(zeta_cor45(&g, 0, 0, 4), Err(Error::Assumption(_))));
        assert!(zeta_local_determinant(&g, 0, 4).is_err());
        assert!(ihara_global_determinant(&g, 4).is_ok());
    }
}
