//! Truncated formal power series.
//!
//! [`ScalarSeries`] and [`MatrixSeries`] carry exact rational coefficients
//! `a_0 .. a_L`; everything beyond `u^L` is unknown and dropped. Operations
//! between series of different truncation orders (or matrix dimensions) are
//! rejected instead of silently truncating. [`FloatSeries`] is the `f64`
//! counterpart used only by the spectral formulas.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, rational_to_f64, RatMatrix, Rational};

fn order_mismatch(a: usize, b: usize) -> Error {
    Error::SeriesMismatch(format!("truncation orders differ ({a} vs {b})"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSeries {
    coeffs: Vec<Rational>,
}

impl ScalarSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    /// `c * u^k`, or zero when `k > order`.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Takes the first `order + 1` coefficients, padding with zeros.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| rat(c)))
    }

    /// Polynomial `1 + Σ terms` style constructor from `(power, coefficient)` pairs.
    pub fn polynomial(order: usize, terms: &[(usize, Rational)]) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in terms {
            if *k <= order {
                s.coeffs[*k] += c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(order_mismatch(self.order(), other.order()))
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        for i in 0..=order.saturating_sub(k) {
            if i + k <= order {
                s.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        s
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::SingularConstant);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut b = Self::zero(order);
        b.coeffs[0] = inv0.clone();
        for k in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &b.coeffs[k - i];
                }
            }
            b.coeffs[k] = -(acc * &inv0);
        }
        Ok(b)
    }

    /// `log(a)` for `a_0 = 1`, i.e. `-Σ g^n / n` where `a = 1 - g`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm { expected: "1" });
        }
        // b = log a satisfies a * b' = a'
        let order = self.order();
        let mut b = Self::zero(order);
        for k in 1..=order {
            let mut acc = rat(k as i64) * &self.coeffs[k];
            for j in 1..k {
                if !self.coeffs[k - j].is_zero() {
                    acc -= rat(j as i64) * &b.coeffs[j] * &self.coeffs[k - j];
                }
            }
            b.coeffs[k] = acc / rat(k as i64);
        }
        Ok(b)
    }

    /// `exp(a)` for `a_0 = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm { expected: "0" });
        }
        // b = exp a satisfies b' = a' * b
        let order = self.order();
        let mut b = Self::zero(order);
        b.coeffs[0] = Rational::one();
        for k in 1..=order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += rat(j as i64) * &self.coeffs[j] * &b.coeffs[k - j];
                }
            }
            b.coeffs[k] = acc / rat(k as i64);
        }
        Ok(b)
    }

    /// Term-wise antiderivative with zero constant; keeps the order, so
    /// the top coefficient of `self` does not contribute.
    pub fn integrate(&self) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        for k in 0..order {
            s.coeffs[k + 1] = &self.coeffs[k] / rat(k as i64 + 1);
        }
        s
    }

    /// Term-wise derivative, known only to order `L - 1`.
    pub fn derivative(&self) -> Self {
        let order = self.order();
        Self::from_coeffs(
            order.saturating_sub(1),
            (1..=order).map(|k| &self.coeffs[k] * rat(k as i64)),
        )
    }

    /// `base^exponent = exp(exponent * log(base))` for `base_0 = 1`.
    pub fn pow_rational(&self, exponent: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm { expected: "1" });
        }
        self.log()?.scale(exponent).exp()
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<Rational> {
        Ok(self
            .sub(other)?
            .coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero))
    }

    pub fn to_float(&self) -> FloatSeries {
        FloatSeries::from_coeffs(self.coeffs.iter().map(rational_to_f64).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawScalarSeries = serde_json::from_str(text)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(Error::SeriesMismatch(format!(
                "order {} needs {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[n, d]| parse_rational(n, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serializes")
    }
}

/// `binomial_power`: `base^exponent` for a base with constant term 1.
pub fn binomial_power(base: &ScalarSeries, exponent: &Rational) -> Result<ScalarSeries> {
    base.pow_rational(exponent)
}

fn parse_rational(n: &str, d: &str) -> Result<Rational> {
    let parse = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|e| Error::Input(format!("bad integer `{s}`: {e}")))
    };
    let den = parse(d)?;
    if den.is_zero() {
        return Err(Error::Input("zero denominator".into()));
    }
    Ok(Rational::new(parse(n)?, den))
}

fn rational_pair(q: &Rational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

#[derive(Deserialize)]
struct RawScalarSeries {
    order: usize,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for ScalarSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ScalarSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        let coeffs: Vec<_> = self.coeffs.iter().map(rational_pair).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Power series whose coefficients are `dim x dim` rational matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSeries {
    dim: usize,
    coeffs: Vec<RatMatrix>,
}

impl MatrixSeries {
    pub fn zero(order: usize, dim: usize) -> Self {
        Self {
            dim,
            coeffs: vec![RatMatrix::zeros(dim); order + 1],
        }
    }

    pub fn identity(order: usize, dim: usize) -> Self {
        let mut s = Self::zero(order, dim);
        s.coeffs[0] = RatMatrix::identity(dim);
        s
    }

    /// Takes up to `order + 1` coefficient matrices, padding with zeros.
    pub fn from_coeffs(order: usize, dim: usize, coeffs: impl IntoIterator<Item = RatMatrix>) -> Result<Self> {
        let mut s = Self::zero(order, dim);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            if c.dim() != dim {
                return Err(Error::SeriesMismatch(format!(
                    "coefficient {k} has dimension {} (expected {dim})",
                    c.dim()
                )));
            }
            s.coeffs[k] = c;
        }
        Ok(s)
    }

    /// `I - u A + u^2 Q`-style polynomials from `(power, matrix)` pairs.
    pub fn polynomial(order: usize, dim: usize, terms: &[(usize, RatMatrix)]) -> Result<Self> {
        let mut s = Self::zero(order, dim);
        for (k, m) in terms {
            if m.dim() != dim {
                return Err(Error::SeriesMismatch("polynomial term dimension".into()));
            }
            if *k <= order {
                s.coeffs[*k].add_assign(m);
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[RatMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &RatMatrix {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatMatrix::is_zero)
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(order_mismatch(self.order(), other.order()));
        }
        if self.dim != other.dim {
            return Err(Error::SeriesMismatch(format!(
                "matrix dimensions differ ({} vs {})",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(RatMatrix::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut s = Self::zero(order, self.dim);
        for i in 0..=order {
            if i + k <= order {
                s.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        s
    }

    /// Order-sensitive Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order();
        let left_nz: Vec<bool> = self.coeffs.iter().map(|m| !m.is_zero()).collect();
        let right_nz: Vec<bool> = other.coeffs.iter().map(|m| !m.is_zero()).collect();
        let mut out = Self::zero(order, self.dim);
        for i in (0..=order).filter(|&i| left_nz[i]) {
            for j in (0..=order - i).filter(|&j| right_nz[j]) {
                let prod = self.coeffs[i].mul(&other.coeffs[j]);
                out.coeffs[i + j].add_assign(&prod);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient on the left by a constant matrix.
    pub fn left_mul(&self, m: &RatMatrix) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| m.mul(c)).collect(),
        }
    }

    pub fn right_mul(&self, m: &RatMatrix) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.mul(m)).collect(),
        }
    }

    /// Product with a scalar series (which commutes with everything).
    pub fn mul_scalar_series(&self, s: &ScalarSeries) -> Result<Self> {
        if s.order() != self.order() {
            return Err(order_mismatch(self.order(), s.order()));
        }
        let order = self.order();
        let mut out = Self::zero(order, self.dim);
        for (i, c) in s.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !self.coeffs[j].is_zero() {
                    out.coeffs[i + j].add_assign(&self.coeffs[j].scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Two-sided inverse; requires an invertible constant coefficient.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inverse()?;
        let order = self.order();
        let mut b = Self::zero(order, self.dim);
        b.coeffs[0] = inv0.clone();
        for k in 1..=order {
            let mut acc = RatMatrix::zeros(self.dim);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc.add_assign(&self.coeffs[i].mul(&b.coeffs[k - i]));
                }
            }
            b.coeffs[k] = inv0.mul(&acc).neg();
        }
        Ok(b)
    }

    /// Powers `g^0 .. g^L` of a series with zero constant term.
    pub fn powers(&self) -> Result<Vec<Self>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm { expected: "0" });
        }
        let order = self.order();
        let mut out = vec![Self::identity(order, self.dim)];
        for n in 1..=order {
            let next = out[n - 1].mul(self)?;
            out.push(next);
        }
        Ok(out)
    }

    /// `log(I - g) = -Σ_{n=1}^{L} g^n / n` for `a = I - g`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != RatMatrix::identity(self.dim) {
            return Err(Error::BadConstantTerm { expected: "I" });
        }
        let g = Self::identity(self.order(), self.dim).sub(self)?;
        let mut acc = Self::zero(self.order(), self.dim);
        for (n, p) in g.powers()?.iter().enumerate().skip(1) {
            acc = acc.sub(&p.scale(&Rational::new(BigInt::one(), BigInt::from(n))))?;
        }
        Ok(acc)
    }

    /// `Σ_{n=0}^{L} a^n / n!` for a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let mut acc = Self::zero(self.order(), self.dim);
        let mut factorial = BigInt::one();
        for (n, p) in self.powers()?.iter().enumerate() {
            if n > 0 {
                factorial *= n;
            }
            acc = acc.add(&p.scale(&Rational::new(BigInt::one(), factorial.clone())))?;
        }
        Ok(acc)
    }

    pub fn integrate(&self) -> Self {
        let order = self.order();
        let mut s = Self::zero(order, self.dim);
        for k in 0..order {
            s.coeffs[k + 1] = self.coeffs[k].scale(&Rational::new(BigInt::one(), BigInt::from(k + 1)));
        }
        s
    }

    pub fn derivative(&self) -> Self {
        let order = self.order();
        let mut s = Self::zero(order.saturating_sub(1), self.dim);
        for k in 1..=order {
            s.coeffs[k - 1] = self.coeffs[k].scale(&rat(k as i64));
        }
        s
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(order, self.dim);
        for (k, c) in self.coeffs.iter().take(order + 1).enumerate() {
            s.coeffs[k] = c.clone();
        }
        s
    }

    /// The scalar series of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> ScalarSeries {
        ScalarSeries::from_coeffs(self.order(), self.coeffs.iter().map(|m| m.get(i, j).clone()))
    }

    pub fn trace(&self) -> ScalarSeries {
        ScalarSeries::from_coeffs(self.order(), self.coeffs.iter().map(RatMatrix::trace))
    }

    /// Largest absolute entry over all coefficients.
    pub fn max_abs(&self) -> Rational {
        self.coeffs
            .iter()
            .map(RatMatrix::max_abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serializes")
    }
}

impl Serialize for MatrixSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MatrixSeries", 3)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("dim", &self.dim)?;
        let coeffs: Vec<Vec<Vec<[String; 2]>>> = self
            .coeffs
            .iter()
            .map(|m| m.rows().map(|r| r.iter().map(rational_pair).collect()).collect())
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Truncated power series with `f64` coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatSeries {
    coeffs: Vec<f64>,
}

impl FloatSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = 1.0;
        s
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Self { coeffs }
    }

    /// `c_0 + c_1 u + c_2 u^2` truncated at `order`.
    pub fn quadratic(order: usize, c0: f64, c1: f64, c2: f64) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in [c0, c1, c2].into_iter().enumerate() {
            if k <= order {
                s.coeffs[k] = c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(order_mismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for i in 0..=order {
            for j in 0..=order - i {
                out.coeffs[i + j] += self.coeffs[i] * other.coeffs[j];
            }
        }
        Ok(out)
    }

    /// `log(a)` for `a_0 = 1` (within 1e-12).
    pub fn log(&self) -> Result<Self> {
        if (self.coeffs[0] - 1.0).abs() > 1e-12 {
            return Err(Error::BadConstantTerm { expected: "1" });
        }
        let order = self.order();
        let mut b = Self::zero(order);
        for k in 1..=order {
            let mut acc = k as f64 * self.coeffs[k];
            for j in 1..k {
                acc -= j as f64 * b.coeffs[j] * self.coeffs[k - j];
            }
            b.coeffs[k] = acc / k as f64;
        }
        Ok(b)
    }

    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0].abs() > 1e-12 {
            return Err(Error::BadConstantTerm { expected: "0" });
        }
        let order = self.order();
        let mut b = Self::zero(order);
        b.coeffs[0] = 1.0;
        for k in 1..=order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.coeffs[j] * b.coeffs[k - j];
            }
            b.coeffs[k] = acc / k as f64;
        }
        Ok(b)
    }

    pub fn pow(&self, exponent: f64) -> Result<Self> {
        self.log()?.scale(exponent).exp()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}
