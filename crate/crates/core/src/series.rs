//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] stores the Taylor coefficients `s₀, s₁, …, s_{N-1}`
//! of an analytic function around the origin. `N` is the *order*: the
//! coefficient of `z^N` and beyond is unknown. Binary operations truncate to
//! the smaller operand order, so every stored coefficient of a result is
//! exact up to floating-point rounding.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Truncation order used by the coefficient oracles.
pub const DEFAULT_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order.max(1)],
        }
    }

    /// The constant `1` at the given order.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// The identity map `z`, requires `order >= 2` to be nonzero.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, order)
    }

    /// `z^k` truncated at `order`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < s.order() {
            s.coeffs[k] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// `1/(1-z)` truncated at `order`.
    pub fn geometric(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0); order.max(1)],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, zero past the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Keep only the first `order` coefficients (padding with zeros if the
    /// series is shorter, which treats it as a polynomial).
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(1), Complex64::default());
        Self { coeffs }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|n| (0..=n).map(|k| self.coeffs[k] * other.coeffs[n - k]).sum())
            .collect();
        Self { coeffs }
    }

    /// Quotient `self / divisor` by forward substitution.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = divisor.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order().min(divisor.order());
        let mut q: Vec<Complex64> = Vec::with_capacity(order);
        for n in 0..order {
            let acc: Complex64 = (1..=n).map(|k| divisor.coeffs[k] * q[n - k]).sum();
            q.push((self.coeffs[n] - acc) / b0);
        }
        Ok(Self { coeffs: q })
    }

    /// `outer ∘ inner`, evaluated Horner-style as
    /// `o₀ + w(o₁ + w(o₂ + ⋯))` with `w = inner`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0].norm() != 0.0 {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = outer.order().min(inner.order());
        let inner = inner.with_order(order);
        let mut acc = Self::zero(order);
        for &c in outer.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Principal branch of `sqrt(1 + u)` for `u(0) = 0`.
    pub fn sqrt1p(u: &Self) -> Result<Self> {
        if u.coeffs[0].norm() != 0.0 {
            return Err(Error::NonzeroConstant);
        }
        // s² = 1 + u with s₀ = 1 gives 2sₙ = uₙ - Σ_{k=1}^{n-1} s_k s_{n-k}
        let mut s = vec![Complex64::new(1.0, 0.0)];
        for n in 1..u.order() {
            let cross: Complex64 = (1..n).map(|k| s[k] * s[n - k]).sum();
            s.push((u.coeffs[n] - cross) * 0.5);
        }
        Ok(Self { coeffs: s })
    }

    /// Term-by-term derivative; the result has one fewer coefficient.
    pub fn derivative(&self) -> Self {
        if self.order() < 2 {
            return Self::zero(1);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, &c)| c * (n + 1) as f64)
            .collect();
        Self { coeffs }
    }

    /// Multiply by `z`, keeping the order (the top coefficient drops off).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order());
        coeffs.push(Complex64::default());
        coeffs.extend_from_slice(&self.coeffs[..self.order() - 1]);
        Self { coeffs }
    }

    /// Largest coefficient modulus of `self - other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..order).map(|n| self.coeffs[n] + rhs.coeffs[n]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}
