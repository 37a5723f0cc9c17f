//! Function classes, their coefficient maps and `H₂(2)` functionals.
//!
//! Each class is defined through a Schwarz function `ω`:
//!
//! | class          | defining relation                                   |
//! |----------------|-----------------------------------------------------|
//! | `S*(α)`        | `zf'/f = 2α − 1 + 2(1 − α)/(1 − ω)`                  |
//! | `C(α)` (Ozaki) | `(zf')' = [1 + 2(1 − α)ω/(1 − ω)] f'`                |
//! | `G(α)`         | `(zf')' = [1 − αω/(1 − ω)] f'`                       |
//! | `S*(q)`        | `zf'/f = √(1 + ω²) + ω`                              |
//!
//! The closed forms below express `a₂, a₃, a₄` and `H₂(2) = a₂a₄ − a₃²`
//! through `(c₁, c₂, c₃)`. [`oracle_coeffs`] derives the same coefficients
//! from the relations above by recurrence, independently of the closed forms.

use std::fmt;

use num_complex::Complex64;

use crate::schwarz::SchwarzTriple;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Starlike,
    Ozaki,
    GClass,
    SqClass,
}

impl ClassKind {
    pub const ALL: [ClassKind; 4] = [Self::Starlike, Self::Ozaki, Self::GClass, Self::SqClass];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Self::Starlike => "starlike",
            Self::Ozaki => "ozaki",
            Self::GClass => "g",
            Self::SqClass => "sq",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Human-readable parameter domain, `None` for the parameter-free class.
    pub fn alpha_range(self) -> Option<&'static str> {
        match self {
            Self::Starlike => Some("[0,1)"),
            Self::Ozaki => Some("[-1/2,1)"),
            Self::GClass => Some("(0,1]"),
            Self::SqClass => None,
        }
    }

    pub fn contains_alpha(self, alpha: f64) -> bool {
        match self {
            Self::Starlike => (0.0..1.0).contains(&alpha),
            Self::Ozaki => (-0.5..1.0).contains(&alpha),
            Self::GClass => alpha > 0.0 && alpha <= 1.0,
            Self::SqClass => true,
        }
    }

    pub fn check_alpha(self, alpha: f64) -> Result<f64> {
        if self.contains_alpha(alpha) {
            Ok(alpha)
        } else {
            Err(Error::AlphaOutOfRange {
                kind: self,
                alpha,
                range: self.alpha_range().unwrap_or("(none)"),
            })
        }
    }

    /// Builds the spec for this family; `alpha` is ignored for `SqClass`.
    pub fn with_alpha(self, alpha: f64) -> Result<ClassSpec> {
        let spec = match self {
            Self::Starlike => ClassSpec::Starlike(alpha),
            Self::Ozaki => ClassSpec::Ozaki(alpha),
            Self::GClass => ClassSpec::GClass(alpha),
            Self::SqClass => ClassSpec::SqClass,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Whether the bound for this family is claimed to be sharp.
    pub fn sharp_claimed(self) -> bool {
        matches!(self, Self::Starlike | Self::SqClass)
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A function class together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassSpec {
    /// Starlike of order α, `0 ≤ α < 1`.
    Starlike(f64),
    /// Ozaki close-to-convex, `−1/2 ≤ α < 1`.
    Ozaki(f64),
    /// `Re(1 + zf''/f') < 1 + α/2`, `0 < α ≤ 1`.
    GClass(f64),
    /// Subordinate to `q(z) = √(1 + z²) + z`.
    SqClass,
}

impl ClassSpec {
    pub fn kind(&self) -> ClassKind {
        match self {
            Self::Starlike(_) => ClassKind::Starlike,
            Self::Ozaki(_) => ClassKind::Ozaki,
            Self::GClass(_) => ClassKind::GClass,
            Self::SqClass => ClassKind::SqClass,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Self::Starlike(a) | Self::Ozaki(a) | Self::GClass(a) => Some(a),
            Self::SqClass => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.alpha() {
            Some(a) => self.kind().check_alpha(a).map(|_| ()),
            None => Ok(()),
        }
    }

    /// Closed-form `H₂(2)` for this class.
    pub fn h2(&self, t: &SchwarzTriple) -> Result<Complex64> {
        match *self {
            Self::Starlike(a) => h2_starlike(a, t),
            Self::Ozaki(a) => h2_ozaki(a, t),
            Self::GClass(a) => h2_g(a, t),
            Self::SqClass => Ok(h2_sq(t)),
        }
    }

    /// Closed-form `(a₂, a₃, a₄)`; `None` for `SqClass`, which has no closed
    /// form here.
    pub fn coeffs(&self, t: &SchwarzTriple) -> Result<Option<CoeffVector>> {
        match *self {
            Self::Starlike(a) => coeffs_starlike(a, t).map(Some),
            Self::Ozaki(a) => coeffs_ozaki(a, t).map(Some),
            Self::GClass(a) => coeffs_g(a, t).map(Some),
            Self::SqClass => Ok(None),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha() {
            Some(a) => write!(f, "{}(alpha={a})", self.kind()),
            None => write!(f, "{}", self.kind()),
        }
    }
}

/// Taylor coefficients `a₂, a₃, a₄` of `f(z) = z + a₂z² + a₃z³ + a₄z⁴ + ⋯`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoeffVector {
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
}

impl CoeffVector {
    pub fn new(a2: Complex64, a3: Complex64, a4: Complex64) -> Self {
        Self { a2, a3, a4 }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [self.a2 - other.a2, self.a3 - other.a3, self.a4 - other.a4]
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max)
    }
}

pub fn coeffs_starlike(alpha: f64, t: &SchwarzTriple) -> Result<CoeffVector> {
    let a = ClassKind::Starlike.check_alpha(alpha)?;
    let SchwarzTriple { c1, c2, c3 } = *t;
    let k = 1.0 - a;
    Ok(CoeffVector {
        a2: c1 * (2.0 * k),
        a3: (c2 + c1 * c1 * (3.0 - 2.0 * a)) * k,
        a4: (c3 + c1 * c2 * (5.0 - 3.0 * a) + c1 * c1 * c1 * (2.0 * a * a - 7.0 * a + 6.0))
            * (2.0 / 3.0 * k),
    })
}

pub fn coeffs_ozaki(alpha: f64, t: &SchwarzTriple) -> Result<CoeffVector> {
    let a = ClassKind::Ozaki.check_alpha(alpha)?;
    let SchwarzTriple { c1, c2, c3 } = *t;
    let k = 1.0 - a;
    Ok(CoeffVector {
        a2: c1 * k,
        a3: (c2 + c1 * c1 * (3.0 - 2.0 * a)) * (k / 3.0),
        a4: (c3 + c1 * c2 * (5.0 - 3.0 * a) + c1 * c1 * c1 * (2.0 * a * a - 7.0 * a + 6.0))
            * (k / 6.0),
    })
}

pub fn coeffs_g(alpha: f64, t: &SchwarzTriple) -> Result<CoeffVector> {
    let a = ClassKind::GClass.check_alpha(alpha)?;
    let SchwarzTriple { c1, c2, c3 } = *t;
    Ok(CoeffVector {
        a2: c1 * (-a / 2.0),
        a3: (c2 + c1 * c1 * (1.0 - a)) * (-a / 6.0),
        a4: (c3 * 2.0 + c1 * c2 * (4.0 - 3.0 * a) + c1 * c1 * c1 * (a * a - 3.0 * a + 2.0))
            * (-a / 24.0),
    })
}

pub fn h2_starlike(alpha: f64, t: &SchwarzTriple) -> Result<Complex64> {
    let a = ClassKind::Starlike.check_alpha(alpha)?;
    let SchwarzTriple { c1, c2, c3 } = *t;
    let c1sq = c1 * c1;
    let bracket = c1 * c3 + c1sq * c2 * 0.5
        - c1sq * c1sq * (0.25 * (4.0 * a * a - 8.0 * a + 3.0))
        - c2 * c2 * 0.75;
    Ok(bracket * (4.0 / 3.0 * (1.0 - a) * (1.0 - a)))
}

pub fn h2_ozaki(alpha: f64, t: &SchwarzTriple) -> Result<Complex64> {
    let a = ClassKind::Ozaki.check_alpha(alpha)?;
    let SchwarzTriple { c1, c2, c3 } = *t;
    let c1sq = c1 * c1;
    let bracket = c1 * c3 + c1sq * c2 * ((3.0 - a) / 3.0)
        - c1sq * c1sq * ((2.0 * a * a - 3.0 * a) / 3.0)
        - c2 * c2 * (2.0 / 3.0);
    Ok(bracket * ((1.0 - a) * (1.0 - a) / 6.0))
}

pub fn h2_g(alpha: f64, t: &SchwarzTriple) -> Result<Complex64> {
    let a = ClassKind::GClass.check_alpha(alpha)?;
    let SchwarzTriple { c1, c2, c3 } = *t;
    let c1sq = c1 * c1;
    let bracket =
        c1 * c3 * 6.0 + c1sq * c2 * (4.0 - a) - c1sq * c1sq * (a * a + a - 2.0) - c2 * c2 * 4.0;
    Ok(bracket * (a * a / 144.0))
}

pub fn h2_sq(t: &SchwarzTriple) -> Complex64 {
    let SchwarzTriple { c1, c2, c3 } = *t;
    let c1sq = c1 * c1;
    (c1 * c3 + c1sq * c2 * 0.25 - c1sq * c1sq * (7.0 / 16.0) - c2 * c2 * 0.75) / 3.0
}

pub fn h2_generic(v: &CoeffVector) -> Complex64 {
    v.a2 * v.a4 - v.a3 * v.a3
}

/// `H_q(n)`: determinant of the `q × q` matrix with entry `(i, j)` equal to
/// `a_{n+i+j}` (zero-based `i, j`). `coeffs[0]` is `a₁`.
pub fn hankel_qn(coeffs: &[Complex64], q: usize, n: usize) -> Result<Complex64> {
    if q == 0 || n == 0 {
        return Err(Error::InvalidHankelIndex);
    }
    let need = n + 2 * q - 2;
    if coeffs.len() < need {
        return Err(Error::InsufficientCoefficients {
            have: coeffs.len(),
            need,
        });
    }
    let matrix: Vec<Vec<Complex64>> = (0..q)
        .map(|i| (0..q).map(|j| coeffs[n + i + j - 1]).collect())
        .collect();
    Ok(determinant(matrix))
}

/// Fraction-free (Bareiss) elimination with partial pivoting. Integer-valued
/// inputs give exact results as long as intermediates stay below 2⁵³.
fn determinant(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let size = m.len();
    let mut sign = 1.0;
    let mut prev = Complex64::new(1.0, 0.0);
    for k in 0..size {
        let pivot = (k..size)
            .max_by(|&a, &b| m[a][k].norm().total_cmp(&m[b][k].norm()))
            .unwrap_or(k);
        if m[pivot][k].norm() == 0.0 {
            return Complex64::default();
        }
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    m[size - 1][size - 1] * sign
}

/// Right-hand series of the defining relation: `P` in `zf' = P f` for the
/// starlike-type classes, `Q` in `(zf')' = Q f'` for the convex-type ones.
fn relation_series(spec: &ClassSpec, omega: &TruncatedSeries) -> Result<TruncatedSeries> {
    let order = omega.order();
    let one = TruncatedSeries::one(order);
    // ω/(1 − ω) = ω + ω² + ⋯
    let tail = omega.div(&(&one - omega))?;
    let series = match *spec {
        ClassSpec::Starlike(a) => {
            let inv = one.div(&(&one - omega))?;
            let mut p = inv.scale((2.0 * (1.0 - a)).into());
            p = &p + &TruncatedSeries::one(order).scale((2.0 * a - 1.0).into());
            p
        }
        ClassSpec::Ozaki(a) => &one + &tail.scale((2.0 * (1.0 - a)).into()),
        ClassSpec::GClass(a) => &one - &tail.scale(a.into()),
        ClassSpec::SqClass => {
            let root = TruncatedSeries::sqrt1p(&omega.mul(omega))?;
            &root + omega
        }
    };
    Ok(series)
}

/// Taylor coefficients `a₁ = 1, a₂, …, a_{n_max}` of the class member
/// generated by `omega`, found by triangular recurrence on the defining
/// relation.
pub fn oracle_coeffs(
    spec: &ClassSpec,
    omega: &TruncatedSeries,
    n_max: usize,
) -> Result<Vec<Complex64>> {
    spec.validate()?;
    let c0 = omega.coeff(0);
    if c0.norm() != 0.0 {
        return Err(Error::NonSchwarzInput(c0.norm()));
    }
    let need = n_max.max(4);
    if omega.order() < need {
        return Err(Error::InsufficientOrder {
            have: omega.order(),
            need,
        });
    }
    let rhs = relation_series(spec, &omega.with_order(need))?;
    let p = rhs.coeffs();
    // a[k] holds a_{k+1}
    let mut a = vec![Complex64::new(1.0, 0.0)];
    for n in 2..=need {
        let value = match spec.kind() {
            // coefficient of zⁿ in zf' = Pf: n aₙ = Σ_{k=1}^{n} a_k P_{n−k}, P₀ = 1
            ClassKind::Starlike | ClassKind::SqClass => {
                let s: Complex64 = (1..n).map(|k| a[k - 1] * p[n - k]).sum();
                s / (n - 1) as f64
            }
            // coefficient of z^{n−1} in (zf')' = Qf': n² aₙ = Σ_{k=1}^{n} k a_k Q_{n−k}
            ClassKind::Ozaki | ClassKind::GClass => {
                let s: Complex64 = (1..n).map(|k| a[k - 1] * (k as f64) * p[n - k]).sum();
                s / (n * (n - 1)) as f64
            }
        };
        a.push(value);
    }
    a.truncate(n_max);
    Ok(a)
}

/// The degree-3 polynomial `c₁z + c₂z² + c₃z³` at the given order.
pub fn omega_polynomial(t: &SchwarzTriple, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Complex64::default(); order.max(4)];
    coeffs[1] = t.c1;
    coeffs[2] = t.c2;
    coeffs[3] = t.c3;
    TruncatedSeries::new(coeffs).expect("nonempty")
}
