//! The first three coefficients of a Schwarz function.
//!
//! A Schwarz function `ω(z) = c₁z + c₂z² + c₃z³ + ⋯` maps the unit disk into
//! itself with `ω(0) = 0`. Its first three coefficients fill exactly the set
//!
//! ```text
//! |c₁| ≤ 1,   |c₂| ≤ 1 − |c₁|²,   |c₃(1 − |c₁|²) + c̄₁c₂²| ≤ (1 − |c₁|²)² − |c₂|²
//! ```
//!
//! which is awkward to search directly. Three Schur parameters `γ₀, γ₁, γ₂`
//! in the closed unit disk chart it smoothly:
//!
//! ```text
//! c₁ = γ₀
//! c₂ = (1 − |γ₀|²) γ₁
//! c₃ = (1 − |γ₀|²) [(1 − |γ₁|²) γ₂ − γ̄₀ γ₁²]
//! ```
//!
//! The third constraint then reads `|γ₂| ≤ 1`, with equality exactly when
//! `|γ₂| = 1`.

use num_complex::Complex64;

use crate::{Error, Result, FEASIBILITY_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SchwarzTriple {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl SchwarzTriple {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn real(c1: f64, c2: f64, c3: f64) -> Self {
        Self::new(c1.into(), c2.into(), c3.into())
    }

    /// The triple of `ω(e^{iθ}z)`, i.e. `(c₁e^{iθ}, c₂e^{2iθ}, c₃e^{3iθ})`.
    pub fn rotate(&self, theta: f64) -> Self {
        let r = Complex64::from_polar(1.0, theta);
        Self {
            c1: self.c1 * r,
            c2: self.c2 * r * r,
            c3: self.c3 * r * r * r,
        }
    }

    /// Slack of each constraint (right side minus left side); all three are
    /// nonnegative for a feasible triple.
    pub fn slacks(&self) -> [f64; 3] {
        let s1 = 1.0 - self.c1.norm_sqr();
        let lhs3 = (self.c3 * s1 + self.c1.conj() * self.c2 * self.c2).norm();
        [
            1.0 - self.c1.norm(),
            s1 - self.c2.norm(),
            s1 * s1 - self.c2.norm_sqr() - lhs3,
        ]
    }

    /// All three constraints hold within additive slack `tol`.
    ///
    /// At `|c₁| = 1` the constraints force `c₂ = 0` but leave `c₃` free; see
    /// [`reduce_by_rotation`] for the sharper test used there.
    pub fn is_feasible(&self, tol: f64) -> bool {
        self.slacks().iter().all(|&s| s >= -tol)
    }
}

/// Three Schur parameters, each in the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SchurPoint {
    pub g0: Complex64,
    pub g1: Complex64,
    pub g2: Complex64,
}

impl SchurPoint {
    pub fn new(g0: Complex64, g1: Complex64, g2: Complex64) -> Self {
        Self { g0, g1, g2 }
    }

    pub fn validate(&self) -> Result<()> {
        for (index, g) in [self.g0, self.g1, self.g2].into_iter().enumerate() {
            let modulus = g.norm();
            if modulus.is_nan() || modulus > 1.0 + FEASIBILITY_TOL {
                return Err(Error::InvalidSchurPoint { index, modulus });
            }
        }
        Ok(())
    }
}

/// The first coefficient rotated onto the nonnegative real axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReducedTriple {
    pub c1: f64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl ReducedTriple {
    pub fn to_triple(&self) -> SchwarzTriple {
        SchwarzTriple::new(self.c1.into(), self.c2, self.c3)
    }

    /// Slacks of `c₁ ∈ [0,1]`, `|c₂| ≤ 1 − c₁²`, `|c₃| ≤ 1 − c₁² − |c₂|²/(1 + c₁)`.
    pub fn slacks(&self) -> [f64; 3] {
        let s1 = 1.0 - self.c1 * self.c1;
        [
            self.c1.min(1.0 - self.c1),
            s1 - self.c2.norm(),
            s1 - self.c2.norm_sqr() / (1.0 + self.c1) - self.c3.norm(),
        ]
    }

    pub fn is_feasible(&self, tol: f64) -> bool {
        self.slacks().iter().all(|&s| s >= -tol)
    }
}

/// Maps Schur parameters to Schwarz coefficients.
pub fn schur_to_triple(p: &SchurPoint) -> Result<SchwarzTriple> {
    p.validate()?;
    Ok(schur_to_triple_unchecked(p))
}

/// [`schur_to_triple`] without the disk check, for hot loops whose inputs
/// are in the disk by construction.
#[inline]
pub fn schur_to_triple_unchecked(p: &SchurPoint) -> SchwarzTriple {
    let s0 = 1.0 - p.g0.norm_sqr();
    let s1 = 1.0 - p.g1.norm_sqr();
    SchwarzTriple {
        c1: p.g0,
        c2: p.g1 * s0,
        c3: (p.g2 * s1 - p.g0.conj() * p.g1 * p.g1) * s0,
    }
}

/// Inverse of the chart away from the degenerate boundary `|γ₀| = 1` or
/// `|γ₁| = 1`, where the later parameters are not determined and are set to 0.
pub fn triple_to_schur(t: &SchwarzTriple) -> SchurPoint {
    let g0 = t.c1;
    let s0 = 1.0 - g0.norm_sqr();
    if s0 <= 0.0 {
        return SchurPoint::new(g0, 0.0.into(), 0.0.into());
    }
    let g1 = t.c2 / s0;
    let s1 = 1.0 - g1.norm_sqr();
    if s1 <= 0.0 {
        return SchurPoint::new(g0, g1, 0.0.into());
    }
    let g2 = (t.c3 / s0 + g0.conj() * g1 * g1) / s1;
    SchurPoint::new(g0, g1, g2)
}

pub fn is_feasible(t: &SchwarzTriple, tol: f64) -> bool {
    t.is_feasible(tol)
}

/// Rotates `t` so that `c₁` becomes real and nonnegative (`θ = 0` when
/// `c₁ = 0`).
pub fn reduce_by_rotation(t: &SchwarzTriple) -> Result<ReducedTriple> {
    if !t.is_feasible(FEASIBILITY_TOL) {
        return Err(Error::InfeasibleTriple);
    }
    let theta = if t.c1.norm() == 0.0 { 0.0 } else { -t.c1.arg() };
    let r = t.rotate(theta);
    let reduced = ReducedTriple {
        c1: t.c1.norm(),
        c2: r.c2,
        c3: r.c3,
    };
    // |c₁| = 1 is a rotation z ↦ e^{iθ}z, so c₃ must vanish as well
    if !reduced.is_feasible(FEASIBILITY_TOL) {
        return Err(Error::InfeasibleTriple);
    }
    Ok(reduced)
}
