//! Closed-form `|H₂(2)|` bounds and the one-dimensional envelopes they come
//! from.
//!
//! For each class, bounding `|c₃|` and then `|c₂|` by the Schwarz
//! constraints (after rotating `c₁` onto `[0, 1]`) turns `|H₂(2)|` into a
//! polynomial in `c₁²` alone. The bound is the maximum of that envelope over
//! `c₁ ∈ [0, 1]`. [`envelope_max`] recomputes the maximum by a dense scan and
//! compares it with the analytic maximizer.

use crate::classes::{ClassKind, ClassSpec};
use crate::{Error, Result};

/// Earlier bound for `S*(q)` improved on by [`bound_sq`].
pub const PRIOR_SQ_BOUND: f64 = 39.0 / 48.0;

/// Points in the dense envelope scan (plus the right endpoint).
pub const SCAN_POINTS: usize = 100_000;

pub fn bound_starlike(alpha: f64) -> Result<f64> {
    let a = ClassKind::Starlike.check_alpha(alpha)?;
    Ok((1.0 - a) * (1.0 - a))
}

/// Piecewise in α; both pieces give `1/8` at `α = 0`.
pub fn bound_ozaki(alpha: f64) -> Result<f64> {
    let a = ClassKind::Ozaki.check_alpha(alpha)?;
    if a <= 0.0 {
        Ok(bound_ozaki_left(a))
    } else {
        Ok(bound_ozaki_right(a))
    }
}

/// `(1 − α)²(5α + 6) / (48(1 + α))`, the piece for `−1/2 ≤ α ≤ 0`.
pub fn bound_ozaki_left(a: f64) -> f64 {
    (1.0 - a) * (1.0 - a) * (5.0 * a + 6.0) / (48.0 * (1.0 + a))
}

/// `(1 − α)²(17α² − 36α + 36) / (144(α² − 2α + 2))`, the piece for `0 ≤ α < 1`.
pub fn bound_ozaki_right(a: f64) -> f64 {
    (1.0 - a) * (1.0 - a) * (17.0 * a * a - 36.0 * a + 36.0) / (144.0 * (a * a - 2.0 * a + 2.0))
}

/// `(α²/144)(17/4 − α/(4 + α²))`, evaluated over a single division so that
/// `α = 1` gives `9/320` exactly.
pub fn bound_g(alpha: f64) -> Result<f64> {
    let a = ClassKind::GClass.check_alpha(alpha)?;
    Ok(a * a * (17.0 * a * a - 4.0 * a + 68.0) / (576.0 * (a * a + 4.0)))
}

pub fn bound_sq() -> f64 {
    0.25
}

pub fn closed_bound(spec: &ClassSpec) -> Result<f64> {
    match *spec {
        ClassSpec::Starlike(a) => bound_starlike(a),
        ClassSpec::Ozaki(a) => bound_ozaki(a),
        ClassSpec::GClass(a) => bound_g(a),
        ClassSpec::SqClass => Ok(bound_sq()),
    }
}

/// Upper envelope of `|H₂(2)|` over all feasible triples whose first
/// coefficient, rotated to be real, equals `c1`.
pub fn envelope(spec: &ClassSpec, c1: f64) -> Result<f64> {
    spec.validate()?;
    if !(0.0..=1.0).contains(&c1) {
        return Err(Error::C1OutOfRange(c1));
    }
    Ok(envelope_unchecked(spec, c1))
}

fn envelope_unchecked(spec: &ClassSpec, c1: f64) -> f64 {
    let x = c1 * c1;
    match *spec {
        ClassSpec::Starlike(a) => {
            let k = (4.0 * a * a - 8.0 * a + 3.0).abs();
            4.0 / 3.0 * (1.0 - a) * (1.0 - a) * (0.75 - (3.0 - k) / 4.0 * x * x)
        }
        ClassSpec::Ozaki(a) => {
            let k = (2.0 * a * a - 3.0 * a).abs();
            (1.0 - a) * (1.0 - a) / 18.0 * (2.0 + (2.0 - a) * x - (4.0 - a - k) * x * x)
        }
        ClassSpec::GClass(a) => a * a / 144.0 * (4.0 + (2.0 - a) * x - (4.0 + a * a) * x * x),
        ClassSpec::SqClass => (0.75 - x / 4.0 - x * x / 16.0) / 3.0,
    }
}

/// Analytic maximizer `c₁*` of the envelope on `[0, 1]`.
pub fn analytic_maximizer(spec: &ClassSpec) -> Result<f64> {
    spec.validate()?;
    let x = match *spec {
        // (3 − |4α² − 8α + 3|) ≥ 0 so the c₁⁴ term never helps
        ClassSpec::Starlike(_) | ClassSpec::SqClass => 0.0,
        ClassSpec::Ozaki(a) if a <= 0.0 => 1.0 / (4.0 * (1.0 + a)),
        ClassSpec::Ozaki(a) => (2.0 - a) / (4.0 * (a * a - 2.0 * a + 2.0)),
        ClassSpec::GClass(a) => (2.0 - a) / (2.0 * (4.0 + a * a)),
    };
    Ok(x.sqrt())
}

/// Envelope maximum found two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeMax {
    /// Maximum from the dense scan and refinement.
    pub value: f64,
    pub c1_scan: f64,
    /// Envelope evaluated at the analytic maximizer.
    pub value_analytic: f64,
    pub c1_analytic: f64,
}

impl EnvelopeMax {
    /// Scan and analytic values agree within `tol`.
    pub fn agrees(&self, tol: f64) -> bool {
        (self.value - self.value_analytic).abs() <= tol
    }
}

pub fn envelope_max(spec: &ClassSpec) -> Result<EnvelopeMax> {
    let c1_analytic = analytic_maximizer(spec)?;
    let value_analytic = envelope_unchecked(spec, c1_analytic);
    let f = |c1: f64| envelope_unchecked(spec, c1);
    let (c1_scan, value) = scan_max(f);
    Ok(EnvelopeMax {
        value,
        c1_scan,
        value_analytic,
        c1_analytic,
    })
}

/// Dense grid argmax on `[0, 1]`, refined by golden section within one grid
/// cell on each side and polished by symmetric three-point parabola steps.
fn scan_max(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let step = 1.0 / SCAN_POINTS as f64;
    let (mut best_x, mut best) = (0.0, f(0.0));
    for i in 1..=SCAN_POINTS {
        let x = i as f64 * step;
        let v = f(x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let lo = (best_x - step).max(0.0);
    let hi = (best_x + step).min(1.0);
    let x = golden_section_max(&f, lo, hi, 1e-12);
    let (x, polished) = parabolic_polish(&f, x);
    let v = f(x);
    // at an interior peak values tie after rounding, so a polished point that
    // is not measurably worse than the grid point is the better location
    let tie = polished && v >= best - 8.0 * f64::EPSILON * best.abs();
    if (lo..=hi).contains(&x) && (v > best || tie) {
        (x, v)
    } else {
        (best_x, best)
    }
}

fn golden_section_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Golden section cannot resolve a smooth peak below about `√ε` because
/// neighboring values tie after rounding. A vertex step from three points
/// `h` apart uses the curvature instead and lands within `O(h²)`.
fn parabolic_polish(f: &impl Fn(f64) -> f64, mut x: f64) -> (f64, bool) {
    const H: f64 = 1e-5;
    let mut moved = false;
    for _ in 0..4 {
        if x - H < 0.0 || x + H > 1.0 {
            break;
        }
        let (fm, f0, fp) = (f(x - H), f(x), f(x + H));
        let curvature = fp - 2.0 * f0 + fm;
        if curvature >= 0.0 {
            break;
        }
        let step = H * (fp - fm) / (2.0 * curvature);
        if step.abs() > H {
            break;
        }
        x -= step;
        moved = true;
    }
    (x, moved)
}
