//! Deterministic global maximization of `|H₂(2)|` over the feasible Schwarz
//! region.
//!
//! The search runs in the Schur chart. Rotating `ω` does not change `|H₂(2)|`,
//! so `γ₀ = c₁` is taken real in `[0, 1]` and the box coordinates are
//!
//! ```text
//! x = (c₁, |γ₁|, arg γ₁ / 2π, |γ₂|, arg γ₂ / 2π) ∈ [0, 1]⁵
//! ```
//!
//! ([`Chart::Full`] adds `arg γ₀ / 2π` as a sixth coordinate). Every box
//! point is feasible, so no penalties are needed: modulus coordinates are
//! clamped and phase coordinates wrap.
//!
//! A uniform lattice seeds the search. Lattice points that beat all their
//! axis neighbors are ranked first, and the best `starts_kept` are refined
//! by Nelder–Mead. Seeds are refined in parallel. The winner is
//! selected by a total order on `(value, seed rank)`, so the report does not
//! depend on scheduling.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::closed_bound;
use crate::classes::{ClassKind, ClassSpec};
use crate::schwarz::{schur_to_triple_unchecked, SchurPoint, SchwarzTriple};
use crate::{Error, Result};

/// Allowed excess of a numeric maximum over a proven bound.
pub const SOUNDNESS_TOL: f64 = 1e-9;
/// Distance from the closed bound under which it counts as attained.
pub const ATTAINMENT_TOL: f64 = 1e-6;
/// Tolerance for the explicit extremal function check.
pub const EXTREMAL_TOL: f64 = 1e-12;

/// How lattice points are placed along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedLayout {
    /// Modulus axes include both endpoints `0` and `1`; phase axes use
    /// `k/n`, which already covers the circle.
    #[default]
    Lattice,
    /// Cell centers `(k + ½)/n` on every axis.
    CellCentered,
}

impl SeedLayout {
    pub fn name(self) -> &'static str {
        match self {
            Self::Lattice => "lattice",
            Self::CellCentered => "cell-centered",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::Lattice, Self::CellCentered]
            .into_iter()
            .find(|l| l.name() == name)
    }

    fn point(self, k: usize, n: usize, periodic: bool) -> f64 {
        match self {
            Self::Lattice if periodic => k as f64 / n as f64,
            Self::Lattice => k as f64 / (n - 1) as f64,
            Self::CellCentered => (k as f64 + 0.5) / n as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub grid_per_axis: usize,
    /// Nelder–Mead iteration budget per seed, restarts included.
    pub refine_iters: usize,
    /// Spread of simplex values at which refinement stops.
    pub refine_tol: f64,
    pub starts_kept: usize,
    pub seed_layout: SeedLayout,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_per_axis: 9,
            refine_iters: 400,
            refine_tol: 1e-10,
            starts_kept: 20,
            seed_layout: SeedLayout::Lattice,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_per_axis < 3 {
            return Err(Error::InvalidConfig("grid_per_axis must be at least 3"));
        }
        if self.refine_tol.is_nan() || self.refine_tol <= 0.0 {
            return Err(Error::InvalidConfig("refine_tol must be positive"));
        }
        if self.starts_kept == 0 {
            return Err(Error::InvalidConfig("starts_kept must be at least 1"));
        }
        Ok(())
    }
}

/// Whether refinement of the winning seed met `refine_tol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Converged,
    /// The iteration budget ran out first; the best value is still reported.
    ConvergenceWarning,
}

impl SearchStatus {
    pub fn name(self) -> &'static str {
        match self {
            Self::Converged => "converged",
            Self::ConvergenceWarning => "convergence-warning",
        }
    }
}

/// Coordinates of the search box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `γ₀` real in `[0, 1]`: five coordinates.
    Reduced,
    /// `γ₀` anywhere in the disk: six coordinates.
    Full,
}

impl Chart {
    fn dim(self) -> usize {
        match self {
            Self::Reduced => 5,
            Self::Full => 6,
        }
    }

    fn is_periodic(self, axis: usize) -> bool {
        matches!(axis, 2 | 4 | 5)
    }

    fn decode(self, x: &[f64]) -> SchurPoint {
        let g0 = match self {
            Self::Reduced => Complex64::new(x[0], 0.0),
            Self::Full => Complex64::from_polar(x[0], TAU * x[5]),
        };
        SchurPoint::new(
            g0,
            Complex64::from_polar(x[1], TAU * x[2]),
            Complex64::from_polar(x[3], TAU * x[4]),
        )
    }

    /// Clamp moduli to `[0, 1]`, wrap phases into `[0, 1)`.
    fn project(self, x: &mut [f64]) {
        for (axis, v) in x.iter_mut().enumerate() {
            *v = if self.is_periodic(axis) {
                v.rem_euclid(1.0)
            } else {
                v.clamp(0.0, 1.0)
            };
        }
    }
}

/// Outcome of a maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub spec: ClassSpec,
    pub numeric_max: f64,
    pub argmax: SchurPoint,
    pub closed_bound: f64,
    /// `closed_bound − numeric_max`.
    pub gap: f64,
    pub sharp_claimed: bool,
    /// `numeric_max` within [`ATTAINMENT_TOL`] of `closed_bound`.
    pub attained: bool,
    pub status: SearchStatus,
}

impl BoundReport {
    /// The numeric maximum does not exceed the proven bound.
    pub fn is_sound(&self) -> bool {
        self.numeric_max <= self.closed_bound + SOUNDNESS_TOL
    }

    pub fn argmax_triple(&self) -> SchwarzTriple {
        schur_to_triple_unchecked(&self.argmax)
    }
}

pub fn maximize_h2(spec: &ClassSpec, cfg: &SearchConfig) -> Result<BoundReport> {
    maximize_in_chart(spec, cfg, Chart::Reduced)
}

/// Same search with `γ₀` complex, i.e. without the rotation reduction.
pub fn maximize_h2_full_chart(spec: &ClassSpec, cfg: &SearchConfig) -> Result<BoundReport> {
    maximize_in_chart(spec, cfg, Chart::Full)
}

pub fn maximize_in_chart(
    spec: &ClassSpec,
    cfg: &SearchConfig,
    chart: Chart,
) -> Result<BoundReport> {
    spec.validate()?;
    cfg.validate()?;
    let closed = closed_bound(spec)?;
    let spec = *spec;
    let objective = move |x: &[f64]| -> f64 {
        let t = schur_to_triple_unchecked(&chart.decode(x));
        spec.h2(&t).map(|h| h.norm()).unwrap_or(f64::NAN)
    };

    let dim = chart.dim();
    let n = cfg.grid_per_axis;
    let total = n.pow(dim as u32);
    let seed_point = |index: usize| -> Vec<f64> {
        let mut rest = index;
        (0..dim)
            .map(|axis| {
                let k = rest % n;
                rest /= n;
                cfg.seed_layout.point(k, n, chart.is_periodic(axis))
            })
            .collect()
    };

    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|i| objective(&seed_point(i)))
        .collect();
    let seeds = select_seeds(&values, n, dim, chart, cfg.starts_kept);

    let step = 0.5 / (n - 1) as f64;
    let refined: Vec<Refined> = seeds
        .par_iter()
        .map(|&i| refine(&objective, chart, seed_point(i), step, cfg))
        .collect();

    let best = refined
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| by_value_then_index((a.value, *ia), (b.value, *ib)))
        .map(|(_, r)| r)
        .expect("starts_kept >= 1");

    let numeric_max = best.value;
    let gap = closed - numeric_max;
    Ok(BoundReport {
        spec,
        numeric_max,
        argmax: chart.decode(&best.x),
        closed_bound: closed,
        gap,
        sharp_claimed: spec.kind().sharp_claimed(),
        attained: gap.abs() <= ATTAINMENT_TOL,
        status: if best.converged {
            SearchStatus::Converged
        } else {
            SearchStatus::ConvergenceWarning
        },
    })
}

/// Best lattice points, preferring those that beat every axis neighbor so
/// that the starts spread over distinct basins. Remaining slots go to the
/// best of the rest.
fn select_seeds(values: &[f64], n: usize, dim: usize, chart: Chart, kept: usize) -> Vec<usize> {
    let is_peak = |index: usize| -> bool {
        let mut stride = 1;
        for axis in 0..dim {
            let k = (index / stride) % n;
            let base = index - k * stride;
            let neighbors = if chart.is_periodic(axis) {
                [Some((k + 1) % n), Some((k + n - 1) % n)]
            } else {
                [(k + 1 < n).then_some(k + 1), k.checked_sub(1)]
            };
            for j in neighbors.into_iter().flatten() {
                if by_value_then_index(
                    (values[base + j * stride], base + j * stride),
                    (values[index], index),
                ) == Ordering::Less
                {
                    return false;
                }
            }
            stride *= n;
        }
        true
    };
    let mut ranked: Vec<(f64, usize)> = values.iter().copied().zip(0..).collect();
    ranked.sort_by(|a, b| by_value_then_index(*a, *b));
    let (peaks, rest): (Vec<_>, Vec<_>) = ranked.into_iter().partition(|&(_, i)| is_peak(i));
    peaks
        .into_iter()
        .chain(rest)
        .take(kept)
        .map(|(_, i)| i)
        .collect()
}

/// Descending value, then ascending index; NaN sorts last.
fn by_value_then_index(a: (f64, usize), b: (f64, usize)) -> Ordering {
    let key = |v: f64| if v.is_nan() { f64::NEG_INFINITY } else { v };
    key(b.0).total_cmp(&key(a.0)).then(a.1.cmp(&b.1))
}

/// One report per α, in input order. All α are checked before any search.
pub fn sweep(kind: ClassKind, alphas: &[f64], cfg: &SearchConfig) -> Result<Vec<BoundReport>> {
    let specs = alphas
        .iter()
        .map(|&a| kind.with_alpha(a))
        .collect::<Result<Vec<_>>>()?;
    cfg.validate()?;
    specs.iter().map(|spec| maximize_h2(spec, cfg)).collect()
}

/// Checks that `ω(z) = z²` attains the closed bound of a sharp theorem.
pub fn attainment_check(spec: &ClassSpec) -> Result<bool> {
    spec.validate()?;
    if !spec.kind().sharp_claimed() {
        return Err(Error::NotASharpTheorem(spec.kind()));
    }
    let value = spec.h2(&SchwarzTriple::real(0.0, 1.0, 0.0))?.norm();
    Ok((value - closed_bound(spec)?).abs() <= EXTREMAL_TOL)
}

struct Refined {
    x: Vec<f64>,
    value: f64,
    converged: bool,
}

/// Nelder–Mead on `−f`, restarted with a fresh full-size simplex around the
/// incumbent while the budget lasts and restarts keep improving.
fn refine(
    f: &impl Fn(&[f64]) -> f64,
    chart: Chart,
    x0: Vec<f64>,
    step: f64,
    cfg: &SearchConfig,
) -> Refined {
    let mut budget = cfg.refine_iters;
    let mut x = x0;
    let mut value = f(&x);
    let mut converged = false;
    while budget > 0 {
        let run = nelder_mead(f, chart, &x, step, budget, cfg.refine_tol);
        budget -= run.iters;
        let improvement = run.value - value;
        if run.value > value {
            x = run.x;
            value = run.value;
        }
        converged = run.converged;
        if !run.converged || improvement <= cfg.refine_tol {
            break;
        }
    }
    Refined {
        x,
        value,
        converged,
    }
}

struct Run {
    x: Vec<f64>,
    value: f64,
    iters: usize,
    converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn nelder_mead(
    f: &impl Fn(&[f64]) -> f64,
    chart: Chart,
    x0: &[f64],
    step: f64,
    max_iters: usize,
    tol: f64,
) -> Run {
    let dim = x0.len();
    let eval = |x: &mut Vec<f64>| -> f64 {
        chart.project(x);
        -f(x)
    };
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    points.push(x0.to_vec());
    for axis in 0..dim {
        let mut p = x0.to_vec();
        // step into the box for clamped axes
        p[axis] += if !chart.is_periodic(axis) && p[axis] + step > 1.0 {
            -step
        } else {
            step
        };
        points.push(p);
    }
    let mut values: Vec<f64> = points.iter_mut().map(&eval).collect();

    let mut iters = 0;
    let mut converged = false;
    while iters < max_iters {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        points = order.iter().map(|&i| points[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if values[dim] - values[0] <= tol {
            converged = true;
            break;
        }
        iters += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|k| points[..dim].iter().map(|p| p[k]).sum::<f64>() / dim as f64)
            .collect();
        let toward = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&points[dim])
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let mut reflected = toward(REFLECT);
        let fr = eval(&mut reflected);
        if fr < values[0] {
            let mut expanded = toward(EXPAND);
            let fe = eval(&mut expanded);
            if fe < fr {
                points[dim] = expanded;
                values[dim] = fe;
            } else {
                points[dim] = reflected;
                values[dim] = fr;
            }
            continue;
        }
        if fr < values[dim - 1] {
            points[dim] = reflected;
            values[dim] = fr;
            continue;
        }
        let (mut contracted, fc) = if fr < values[dim] {
            let mut c = toward(CONTRACT * REFLECT);
            let v = eval(&mut c);
            (c, v)
        } else {
            let mut c = toward(-CONTRACT);
            let v = eval(&mut c);
            (c, v)
        };
        if fc < values[dim].min(fr) {
            points[dim] = std::mem::take(&mut contracted);
            values[dim] = fc;
            continue;
        }
        let best = points[0].clone();
        for i in 1..=dim {
            let mut p: Vec<f64> = best
                .iter()
                .zip(&points[i])
                .map(|(b, x)| b + SHRINK * (x - b))
                .collect();
            values[i] = eval(&mut p);
            points[i] = p;
        }
    }
    let best = (0..=dim)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)))
        .unwrap_or(0);
    Run {
        x: points[best].clone(),
        value: -values[best],
        iters,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SearchConfig {
        SearchConfig {
            grid_per_axis: 5,
            starts_kept: 6,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        let bad = SearchConfig {
            grid_per_axis: 2,
            ..SearchConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = SearchConfig {
            refine_tol: 0.0,
            ..SearchConfig::default()
        };
        assert!(bad.validate().is_err());
        assert!(SearchConfig::default().validate().is_ok());
    }

    #[test]
    fn lattice_layout_hits_endpoints() {
        assert_eq!(SeedLayout::Lattice.point(0, 9, false), 0.0);
        assert_eq!(SeedLayout::Lattice.point(8, 9, false), 1.0);
        assert_eq!(SeedLayout::Lattice.point(4, 8, true), 0.5);
        assert_eq!(SeedLayout::CellCentered.point(0, 4, false), 0.125);
    }

    #[test]
    fn projection_keeps_box() {
        let mut x = vec![1.3, -0.2, 1.25, 0.5, -0.25, 2.0];
        Chart::Full.project(&mut x);
        assert_eq!(x, vec![1.0, 0.0, 0.25, 0.5, 0.75, 0.0]);
    }

    #[test]
    fn nelder_mead_finds_interior_peak() {
        let f = |x: &[f64]| -((x[0] - 0.3).powi(2) + (x[1] - 0.6).powi(2) + (x[3] - 0.45).powi(2));
        let run = nelder_mead(
            &f,
            Chart::Reduced,
            &[0.5, 0.5, 0.5, 0.5, 0.5],
            0.1,
            2000,
            1e-16,
        );
        assert!(run.converged);
        assert!((run.x[0] - 0.3).abs() < 1e-6);
        assert!((run.x[1] - 0.6).abs() < 1e-6);
        assert!((run.x[3] - 0.45).abs() < 1e-6);
    }

    #[test]
    fn sq_class_peak() {
        let r = maximize_h2(&ClassSpec::SqClass, &quick()).unwrap();
        assert!((r.numeric_max - 0.25).abs() < 1e-6, "{r:?}");
        assert!(r.argmax.g0.norm() < 1e-6);
        assert!((r.argmax.g1.norm() - 1.0).abs() < 1e-6);
        assert!(r.sharp_claimed && r.attained && r.is_sound());
    }

    #[test]
    fn starlike_zero_peak() {
        let r = maximize_h2(&ClassSpec::Starlike(0.0), &quick()).unwrap();
        assert!((r.numeric_max - 1.0).abs() < 1e-6);
        // either ω = z² or the Koebe direction γ₀ = 1
        let g = r.argmax;
        assert!(
            (g.g0.norm() < 1e-6 && (g.g1.norm() - 1.0).abs() < 1e-6)
                || (g.g0.re - 1.0).abs() < 1e-6
        );
    }

    #[test]
    fn ozaki_zero_peak() {
        let r = maximize_h2(&ClassSpec::Ozaki(0.0), &quick()).unwrap();
        assert!((r.numeric_max - 0.125).abs() < 1e-6);
        assert!(!r.sharp_claimed);
    }

    #[test]
    fn sweep_preserves_order_and_rejects_bad_alpha() {
        let reports = sweep(ClassKind::GClass, &[1.0, 0.5], &quick()).unwrap();
        assert_eq!(reports[0].spec, ClassSpec::GClass(1.0));
        assert_eq!(reports[1].spec, ClassSpec::GClass(0.5));
        assert!(reports.iter().all(BoundReport::is_sound));
        assert!(matches!(
            sweep(ClassKind::GClass, &[0.5, 0.0], &quick()),
            Err(Error::AlphaOutOfRange { .. })
        ));
    }

    #[test]
    fn attainment() {
        assert_eq!(attainment_check(&ClassSpec::Starlike(0.3)), Ok(true));
        assert_eq!(attainment_check(&ClassSpec::SqClass), Ok(true));
        assert_eq!(
            attainment_check(&ClassSpec::Ozaki(0.2)),
            Err(Error::NotASharpTheorem(ClassKind::Ozaki))
        );
        assert!(matches!(
            attainment_check(&ClassSpec::GClass(1.0)),
            Err(Error::NotASharpTheorem(_))
        ));
    }
}
