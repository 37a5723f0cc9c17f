//! Agreement between the closed-form coefficient and `H₂(2)` formulas and the
//! recurrence oracle, over deterministic pseudo-random trials.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{h2_generic, omega_polynomial, oracle_coeffs, ClassSpec, CoeffVector};
use crate::schwarz::{schur_to_triple_unchecked, SchurPoint, SchwarzTriple};
use crate::series::DEFAULT_ORDER;
use crate::Result;

/// Pass threshold for every deviation measured here.
pub const ORACLE_TOL: f64 = 1e-11;

/// Source of the closed forms under test.
pub trait ClosedForms: Sync {
    fn coeffs(&self, spec: &ClassSpec, t: &SchwarzTriple) -> Result<Option<CoeffVector>>;
    fn h2(&self, spec: &ClassSpec, t: &SchwarzTriple) -> Result<Complex64>;
}

/// The formulas implemented in [`crate::classes`].
#[derive(Debug, Clone, Copy, Default)]
pub struct LibraryForms;

impl ClosedForms for LibraryForms {
    fn coeffs(&self, spec: &ClassSpec, t: &SchwarzTriple) -> Result<Option<CoeffVector>> {
        spec.coeffs(t)
    }

    fn h2(&self, spec: &ClassSpec, t: &SchwarzTriple) -> Result<Complex64> {
        spec.h2(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OracleCheckReport {
    pub trials: usize,
    /// Closed-form `(a₂, a₃, a₄)` against the oracle.
    pub max_coeff_dev: f64,
    /// Closed-form `H₂(2)` against `a₂a₄ − a₃²` of the closed-form
    /// coefficients (oracle coefficients for `S*(q)`).
    pub max_h2_dev: f64,
}

impl OracleCheckReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_coeff_dev.max(self.max_h2_dev)
    }

    pub fn passed(&self) -> bool {
        self.max_deviation() < ORACLE_TOL
    }
}

/// One trial: a class with an in-range α and a feasible triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trial {
    pub spec: ClassSpec,
    pub triple: SchwarzTriple,
}

/// Deterministic trial list. Trial `i` cycles through the four classes;
/// the first four trials use `t = 0`.
pub fn trials(count: usize, seed: u64) -> Vec<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let u: f64 = rng.gen();
            let spec = match i % 4 {
                0 => ClassSpec::Starlike(0.999 * u),
                1 => ClassSpec::Ozaki(-0.5 + 1.499 * u),
                2 => ClassSpec::GClass(1.0 - 0.999 * u),
                _ => ClassSpec::SqClass,
            };
            let triple = if i < 4 {
                SchwarzTriple::default()
            } else {
                schur_to_triple_unchecked(&random_schur_point(&mut rng))
            };
            Trial { spec, triple }
        })
        .collect()
}

/// Moduli and phases uniform.
pub fn random_schur_point(rng: &mut impl Rng) -> SchurPoint {
    let mut g =
        || Complex64::from_polar(rng.gen::<f64>(), std::f64::consts::TAU * rng.gen::<f64>());
    SchurPoint::new(g(), g(), g())
}

pub fn run_oracle_check(
    count: usize,
    seed: u64,
    forms: &dyn ClosedForms,
) -> Result<OracleCheckReport> {
    let mut report = OracleCheckReport {
        trials: count,
        ..Default::default()
    };
    for trial in trials(count, seed) {
        let (coeff_dev, h2_dev) = check_trial(&trial, forms)?;
        report.max_coeff_dev = report.max_coeff_dev.max(coeff_dev);
        report.max_h2_dev = report.max_h2_dev.max(h2_dev);
    }
    Ok(report)
}

pub fn check_trial(trial: &Trial, forms: &dyn ClosedForms) -> Result<(f64, f64)> {
    let omega = omega_polynomial(&trial.triple, DEFAULT_ORDER);
    let a = oracle_coeffs(&trial.spec, &omega, 4)?;
    let oracle = CoeffVector::new(a[1], a[2], a[3]);
    let h2 = forms.h2(&trial.spec, &trial.triple)?;
    Ok(match forms.coeffs(&trial.spec, &trial.triple)? {
        Some(closed) => (
            closed.max_abs_diff(&oracle),
            (h2 - h2_generic(&closed)).norm(),
        ),
        None => (0.0, (h2 - h2_generic(&oracle)).norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Corrupted;

    impl ClosedForms for Corrupted {
        fn coeffs(&self, spec: &ClassSpec, t: &SchwarzTriple) -> Result<Option<CoeffVector>> {
            Ok(spec.coeffs(t)?.map(|mut v| {
                v.a4 += 1e-6;
                v
            }))
        }

        fn h2(&self, spec: &ClassSpec, t: &SchwarzTriple) -> Result<Complex64> {
            spec.h2(t)
        }
    }

    #[test]
    fn trials_are_deterministic_and_in_range() {
        let a = trials(200, 7);
        assert_eq!(a, trials(200, 7));
        assert!(a.iter().all(|t| t.spec.validate().is_ok()));
        assert!(a.iter().all(|t| t.triple.is_feasible(1e-12)));
        assert_eq!(a[0].triple, SchwarzTriple::default());
    }

    #[test]
    fn zero_trial_has_zero_deviation() {
        let r = run_oracle_check(1, 0, &LibraryForms).unwrap();
        assert_eq!(r.max_deviation(), 0.0);
        assert!(r.passed());
    }

    #[test]
    fn library_forms_pass() {
        let r = run_oracle_check(400, 1, &LibraryForms).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn corrupted_forms_fail() {
        let r = run_oracle_check(20, 1, &Corrupted).unwrap();
        assert!(!r.passed());
    }
}
