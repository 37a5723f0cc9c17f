use std::path::Path;

use hankel_core::bounds::envelope_max;
use hankel_core::check::{
    run_oracle_check, ClosedForms, LibraryForms, OracleCheckReport, ORACLE_TOL,
};
use hankel_core::classes::hankel_qn;
use hankel_core::optimizer::{attainment_check, maximize_h2, sweep, ATTAINMENT_TOL};
use hankel_core::{
    BoundReport, ClassKind, ClassSpec, CoeffVector, Complex64, SchwarzTriple, SearchConfig,
};

use crate::args::{HankelArgs, OracleCheckArgs, ReportFormat, SweepArgs, TableFormat, VerifyArgs};
use crate::manifest::{write_with_manifest, RunManifest};
use crate::output::{fmt_complex, fmt_real, render_text, to_csv, Checks, ReportRecord};

/// Envelope maximum must match the closed bound this closely.
const ENVELOPE_BOUND_TOL: f64 = 1e-12;
/// Scan and analytic envelope maxima must agree this closely.
const ENVELOPE_SCAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Self::Pass => 0,
            Self::Fail => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

/// Usage or input errors; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

type CmdResult = Result<Outcome, UsageError>;

fn spec_from(kind: ClassKind, alpha: Option<f64>) -> Result<ClassSpec, UsageError> {
    match (kind, alpha) {
        (ClassKind::SqClass, Some(_)) => Err(UsageError("class sq takes no --alpha".into())),
        (ClassKind::SqClass, None) => Ok(ClassSpec::SqClass),
        (_, None) => Err(UsageError(format!("--alpha is required for class {kind}"))),
        (_, Some(a)) => Ok(kind.with_alpha(a)?),
    }
}

/// Runs the search and every check `verify` applies.
pub fn evaluate(
    spec: &ClassSpec,
    cfg: &SearchConfig,
) -> Result<(ReportRecord, Checks, BoundReport), UsageError> {
    let report = maximize_h2(spec, cfg)?;
    let env = envelope_max(spec)?;
    let envelope_ok = env.agrees(ENVELOPE_SCAN_TOL)
        && (env.value - report.closed_bound).abs() <= ENVELOPE_BOUND_TOL;
    let attainment = if report.sharp_claimed {
        Some(attainment_check(spec)? && report.gap <= ATTAINMENT_TOL)
    } else {
        None
    };
    let checks = Checks {
        sound: report.is_sound(),
        envelope: envelope_ok,
        attainment,
    };
    Ok((ReportRecord::new(&report, env.value), checks, report))
}

fn emit(
    out: Option<&Path>,
    body: &str,
    manifest: impl FnOnce() -> RunManifest,
) -> Result<(), UsageError> {
    match out {
        Some(path) => {
            write_with_manifest(path, body, &manifest())?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let spec = spec_from(args.class.kind(), args.alpha)?;
    let cfg = args.search.config();
    cfg.validate()?;
    let (record, checks, _) = evaluate(&spec, &cfg)?;
    let body = match args.format {
        ReportFormat::Text => render_text(&record, &checks),
        ReportFormat::Json => serde_json::to_string_pretty(&record)? + "\n",
    };
    emit(args.out.as_deref(), &body, || {
        RunManifest::new("verify", &[spec], &cfg, args.out.iter().cloned().collect())
    })?;
    if args.out.is_some() && !checks.passed() {
        eprintln!("verification failed for {spec}");
    }
    Ok(Outcome::from_bool(checks.passed()))
}

/// `steps` points from `from` to `to` inclusive. Interior points are snapped
/// to 12 decimals so that decimal grids print as typed; endpoints are exact.
pub fn alpha_grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![from];
    }
    let last = steps - 1;
    (0..steps)
        .map(|i| match i {
            0 => from,
            i if i == last => to,
            i => {
                let x = from + (to - from) * i as f64 / last as f64;
                format!("{x:.12}").parse().unwrap_or(x)
            }
        })
        .collect()
}

pub fn sweep_cmd(args: &SweepArgs) -> CmdResult {
    let kind = args.class.kind();
    if kind == ClassKind::SqClass {
        return Err(UsageError(
            "sweep needs a parameterized class (starlike, ozaki, g)".into(),
        ));
    }
    if args.steps == 0 {
        return Err(UsageError("--steps must be at least 1".into()));
    }
    let cfg = args.search.config();
    cfg.validate()?;
    let alphas = alpha_grid(args.from, args.to, args.steps);
    let specs = alphas
        .iter()
        .map(|&a| kind.with_alpha(a))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = sweep(kind, &alphas, &cfg)?;

    let mut records = Vec::with_capacity(reports.len());
    let mut all_ok = true;
    for report in &reports {
        let env = envelope_max(&report.spec)?;
        let envelope_ok = env.agrees(ENVELOPE_SCAN_TOL)
            && (env.value - report.closed_bound).abs() <= ENVELOPE_BOUND_TOL;
        let sharp_ok = !report.sharp_claimed || report.gap <= ATTAINMENT_TOL;
        if !(report.is_sound() && envelope_ok && sharp_ok) {
            eprintln!("verification failed for {}", report.spec);
            all_ok = false;
        }
        records.push(ReportRecord::new(report, env.value));
    }
    let body = match args.format {
        TableFormat::Csv => to_csv(&records)?,
        TableFormat::Json => serde_json::to_string_pretty(&records)? + "\n",
    };
    emit(args.out.as_deref(), &body, || {
        RunManifest::new("sweep", &specs, &cfg, args.out.iter().cloned().collect())
    })?;
    Ok(Outcome::from_bool(all_ok))
}

/// Closed forms with `a₄` perturbed, for exercising the failure path.
struct Faulty;

impl ClosedForms for Faulty {
    fn coeffs(
        &self,
        spec: &ClassSpec,
        t: &SchwarzTriple,
    ) -> hankel_core::Result<Option<CoeffVector>> {
        Ok(spec.coeffs(t)?.map(|mut v| {
            v.a4 += 1e-6;
            v
        }))
    }

    fn h2(&self, spec: &ClassSpec, t: &SchwarzTriple) -> hankel_core::Result<Complex64> {
        spec.h2(t)
    }
}

pub fn render_oracle(report: &OracleCheckReport) -> String {
    format!(
        "trials               {}\nmax_coeff_deviation  {}\nmax_h2_deviation     {}\nmax_deviation        {}\ntolerance            {}\nresult               {}\n",
        report.trials,
        fmt_real(report.max_coeff_dev),
        fmt_real(report.max_h2_dev),
        fmt_real(report.max_deviation()),
        fmt_real(ORACLE_TOL),
        if report.passed() { "pass" } else { "FAIL" },
    )
}

pub fn oracle_check(args: &OracleCheckArgs) -> CmdResult {
    if args.trials == 0 {
        return Err(UsageError("--trials must be at least 1".into()));
    }
    let forms: &dyn ClosedForms = if args.inject_fault {
        &Faulty
    } else {
        &LibraryForms
    };
    let report = run_oracle_check(args.trials, args.seed, forms)?;
    print!("{}", render_oracle(&report));
    Ok(Outcome::from_bool(report.passed()))
}

/// Parses one `"re im"` pair per nonblank line.
pub fn parse_coefficients(text: &str) -> Result<Vec<Complex64>, UsageError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| UsageError(format!("line {}: invalid number {s:?}", i + 1)))
            };
            match fields.as_slice() {
                [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
                _ => Err(UsageError(format!("line {}: expected \"re im\"", i + 1))),
            }
        })
        .collect()
}

pub fn hankel(args: &HankelArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| UsageError(format!("{}: {e}", args.file.display())))?;
    let coeffs = parse_coefficients(&text)?;
    let det = hankel_qn(&coeffs, args.q, args.n)?;
    println!("{}", fmt_complex(det));
    Ok(Outcome::Pass)
}
