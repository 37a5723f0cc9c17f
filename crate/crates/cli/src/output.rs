//! Report records and their text, CSV and JSON renderings.
//!
//! Field order of [`CsvRow`] and the field names of [`ReportRecord`] are the
//! published schema; golden tests pin both.

use std::fmt::Write as _;

use hankel_core::{BoundReport, Complex64, SchurPoint, PRIOR_SQ_BOUND};
use serde::Serialize;

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_real(x: f64) -> String {
    // -0 prints as "-0"
    let x = if x == 0.0 { 0.0 } else { x };
    let magnitude = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&magnitude) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// A complex number as `"re im"`.
pub fn fmt_complex(z: Complex64) -> String {
    format!("{} {}", fmt_real(z.re), fmt_real(z.im))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArgmaxRecord {
    pub g0: String,
    pub g1: String,
    pub g2: String,
}

impl From<&SchurPoint> for ArgmaxRecord {
    fn from(p: &SchurPoint) -> Self {
        Self {
            g0: fmt_complex(p.g0),
            g1: fmt_complex(p.g1),
            g2: fmt_complex(p.g2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub class: &'static str,
    pub alpha: Option<f64>,
    pub numeric_max: f64,
    pub closed_bound: f64,
    pub gap: f64,
    pub envelope_max: f64,
    pub sharp_claimed: bool,
    pub attained: bool,
    pub status: &'static str,
    pub argmax: ArgmaxRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prior_bound: Option<f64>,
}

impl ReportRecord {
    pub fn new(report: &BoundReport, envelope_max: f64) -> Self {
        let kind = report.spec.kind();
        Self {
            class: kind.name(),
            alpha: report.spec.alpha(),
            numeric_max: report.numeric_max,
            closed_bound: report.closed_bound,
            gap: report.gap,
            envelope_max,
            sharp_claimed: report.sharp_claimed,
            attained: report.attained,
            status: report.status.name(),
            argmax: ArgmaxRecord::from(&report.argmax),
            prior_bound: (kind == hankel_core::ClassKind::SqClass).then_some(PRIOR_SQ_BOUND),
        }
    }

    pub fn csv_row(&self) -> CsvRow {
        CsvRow {
            class: self.class,
            alpha: self.alpha.map(fmt_real).unwrap_or_default(),
            numeric_max: fmt_real(self.numeric_max),
            closed_bound: fmt_real(self.closed_bound),
            gap: fmt_real(self.gap),
            envelope_max: fmt_real(self.envelope_max),
            sharp_claimed: self.sharp_claimed,
            attained: self.attained,
        }
    }
}

/// One CSV line; reals use the same formatting as the text report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub class: &'static str,
    pub alpha: String,
    pub numeric_max: String,
    pub closed_bound: String,
    pub gap: String,
    pub envelope_max: String,
    pub sharp_claimed: bool,
    pub attained: bool,
}

pub const CSV_HEADER: &str =
    "class,alpha,numeric_max,closed_bound,gap,envelope_max,sharp_claimed,attained";

pub fn to_csv(records: &[ReportRecord]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r.csv_row())?;
    }
    if records.is_empty() {
        writer.write_record(CSV_HEADER.split(','))?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Outcome of the pass/fail checks `verify` applies to a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    pub sound: bool,
    pub envelope: bool,
    /// `None` when the class has no sharpness claim.
    pub attainment: Option<bool>,
}

impl Checks {
    pub fn passed(&self) -> bool {
        self.sound && self.envelope && self.attainment.unwrap_or(true)
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn render_text(record: &ReportRecord, checks: &Checks) -> String {
    let mut s = String::new();
    let alpha = record.alpha.map(fmt_real).unwrap_or_else(|| "-".into());
    let _ = writeln!(s, "class          {}", record.class);
    let _ = writeln!(s, "alpha          {alpha}");
    let _ = writeln!(s, "numeric_max    {}", fmt_real(record.numeric_max));
    let _ = writeln!(s, "closed_bound   {}", fmt_real(record.closed_bound));
    let _ = writeln!(s, "gap            {}", fmt_real(record.gap));
    let _ = writeln!(s, "envelope_max   {}", fmt_real(record.envelope_max));
    let _ = writeln!(s, "argmax.g0      {}", record.argmax.g0);
    let _ = writeln!(s, "argmax.g1      {}", record.argmax.g1);
    let _ = writeln!(s, "argmax.g2      {}", record.argmax.g2);
    let _ = writeln!(s, "sharp_claimed  {}", record.sharp_claimed);
    let _ = writeln!(s, "attained       {}", record.attained);
    let _ = writeln!(s, "status         {}", record.status);
    if let Some(prior) = record.prior_bound {
        let _ = writeln!(s, "prior_bound    {}", fmt_real(prior));
        let _ = writeln!(s, "improves_prior {}", record.closed_bound < prior);
    }
    let _ = writeln!(s, "check.soundness   {}", verdict(checks.sound));
    let _ = writeln!(s, "check.envelope    {}", verdict(checks.envelope));
    if let Some(a) = checks.attainment {
        let _ = writeln!(s, "check.attainment  {}", verdict(a));
    }
    s
}
