//! JSON, CSV and text renderings. Every number is written with 17
//! significant digits; JSON carries non-finite values as `null`.

use jacobi_analogues::verify::{TheoremCheck, VerificationReport};
use jacobi_analogues::{AnalogueFn, ModulusParams, TruncatedSeries};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::Format;

/// `{:.16e}`, which round-trips any finite double.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn fmt_complex(z: Complex64) -> String {
    let im = fmt_num(z.im);
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{}{sign}{im}i", fmt_num(z.re))
}

fn raw(x: f64) -> Option<Box<RawValue>> {
    x.is_finite()
        .then(|| RawValue::from_string(fmt_num(x)).expect("formatted float is valid JSON"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Left-aligned columns separated by two spaces.
fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub struct EvalRecord {
    pub function: AnalogueFn,
    pub a: String,
    pub kappa: f64,
    pub u: Complex64,
    pub value: Complex64,
    pub oracle: Option<f64>,
}

impl EvalRecord {
    pub fn abs_diff(&self) -> Option<f64> {
        self.oracle.map(|o| (self.value - o).norm())
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        let mut f = vec![
            ("function", self.function.name().to_string()),
            ("a", self.a.clone()),
            ("kappa", fmt_num(self.kappa)),
            ("u", fmt_complex(self.u)),
            ("value_re", fmt_num(self.value.re)),
            ("value_im", fmt_num(self.value.im)),
        ];
        if let (Some(o), Some(d)) = (self.oracle, self.abs_diff()) {
            f.push(("oracle_value", fmt_num(o)));
            f.push(("abs_diff", fmt_num(d)));
        }
        f
    }
}

#[derive(Serialize)]
struct EvalJson<'a> {
    function: &'a str,
    a: &'a str,
    kappa: Option<Box<RawValue>>,
    u: String,
    value_re: Option<Box<RawValue>>,
    value_im: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_value: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_diff: Option<Box<RawValue>>,
}

pub fn eval(record: &EvalRecord, format: Format) -> String {
    match format {
        Format::Json => to_json(&EvalJson {
            function: record.function.name(),
            a: &record.a,
            kappa: raw(record.kappa),
            u: fmt_complex(record.u),
            value_re: raw(record.value.re),
            value_im: raw(record.value.im),
            oracle_value: record.oracle.and_then(raw),
            abs_diff: record.abs_diff().and_then(raw),
        }),
        Format::Csv => {
            let (keys, values): (Vec<_>, Vec<_>) = record.fields().into_iter().unzip();
            csv_table(&keys, &[values])
        }
        Format::Text => record
            .fields()
            .into_iter()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect(),
    }
}

#[derive(Serialize)]
struct CoeffJson {
    k: usize,
    re: Option<Box<RawValue>>,
    im: Option<Box<RawValue>>,
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    function: &'a str,
    a: String,
    kappa: Option<Box<RawValue>>,
    order: usize,
    coefficients: Vec<CoeffJson>,
}

pub fn series(
    function: AnalogueFn,
    params: &ModulusParams,
    s: &TruncatedSeries,
    format: Format,
) -> String {
    let rows: Vec<Vec<String>> = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| vec![k.to_string(), fmt_num(c.re), fmt_num(c.im)])
        .collect();
    match format {
        Format::Json => to_json(&SeriesJson {
            function: function.name(),
            a: params.a().to_string(),
            kappa: raw(params.kappa()),
            order: s.order(),
            coefficients: s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| CoeffJson {
                    k,
                    re: raw(c.re),
                    im: raw(c.im),
                })
                .collect(),
        }),
        Format::Csv => csv_table(&["k", "re", "im"], &rows),
        Format::Text => format!(
            "function: {}\na: {}\nkappa: {}\norder: {}\n{}",
            function.name(),
            params.a(),
            fmt_num(params.kappa()),
            s.order(),
            text_table(&["k", "re", "im"], &rows)
        ),
    }
}

pub const CHECK_HEADER: [&str; 7] = [
    "id",
    "a",
    "kappa",
    "mode",
    "max_residual",
    "tolerance",
    "pass",
];

#[derive(Serialize)]
struct TolerancesJson {
    series: Option<Box<RawValue>>,
    pointwise: Option<Box<RawValue>>,
}

#[derive(Serialize)]
struct GridJson {
    a: Vec<String>,
    kappa: Vec<Option<Box<RawValue>>>,
    order: usize,
    tolerances: TolerancesJson,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    id: &'a str,
    a: Option<String>,
    kappa: Option<Box<RawValue>>,
    mode: &'static str,
    max_residual: Option<Box<RawValue>>,
    tolerance: Option<Box<RawValue>>,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    version: &'a str,
    grid: GridJson,
    checks: Vec<CheckJson<'a>>,
    notes: &'a [String],
    timestamp: u64,
}

/// Cells of one check; absent parameters are empty in CSV and `-` in text.
fn check_cells(c: &TheoremCheck, missing: &str) -> Vec<String> {
    vec![
        c.id.clone(),
        c.a.as_ref()
            .map_or_else(|| missing.to_string(), ToString::to_string),
        c.kappa.map_or_else(|| missing.to_string(), fmt_num),
        c.mode.as_str().to_string(),
        fmt_num(c.max_residual),
        fmt_num(c.tolerance),
        c.pass.to_string(),
    ]
}

pub fn report(r: &VerificationReport, format: Format) -> Result<String, std::fmt::Error> {
    let cfg = &r.config;
    Ok(match format {
        Format::Json => to_json(&ReportJson {
            version: &r.version,
            grid: GridJson {
                a: cfg.a_values.iter().map(ToString::to_string).collect(),
                kappa: cfg.kappas.iter().map(|&k| raw(k)).collect(),
                order: cfg.order,
                tolerances: TolerancesJson {
                    series: raw(cfg.tolerances.series),
                    pointwise: raw(cfg.tolerances.pointwise),
                },
            },
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    id: &c.id,
                    a: c.a.as_ref().map(ToString::to_string),
                    kappa: c.kappa.and_then(raw),
                    mode: c.mode.as_str(),
                    max_residual: raw(c.max_residual),
                    tolerance: raw(c.tolerance),
                    pass: c.pass,
                })
                .collect(),
            notes: &r.notes,
            timestamp: r.timestamp,
        }),
        Format::Csv => {
            let rows: Vec<_> = r.checks.iter().map(|c| check_cells(c, "")).collect();
            csv_table(&CHECK_HEADER, &rows)
        }
        Format::Text => {
            use std::fmt::Write;
            let mut out = String::new();
            writeln!(out, "version: {}", r.version)?;
            let a: Vec<_> = cfg.a_values.iter().map(ToString::to_string).collect();
            let k: Vec<_> = cfg.kappas.iter().map(|&k| fmt_num(k)).collect();
            writeln!(out, "grid a: {}", a.join(" "))?;
            writeln!(out, "grid kappa: {}", k.join(" "))?;
            writeln!(out, "grid order: {}", cfg.order)?;
            writeln!(out, "tolerance series: {}", fmt_num(cfg.tolerances.series))?;
            writeln!(
                out,
                "tolerance pointwise: {}",
                fmt_num(cfg.tolerances.pointwise)
            )?;
            writeln!(out, "timestamp: {}", r.timestamp)?;
            writeln!(out)?;
            let rows: Vec<_> = r.checks.iter().map(|c| check_cells(c, "-")).collect();
            out.push_str(&text_table(&CHECK_HEADER, &rows));
            writeln!(out)?;
            for note in &r.notes {
                writeln!(out, "note: {note}")?;
            }
            let failed = r.failures().count();
            writeln!(out, "summary: {} checks, {failed} failed", r.checks.len())?;
            out
        }
    })
}
