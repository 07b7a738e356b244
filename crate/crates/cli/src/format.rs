//! Deterministic number formatting and result serialization.

use std::io::Write;

use serde::Serialize;

/// `printf("%.9g")`: nine significant digits, trailing zeros trimmed,
/// exponent form outside `[1e-5, 1e9)`. Negative zero prints as `0`.
pub fn fmt_g9(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            trim_zeros(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// `x` rounded to the value its nine-digit rendering denotes.
pub fn round_g9(x: f64) -> f64 {
    fmt_g9(x).parse().unwrap_or(x)
}

pub const CSV_HEADER: [&str; 11] = [
    "alpha", "scheme", "R_total", "R1", "R2", "C_x1", "C_x2", "Ct_x1_re", "Ct_x1_im", "Ct_x2_re",
    "Ct_x2_im",
];

/// One output row, already in output units and rounded to nine digits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub alpha: f64,
    pub scheme: String,
    #[serde(rename = "R_total")]
    pub r_total: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    #[serde(rename = "C_x1")]
    pub c_x1: f64,
    #[serde(rename = "C_x2")]
    pub c_x2: f64,
    #[serde(rename = "Ct_x1_re")]
    pub ct_x1_re: f64,
    #[serde(rename = "Ct_x1_im")]
    pub ct_x1_im: f64,
    #[serde(rename = "Ct_x2_re")]
    pub ct_x2_re: f64,
    #[serde(rename = "Ct_x2_im")]
    pub ct_x2_im: f64,
}

impl Row {
    fn fields(&self) -> [String; 11] {
        [
            fmt_g9(self.alpha),
            self.scheme.clone(),
            fmt_g9(self.r_total),
            fmt_g9(self.r1),
            fmt_g9(self.r2),
            fmt_g9(self.c_x1),
            fmt_g9(self.c_x2),
            fmt_g9(self.ct_x1_re),
            fmt_g9(self.ct_x1_im),
            fmt_g9(self.ct_x2_re),
            fmt_g9(self.ct_x2_im),
        ]
    }
}

/// A profile the solver could not finish.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gap {
    pub alpha: f64,
    pub error: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub max_improvement: f64,
    pub mean_improvement: f64,
    pub max_shortfall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rate_units: &'static str,
    pub rows: Vec<Row>,
    pub gaps: Vec<Gap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

pub fn write_csv<W: Write>(report: &Report, mut out: W) -> std::io::Result<()> {
    {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(&mut out);
        w.write_record(CSV_HEADER)?;
        for row in &report.rows {
            w.write_record(row.fields())?;
        }
        w.flush()?;
    }
    for gap in &report.gaps {
        writeln!(out, "# gap alpha={} error={}", fmt_g9(gap.alpha), gap.error)?;
    }
    if let Some(s) = report.summary {
        writeln!(out, "# rate_units={}", report.rate_units)?;
        writeln!(out, "# max_improvement={}", fmt_g9(s.max_improvement))?;
        writeln!(out, "# mean_improvement={}", fmt_g9(s.mean_improvement))?;
        writeln!(out, "# max_shortfall={}", fmt_g9(s.max_shortfall))?;
    }
    Ok(())
}

pub fn write_json<W: Write>(report: &Report, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")
}
