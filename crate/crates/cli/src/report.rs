use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;

use exppoly::ComplexValue;
use serde::{Deserialize, Serialize};

use crate::args::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub paper_eq: Option<String>,
    pub computed: String,
    pub expected: Option<String>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    pub fn or_override(self, over: Option<f64>) -> Self {
        match over {
            Some(t) => Self::new(t, t),
            None => self,
        }
    }
}

/// 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_complex(z: ComplexValue) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_float(z.re), fmt_float(z.im.abs()))
}

pub fn fmt_list<T: Display>(items: &[T]) -> String {
    let body: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", body.join(", "))
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl Row {
    /// A value with nothing to compare against.
    pub fn value(name: impl Into<String>, computed: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            paper_eq: None,
            computed: computed.into(),
            expected: None,
            abs_err: None,
            rel_err: None,
            pass: true,
        }
    }

    /// Exact comparison of two rendered values.
    pub fn exact(name: impl Into<String>, eq: &str, computed: String, expected: String) -> Self {
        let pass = computed == expected;
        Self {
            name: name.into(),
            paper_eq: Some(eq.to_string()),
            computed,
            expected: Some(expected),
            abs_err: None,
            rel_err: None,
            pass,
        }
    }

    pub fn float(name: impl Into<String>, eq: &str, computed: f64, expected: f64, tol: Tolerance) -> Self {
        Self::complex(
            name,
            eq,
            ComplexValue::new(computed, 0.0),
            ComplexValue::new(expected, 0.0),
            tol,
        )
        .with_rendering(fmt_float(computed), fmt_float(expected))
    }

    /// Passes when `|computed - expected| <= max(rel |expected|, abs)`.
    pub fn complex(
        name: impl Into<String>,
        eq: &str,
        computed: ComplexValue,
        expected: ComplexValue,
        tol: Tolerance,
    ) -> Self {
        let abs = (computed - expected).norm();
        let rel = abs / expected.norm();
        let pass = abs <= (tol.rel * expected.norm()).max(tol.abs);
        Self {
            name: name.into(),
            paper_eq: Some(eq.to_string()),
            computed: fmt_complex(computed),
            expected: Some(fmt_complex(expected)),
            abs_err: finite(abs),
            rel_err: finite(rel),
            pass,
        }
    }

    fn with_rendering(mut self, computed: String, expected: String) -> Self {
        self.computed = computed;
        self.expected = Some(expected);
        self
    }

    /// A failure that prevented a check from running.
    pub fn error(name: impl Into<String>, eq: &str, message: String) -> Self {
        Self {
            name: name.into(),
            paper_eq: Some(eq.to_string()),
            computed: format!("error: {message}"),
            expected: None,
            abs_err: None,
            rel_err: None,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<Row>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, row: Row) {
        if !row.pass {
            self.status = Status::Fail;
        }
        self.results.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Row>) {
        for r in rows {
            self.push(r);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<(), Box<dyn std::error::Error>> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for r in &self.results {
                    w.serialize(r)?;
                }
                if self.results.is_empty() {
                    w.write_record(["name", "paper_eq", "computed", "expected", "abs_err", "rel_err", "pass"])?;
                }
                w.flush()?;
            }
            Format::Text => self.write_text(out)?,
        }
        Ok(())
    }

    fn write_text(&self, out: &mut impl Write) -> std::io::Result<()> {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{} {}", self.command, params.join(" "))?;
        for r in &self.results {
            match &r.expected {
                None if r.pass => writeln!(out, "  {} = {}", r.name, r.computed)?,
                _ => {
                    let tag = if r.pass { "PASS" } else { "FAIL" };
                    let eq = r.paper_eq.as_deref().map(|e| format!("{e} ")).unwrap_or_default();
                    write!(out, "  [{tag}] {eq}{}: {}", r.name, r.computed)?;
                    if let Some(e) = &r.expected {
                        write!(out, " vs {e}")?;
                    }
                    if let Some(a) = r.abs_err {
                        write!(out, " (abs_err {a:.3e}")?;
                        if let Some(rel) = r.rel_err {
                            write!(out, ", rel_err {rel:.3e}")?;
                        }
                        write!(out, ")")?;
                    }
                    writeln!(out)?;
                }
            }
        }
        let failed = self.results.iter().filter(|r| !r.pass).count();
        let status = if self.passed() { "pass" } else { "fail" };
        writeln!(out, "status: {status} ({} rows, {failed} failed)", self.results.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("table").param("kind", "bernoulli").param("n_max", 4);
        r.push(Row::value("B(4)", "-1/30"));
        r.push(Row::exact("b(3)", "(2.11)", "5".into(), "5".into()));
        r.push(Row::float("x", "(3.13)", 1.0 + 1e-12, 1.0, Tolerance::new(1e-10, 0.0)));
        r.push(Row::complex(
            "z",
            "(5.2)",
            ComplexValue::new(0.1, -2.0),
            ComplexValue::new(0.1, -2.0),
            Tolerance::new(1e-10, 1e-12),
        ));
        r
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        let s = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(s.contains("\"status\":\"pass\""));
    }

    #[test]
    fn failures_flip_status() {
        let mut r = sample();
        r.push(Row::exact("bad", "(2.4)", "1".into(), "2".into()));
        assert!(!r.passed());
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn zero_expectation_uses_absolute_tolerance() {
        let z = ComplexValue::new(0.0, 0.0);
        let near = ComplexValue::new(1e-13, 0.0);
        assert!(Row::complex("a", "", near, z, Tolerance::new(1e-8, 1e-10)).pass);
        assert!(!Row::complex("a", "", ComplexValue::new(1e-9, 0.0), z, Tolerance::new(1e-8, 1e-10)).pass);
        // rel_err of an exact zero is infinite and therefore omitted
        assert_eq!(Row::complex("a", "", near, z, Tolerance::new(1e-8, 1e-10)).rel_err, None);
    }

    #[test]
    fn float_rendering() {
        assert_eq!(fmt_float(4140.0), "4.1400000000000000e3");
        assert_eq!(fmt_complex(ComplexValue::new(1.0, -0.5)), "1.0000000000000000e0-5.0000000000000000e-1i");
        assert_eq!(fmt_list(&[1, 2]), "[1, 2]");
    }

    #[test]
    fn csv_and_text() {
        let r = sample();
        let mut buf = Vec::new();
        r.write(Format::Csv, &mut buf).unwrap();
        let csv = String::from_utf8(buf).unwrap();
        assert!(csv.starts_with("name,paper_eq,computed,expected,abs_err,rel_err,pass\n"));
        assert!(csv.contains("B(4),,-1/30,,,,true"));
        let mut buf = Vec::new();
        r.write(Format::Text, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("  B(4) = -1/30"));
        assert!(text.ends_with("status: pass (4 rows, 0 failed)\n"));
    }
}
