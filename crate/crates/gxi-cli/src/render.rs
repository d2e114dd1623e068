//! Text tables and the JSON report document.

use gxi::kernel::{Approx, Field, Mat, Scalar};
use gxi::CheckReport;
use gxi::Status;
use serde_json::{json, Map, Value};

/// Scalars the CLI knows how to print.
pub trait Num: Field {
    fn to_json(&self) -> Value;
    fn to_text(&self) -> String;
}

impl Num for Scalar {
    fn to_json(&self) -> Value {
        serde_json::to_value(gxi::io::ScalarRepr::from_scalar(self)).expect("scalar serializes")
    }

    fn to_text(&self) -> String {
        self.reduce_conductor().to_string()
    }
}

/// Rounds to 12 digits and clears negative zero so output is stable.
fn tidy(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl Num for Approx {
    fn to_json(&self) -> Value {
        let z = self.to_c64();
        json!([tidy(z.re), tidy(z.im)])
    }

    fn to_text(&self) -> String {
        let z = self.to_c64();
        let (re, im) = (tidy(z.re), tidy(z.im));
        match (re == 0.0, im == 0.0) {
            (_, true) => format!("{re}"),
            (true, false) => format!("{im}i"),
            _ => format!("{re}{im:+}i"),
        }
    }
}

pub fn matrix_json<F: Num>(m: &Mat<F>) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(Num::to_json).collect()))
            .collect(),
    )
}

pub fn matrix_text<F: Num>(m: &Mat<F>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(Num::to_text).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// Fixed-width columns, left aligned.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        format!("  {}", parts.join("  ").trim_end())
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::NotCheckable => "not-checkable",
    }
}

pub fn report_text(r: &CheckReport) -> String {
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            let mut detail = c.witness.clone().unwrap_or_default();
            if let Some(n) = &c.note {
                if !detail.is_empty() {
                    detail.push_str("; ");
                }
                detail.push_str(n);
            }
            vec![c.id.clone(), status(c.status).into(), c.instances.to_string(), detail]
        })
        .collect();
    format!("{}\n{}", r.suite, table(&["check", "status", "instances", "detail"], &rows))
}

/// Result of one command.
pub struct Output {
    pub passed: bool,
    pub doc: Map<String, Value>,
    pub text: Vec<String>,
    /// Already wrote its payload to stdout.
    pub silent: bool,
}

impl Output {
    pub fn new(command: &str) -> Self {
        let mut doc = Map::new();
        doc.insert("command".into(), json!(command));
        Output {
            passed: true,
            doc,
            text: Vec::new(),
            silent: false,
        }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.doc.insert(key.into(), v);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn reports(&mut self, reports: Vec<CheckReport>) {
        for r in &reports {
            self.passed &= r.passed();
            self.text.push(report_text(r));
        }
        self.set("reports", serde_json::to_value(&reports).expect("reports serialize"));
    }

    pub fn emit(mut self, as_json: bool) {
        if self.silent {
            return;
        }
        if as_json {
            self.doc.insert("passed".into(), json!(self.passed));
            print!("{}", gxi::io::to_canonical_string(&Value::Object(self.doc)));
        } else {
            println!("{}", self.text.join("\n"));
        }
    }
}
