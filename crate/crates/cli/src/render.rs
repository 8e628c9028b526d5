//! Text and JSON rendering of command results.

use drinfeld_core::eigencoeff::MVPoly;
use drinfeld_core::hecke::EigenCheck;
use drinfeld_core::{PolyA, TSeries};
use serde_json::{json, Value};

use crate::Format;

pub struct Render {
    pub format: Format,
    /// Name for θ in text output; JSON always uses "T".
    pub var: &'static str,
}

impl Render {
    pub fn var_or_json(&self) -> &'static str {
        match self.format {
            Format::Text => self.var,
            Format::Json => "T",
        }
    }

    fn series_value(s: &TSeries) -> Value {
        serde_json::to_value(s.to_json()).expect("series JSON is serializable")
    }

    pub fn series(&self, s: &TSeries) -> String {
        match self.format {
            Format::Text => format!("{}\n", s.to_text(self.var)),
            Format::Json => format!("{}\n", Self::series_value(s)),
        }
    }

    pub fn hecke(&self, s: &TSeries) -> String {
        match self.format {
            Format::Text => format!("certified precision: {}\n{}\n", s.prec(), s.to_text(self.var)),
            Format::Json => format!("{}\n", json!({ "certified_prec": s.prec(), "series": Self::series_value(s) })),
        }
    }

    pub fn eigen_check(&self, report: &EigenCheck, lam: &PolyA) -> String {
        let var = self.var_or_json();
        match self.format {
            Format::Text => {
                let mut text = format!("certified precision: {}\n", report.certified_prec);
                match &report.discrepancy {
                    None => text.push_str(&format!("PASS: T f = ({}) f\n", lam.to_text(var))),
                    Some(d) => text.push_str(&format!(
                        "FAIL at t^{}: T f has {}, λ f has {}\n",
                        d.index,
                        d.hecke.to_text(var),
                        d.expected.to_text(var)
                    )),
                }
                text
            }
            Format::Json => {
                let discrepancy = report.discrepancy.as_ref().map(
                    |d| json!({ "index": d.index, "hecke": d.hecke.to_text(var), "expected": d.expected.to_text(var) }),
                );
                let value = json!({
                    "certified_prec": report.certified_prec,
                    "eigenvalue": lam.to_text(var),
                    "holds": report.holds(),
                    "discrepancy": discrepancy,
                });
                format!("{value}\n")
            }
        }
    }

    pub fn value(&self, text: &str) -> String {
        match self.format {
            Format::Text => format!("{text}\n"),
            Format::Json => format!("{}\n", json!(text)),
        }
    }

    pub fn universal(&self, solution: &MVPoly, verdict: Option<bool>) -> String {
        let text = solution.to_universal_text();
        let label = |ok: bool| if ok { "PASS" } else { "FAIL" };
        match self.format {
            Format::Text => match verdict {
                Some(ok) => format!("{text}\n{}\n", label(ok)),
                None => format!("{text}\n"),
            },
            Format::Json => format!("{}\n", json!({ "solution": text, "check": verdict.map(label) })),
        }
    }

    pub fn forms(&self, found: &[TSeries]) -> String {
        match self.format {
            Format::Text => found.iter().map(|s| format!("{}\n", s.to_text(self.var))).collect(),
            Format::Json => format!("{}\n", Value::Array(found.iter().map(Self::series_value).collect())),
        }
    }
}
