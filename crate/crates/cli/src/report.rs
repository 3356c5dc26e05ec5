//! Text and JSON rendering of suite verdicts.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::suite::Verdict;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub passed: usize,
    pub failed: usize,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(verdicts: Vec<Verdict>) -> Report {
        let passed = verdicts.iter().filter(|v| v.pass).count();
        Report { passed, failed: verdicts.len() - passed, verdicts }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Zeroes the timings so that two runs can be compared.
    pub fn without_timings(mut self) -> Report {
        for v in &mut self.verdicts {
            v.millis = 0;
        }
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Report> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let status = if v.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  [{:>2}] {:<28} {:>7} ms  {}\n", v.criterion, v.claim, v.millis, v.reference));
            if let Some(e) = &v.error {
                out.push_str(&format!("      error: {e}\n"));
            } else if !v.pass {
                out.push_str(&indent("expected", &v.expected));
                out.push_str(&indent("computed", &v.computed));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Multi-line values (tables) go on their own lines under the label.
fn indent(label: &str, v: &Value) -> String {
    let s = show(v);
    if s.contains('\n') {
        let body: String = s.lines().map(|l| format!("        {l}\n")).collect();
        format!("      {label}:\n{body}")
    } else {
        format!("      {label}: {s}\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn verdict(pass: bool, computed: Value) -> Verdict {
        Verdict {
            claim: "c".into(),
            reference: "r".into(),
            criterion: 3,
            expected: json!("a\nb"),
            computed,
            pass,
            millis: 12,
            error: None,
        }
    }

    #[test]
    fn text_lists_failures_with_values() {
        let r = Report::new(vec![verdict(true, json!("a\nb")), verdict(false, json!([1, 2]))]);
        let text = r.to_text();
        assert!(text.contains("PASS  [ 3] c"));
        assert!(text.contains("      expected:\n        a\n        b\n"));
        assert!(text.contains("      computed: [1,2]\n"));
        assert!(text.ends_with("1 passed, 1 failed\n"));
    }

    #[test]
    fn json_round_trip() {
        let r = Report::new(vec![verdict(false, json!({ "x": [1, -2] }))]);
        let back = Report::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.without_timings().verdicts[0].millis, 0);
    }
}
