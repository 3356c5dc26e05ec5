//! The literal expectations of the verification suite.

use serde::Deserialize;
use serde_json::Value;

use crate::dsl::Profile;
use crate::error::{CliError, Result};

pub const CLAIMS_TOML: &str = include_str!("../claims.toml");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compare {
    #[default]
    Exact,
    /// Strings compared after trimming lines and collapsing runs of spaces.
    Text,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Claim {
    pub id: String,
    pub criterion: u32,
    pub profile: Profile,
    #[serde(rename = "ref")]
    pub reference: String,
    #[serde(default)]
    pub compare: Compare,
    #[serde(default)]
    pub params: Value,
    pub expected: Value,
}

#[derive(Deserialize)]
struct ClaimsFile {
    claim: Vec<Claim>,
}

pub fn parse_claims(text: &str) -> Result<Vec<Claim>> {
    let file: ClaimsFile = toml::from_str(text).map_err(|e| CliError::Claims(e.to_string()))?;
    for (k, c) in file.claim.iter().enumerate() {
        if file.claim[..k].iter().any(|d| d.id == c.id) {
            return Err(CliError::Claims(format!("duplicate claim id `{}`", c.id)));
        }
    }
    Ok(file.claim)
}

pub fn shipped_claims() -> Result<Vec<Claim>> {
    parse_claims(CLAIMS_TOML)
}

pub fn normalize_text(s: &str) -> String {
    s.lines().map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).filter(|l| !l.is_empty()).collect::<Vec<_>>().join("\n")
}

impl Claim {
    pub fn matches(&self, computed: &Value) -> bool {
        match self.compare {
            Compare::Exact => &self.expected == computed,
            Compare::Text => match (self.expected.as_str(), computed.as_str()) {
                (Some(a), Some(b)) => normalize_text(a) == normalize_text(b),
                _ => false,
            },
        }
    }

    pub fn param_i64(&self, key: &str) -> Option<i64> {
        self.params.get(key).and_then(Value::as_i64)
    }

    pub fn param_str(&self, key: &str) -> Option<&str> {
        self.params.get(key).and_then(Value::as_str)
    }

    pub fn param_window(&self) -> Option<(i32, i32)> {
        let w = self.params.get("window")?.as_array()?;
        Some((w.first()?.as_i64()? as i32, w.get(1)?.as_i64()? as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn shipped_claims_parse() {
        let claims = shipped_claims().unwrap();
        let mut crits: Vec<u32> = claims.iter().map(|c| c.criterion).collect();
        crits.dedup();
        assert_eq!(crits, (0..=17).collect::<Vec<_>>());
        assert!(claims.iter().any(|c| c.id == "table-tango" && c.compare == Compare::Text));
    }

    #[test]
    fn comparison_modes() {
        let c = parse_claims("[[claim]]\nid='x'\ncriterion=1\nprofile='quick'\nref='r'\ncompare='text'\nexpected=\"a  b\\n\\n c\"").unwrap();
        assert!(c[0].matches(&json!(" a b\nc ")));
        assert!(!c[0].matches(&json!("a b c")));
        let c = parse_claims("[[claim]]\nid='x'\ncriterion=1\nprofile='full'\nref='r'\nexpected=[[1, -2, 3]]").unwrap();
        assert!(c[0].matches(&json!([[1u64, -2, 3u64]])));
        assert!(parse_claims("[[claim]]\nid='x'\ncriterion=1\nprofile='full'\nref='r'\nexpected=1\n[[claim]]\nid='x'\ncriterion=1\nprofile='full'\nref='r'\nexpected=1").is_err());
    }
}
