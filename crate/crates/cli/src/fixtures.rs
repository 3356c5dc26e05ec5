//! The shipped fixture scenario: matrices `A` and `B`, the map `f` and the
//! monad maps `alpha`, `beta`.

use sha2::{Digest, Sha256};
use tango_core::module::GradedMatrix;
use tango_core::ring::{ExteriorElement, Ring, RingMap};

use crate::dsl::{parse_scenario, MatrixDecl, Scenario};
use crate::error::{CliError, Result};

pub const TANGO_SCN: &str = include_str!("../fixtures/tango.scn");

/// SHA-256 of the canonical text of `A` (see [`matrix_digest`]).
pub const DIGEST_A: &str = "03914186853f7cc2c4a42f18315f5550f24f61413440ef4e96965d9ab258355f";
pub const DIGEST_B: &str = "0b177905fcc580f9d5cae2ee455f62bcee9ff968d8f51c1886da6d06a0508719";

/// Digest of the entries as written, whitespace removed, cells joined by `,`
/// and rows by newlines.
pub fn matrix_digest(cells: &[Vec<String>]) -> String {
    let canon: Vec<String> =
        cells.iter().map(|r| r.iter().map(|c| c.chars().filter(|ch| !ch.is_whitespace()).collect::<String>()).collect::<Vec<_>>().join(",")).collect();
    hex::encode(Sha256::digest(canon.join("\n").as_bytes()))
}

#[derive(Clone, Debug)]
pub struct Fixtures {
    pub scenario: Scenario,
}

impl Fixtures {
    pub fn shipped() -> Result<Fixtures> {
        Fixtures::from_scenario(parse_scenario(TANGO_SCN)?)
    }

    /// Checks that the scenario declares everything the suite reads.
    pub fn from_scenario(scenario: Scenario) -> Result<Fixtures> {
        for m in ["A", "B"] {
            if scenario.matrix(m).is_none() {
                return Err(CliError::Fixture(format!("matrix `{m}` missing")));
            }
        }
        if scenario.map("f").is_none() {
            return Err(CliError::Fixture("map `f` missing".into()));
        }
        for e in ["alpha", "beta"] {
            if scenario.exterior(e).is_none() {
                return Err(CliError::Fixture(format!("exterior matrix `{e}` missing")));
            }
        }
        let fx = Fixtures { scenario };
        if fx.b().ring() != fx.a().ring() || fx.f().source() != fx.a().ring() {
            return Err(CliError::Fixture("A, B and the source of f must share one ring".into()));
        }
        Ok(fx)
    }

    pub fn a(&self) -> &GradedMatrix {
        self.scenario.matrix("A").expect("checked")
    }

    pub fn b(&self) -> &GradedMatrix {
        self.scenario.matrix("B").expect("checked")
    }

    pub fn f(&self) -> &RingMap {
        self.scenario.map("f").expect("checked")
    }

    pub fn alpha(&self) -> Vec<Vec<ExteriorElement>> {
        self.scenario.exterior("alpha").expect("checked").to_vec()
    }

    pub fn beta(&self) -> Vec<Vec<ExteriorElement>> {
        self.scenario.exterior("beta").expect("checked").to_vec()
    }

    /// The ring of `A` and `B`.
    pub fn quadric(&self) -> &Ring {
        self.a().ring()
    }

    /// Shape, degree, symmetry and digest checks; returns the problems found.
    pub fn integrity(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let a = self.scenario.matrix_decl("A").expect("checked");
        let b = self.scenario.matrix_decl("B").expect("checked");
        shape(a, 12, 6, 2, &mut issues);
        shape(b, 8, 8, 1, &mut issues);
        for i in 0..b.text.len().min(8) {
            for j in 0..b.text[i].len().min(8) {
                let (x, y) = (strip(&b.text[i][j]), strip(&b.text[j][i]));
                let ok = if i == j { x == "0" } else { x == negate(&y) };
                if !ok {
                    issues.push(format!("B is not skew at ({},{})", i + 1, j + 1));
                }
            }
        }
        for (decl, want) in [(a, DIGEST_A), (b, DIGEST_B)] {
            let got = matrix_digest(&decl.text);
            if got != want {
                issues.push(format!("digest of {} is {got}, expected {want}", decl.name));
            }
        }
        issues
    }
}

fn shape(d: &MatrixDecl, rows: usize, cols: usize, deg: i32, issues: &mut Vec<String>) {
    let m = &d.matrix;
    if m.nrows() != rows || m.ncols() != cols {
        issues.push(format!("{} is {}x{}, expected {rows}x{cols}", d.name, m.nrows(), m.ncols()));
        return;
    }
    for i in 0..rows {
        for j in 0..cols {
            let p = m.entry(i, j);
            if !p.is_zero() && p.degree() != Some(deg) {
                issues.push(format!("{} entry ({},{}) has degree {:?}, expected {deg}", d.name, i + 1, j + 1, p.degree()));
            }
        }
    }
}

fn strip(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Sign flip of a single signed term as printed (`z3` <-> `-z3`, `0` fixed).
fn negate(s: &str) -> String {
    match s {
        "0" => "0".into(),
        _ => s.strip_prefix('-').map_or_else(|| format!("-{s}"), str::to_string),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_fixtures_are_intact() {
        let fx = Fixtures::shipped().unwrap();
        assert_eq!(fx.integrity(), Vec::<String>::new());
        assert_eq!(fx.quadric(), &tango_core::ring::standard::q5());
        assert_eq!(fx.f(), &tango_core::ring::standard::tango_map());
        assert_eq!((fx.beta().len(), fx.alpha().len()), (7, 2));
    }

    #[test]
    fn edits_break_the_digest() {
        let mut fx = Fixtures::shipped().unwrap();
        fx.scenario.set_entry("A", 0, 3, "0").unwrap();
        let issues = fx.integrity();
        assert_eq!(issues.len(), 1);
        assert!(issues[0].starts_with("digest of A"));
        fx.scenario.set_entry("B", 0, 3, "z3").unwrap();
        assert!(fx.integrity().iter().any(|s| s.contains("skew at (1,4)")));
    }
}
