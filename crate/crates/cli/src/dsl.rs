//! Scenario language: ring, matrix, map, exterior and module declarations
//! followed by jobs.
//!
//! ```text
//! ring Q5 = GF(2)[z0..z6] / (z0^2 + z1*z2 + z3*z4 + z5*z6);
//! matrix B over Q5 twists [0, 0] = [[z0, z1], [z2, z3]];
//! map f : Q5 -> P5 scale 2 = (x0*x1 + x2*x3 + x4*x5, x0^2, ...);
//! exterior beta = [[e0, e4*e5], [0, e0*e3 + e1*e4]];
//! module S = coker B twist -1;
//! job coh S window=-5..3;
//! ```
//!
//! `twists` lists the degrees of the generators (rows) of a matrix; column
//! degrees are inferred from the entries. A map `R1 -> R2` lists the images of
//! the variables of `R1` as polynomials of `R2`. `#` and `//` start comments.

use std::collections::HashMap;
use std::fmt;

use tango_core::bbw::Weight;
use tango_core::module::{image, GradedMatrix, GradedModule};
use tango_core::ring::{ExteriorElement, Fp, Poly, Ring, RingMap};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct MatrixDecl {
    pub name: String,
    pub ring: String,
    pub twists: Vec<i32>,
    /// Entries as written, used for digests and for editing single cells.
    pub text: Vec<Vec<String>>,
    pub matrix: GradedMatrix,
}

#[derive(Clone, Debug)]
pub struct ExteriorDecl {
    pub name: String,
    pub entries: Vec<Vec<ExteriorElement>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Coker,
    Image,
}

#[derive(Clone, Debug)]
pub struct ModuleDecl {
    pub name: String,
    pub kind: ModuleKind,
    pub matrix: String,
    pub twist: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl std::str::FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(format!("unknown profile `{s}` (quick or full)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Job {
    /// Groebner basis of the submodule spanned by the columns of a matrix.
    Gb { matrix: String },
    Res { target: String, length: usize },
    Coh { target: String, window: Option<(i32, i32)> },
    Chern { target: String, rank: i64 },
    Bbw { weight: Weight, window: (i32, i32) },
    Monad { beta: String, alpha: String, right: usize },
    Pushforward { map: String, target: String, bound: i32 },
    Verify { profile: Profile },
}

#[derive(Clone, Debug)]
pub struct JobEntry {
    pub pos: Pos,
    pub job: Job,
}

#[derive(Clone)]
enum Value {
    Ring(Ring),
    Matrix(usize),
    Map(RingMap),
    Exterior(usize),
    Module(usize),
}

#[derive(Clone, Default)]
pub struct Scenario {
    names: HashMap<String, Value>,
    order: Vec<String>,
    pub matrices: Vec<MatrixDecl>,
    pub exteriors: Vec<ExteriorDecl>,
    pub modules: Vec<ModuleDecl>,
    pub jobs: Vec<JobEntry>,
}

impl fmt::Debug for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scenario").field("names", &self.order).field("jobs", &self.jobs.len()).finish()
    }
}

impl Scenario {
    pub fn is_empty(&self) -> bool {
        self.names.is_empty() && self.jobs.is_empty()
    }

    /// Declared names in order of appearance.
    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn ring(&self, name: &str) -> Option<&Ring> {
        match self.names.get(name) {
            Some(Value::Ring(r)) => Some(r),
            _ => None,
        }
    }

    pub fn map(&self, name: &str) -> Option<&RingMap> {
        match self.names.get(name) {
            Some(Value::Map(m)) => Some(m),
            _ => None,
        }
    }

    pub fn matrix_decl(&self, name: &str) -> Option<&MatrixDecl> {
        match self.names.get(name) {
            Some(Value::Matrix(i)) => Some(&self.matrices[*i]),
            _ => None,
        }
    }

    pub fn matrix(&self, name: &str) -> Option<&GradedMatrix> {
        self.matrix_decl(name).map(|d| &d.matrix)
    }

    pub fn exterior(&self, name: &str) -> Option<&[Vec<ExteriorElement>]> {
        match self.names.get(name) {
            Some(Value::Exterior(i)) => Some(&self.exteriors[*i].entries),
            _ => None,
        }
    }

    /// A module named directly, or the cokernel of a named matrix.
    pub fn module(&self, name: &str) -> Result<GradedModule> {
        match self.names.get(name) {
            Some(Value::Matrix(i)) => Ok(GradedModule::coker(self.matrices[*i].matrix.clone())),
            Some(Value::Module(i)) => {
                let d = &self.modules[*i];
                let m = self.matrix(&d.matrix).expect("checked at parse time");
                let base = match d.kind {
                    ModuleKind::Coker => GradedModule::coker(m.clone()),
                    ModuleKind::Image => image(m)?,
                };
                Ok(base.twist(d.twist))
            }
            _ => Err(CliError::Scenario(format!("`{name}` is not a module or matrix"))),
        }
    }

    /// Replaces one entry (0-based) of a declared matrix, re-checking degrees.
    pub fn set_entry(&mut self, name: &str, row: usize, col: usize, text: &str) -> Result<()> {
        let Some(Value::Matrix(k)) = self.names.get(name) else {
            return Err(CliError::Scenario(format!("no matrix `{name}`")));
        };
        let k = *k;
        let decl = &self.matrices[k];
        let mut cells = decl.text.clone();
        let slot = cells
            .get_mut(row)
            .and_then(|r| r.get_mut(col))
            .ok_or_else(|| CliError::Scenario(format!("cell ({},{}) outside `{name}`", row + 1, col + 1)))?;
        *slot = text.to_string();
        let ring = self.ring(&decl.ring).expect("declared ring").clone();
        let origin = Pos { line: 0, col: 0 };
        let cells: Vec<Vec<(String, Pos)>> = cells.into_iter().map(|r| r.into_iter().map(|s| (s, origin)).collect()).collect();
        let matrix = build_matrix(&ring, &decl.twists, &cells)?;
        self.matrices[k].text = cells.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect();
        self.matrices[k].matrix = matrix;
        Ok(())
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut p = Parser { src: text.chars().collect(), i: 0 };
    let mut sc = Scenario::default();
    loop {
        p.skip();
        if p.eof() {
            break;
        }
        let start = p.i;
        let kw = p.word()?;
        match kw.as_str() {
            "ring" => p.ring_stmt(&mut sc)?,
            "matrix" => p.matrix_stmt(&mut sc)?,
            "map" => p.map_stmt(&mut sc)?,
            "exterior" => p.exterior_stmt(&mut sc)?,
            "module" => p.module_stmt(&mut sc)?,
            "job" => p.job_stmt(&mut sc, start)?,
            other => return Err(p.error_at(start, format!("unknown statement `{other}`"))),
        }
    }
    Ok(sc)
}

struct Parser {
    src: Vec<char>,
    i: usize,
}

fn parse_error(pos: Pos, msg: impl Into<String>) -> CliError {
    CliError::Parse { line: pos.line, col: pos.col, msg: msg.into() }
}

impl Parser {
    fn pos(&self, i: usize) -> Pos {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.src[..i.min(self.src.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Pos { line, col }
    }

    fn error_at(&self, i: usize, msg: impl Into<String>) -> CliError {
        parse_error(self.pos(i), msg)
    }

    fn eof(&self) -> bool {
        self.i >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.i).copied()
    }

    fn skip(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.i += 1;
            } else if c == '#' || (c == '/' && self.src.get(self.i + 1) == Some(&'/')) {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.i += 1;
                }
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip();
        let n = s.chars().count();
        if self.src.len() >= self.i + n && self.src[self.i..self.i + n].iter().copied().eq(s.chars()) {
            self.i += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(self.error_at(self.i, format!("expected `{s}`, found {found}")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = self.i;
        while self.peek().is_some_and(&f) {
            self.i += 1;
        }
        self.src[start..self.i].iter().collect()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(self.error_at(self.i, "expected a name"));
        }
        Ok(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_'))
    }

    /// Identifier that may contain dashes (statement and job keywords).
    fn word(&mut self) -> Result<String> {
        self.skip();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.error_at(self.i, "expected a keyword"));
        }
        Ok(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-'))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip();
        let start = self.i;
        let neg = self.peek() == Some('-');
        if neg {
            self.i += 1;
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            self.i = start;
            return Err(self.error_at(start, "expected an integer"));
        }
        let v: i64 = digits.parse().map_err(|_| self.error_at(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// Raw expression text up to one of `stops` at parenthesis depth zero.
    fn expr(&mut self, stops: &[char]) -> Result<(String, Pos)> {
        self.skip();
        let start = self.i;
        let mut depth = 0i32;
        while let Some(c) = self.peek() {
            if depth == 0 && stops.contains(&c) {
                break;
            }
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ';' => break,
                _ => {}
            }
            self.i += 1;
        }
        let text: String = self.src[start..self.i].iter().collect();
        let text = text.trim().to_string();
        if text.is_empty() {
            return Err(self.error_at(start, "expected an expression"));
        }
        Ok((text, self.pos(start)))
    }

    fn declare(&self, sc: &mut Scenario, name: String, at: usize, v: Value) -> Result<()> {
        if sc.names.contains_key(&name) {
            return Err(self.error_at(at, format!("`{name}` is already defined")));
        }
        sc.order.push(name.clone());
        sc.names.insert(name, v);
        Ok(())
    }

    fn lookup_ring(&mut self, sc: &Scenario) -> Result<Ring> {
        self.skip();
        let at = self.i;
        let name = self.ident()?;
        sc.ring(&name).cloned().ok_or_else(|| self.error_at(at, format!("unknown ring `{name}`")))
    }

    fn ring_stmt(&mut self, sc: &mut Scenario) -> Result<()> {
        self.skip();
        let at = self.i;
        let name = self.ident()?;
        self.expect("=")?;
        self.expect("GF")?;
        self.expect("(")?;
        self.skip();
        let pat = self.i;
        let p = self.int()?;
        if !(2..1 << 16).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(self.error_at(pat, format!("{p} is not a supported prime")));
        }
        self.expect(")")?;
        self.expect("[")?;
        let mut vars: Vec<String> = Vec::new();
        loop {
            self.skip();
            let vat = self.i;
            let first = self.ident()?;
            if self.eat("..") {
                let last = self.ident()?;
                let range = var_range(&first, &last).ok_or_else(|| self.error_at(vat, format!("bad variable range {first}..{last}")))?;
                vars.extend(range);
            } else {
                vars.push(first);
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        if vars.len() > 16 {
            return Err(self.error_at(at, "at most 16 variables are supported"));
        }
        for (k, v) in vars.iter().enumerate() {
            if vars[..k].contains(v) {
                return Err(self.error_at(at, format!("variable `{v}` repeated")));
            }
        }
        let mut ring = Ring::polynomial(Fp::new(p as u32), &vars);
        if self.eat("/") {
            self.expect("(")?;
            let (text, pos) = self.expr(&[])?;
            let text = text.strip_suffix(')').map(str::to_string).ok_or_else(|| parse_error(pos, "unbalanced parentheses"))?;
            let q = parse_poly(&ring, &text, pos)?;
            ring = ring.quotient(&q).map_err(|e| parse_error(pos, e.to_string()))?;
        }
        self.expect(";")?;
        self.declare(sc, name, at, Value::Ring(ring))
    }

    fn cells(&mut self) -> Result<Vec<Vec<(String, Pos)>>> {
        self.expect("[")?;
        let mut rows = Vec::new();
        if self.eat("]") {
            return Ok(rows);
        }
        loop {
            self.expect("[")?;
            let mut row = Vec::new();
            if !self.eat("]") {
                loop {
                    row.push(self.expr(&[',', ']'])?);
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            rows.push(row);
            if self.eat("]") {
                break;
            }
            self.expect(",")?;
        }
        Ok(rows)
    }

    fn matrix_stmt(&mut self, sc: &mut Scenario) -> Result<()> {
        self.skip();
        let at = self.i;
        let name = self.ident()?;
        self.expect("over")?;
        self.skip();
        let rat = self.i;
        let ring_name = self.ident()?;
        let ring = sc.ring(&ring_name).cloned().ok_or_else(|| self.error_at(rat, format!("unknown ring `{ring_name}`")))?;
        let mut twists = None;
        if self.eat("twists") {
            self.expect("[")?;
            let mut t = Vec::new();
            if !self.eat("]") {
                loop {
                    t.push(self.int()? as i32);
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            twists = Some(t);
        }
        self.expect("=")?;
        self.skip();
        let body = self.i;
        let cells = self.cells()?;
        self.expect(";")?;
        if let Some(w) = cells.first().map(Vec::len) {
            if let Some((k, _)) = cells.iter().enumerate().find(|(_, r)| r.len() != w) {
                return Err(self.error_at(body, format!("row {} has {} entries, expected {w}", k + 1, cells[k].len())));
            }
        }
        let twists = twists.unwrap_or_else(|| vec![0; cells.len()]);
        if twists.len() != cells.len() {
            return Err(self.error_at(body, format!("{} twists for {} rows", twists.len(), cells.len())));
        }
        let matrix = build_matrix(&ring, &twists, &cells)?;
        let text = cells.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect();
        let idx = sc.matrices.len();
        sc.matrices.push(MatrixDecl { name: name.clone(), ring: ring_name, twists, text, matrix });
        self.declare(sc, name, at, Value::Matrix(idx))
    }

    fn map_stmt(&mut self, sc: &mut Scenario) -> Result<()> {
        self.skip();
        let at = self.i;
        let name = self.ident()?;
        self.expect(":")?;
        let src = self.lookup_ring(sc)?;
        self.expect("->")?;
        let tgt = self.lookup_ring(sc)?;
        let scale = if self.eat("scale") { self.int()? } else { 1 };
        if !(1..=8).contains(&scale) {
            return Err(self.error_at(at, format!("scale {scale} out of range")));
        }
        self.expect("=")?;
        self.expect("(")?;
        let mut images = Vec::new();
        loop {
            let (text, pos) = self.expr(&[',', ')'])?;
            images.push(parse_poly(&tgt, &text, pos)?);
            if self.eat(")") {
                break;
            }
            self.expect(",")?;
        }
        self.expect(";")?;
        if images.len() != src.nvars() {
            return Err(self.error_at(at, format!("{} images for {} variables", images.len(), src.nvars())));
        }
        let map = RingMap::new(src, tgt, images, scale as u32).map_err(|e| self.error_at(at, e.to_string()))?;
        let v = map.validate();
        if !v.valid {
            return Err(self.error_at(at, format!("map `{name}` is not well defined: {}", v.diagnostics.join("; "))));
        }
        self.declare(sc, name, at, Value::Map(map))
    }

    fn exterior_stmt(&mut self, sc: &mut Scenario) -> Result<()> {
        self.skip();
        let at = self.i;
        let name = self.ident()?;
        self.expect("=")?;
        let cells = self.cells()?;
        self.expect(";")?;
        let mut entries = Vec::new();
        for row in &cells {
            let mut out = Vec::new();
            for (text, pos) in row {
                out.push(ExteriorElement::parse(text).ok_or_else(|| parse_error(*pos, format!("bad exterior element `{text}`")))?);
            }
            entries.push(out);
        }
        if let Some(w) = entries.first().map(Vec::len) {
            if entries.iter().any(|r| r.len() != w) {
                return Err(self.error_at(at, "rows of different lengths"));
            }
        }
        let idx = sc.exteriors.len();
        sc.exteriors.push(ExteriorDecl { name: name.clone(), entries });
        self.declare(sc, name, at, Value::Exterior(idx))
    }

    fn module_stmt(&mut self, sc: &mut Scenario) -> Result<()> {
        self.skip();
        let at = self.i;
        let name = self.ident()?;
        self.expect("=")?;
        self.skip();
        let kat = self.i;
        let kind = match self.ident()?.as_str() {
            "coker" => ModuleKind::Coker,
            "image" => ModuleKind::Image,
            other => return Err(self.error_at(kat, format!("expected `coker` or `image`, found `{other}`"))),
        };
        self.skip();
        let mat = self.i;
        let matrix = self.ident()?;
        if sc.matrix(&matrix).is_none() {
            return Err(self.error_at(mat, format!("unknown matrix `{matrix}`")));
        }
        let twist = if self.eat("twist") { self.int()? as i32 } else { 0 };
        self.expect(";")?;
        let idx = sc.modules.len();
        sc.modules.push(ModuleDecl { name: name.clone(), kind, matrix, twist });
        self.declare(sc, name, at, Value::Module(idx))
    }

    fn job_stmt(&mut self, sc: &mut Scenario, start: usize) -> Result<()> {
        self.skip();
        let kat = self.i;
        let kind = self.word()?;
        let mut positional: Vec<(String, usize)> = Vec::new();
        let mut keys: HashMap<String, (String, usize)> = HashMap::new();
        loop {
            self.skip();
            if self.eat(";") {
                break;
            }
            if self.eof() {
                return Err(self.error_at(self.i, "expected `;`"));
            }
            let aat = self.i;
            let name = self.ident()?;
            if self.eat("=") {
                self.skip();
                let vat = self.i;
                let v = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-' || c == '.' || c == '_');
                if v.is_empty() {
                    return Err(self.error_at(vat, format!("missing value for `{name}`")));
                }
                keys.insert(name, (v, vat));
            } else {
                positional.push((name, aat));
            }
        }
        let job = JobParser { p: self, sc, kind: &kind, kat, positional, keys }.build()?;
        sc.jobs.push(JobEntry { pos: self.pos(start), job });
        Ok(())
    }
}

struct JobParser<'a> {
    p: &'a Parser,
    sc: &'a Scenario,
    kind: &'a str,
    kat: usize,
    positional: Vec<(String, usize)>,
    keys: HashMap<String, (String, usize)>,
}

impl JobParser<'_> {
    fn arity(&self, n: usize) -> Result<()> {
        if self.positional.len() != n {
            return Err(self.p.error_at(self.kat, format!("job `{}` takes {n} name(s), got {}", self.kind, self.positional.len())));
        }
        Ok(())
    }

    fn name(&self, k: usize, ok: impl Fn(&Value) -> bool, what: &str) -> Result<String> {
        let (name, at) = &self.positional[k];
        match self.sc.names.get(name) {
            None => Err(self.p.error_at(*at, format!("unknown name `{name}`"))),
            Some(v) if ok(v) => Ok(name.clone()),
            Some(_) => Err(self.p.error_at(*at, format!("`{name}` is not a {what}"))),
        }
    }

    fn target(&self, k: usize) -> Result<String> {
        self.name(k, |v| matches!(v, Value::Matrix(_) | Value::Module(_)), "module or matrix")
    }

    fn int_key(&mut self, key: &str) -> Result<Option<i64>> {
        match self.keys.remove(key) {
            None => Ok(None),
            Some((v, at)) => v.parse().map(Some).map_err(|_| self.p.error_at(at, format!("`{key}` expects an integer"))),
        }
    }

    fn window_key(&mut self) -> Result<Option<(i32, i32)>> {
        let Some((v, at)) = self.keys.remove("window") else { return Ok(None) };
        let bad = || self.p.error_at(at, format!("window `{v}` is not of the form lo..hi"));
        let (lo, hi) = v.split_once("..").ok_or_else(bad)?;
        let lo: i32 = lo.parse().map_err(|_| bad())?;
        let hi: i32 = hi.parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(Some((lo, hi)))
    }

    fn build(mut self) -> Result<Job> {
        let job = match self.kind {
            "gb" => {
                self.arity(1)?;
                Job::Gb { matrix: self.name(0, |v| matches!(v, Value::Matrix(_)), "matrix")? }
            }
            "res" => {
                self.arity(1)?;
                let length = self.int_key("length")?.unwrap_or(8).clamp(0, 32) as usize;
                Job::Res { target: self.target(0)?, length }
            }
            "coh" => {
                self.arity(1)?;
                Job::Coh { target: self.target(0)?, window: self.window_key()? }
            }
            "chern" => {
                self.arity(1)?;
                let rank = self.int_key("rank")?.ok_or_else(|| self.p.error_at(self.kat, "job `chern` needs rank=<r>"))?;
                Job::Chern { target: self.target(0)?, rank }
            }
            "bbw" => {
                self.arity(0)?;
                let a = self.int_key("a")?.unwrap_or(0);
                let b = self.int_key("b")?.unwrap_or(0);
                Job::Bbw { weight: Weight::new(a, b), window: self.window_key()?.unwrap_or((-5, 3)) }
            }
            "monad" => {
                self.arity(2)?;
                let beta = self.name(0, |v| matches!(v, Value::Exterior(_)), "exterior matrix")?;
                let alpha = self.name(1, |v| matches!(v, Value::Exterior(_)), "exterior matrix")?;
                let rows = self.sc.exterior(&beta).map_or(0, |b| b.len());
                let right = self.int_key("right")?.unwrap_or(rows as i64).max(0) as usize;
                Job::Monad { beta, alpha, right }
            }
            "pushforward" => {
                self.arity(2)?;
                let map = self.name(0, |v| matches!(v, Value::Map(_)), "map")?;
                let bound = self.int_key("bound")?.unwrap_or(10) as i32;
                Job::Pushforward { map, target: self.target(1)?, bound }
            }
            "verify-paper" | "verify" => {
                self.arity(0)?;
                let profile = match self.keys.remove("profile") {
                    None => Profile::Quick,
                    Some((v, at)) => v.parse().map_err(|e: String| self.p.error_at(at, e))?,
                };
                Job::Verify { profile }
            }
            other => return Err(self.p.error_at(self.kat, format!("unknown job kind `{other}`"))),
        };
        if let Some((k, (_, at))) = self.keys.iter().next() {
            return Err(self.p.error_at(*at, format!("unexpected argument `{k}` for job `{}`", self.kind)));
        }
        Ok(job)
    }
}

fn var_range(first: &str, last: &str) -> Option<Vec<String>> {
    let split = |s: &str| {
        let d = s.len() - s.chars().rev().take_while(char::is_ascii_digit).count();
        let (p, n) = s.split_at(d);
        Some((p.to_string(), n.parse::<usize>().ok()?))
    };
    let (p, a) = split(first)?;
    let (q, b) = split(last)?;
    if p != q || p.is_empty() || a > b {
        return None;
    }
    Some((a..=b).map(|i| format!("{p}{i}")).collect())
}

fn parse_poly(ring: &Ring, text: &str, pos: Pos) -> Result<Poly> {
    ring.parse(text).map_err(|e| parse_error(pos, format!("in `{text}`: {e}")))
}

/// Parses the cells and infers column degrees; a cell whose degree disagrees
/// with its column is reported by (row, column), counted from 1.
fn build_matrix(ring: &Ring, twists: &[i32], cells: &[Vec<(String, Pos)>]) -> Result<GradedMatrix> {
    let ncols = cells.first().map_or(0, Vec::len);
    let mut rows = Vec::new();
    for row in cells {
        let mut out = Vec::new();
        for (text, pos) in row {
            out.push(parse_poly(ring, text, *pos)?);
        }
        rows.push(out);
    }
    let mut col_degrees = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let mut deg: Option<i32> = None;
        for (i, row) in rows.iter().enumerate() {
            let p = &row[j];
            if p.is_zero() {
                continue;
            }
            let (_, pos) = &cells[i][j];
            let Some(d) = p.degree().filter(|_| p.is_homogeneous()) else {
                return Err(parse_error(*pos, format!("entry ({},{}) is not homogeneous", i + 1, j + 1)));
            };
            let d = d + twists[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(parse_error(
                        *pos,
                        format!("entry ({},{}) has degree {}, expected {} for its column", i + 1, j + 1, d - twists[i], e - twists[i]),
                    ))
                }
                _ => {}
            }
        }
        col_degrees.push(deg.unwrap_or(0));
    }
    Ok(GradedMatrix::from_rows(ring, twists.to_vec(), col_degrees, rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        assert!(parse_scenario("").unwrap().is_empty());
        assert!(parse_scenario("  # only a comment\n// another\n").unwrap().is_empty());
    }

    #[test]
    fn rings_and_ranges() {
        let sc = parse_scenario("ring R = GF(2)[a, x0..x2, b];\nring Q = GF(3)[u, v] / (u^2 - v^2);").unwrap();
        assert_eq!(sc.ring("R").unwrap().var_names(), &["a", "x0", "x1", "x2", "b"]);
        assert_eq!(sc.ring("Q").unwrap().characteristic(), 3);
        assert!(sc.ring("Q").unwrap().relation().is_some());
    }

    #[test]
    fn wrong_degree_names_the_cell() {
        let text = "ring R = GF(2)[x, y];\nmatrix M over R = [[x, y],\n  [x*y, x]];";
        let err = parse_scenario(text).unwrap_err();
        let CliError::Parse { line, col, msg } = err else { panic!("{err}") };
        assert_eq!((line, col), (3, 4));
        assert!(msg.contains("entry (2,1)"), "{msg}");
    }

    #[test]
    fn twists_shift_column_degrees() {
        let sc = parse_scenario("ring R = GF(2)[x, y];\nmatrix M over R twists [0, 1] = [[x^2, y], [x, 1]];").unwrap();
        assert_eq!(sc.matrix("M").unwrap().col_degrees(), &[2, 1]);
    }

    #[test]
    fn dangling_names_are_rejected() {
        let err = parse_scenario("ring R = GF(2)[x];\njob coh N;").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, col: 9, .. }), "{err}");
        assert!(parse_scenario("matrix M over S = [[1]];").is_err());
        assert!(parse_scenario("ring R = GF(2)[x];\nring R = GF(2)[y];").is_err());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_scenario("ring R = GF(4)[x];").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, col: 13, .. }), "{err}");
        let err = parse_scenario("ring R = GF(2)[x]\nmatrix").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, col: 1, .. }), "{err}");
        assert!(parse_scenario("ring R = GF(2)[x];\nmatrix M over R = [[x+x^2]];").is_err());
        assert!(parse_scenario("frobnicate;").is_err());
    }

    #[test]
    fn maps_and_jobs() {
        let text = "\
ring P = GF(2)[x0..x1];
ring Q = GF(2)[z0..z2] / (z0^2 + z1*z2);
map g : P -> Q = (z1, z2);
matrix M over Q = [[z0, z1]];
module N = coker M twist 1;
exterior b = [[e0, e1*e2], [0, 1]];
job pushforward g N bound=6;
job coh N window=-2..2;
job bbw a=0 b=1;
job verify-paper profile=full;
";
        let sc = parse_scenario(text).unwrap();
        assert_eq!(sc.jobs.len(), 4);
        assert_eq!(sc.jobs[1].job, Job::Coh { target: "N".into(), window: Some((-2, 2)) });
        assert_eq!(sc.jobs[3].job, Job::Verify { profile: Profile::Full });
        assert_eq!(sc.jobs[0].pos, Pos { line: 7, col: 1 });
        assert_eq!(sc.module("N").unwrap().generator_degrees(), &[-1]);
        assert!(parse_scenario(&text.replace("(z1, z2)", "(z1, z1*z2)")).is_err());
        assert!(parse_scenario(&text.replace("bound=6", "bound=six")).is_err());
        assert!(parse_scenario(&text.replace("job bbw a=0 b=1", "job bbw c=1")).is_err());
    }

    #[test]
    fn editing_a_cell_rechecks_degrees() {
        let mut sc = parse_scenario("ring R = GF(2)[x, y];\nmatrix M over R = [[x, y]];").unwrap();
        sc.set_entry("M", 0, 1, "0").unwrap();
        assert!(sc.matrix("M").unwrap().entry(0, 1).is_zero());
        assert_eq!(sc.matrix_decl("M").unwrap().text[0][1], "0");
        assert!(sc.set_entry("M", 0, 1, "x*y+x").is_err());
        assert!(sc.set_entry("M", 3, 0, "x").is_err());
    }
}
