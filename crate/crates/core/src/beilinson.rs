//! Twisted cotangent bundles `Omega^i(i)` on P^5, exterior algebra elements
//! as maps between them, and cohomology of Beilinson-type monads.
//!
//! `Omega^i(i)` is the kernel of the Koszul differential
//! `d_i: wedge^i V (x) O -> wedge^(i-1) V (x) O(1)`, `e_J -> sum_{l in J} x_l e_{J-l}`.
//! An exterior element `e_I` of degree `i - j` acts by contraction
//! `e_J -> e_{J-I}` (zero unless `I` is contained in `J`); in characteristic 2
//! no signs appear and contraction commutes with `d`.

use std::fmt;

use crate::error::{Error, Result};
use crate::module::{hilbert_polynomial, image, subquotient, syzygies, GradedMatrix, GradedModule};
use crate::ring::{standard, ExteriorElement, Poly, Ring};

/// Number of homogeneous coordinates of P^5.
pub const RANK_V: usize = 6;

/// Basis of `wedge^k V` as bitmasks, in increasing order.
pub fn wedge_basis(k: usize) -> Vec<u16> {
    (0u16..1 << RANK_V).filter(|m| m.count_ones() as usize == k).collect()
}

fn check_index(i: usize) -> Result<()> {
    if i > RANK_V - 1 {
        return Err(Error::OutOfRange(format!("Omega^{i} on P^5")));
    }
    Ok(())
}

/// Koszul differential `wedge^k V (x) S -> wedge^(k-1) V (x) S(1)` over `ring`.
pub fn koszul_differential(ring: &Ring, k: usize) -> GradedMatrix {
    let rows = if k == 0 { Vec::new() } else { wedge_basis(k - 1) };
    let cols = wedge_basis(k);
    let mut out: Vec<Vec<Poly>> = Vec::with_capacity(cols.len());
    for &j in &cols {
        let col = rows
            .iter()
            .map(|&r| {
                let diff = j & !r;
                if r & !j == 0 && diff.count_ones() == 1 {
                    ring.var(diff.trailing_zeros() as usize)
                } else {
                    ring.zero()
                }
            })
            .collect();
        out.push(col);
    }
    GradedMatrix::from_columns(ring, vec![-1; rows.len()], vec![0; cols.len()], out).expect("koszul matrix")
}

/// Generators of `Omega^i(i)` inside `wedge^i V (x) S`: the columns of the
/// next Koszul differential (identity for `i = 0`).
fn omega_generators(ring: &Ring, i: usize) -> GradedMatrix {
    if i == 0 {
        GradedMatrix::identity(ring, vec![0])
    } else {
        koszul_differential(ring, i + 1).shift(1)
    }
}

/// Graded module of `Omega^i(i)` on P^5, generated by `wedge^(i+1) V` in
/// degree 1 (degree 0 for `i = 0`).
pub fn omega_module(i: usize) -> Result<GradedModule> {
    check_index(i)?;
    let ring = standard::p5();
    if i == 0 {
        return Ok(GradedModule::free(&ring, vec![0]));
    }
    Ok(GradedModule::coker(koszul_differential(&ring, i + 2).shift(2)))
}

/// Contraction by `x` as a constant matrix `wedge^i V (x) S -> wedge^j V (x) S`,
/// restricting to the map `Omega^i(i) -> Omega^j(j)`.
pub fn exterior_to_map(x: &ExteriorElement, i: usize, j: usize) -> Result<GradedMatrix> {
    check_index(i)?;
    check_index(j)?;
    if j > i {
        return Err(Error::Dimension(format!("no contraction from Omega^{i} to Omega^{j}")));
    }
    if !x.is_zero() && x.degree() != Some((i - j) as u32) {
        return Err(Error::Dimension(format!("element {x} does not have degree {}", i - j)));
    }
    contraction(&standard::p5(), x, i, j)
}

fn contraction(ring: &Ring, x: &ExteriorElement, i: usize, j: usize) -> Result<GradedMatrix> {
    let rows = wedge_basis(j);
    let cols = wedge_basis(i);
    let mut out = Vec::with_capacity(cols.len());
    for &c in &cols {
        let mut col = vec![ring.zero(); rows.len()];
        for &m in x.terms() {
            if m & c == m {
                let r = rows.binary_search(&(c & !m)).expect("basis element");
                col[r] = col[r].add(&ring.one());
            }
        }
        out.push(col);
    }
    GradedMatrix::from_columns(ring, vec![0; rows.len()], vec![0; cols.len()], out)
}

/// Summand of a monad term. Only bundles of the form `Omega^i(i)` are
/// supported; `O` and `O(-1)` are `Omega^0(0)` and `Omega^5(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    Omega(usize),
    Line(i32),
}

impl Summand {
    pub fn omega_index(&self) -> Result<usize> {
        match *self {
            Summand::Omega(i) => {
                check_index(i)?;
                Ok(i)
            }
            Summand::Line(0) => Ok(0),
            Summand::Line(-1) => Ok(RANK_V - 1),
            Summand::Line(d) => Err(Error::Diagnostic(format!("O({d}) is not a twisted cotangent bundle"))),
        }
    }

    pub fn rank(&self) -> Result<u64> {
        Ok(crate::ring::binomial(RANK_V as u64 - 1, self.omega_index()? as u64))
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Omega(0) | Summand::Line(0) => write!(f, "O"),
            Summand::Omega(i) => write!(f, "Omega^{i}({i})"),
            Summand::Line(d) => write!(f, "O({d})"),
        }
    }
}

/// `left --alpha--> mid --beta--> right`, maps given by exterior elements;
/// `alpha[r][c]` maps `left[c]` to `mid[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadSpec {
    pub left: Vec<Summand>,
    pub mid: Vec<Summand>,
    pub right: Vec<Summand>,
    pub alpha: Vec<Vec<ExteriorElement>>,
    pub beta: Vec<Vec<ExteriorElement>>,
}

/// Summand types determined from the degrees of the map entries.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub spec: MonadSpec,
    /// Columns of the raw `alpha` kept, in order.
    pub alpha_columns: Vec<usize>,
    pub diagnostics: Vec<String>,
}

fn column_source(col: &[ExteriorElement], targets: &[usize], name: &str, c: usize) -> Result<Option<usize>> {
    let mut src = None;
    for (r, x) in col.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let d = x.degree().ok_or_else(|| Error::Diagnostic(format!("{name}[{r}][{c}] is not homogeneous")))?;
        let s = targets[r] + d as usize;
        if src.is_some_and(|p| p != s) {
            return Err(Error::Diagnostic(format!("{name} column {c} has inconsistent entry degrees")));
        }
        src = Some(s);
    }
    Ok(src)
}

/// Reads off the middle and left terms from `right` and the entry degrees of
/// `beta` and `alpha`: an entry of degree `k` from `Omega^i(i)` lands in
/// `Omega^(i-k)(i-k)`. Columns of `alpha` whose source would be `Omega^6`
/// (zero on P^5) are dropped with a diagnostic.
pub fn assign_summands(right: Vec<Summand>, beta: Vec<Vec<ExteriorElement>>, alpha: Vec<Vec<ExteriorElement>>) -> Result<Assignment> {
    let rt: Vec<usize> = right.iter().map(|s| s.omega_index()).collect::<Result<_>>()?;
    if beta.len() != rt.len() {
        return Err(Error::Dimension("beta rows do not match the right term".into()));
    }
    let nmid = beta.first().map_or(0, |r| r.len());
    let mut mid = Vec::new();
    let mut mt = Vec::new();
    for c in 0..nmid {
        let col: Vec<ExteriorElement> = beta.iter().map(|r| r[c].clone()).collect();
        let s = column_source(&col, &rt, "beta", c)?
            .ok_or_else(|| Error::Diagnostic(format!("beta column {c} is zero; its summand is undetermined")))?;
        check_index(s)?;
        mt.push(s);
        mid.push(Summand::Omega(s));
    }
    if alpha.len() != nmid {
        return Err(Error::Dimension("alpha rows do not match the middle term".into()));
    }
    let nleft = alpha.first().map_or(0, |r| r.len());
    let mut left = Vec::new();
    let mut keep = Vec::new();
    let mut diagnostics = Vec::new();
    for c in 0..nleft {
        let col: Vec<ExteriorElement> = alpha.iter().map(|r| r[c].clone()).collect();
        match column_source(&col, &mt, "alpha", c)? {
            None => diagnostics.push(format!("alpha column {c} is zero and was dropped")),
            Some(s) if s >= RANK_V => {
                diagnostics.push(format!("alpha column {c} would map from Omega^{s}({s}) = 0 and was dropped"));
            }
            Some(s) => {
                keep.push(c);
                left.push(if s == RANK_V - 1 { Summand::Line(-1) } else { Summand::Omega(s) });
            }
        }
    }
    let alpha = alpha.iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect();
    let right = right.into_iter().map(|s| if s.omega_index() == Ok(0) { Summand::Line(0) } else { s }).collect();
    Ok(Assignment { spec: MonadSpec { left, mid, right, alpha, beta }, alpha_columns: keep, diagnostics })
}

/// Block matrix of contractions between the ambient free modules of two terms.
fn block_map(ring: &Ring, entries: &[Vec<ExteriorElement>], from: &[usize], to: &[usize]) -> Result<GradedMatrix> {
    let mut rows: Option<GradedMatrix> = None;
    for (r, &j) in to.iter().enumerate() {
        let mut row: Option<GradedMatrix> = None;
        for (c, &i) in from.iter().enumerate() {
            let x = &entries[r][c];
            if !x.is_zero() && (i < j || x.degree() != Some((i - j) as u32)) {
                return Err(Error::Diagnostic(format!("entry ({r},{c}) = {x} cannot map Omega^{i} to Omega^{j}")));
            }
            let m = if i < j {
                GradedMatrix::zero(ring, vec![0; wedge_basis(j).len()], vec![0; wedge_basis(i).len()])
            } else {
                contraction(ring, x, i, j)?
            };
            row = Some(match row {
                None => m,
                Some(p) => p.hstack(&m)?,
            });
        }
        let row = row.unwrap_or_else(|| GradedMatrix::zero(ring, vec![0; wedge_basis(j).len()], Vec::new()));
        rows = Some(match rows {
            None => row,
            Some(p) => p.vstack(&row)?,
        });
    }
    Ok(rows.unwrap_or_else(|| {
        let cols = from.iter().map(|&i| wedge_basis(i).len()).sum();
        GradedMatrix::zero(ring, Vec::new(), vec![0; cols])
    }))
}

fn block_diagonal(parts: Vec<GradedMatrix>, ring: &Ring) -> Result<GradedMatrix> {
    let mut acc = GradedMatrix::zero(ring, Vec::new(), Vec::new());
    for p in parts {
        acc = acc.direct_sum(&p)?;
    }
    Ok(acc)
}

/// Evidence that a [`MonadSpec`] is a monad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadCertificate {
    /// Entries of `beta * alpha` computed in the exterior algebra.
    pub composite: Vec<Vec<ExteriorElement>>,
    pub composite_zero: bool,
    pub beta_surjective: bool,
    pub alpha_injective: bool,
    /// `rank(mid) - rank(left) - rank(right)`.
    pub expected_rank: i64,
}

impl MonadCertificate {
    pub fn holds(&self) -> bool {
        self.composite_zero && self.beta_surjective && self.alpha_injective
    }
}

struct Realized {
    /// Generators of the middle term in its ambient free module.
    mid_gens: GradedMatrix,
    /// `d` on the middle ambient stacked over `beta`.
    mid_kernel_eqs: GradedMatrix,
    beta: GradedMatrix,
    /// Generators of the left term and their images under `alpha`.
    left_gens: GradedMatrix,
    alpha_image: GradedMatrix,
}

fn realize(m: &MonadSpec) -> Result<Realized> {
    let ring = standard::p5();
    let idx = |v: &[Summand]| -> Result<Vec<usize>> { v.iter().map(|s| s.omega_index()).collect() };
    let (li, mi, ri) = (idx(&m.left)?, idx(&m.mid)?, idx(&m.right)?);
    if m.alpha.len() != mi.len() || m.alpha.iter().any(|r| r.len() != li.len()) {
        return Err(Error::Dimension("alpha has the wrong shape".into()));
    }
    if m.beta.len() != ri.len() || m.beta.iter().any(|r| r.len() != mi.len()) {
        return Err(Error::Dimension("beta has the wrong shape".into()));
    }
    let alpha = block_map(&ring, &m.alpha, &li, &mi)?;
    let beta = block_map(&ring, &m.beta, &mi, &ri)?;
    let mid_gens = block_diagonal(mi.iter().map(|&i| omega_generators(&ring, i)).collect(), &ring)?;
    let left_gens = block_diagonal(li.iter().map(|&i| omega_generators(&ring, i)).collect(), &ring)?;
    let mid_d = block_diagonal(mi.iter().map(|&i| koszul_differential(&ring, i)).collect(), &ring)?;
    let mid_kernel_eqs = mid_d.vstack(&beta)?;
    let alpha_image = alpha.compose(&left_gens)?;
    Ok(Realized { mid_gens, mid_kernel_eqs, beta, left_gens, alpha_image })
}

/// Checks `beta alpha = 0` in the exterior algebra, surjectivity of `beta`
/// and injectivity of `alpha` as sheaf maps (by Hilbert polynomials).
pub fn check_monad(m: &MonadSpec) -> Result<MonadCertificate> {
    let r = realize(m)?;
    let mut composite = Vec::new();
    for brow in &m.beta {
        let mut row = Vec::new();
        for c in 0..m.left.len() {
            let mut acc = ExteriorElement::zero();
            for (k, b) in brow.iter().enumerate() {
                acc = acc.add(&b.mul(&m.alpha[k][c]));
            }
            row.push(acc);
        }
        composite.push(row);
    }
    let composite_zero = composite.iter().flatten().all(|x| x.is_zero());
    let beta_img = r.beta.compose(&r.mid_gens)?;
    let cok = GradedModule::coker(beta_img);
    let beta_surjective = hilbert_polynomial(&cok)?.is_zero();
    let alpha_injective = if r.left_gens.ncols() == 0 {
        true
    } else {
        hilbert_polynomial(&image(&r.alpha_image)?)? == hilbert_polynomial(&image(&r.left_gens)?)?
    };
    let rank = |v: &[Summand]| -> Result<i64> { v.iter().map(|s| s.rank().map(|x| x as i64)).sum() };
    let expected_rank = rank(&m.mid)? - rank(&m.left)? - rank(&m.right)?;
    Ok(MonadCertificate { composite, composite_zero, beta_surjective, alpha_injective, expected_rank })
}

/// `ker(beta) / im(alpha)` as a graded module over `S(P^5)`.
pub fn monad_cohomology(m: &MonadSpec) -> Result<GradedModule> {
    let cert = check_monad(m)?;
    if !cert.composite_zero {
        let bad: Vec<String> = cert
            .composite
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(c, x)| format!("({r},{c}) = {x}")))
            .collect();
        return Err(Error::Diagnostic(format!("beta * alpha is nonzero: {}", bad.join(", "))));
    }
    if !cert.beta_surjective {
        return Err(Error::Diagnostic("beta is not surjective".into()));
    }
    if !cert.alpha_injective {
        return Err(Error::Diagnostic("alpha is not injective".into()));
    }
    let r = realize(m)?;
    let kernel_gens = if r.mid_kernel_eqs.nrows() == 0 {
        GradedMatrix::identity(m_ring(&r), r.mid_kernel_eqs.col_degrees().to_vec())
    } else {
        syzygies(&r.mid_kernel_eqs)?
    };
    subquotient(&kernel_gens, &r.alpha_image)?.prune()
}

fn m_ring(r: &Realized) -> &Ring {
    r.mid_gens.ring()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheafcoh::SheafCohomology;

    fn e(s: &str) -> ExteriorElement {
        ExteriorElement::parse(s).unwrap()
    }

    #[test]
    fn koszul_is_a_complex() {
        let r = standard::p5();
        for k in 1..RANK_V {
            let c = koszul_differential(&r, k).compose(&koszul_differential(&r, k + 1).shift(1)).unwrap();
            assert!(c.is_zero(), "d{k} d{}", k + 1);
        }
    }

    #[test]
    fn omega_ranks_and_sections() {
        for i in 0..RANK_V {
            let m = omega_module(i).unwrap();
            let hp = hilbert_polynomial(&m).unwrap();
            let rank = hp.coeff(5) * crate::numeric::q(120);
            assert_eq!(rank, crate::numeric::q(crate::ring::binomial(5, i as u64) as i64), "rank of Omega^{i}");
        }
        let o1 = omega_module(1).unwrap();
        let sc = SheafCohomology::new(&o1).unwrap();
        assert_eq!(sc.h(0, 0), 0);
        assert_eq!(sc.h(0, -1), 0);
        assert_eq!(sc.h(0, 1), 15);
        assert!(omega_module(6).is_err());
    }

    #[test]
    fn contraction_basis_case() {
        let m = exterior_to_map(&e("e0"), 1, 0).unwrap();
        assert_eq!(m.nrows(), 1);
        assert_eq!(m.ncols(), 6);
        let r = standard::p5();
        assert_eq!(m.entry(0, 0), &r.one());
        assert!((1..6).all(|c| m.entry(0, c).is_zero()));
        assert!(exterior_to_map(&e("e0*e1"), 1, 0).is_err());
    }

    #[test]
    fn contraction_is_functorial() {
        for a in 0..RANK_V {
            for b in 0..RANK_V {
                let ea = ExteriorElement::generator(a);
                let eb = ExteriorElement::generator(b);
                let m1 = exterior_to_map(&ea, 1, 0).unwrap();
                let m2 = exterior_to_map(&eb, 2, 1).unwrap();
                let prod = exterior_to_map(&ea.mul(&eb), 2, 0).unwrap();
                assert_eq!(m1.compose(&m2).unwrap(), prod);
            }
        }
    }

    #[test]
    fn contraction_commutes_with_koszul() {
        let r = standard::p5();
        let x = e("e0*e3+e1*e4+e2*e5");
        let phi = exterior_to_map(&x, 3, 1).unwrap();
        let psi = exterior_to_map(&x, 2, 0).unwrap();
        let lhs = koszul_differential(&r, 1).compose(&phi).unwrap();
        let rhs = psi.shift(-1).compose(&koszul_differential(&r, 3)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trivial_monad() {
        let spec = MonadSpec {
            left: vec![],
            mid: vec![Summand::Line(0)],
            right: vec![],
            alpha: vec![vec![]],
            beta: vec![],
        };
        let m = monad_cohomology(&spec).unwrap();
        assert_eq!(m.generator_degrees(), &[0]);
        assert_eq!(m.hilbert_function(3), 56);
    }

    #[test]
    fn euler_sequence_monad() {
        // a monad with a single middle term is that term
        let spec = MonadSpec {
            left: vec![],
            mid: vec![Summand::Omega(1)],
            right: vec![],
            alpha: vec![vec![]],
            beta: vec![],
        };
        let m = monad_cohomology(&spec).unwrap();
        assert_eq!(hilbert_polynomial(&m).unwrap(), hilbert_polynomial(&omega_module(1).unwrap()).unwrap());
    }

    #[test]
    fn nonzero_composite_is_reported() {
        let spec = MonadSpec {
            left: vec![Summand::Omega(2)],
            mid: vec![Summand::Omega(1)],
            right: vec![Summand::Line(0)],
            alpha: vec![vec![e("e0")]],
            beta: vec![vec![e("e1")]],
        };
        let err = monad_cohomology(&spec).unwrap_err();
        assert!(err.to_string().contains("(0,0)"), "{err}");
    }
}
