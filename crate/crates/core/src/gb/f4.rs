//! Homogeneous Groebner basis computation for submodules of graded free
//! modules, processed degree by degree with batched (F4-style) reduction.
//!
//! Optionally tracks representations: generator `j` is extended by a unit
//! vector in an extra component, so that rows whose original part reduces
//! to zero yield syzygies of the generators.

use rustc_hash::{FxHashMap, FxHashSet};

use super::order::{FreeModule, OrderContext, Stage, Term};
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::ring::{Fp, Monomial};

#[derive(Clone, Debug)]
pub struct GbProblem {
    pub ctx: OrderContext,
    pub field: Fp,
    /// Elements of the submodule that are not counted as generators
    /// (e.g. multiples of a ring relation). Never tracked.
    pub background: Vec<Vector>,
    pub generators: Vec<Vector>,
    pub track: bool,
    pub product_criterion: bool,
    /// Stop after this degree.
    pub max_degree: Option<i32>,
}

impl GbProblem {
    pub fn new(ctx: OrderContext, field: Fp, generators: Vec<Vector>) -> Self {
        GbProblem {
            ctx,
            field,
            background: Vec::new(),
            generators,
            track: false,
            product_criterion: true,
            max_degree: None,
        }
    }

    pub fn with_background(mut self, background: Vec<Vector>) -> Self {
        self.background = background;
        self
    }

    pub fn tracked(mut self) -> Self {
        self.track = true;
        self.product_criterion = false;
        self
    }

    pub fn up_to(mut self, d: Option<i32>) -> Self {
        self.max_degree = d;
        self
    }
}

#[derive(Clone, Debug)]
pub struct GbResult {
    /// Context of the basis elements (extended by tracking components if tracked).
    pub ctx: OrderContext,
    /// Rank of the original free module.
    pub rank: usize,
    pub basis: Vec<Vector>,
    /// Indices of generators that are not in the submodule generated by
    /// the background, the lower-degree part and earlier generators.
    pub minimal: Vec<usize>,
    /// Generators of the syzygy module of the minimal generators (tracked
    /// runs only); component `j` refers to generator `j`.
    pub syzygies: Vec<Vector>,
    /// For each redundant generator `j` (tracked runs only), a relation
    /// expressing it through the minimal ones; with `syzygies` these generate
    /// all syzygies of the full generating set.
    pub dependencies: Vec<(usize, Vector)>,
    /// Twists of the syzygy components (the generator degrees).
    pub syzygy_module: FreeModule,
    /// False when the computation stopped at `max_degree` with work left.
    pub complete: bool,
}

impl GbResult {
    /// Basis elements restricted to the original components.
    pub fn basis_untracked(&self) -> Vec<Vector> {
        let r = self.rank as u32;
        self.basis
            .iter()
            .map(|v| Vector { terms: v.terms.iter().filter(|t| t.0 .1 < r).copied().collect() })
            .collect()
    }

    pub fn leads(&self) -> Vec<Term> {
        self.basis.iter().filter_map(|v| v.lead()).collect()
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    deg: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Background,
    Pair,
    Generator(usize),
}

enum Source {
    Raw(Vector),
    Multiple(Monomial, usize),
}

fn signature(m: Monomial) -> u64 {
    let mut s = 0u64;
    for i in 0..Monomial::MAX_VARS {
        let e = m.exponent(i);
        if e > 0 {
            s |= 1 << i;
        }
        if e > 1 {
            s |= 1 << (16 + i);
        }
        if e > 3 {
            s |= 1 << (32 + i);
        }
    }
    s
}

struct Engine {
    ctx: OrderContext,
    field: Fp,
    nf: u32,
    basis: Vec<Vector>,
    leads: Vec<Term>,
    sigs: Vec<u64>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    product: bool,
}

pub fn compute(problem: &GbProblem) -> Result<GbResult> {
    let field = problem.field;
    let rank = problem.ctx.module.rank();
    let mut ctx = problem.ctx.clone();
    let mut gens: Vec<Vector> = problem.generators.clone();
    for (i, g) in gens.iter().enumerate() {
        if !g.is_homogeneous(&ctx) {
            return Err(Error::Diagnostic(format!("generator {i} is not homogeneous")));
        }
        if g.terms.iter().any(|t| t.0 .1 as usize >= rank) {
            return Err(Error::OutOfRange(format!("generator {i} has a component beyond rank {rank}")));
        }
    }
    for (i, g) in problem.background.iter().enumerate() {
        if !g.is_homogeneous(&ctx) {
            return Err(Error::Diagnostic(format!("background element {i} is not homogeneous")));
        }
    }
    let mut syz_module = FreeModule::new(Vec::new());
    if problem.track {
        if ctx.order.stages.first() != Some(&Stage::Group) {
            ctx.order.stages.insert(0, Stage::Group);
        }
        let low = ctx.module.groups.iter().copied().min().unwrap_or(0) - 1;
        for (j, g) in gens.iter_mut().enumerate() {
            let d = g.degree(&problem.ctx).unwrap_or(0);
            let c = ctx.module.push(d, low);
            syz_module.push(d, 0);
            g.terms.push(((Monomial::ONE, c), 1));
            debug_assert_eq!(c as usize, rank + j);
        }
    }

    let mut engine = Engine {
        ctx: ctx.clone(),
        field,
        nf: rank as u32,
        basis: Vec::new(),
        leads: Vec::new(),
        sigs: Vec::new(),
        by_comp: vec![Vec::new(); ctx.module.rank()],
        pairs: Vec::new(),
        // coprime leads only certify a zero reduction for ideals
        product: problem.product_criterion && !problem.track && rank == 1,
    };

    let mut pending_gens: Vec<(i32, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(j, _)| !problem.generators[*j].is_zero())
        .map(|(j, g)| (g.degree(&ctx).unwrap(), j))
        .collect();
    pending_gens.sort();
    let mut pending_bg: Vec<(i32, usize)> = problem
        .background
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(j, g)| (g.degree(&ctx).unwrap(), j))
        .collect();
    pending_bg.sort();

    let mut minimal = Vec::new();
    let mut syzygies = Vec::new();
    let mut dependencies = Vec::new();
    if problem.track {
        for (j, g) in problem.generators.iter().enumerate() {
            if g.is_zero() {
                dependencies.push((j, Vector { terms: vec![((Monomial::ONE, j as u32), 1)] }));
            }
        }
    }
    let (mut gi, mut bi) = (0, 0);
    let mut complete = true;
    loop {
        let mut next = i32::MAX;
        if let Some(p) = engine.pairs.iter().map(|p| p.deg).min() {
            next = next.min(p);
        }
        if gi < pending_gens.len() {
            next = next.min(pending_gens[gi].0);
        }
        if bi < pending_bg.len() {
            next = next.min(pending_bg[bi].0);
        }
        if next == i32::MAX {
            break;
        }
        if let Some(m) = problem.max_degree {
            if next > m {
                complete = false;
                break;
            }
        }
        let d = next;
        let mut rows: Vec<(Source, Kind)> = Vec::new();
        while bi < pending_bg.len() && pending_bg[bi].0 == d {
            rows.push((Source::Raw(problem.background[pending_bg[bi].1].clone()), Kind::Background));
            bi += 1;
        }
        let (now, later): (Vec<Pair>, Vec<Pair>) = engine.pairs.iter().partition(|p| p.deg == d);
        engine.pairs = later;
        let mut seen_mult: FxHashSet<(Monomial, usize)> = FxHashSet::default();
        for p in &now {
            for k in [p.i, p.j] {
                let m = p.lcm.div(engine.leads[k].0);
                if seen_mult.insert((m, k)) {
                    rows.push((Source::Multiple(m, k), Kind::Pair));
                }
            }
        }
        while gi < pending_gens.len() && pending_gens[gi].0 == d {
            let j = pending_gens[gi].1;
            rows.push((Source::Raw(gens[j].clone()), Kind::Generator(j)));
            gi += 1;
        }
        let out = engine.reduce_degree(rows);
        for (v, kind) in out {
            let lead = v.lead().unwrap();
            if lead.1 < engine.nf {
                if let Kind::Generator(j) = kind {
                    minimal.push(j);
                }
                engine.insert(v);
            } else {
                let r = engine.nf;
                let terms = v.terms.iter().map(|&((m, c), a)| ((m, c - r), a)).collect();
                match kind {
                    Kind::Generator(j) => dependencies.push((j, Vector { terms })),
                    _ => syzygies.push(Vector { terms }),
                }
            }
        }
    }
    minimal.sort();
    Ok(GbResult {
        ctx,
        rank,
        basis: engine.basis,
        minimal,
        syzygies,
        dependencies,
        syzygy_module: syz_module,
        complete,
    })
}

impl Engine {
    fn find_reducer(&self, t: Term) -> Option<usize> {
        let list = self.by_comp.get(t.1 as usize)?;
        if list.is_empty() {
            return None;
        }
        let sig = signature(t.0);
        list.iter().copied().find(|&g| self.sigs[g] & !sig == 0 && self.leads[g].0.divides(t.0))
    }

    /// Builds and reduces the matrix for one degree. Returns the reduced rows
    /// that produced new pivots, with their origin.
    fn reduce_degree(&mut self, rows: Vec<(Source, Kind)>) -> Vec<(Vector, Kind)> {
        // symbolic preprocessing
        let mut seen: FxHashSet<Term> = FxHashSet::default();
        let mut queue: Vec<Term> = Vec::new();
        let visit = |v: &Vector, m: Monomial, seen: &mut FxHashSet<Term>, queue: &mut Vec<Term>| {
            for &((n, c), _) in &v.terms {
                let t = (n.mul(m), c);
                if seen.insert(t) {
                    queue.push(t);
                }
            }
        };
        for (src, _) in &rows {
            match src {
                Source::Raw(v) => visit(v, Monomial::ONE, &mut seen, &mut queue),
                Source::Multiple(m, k) => visit(&self.basis[*k], *m, &mut seen, &mut queue),
            }
        }
        let mut reducers: Vec<(Monomial, usize)> = Vec::new();
        while let Some(t) = queue.pop() {
            if let Some(g) = self.find_reducer(t) {
                let m = t.0.div(self.leads[g].0);
                reducers.push((m, g));
                visit(&self.basis[g], m, &mut seen, &mut queue);
            }
        }
        let reducer_set: FxHashSet<(Monomial, usize)> = reducers.iter().copied().collect();

        let mut cols: Vec<Term> = seen.into_iter().collect();
        let ctx = &self.ctx;
        cols.sort_by(|a, b| ctx.cmp(*b, *a));
        let index: FxHashMap<Term, u32> = cols.iter().enumerate().map(|(i, t)| (*t, i as u32)).collect();
        let ncols = cols.len();

        let to_row = |v: &Vector, m: Monomial| -> Vec<(u32, u32)> {
            v.terms.iter().map(|&((n, c), a)| (index[&(n.mul(m), c)], a)).collect()
        };
        let mut store: Vec<Vec<(u32, u32)>> = Vec::with_capacity(reducers.len() + rows.len());
        let mut pivot: Vec<u32> = vec![u32::MAX; ncols];
        for &(m, g) in &reducers {
            let r = to_row(&self.basis[g], m);
            pivot[r[0].0 as usize] = store.len() as u32;
            store.push(r);
        }

        let field = self.field;
        let gf2 = field.is_gf2();
        let words = ncols.div_ceil(64);
        let mut bits = vec![0u64; words];
        let mut vals: Vec<u32> = if gf2 { Vec::new() } else { vec![0; ncols] };
        let mut out = Vec::new();
        for (src, kind) in rows {
            let row = match &src {
                Source::Raw(v) => to_row(v, Monomial::ONE),
                Source::Multiple(m, k) => {
                    if reducer_set.contains(&(*m, *k)) {
                        continue;
                    }
                    to_row(&self.basis[*k], *m)
                }
            };
            for &(c, a) in &row {
                bits[c as usize / 64] |= 1 << (c % 64);
                if !gf2 {
                    vals[c as usize] = a;
                }
            }
            let mut kept: Vec<(u32, u32)> = Vec::new();
            let mut w = row.iter().map(|r| r.0 as usize / 64).min().unwrap_or(words);
            while w < words {
                let word = bits[w];
                if word == 0 {
                    w += 1;
                    continue;
                }
                let c = w * 64 + word.trailing_zeros() as usize;
                let p = pivot[c];
                if p == u32::MAX {
                    bits[w] &= !(1 << (c % 64));
                    let a = if gf2 { 1 } else { std::mem::take(&mut vals[c]) };
                    kept.push((c as u32, a));
                    continue;
                }
                let prow = &store[p as usize];
                if gf2 {
                    for &(pc, _) in prow {
                        bits[pc as usize / 64] ^= 1 << (pc % 64);
                    }
                } else {
                    // pivot rows are monic
                    let f = field.neg(vals[c]);
                    for &(pc, pa) in prow {
                        let pc = pc as usize;
                        let nv = field.add(vals[pc], field.mul(f, pa));
                        vals[pc] = nv;
                        if nv == 0 {
                            bits[pc / 64] &= !(1 << (pc % 64));
                        } else {
                            bits[pc / 64] |= 1 << (pc % 64);
                        }
                    }
                }
            }
            if kept.is_empty() {
                continue;
            }
            if !gf2 && kept[0].1 != 1 {
                let inv = field.inv(kept[0].1);
                for e in kept.iter_mut() {
                    e.1 = field.mul(e.1, inv);
                }
            }
            let lead_col = kept[0].0 as usize;
            let lead_in_f = cols[lead_col].1 < self.nf;
            let v = Vector { terms: kept.iter().map(|&(c, a)| (cols[c as usize], a)).collect() };
            if matches!(kind, Kind::Generator(_)) && !lead_in_f {
                // redundant generator: report its relation but never pivot on it
                out.push((v, kind));
                continue;
            }
            pivot[lead_col] = store.len() as u32;
            store.push(kept);
            out.push((v, kind));
        }
        out
    }

    fn insert(&mut self, v: Vector) {
        let h = self.basis.len();
        let lead = v.lead().unwrap();
        self.basis.push(v);
        self.leads.push(lead);
        self.sigs.push(signature(lead.0));
        self.update_pairs(h);
        self.by_comp[lead.1 as usize].push(h);
    }

    /// Gebauer-Moeller installation of the pairs of a new element `h`.
    fn update_pairs(&mut self, h: usize) {
        let (mh, ch) = self.leads[h];
        let mut cands: Vec<(usize, Monomial, i32)> = self.by_comp[ch as usize]
            .iter()
            .map(|&g| {
                let l = mh.lcm(self.leads[g].0);
                (g, l, self.ctx.degree((l, ch)))
            })
            .collect();
        cands.sort_by_key(|c| c.2);
        let mut kept: Vec<(usize, Monomial, i32)> = Vec::new();
        for c in cands {
            if kept.iter().any(|k| k.1.divides(c.1)) {
                continue;
            }
            kept.push(c);
        }
        if self.product {
            kept.retain(|&(g, _, _)| !mh.coprime(self.leads[g].0));
        }
        let leads = &self.leads;
        self.pairs.retain(|p| {
            !(p.comp == ch
                && mh.divides(p.lcm)
                && leads[p.i].0.lcm(mh) != p.lcm
                && leads[p.j].0.lcm(mh) != p.lcm)
        });
        for (g, l, d) in kept {
            self.pairs.push(Pair { i: g, j: h, lcm: l, comp: ch, deg: d });
        }
    }
}
