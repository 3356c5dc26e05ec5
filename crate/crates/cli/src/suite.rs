//! Verification suite: one check per claim, each producing a [`Verdict`].

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tango_core::bbw::{bbw_cohomology, cayley_weight, sym2_cayley_weight, weyl_dimension, BbwResult, Weight, RHO};
use tango_core::beilinson::{check_monad, Summand};
use tango_core::chow::{chern_from_hilbert, hrr_chi, lemma_enumeration, Ambient, ChernVector};
use tango_core::module::{free_resolution, hilbert_polynomial, minors_ideal, pushforward_presentation, wedge2, GradedMatrix, GradedModule};
use tango_core::numeric::q;
use tango_core::ring::{standard, Ring, RingMap};
use tango_core::sheafcoh::{render_table, SheafCohomology};

use crate::claims::{shipped_claims, Claim};
use crate::context::{Built, Context, Obj};
use crate::dsl::Profile;
use crate::error::{CliError, Result};
use crate::fixtures::Fixtures;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    #[serde(rename = "ref")]
    pub reference: String,
    pub criterion: u32,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub profile: Profile,
    /// Run only these claims (any profile); empty means the whole profile.
    pub claims: Vec<String>,
    /// Overrides the window of the rendered table of `T`.
    pub window: Option<(i32, i32)>,
    pub threads: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { profile: Profile::Quick, claims: Vec::new(), window: None, threads: 1 }
    }
}

/// Runs the shipped claims against `fixtures`. Failing claims never abort
/// the run; verdicts come back in claims-file order.
pub fn run_verification_suite(fixtures: Fixtures, opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let ctx = Context::new(fixtures);
    run_with_context(&ctx, &shipped_claims()?, opts)
}

pub fn run_with_context(ctx: &Context, claims: &[Claim], opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    for id in &opts.claims {
        if !claims.iter().any(|c| &c.id == id) {
            return Err(CliError::Claims(format!("unknown claim `{id}`")));
        }
    }
    let selected: Vec<&Claim> = claims
        .iter()
        .filter(|c| if opts.claims.is_empty() { opts.profile == Profile::Full || c.profile == Profile::Quick } else { opts.claims.contains(&c.id) })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| CliError::Scenario(e.to_string()))?;
    Ok(pool.install(|| selected.par_iter().map(|c| run_claim(ctx, c, opts)).collect()))
}

pub fn run_claim(ctx: &Context, claim: &Claim, opts: &SuiteOptions) -> Verdict {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| check(ctx, claim, opts)))
        .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())));
    let millis = start.elapsed().as_millis() as u64;
    let (computed, error) = match outcome {
        Ok(v) => (v, None),
        Err(e) => (Value::Null, Some(e)),
    };
    Verdict {
        claim: claim.id.clone(),
        reference: claim.reference.clone(),
        criterion: claim.criterion,
        expected: claim.expected.clone(),
        pass: error.is_none() && claim.matches(&computed),
        computed,
        millis,
        error,
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn histogram_json(h: &[(i32, usize)]) -> Value {
    json!(h.iter().map(|&(d, k)| [d as i64, k as i64]).collect::<Vec<_>>())
}

/// `[i, t, _]` triples of an expected list.
fn positions(expected: &Value) -> Built<Vec<(usize, i32)>> {
    let rows = expected.as_array().ok_or("expected a list of [i, t, h]")?;
    rows.iter()
        .map(|r| {
            let i = r.get(0).and_then(Value::as_u64).ok_or("bad i")?;
            let t = r.get(1).and_then(Value::as_i64).ok_or("bad t")?;
            Ok((i as usize, t as i32))
        })
        .collect()
}

fn values_at(sc: &SheafCohomology, expected: &Value) -> Built<Value> {
    let pos = positions(expected)?;
    Ok(json!(pos.iter().map(|&(i, t)| json!([i, t, sc.h(i, t)])).collect::<Vec<_>>()))
}

fn nonzero_intermediate(sc: &SheafCohomology, lo: i32, hi: i32) -> Value {
    let mut out = Vec::new();
    for t in lo..=hi {
        for i in 1..sc.dim() {
            let h = sc.h(i, t);
            if h != 0 {
                out.push(json!([i, t, h]));
            }
        }
    }
    json!(out)
}

/// `[t, degree, dim]` of the Borel-Bott-Weil answer at each `[t, ..]` entry.
fn bbw_entries(w: Weight, expected: &Value) -> Built<Value> {
    let rows = expected.as_array().ok_or("expected a list of [t, i, dim]")?;
    let mut out = Vec::new();
    for r in rows {
        let t = r.get(0).and_then(Value::as_i64).ok_or("bad t")?;
        out.push(match bbw_cohomology(w, t) {
            BbwResult::Singular => json!([t, Value::Null, 0]),
            BbwResult::Cohomology { degree, dim } => json!([t, degree, dim]),
        });
    }
    Ok(json!(out))
}

fn same_hilbert(a: &GradedModule, b: &GradedModule, top: i32) -> bool {
    (0..=top).all(|d| a.hilbert_function(d) == b.hilbert_function(d))
}

/// Direct sum described as `O + O(-1)^14 + S(-1)`.
pub fn decomposition(ring: &Ring, spinor: Option<&GradedModule>, text: &str) -> Built<GradedModule> {
    let mut sum = GradedModule::free(ring, Vec::new());
    for part in text.split('+') {
        let part = part.trim();
        let (base, mult) = match part.split_once('^') {
            Some((b, m)) => (b.trim(), m.trim().parse::<usize>().map_err(|_| format!("bad exponent in `{part}`"))?),
            None => (part, 1),
        };
        let (name, twist) = match base.split_once('(') {
            Some((n, rest)) => {
                let t = rest.strip_suffix(')').ok_or_else(|| format!("bad summand `{part}`"))?;
                (n, t.trim().parse::<i32>().map_err(|_| format!("bad twist in `{part}`"))?)
            }
            None => (base, 0),
        };
        let piece = match name {
            "O" => GradedModule::free(ring, vec![-twist]),
            "S" => spinor.ok_or("no spinor bundle on this space")?.twist(twist),
            _ => return Err(format!("unknown summand `{name}`")),
        };
        for _ in 0..mult {
            sum = sum.direct_sum(&piece).map_err(err)?;
        }
    }
    Ok(sum)
}

fn leray_failures_tango(ctx: &Context, lo: i32, hi: i32) -> Built<Value> {
    let t = ctx.cohomology(Obj::Tango)?;
    let c = ctx.cohomology(Obj::Cayley)?;
    let sc = ctx.cohomology(Obj::SpinorCayley)?;
    let mut bad = Vec::new();
    for s in lo..=hi {
        for i in 0..=5 {
            if t.h(i, 2 * s) != c.h(i, 1 + s) + 14 * c.h(i, s) + c.h(i, s - 1) {
                bad.push(json!([i, 2 * s]));
            }
            if t.h(i, 2 * s + 1) != 6 * c.h(i, 1 + s) + 6 * c.h(i, s) + sc.h(i, 1 + s) {
                bad.push(json!([i, 2 * s + 1]));
            }
        }
    }
    Ok(json!(bad))
}

fn leray_failures_frobenius(ctx: &Context) -> Built<Vec<Value>> {
    let c = ctx.cohomology(Obj::Cayley)?;
    let c2 = ctx.cohomology(Obj::FrobeniusCayley)?;
    let sc = ctx.cohomology(Obj::SpinorCayley)?;
    let mut bad = Vec::new();
    for t in -2..=1 {
        for i in 0..=5 {
            let even = c.h(i, t) + 20 * c.h(i, t - 1) + 7 * c.h(i, t - 2) + sc.h(i, t - 1);
            let odd = 7 * c.h(i, t) + 20 * c.h(i, t - 1) + c.h(i, t - 2) + sc.h(i, t);
            if c2.h(i, 2 * t) != even {
                bad.push(json!([i, 2 * t]));
            }
            if c2.h(i, 2 * t + 1) != odd {
                bad.push(json!([i, 2 * t + 1]));
            }
        }
    }
    Ok(bad)
}

fn pushforward_claim(ctx: &Context, claim: &Claim) -> Built<Value> {
    let source = claim.param_str("source").ok_or("missing params.source")?;
    let twist = claim.param_i64("twist").unwrap_or(0) as i32;
    let text = claim.param_str("decomposition").ok_or("missing params.decomposition")?;
    let sc = &ctx.fixtures.scenario;
    let (map, module, spinor): (RingMap, GradedModule, Option<GradedModule>) = match source {
        "f" => {
            let f = ctx.fixtures.f().clone();
            let m = GradedModule::free(f.target(), vec![-twist]);
            (f, m, Some(ctx.module(Obj::Spinor)?))
        }
        "q3" => {
            let f = sc.map("f3").ok_or("fixture map `f3` missing")?.clone();
            let b = sc.matrix("B3").ok_or("fixture matrix `B3` missing")?;
            let m = GradedModule::free(f.target(), vec![-twist]);
            (f, m, Some(GradedModule::coker(b.clone()).twist(-1)))
        }
        "projection" => {
            let pi = sc.map("pi").ok_or("fixture map `pi` missing")?.clone();
            let s = ctx.module(Obj::Spinor)?.twist(twist);
            (pi, s, None)
        }
        "frobenius-p5" => {
            let p5 = ctx.fixtures.f().target().clone();
            (standard::frobenius(&p5), GradedModule::free(&p5, vec![-twist]), None)
        }
        "frobenius-q5" => {
            let q5 = ctx.quadric().clone();
            (standard::frobenius(&q5), GradedModule::free(&q5, vec![-twist]), Some(ctx.module(Obj::Spinor)?))
        }
        other => return Err(format!("unknown pushforward source `{other}`")),
    };
    let pushed = pushforward_presentation(&map, &module, 10).map_err(err)?;
    let expected = decomposition(map.source(), spinor.as_ref(), text)?;
    Ok(json!({
        "generators": histogram_json(&pushed.generator_histogram()),
        "hilbert_match": same_hilbert(&pushed, &expected, 10),
    }))
}

/// Objects covered by the property checks, in a fixed order.
const PROPERTY_OBJECTS: [Obj; 9] = [
    Obj::Horrocks,
    Obj::CayleyTwisted,
    Obj::Tango,
    Obj::Spinor,
    Obj::Extension,
    Obj::Sym2Cayley,
    Obj::SpinorCayley,
    Obj::FrobeniusCayley,
    Obj::MonadTango,
];

fn window_of(m: &GradedModule) -> (i32, i32) {
    if m.ring().relation().is_some() {
        (-5, 3)
    } else {
        (-8, 5)
    }
}

fn property_gb(ctx: &Context) -> Built<Value> {
    let mut bad = Vec::new();
    let a = ctx.fixtures.a();
    for k in 1..=3 {
        let ideal = minors_ideal(k, a).map_err(err)?;
        let gens = ideal.gens().to_vec();
        let degs: Vec<i32> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
        let row = GradedMatrix::from_columns(ideal.ring(), vec![0], degs, gens.into_iter().map(|g| vec![g]).collect()).map_err(err)?;
        let quotient = GradedModule::coker(row);
        for d in 0..=8 {
            if ideal.hilbert_function(d) != quotient.hilbert_function_linalg(d) {
                bad.push(json!([format!("minors {k} of A"), d]));
            }
        }
    }
    for o in PROPERTY_OBJECTS {
        let m = ctx.module(o)?;
        let lo = m.generator_degrees().iter().copied().min().unwrap_or(0);
        for d in lo..=(lo + 4).min(8) {
            if m.hilbert_function(d) != m.hilbert_function_linalg(d) {
                bad.push(json!([o.name(), d]));
            }
        }
    }
    Ok(json!(bad))
}

fn property_resolutions(ctx: &Context) -> Built<Value> {
    let mut bad = Vec::new();
    let c1 = ctx.module(Obj::CayleyTwisted)?;
    let mut cases = vec![(format!("{} over the quadric", Obj::CayleyTwisted.name()), c1, 5usize)];
    for o in PROPERTY_OBJECTS {
        cases.push((o.name().to_string(), ctx.module(o)?.restrict_to_ambient(), 8));
    }
    for (name, m, cap) in cases {
        let res = free_resolution(&m, cap).map_err(err)?;
        let closed = res.truncated == (m.ring().relation().is_some() && res.length() == cap);
        if !(res.is_complex() && res.is_minimal() && closed) {
            bad.push(json!(name));
        }
    }
    Ok(json!(bad))
}

fn property_euler(ctx: &Context) -> Built<Value> {
    let mut bad = Vec::new();
    for o in PROPERTY_OBJECTS {
        let m = ctx.module(o)?;
        let (lo, hi) = window_of(&m);
        let table = ctx.cohomology(o)?.table(lo, hi).map_err(err)?;
        let hp = hilbert_polynomial(&m).map_err(err)?;
        for t in table.twists() {
            if q(table.euler(t)) != hp.eval_int(t as i64) {
                bad.push(json!([o.name(), t]));
            }
        }
    }
    Ok(json!(bad))
}

fn property_determinism(ctx: &Context) -> Built<Value> {
    let fresh = Context::new(ctx.fixtures.clone());
    let mut same = true;
    for c in [ctx, &fresh] {
        let _ = c.module(Obj::Tango)?;
    }
    let summary = |c: &Context| -> Built<(String, String)> {
        let t = c.module(Obj::Tango)?;
        let betti = free_resolution(&t, 7).map_err(err)?.betti().summary();
        let table = render_table(&c.cohomology(Obj::Tango)?.table(-8, 5).map_err(err)?);
        Ok((betti, table))
    };
    same &= summary(ctx)? == summary(&fresh)?;
    same &= ctx.module(Obj::Tango)?.presentation() == fresh.module(Obj::Tango)?.presentation();
    Ok(json!(same))
}

fn check(ctx: &Context, claim: &Claim, opts: &SuiteOptions) -> Built<Value> {
    let q5 = ctx.quadric().clone();
    match claim.id.as_str() {
        "fixture-integrity" => Ok(json!(ctx.fixtures.integrity())),
        "sat-wedge-A" => {
            let a = ctx.fixtures.a();
            let mut unit = Vec::new();
            for k in 1..=3 {
                unit.push(minors_ideal(k, a).and_then(|i| i.saturate(None)).map_err(err)?.is_unit());
            }
            let top = minors_ideal(4, a).map_err(err)?;
            Ok(json!({ "saturated_unit": unit, "minors4_zero": top.gens().is_empty() }))
        }
        "det-spinor" => {
            let amb = q5.ambient();
            let det = tango_core::module::determinant(&ctx.fixtures.b().change_ring(&amb)).map_err(err)?;
            let quad = q5.relation().ok_or("the fixture ring has no relation")?;
            let power = (0..=8u32).find(|&k| quad.pow(k) == det);
            Ok(power.map_or_else(|| json!(det.to_string()), |k| json!(format!("q^{k}"))))
        }
        "chi-tango" => Ok(json!(hrr_chi(&ChernVector::new(Ambient::Projective(5), 2, &[2, 4])).to_string())),
        "hilbert-poly-T" => Ok(json!(hilbert_polynomial(&ctx.module(Obj::Tango)?).map_err(err)?.to_string())),
        "thm-bott-cohomology" | "serre-dual-T" => values_at(&*ctx.cohomology(Obj::Tango)?, &claim.expected),
        "table-tango" => {
            let (lo, hi) = opts.window.or(claim.param_window()).unwrap_or((-8, 5));
            Ok(json!(render_table(&ctx.cohomology(Obj::Tango)?.table(lo, hi).map_err(err)?)))
        }
        "betti-T" => Ok(json!(free_resolution(&ctx.module(Obj::Tango)?, 7).map_err(err)?.betti().summary())),
        "betti-C1-quadric" => Ok(json!(free_resolution(&ctx.module(Obj::CayleyTwisted)?, 5).map_err(err)?.betti().summary())),
        "horrocks-vanishing" => {
            let (lo, hi) = claim.param_window().unwrap_or((-4, 4));
            Ok(nonzero_intermediate(&*ctx.cohomology(Obj::Horrocks)?, lo, hi))
        }
        "ext1-horrocks" => Ok(json!(ctx.extension_classes()?.1.len())),
        "extension-spinor" => {
            let w = ctx.module(Obj::Extension)?;
            let hp = hilbert_polynomial(&w).map_err(err)?;
            let rank = hp.coeff(5) * q(60);
            let sc = ctx.cohomology(Obj::Extension)?;
            let zero = (-5..=3).all(|t| (1..5).all(|i| sc.h(i, t) == 0));
            let coker_b = GradedModule::coker(ctx.fixtures.b().clone());
            let twist = (-3..=3).find(|&k| same_hilbert(&w, &coker_b.twist(k), 10));
            Ok(json!({ "rank": rank.to_integer().to_string().parse::<i64>().ok(), "intermediate_zero": zero, "spinor_twist": twist }))
        }
        "hoppe-stability" => {
            let h = ctx.module(Obj::Horrocks)?;
            let sc = ctx.cohomology(Obj::Horrocks)?;
            let w2 = wedge2(&h).and_then(|m| m.prune()).map_err(err)?;
            let w2c = SheafCohomology::new(&w2).map_err(err)?;
            Ok(json!([sc.h(0, -1), w2c.h(0, -1)]))
        }
        id if id.starts_with("pushforward-") || id.starts_with("frobenius-") && id != "frobenius-cayley-leray" => pushforward_claim(ctx, claim),
        "bbw-lambda2-dim" => Ok(json!(weyl_dimension(Weight::LAMBDA2).map_err(err)?)),
        "bbw-cayley" => bbw_entries(cayley_weight(), &claim.expected),
        "bbw-sym2-values" => bbw_entries(sym2_cayley_weight(), &claim.expected),
        "bbw-sym2-singular" => {
            let w = sym2_cayley_weight().add(RHO);
            Ok(json!({ "shifted": [w.a, w.b], "singular": bbw_cohomology(sym2_cayley_weight(), 0) == BbwResult::Singular }))
        }
        "chi-sym2-cayley" => {
            let chi = hrr_chi(&ChernVector::new(Ambient::Quadric(5), 2, &[-1, 1]).sym2());
            let agrees = (4..=12).all(|t| match bbw_cohomology(sym2_cayley_weight(), t) {
                BbwResult::Cohomology { degree: 0, dim } => q(dim as i64) == chi.eval_int(t),
                _ => false,
            });
            Ok(json!({ "polynomial": chi.to_string(), "bbw_h0_agrees": agrees }))
        }
        "char2-sym2" => {
            let sc = ctx.cohomology(Obj::Sym2Cayley)?;
            let b = bbw_cohomology(sym2_cayley_weight(), 0);
            Ok(json!((0..=5).filter(|&i| sc.h(i, 0) != b.h(i)).map(|i| json!([i, sc.h(i, 0), b.h(i)])).collect::<Vec<_>>()))
        }
        "frobenius-cayley-leray" => {
            let h2 = ctx.cohomology(Obj::FrobeniusCayley)?.h(2, 0);
            Ok(json!({ "h2": h2, "leray_failures": leray_failures_frobenius(ctx)? }))
        }
        "cohomology-SC" => values_at(&*ctx.cohomology(Obj::SpinorCayley)?, &claim.expected),
        "leray-T" => {
            let (lo, hi) = claim.param_window().unwrap_or((-4, 2));
            leray_failures_tango(ctx, lo, hi)
        }
        "lemma-chern-family" => {
            let n = claim.param_i64("n").unwrap_or(5) as usize;
            let bound = claim.param_i64("bound").unwrap_or(50);
            Ok(json!(lemma_enumeration(n, bound).map_err(err)?.into_iter().map(|s| s.a).collect::<Vec<_>>()))
        }
        "chern-horrocks" => {
            let c = chern_from_hilbert(&ctx.module(Obj::Horrocks)?, 3).map_err(err)?.dual().twist(1);
            Ok(json!(c.integer_classes()))
        }
        "monad-certificate" => {
            let a = ctx.monad()?;
            let cert = check_monad(&a.spec).map_err(err)?;
            let mult = |v: &[Summand]| {
                let mut seen: Vec<(Summand, usize)> = Vec::new();
                for s in v {
                    match seen.iter_mut().find(|(t, _)| t == s) {
                        Some((_, k)) => *k += 1,
                        None => seen.push((*s, 1)),
                    }
                }
                seen.into_iter().map(|(_, k)| k).collect::<Vec<_>>()
            };
            Ok(json!({
                "composite_zero": cert.composite_zero,
                "beta_surjective": cert.beta_surjective,
                "alpha_injective": cert.alpha_injective,
                "expected_rank": cert.expected_rank,
                "multiplicities": [mult(&a.spec.left), mult(&a.spec.mid), mult(&a.spec.right)],
            }))
        }
        "monad-betti" => Ok(json!(free_resolution(&ctx.module(Obj::MonadTango)?, 7).map_err(err)?.betti().summary())),
        "monad-table" => Ok(json!(render_table(&ctx.cohomology(Obj::MonadTango)?.table(-8, 5).map_err(err)?))),
        "property-gb-oracle" => property_gb(ctx),
        "property-resolutions" => property_resolutions(ctx),
        "property-euler" => property_euler(ctx),
        "property-determinism" => property_determinism(ctx),
        other => Err(format!("no check registered for claim `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        let r = standard::p5();
        let m = decomposition(&r, None, "O + O(-1)^3 + O(2)").unwrap();
        let mut degs = m.generator_degrees().to_vec();
        degs.sort();
        assert_eq!(degs, vec![-2, 0, 1, 1, 1]);
        assert!(decomposition(&r, None, "S").is_err());
        assert!(decomposition(&r, None, "O(x)").is_err());
    }

    #[test]
    fn unknown_claims_are_rejected() {
        let opts = SuiteOptions { claims: vec!["no-such-claim".into()], ..Default::default() };
        assert!(run_verification_suite(Fixtures::shipped().unwrap(), &opts).is_err());
    }

    #[test]
    fn failures_are_reported_not_raised() {
        let claims = crate::claims::parse_claims("[[claim]]\nid='mystery'\ncriterion=1\nprofile='quick'\nref='r'\nexpected=1").unwrap();
        let ctx = Context::new(Fixtures::shipped().unwrap());
        let v = run_with_context(&ctx, &claims, &SuiteOptions::default()).unwrap();
        assert_eq!(v.len(), 1);
        assert!(!v[0].pass);
        assert!(v[0].error.as_deref().unwrap().contains("no check registered"));
    }
}
