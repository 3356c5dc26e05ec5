//! Executes the `job` statements of a scenario.

use std::fmt::Write;

use tango_core::bbw::{bbw_cohomology, BbwResult};
use tango_core::beilinson::{assign_summands, check_monad, monad_cohomology, Summand};
use tango_core::chow::chern_from_hilbert;
use tango_core::module::{free_resolution, hilbert_polynomial, image, pushforward_presentation};
use tango_core::sheafcoh::{cohomology_table, render_table};

use crate::dsl::{Job, JobEntry, Scenario};
use crate::error::{CliError, Result};
use crate::fixtures::Fixtures;
use crate::report::Report;
use crate::suite::{run_verification_suite, SuiteOptions};

/// Default table window: wide enough to show all intermediate cohomology of
/// a rank-small bundle on a fivefold.
const WINDOW: (i32, i32) = (-6, 3);

/// Runs every job in order and returns the concatenated output together with
/// whether every verification job passed.
pub fn run_jobs(sc: &Scenario, opts: &SuiteOptions) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    for entry in &sc.jobs {
        let (text, pass) = run_job(sc, entry, opts)?;
        out.push_str(&text);
        ok &= pass;
    }
    Ok((out, ok))
}

fn run_job(sc: &Scenario, entry: &JobEntry, opts: &SuiteOptions) -> Result<(String, bool)> {
    let at = |e: CliError| CliError::Scenario(format!("job at {}:{}: {e}", entry.pos.line, entry.pos.col));
    let mut out = String::new();
    match &entry.job {
        Job::Gb { matrix } => {
            let m = sc.matrix(matrix).ok_or_else(|| at(CliError::Scenario(format!("no matrix `{matrix}`"))))?;
            let im = image(m).and_then(|i| i.prune()).map_err(|e| at(e.into()))?;
            writeln!(out, "gb {matrix}: minimal generators {:?}", im.generator_histogram()).ok();
            let hf: Vec<u64> = (0..=6).map(|d| im.hilbert_function(d)).collect();
            writeln!(out, "  hilbert function of the image, degrees 0..6: {hf:?}").ok();
        }
        Job::Res { target, length } => {
            let m = sc.module(target).map_err(at)?;
            let r = free_resolution(&m, *length).map_err(|e| at(e.into()))?;
            let tail = if r.truncated { " (truncated)" } else { "" };
            writeln!(out, "res {target}: {}{tail}", r.betti().summary()).ok();
        }
        Job::Coh { target, window } => {
            let m = sc.module(target).map_err(at)?;
            let (lo, hi) = opts.window.or(*window).unwrap_or(WINDOW);
            let t = cohomology_table(&m, lo, hi).map_err(|e| at(e.into()))?;
            writeln!(out, "coh {target}, twists {lo}..{hi}:\n{}", render_table(&t)).ok();
        }
        Job::Chern { target, rank } => {
            let m = sc.module(target).map_err(at)?;
            let c = chern_from_hilbert(&m, *rank).map_err(|e| at(e.into()))?;
            let hp = hilbert_polynomial(&m).map_err(|e| at(e.into()))?;
            writeln!(out, "chern {target}: {:?}", c.integer_classes()).ok();
            writeln!(out, "  hilbert polynomial: {hp}").ok();
        }
        Job::Bbw { weight, window } => {
            writeln!(out, "bbw ({}, {}):", weight.a, weight.b).ok();
            for t in window.0..=window.1 {
                match bbw_cohomology(*weight, t as i64) {
                    BbwResult::Singular => writeln!(out, "  t = {t}: singular, all cohomology vanishes"),
                    BbwResult::Cohomology { degree, dim } => writeln!(out, "  t = {t}: h^{degree} = {dim}"),
                }
                .ok();
            }
        }
        Job::Monad { beta, alpha, right } => {
            let b = sc.exterior(beta).ok_or_else(|| at(CliError::Scenario(format!("no exterior matrix `{beta}`"))))?;
            let a = sc.exterior(alpha).ok_or_else(|| at(CliError::Scenario(format!("no exterior matrix `{alpha}`"))))?;
            let asg = assign_summands(vec![Summand::Line(0); *right], b.to_vec(), a.to_vec()).map_err(|e| at(e.into()))?;
            let cert = check_monad(&asg.spec).map_err(|e| at(e.into()))?;
            writeln!(out, "monad: {:?} -> {:?} -> {:?}", asg.spec.left, asg.spec.mid, asg.spec.right).ok();
            for d in &asg.diagnostics {
                writeln!(out, "  note: {d}").ok();
            }
            writeln!(
                out,
                "  beta*alpha = 0: {}, beta onto: {}, alpha injective: {}, rank {}",
                cert.composite_zero, cert.beta_surjective, cert.alpha_injective, cert.expected_rank
            )
            .ok();
            if cert.holds() {
                let m = monad_cohomology(&asg.spec).map_err(|e| at(e.into()))?;
                writeln!(out, "  cohomology module generators: {:?}", m.generator_histogram()).ok();
            }
        }
        Job::Pushforward { map, target, bound } => {
            let f = sc.map(map).ok_or_else(|| at(CliError::Scenario(format!("no map `{map}`"))))?;
            let m = sc.module(target).map_err(at)?;
            let p = pushforward_presentation(f, &m, *bound).map_err(|e| at(e.into()))?;
            writeln!(out, "pushforward {map} {target}: generators {:?}, {} relations", p.generator_histogram(), p.presentation().ncols()).ok();
        }
        Job::Verify { profile } => {
            let o = SuiteOptions { profile: *profile, ..opts.clone() };
            let report = Report::new(run_verification_suite(Fixtures::shipped()?, &o)?);
            out.push_str(&report.to_text());
            return Ok((out, report.all_pass()));
        }
    }
    Ok((out, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_scenario;

    #[test]
    fn small_scenario() {
        let sc = parse_scenario(
            "ring R = GF(2)[x0..x2];\nmatrix M over R = [[x0, x1, x2]];\njob res M;\njob coh M window=-1..1;\njob bbw a=0 b=1 window=0..0;",
        )
        .unwrap();
        let (text, ok) = run_jobs(&sc, &SuiteOptions::default()).unwrap();
        assert!(ok);
        assert!(text.contains("res M: 1@0 | 3@-1 | 3@-2 | 1@-3"), "{text}");
        assert!(text.contains("t = 0: h^0 = 14"), "{text}");
    }
}
