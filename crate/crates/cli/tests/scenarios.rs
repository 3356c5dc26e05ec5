use tango_cli::dsl::{parse_scenario, Job, Profile};
use tango_cli::fixtures::TANGO_SCN;
use tango_cli::jobs::run_jobs;
use tango_cli::{run_verification_suite, Fixtures, Report, SuiteOptions};

#[test]
fn shipped_fixtures_parse() {
    let sc = parse_scenario(TANGO_SCN).unwrap();
    for name in ["P5", "Q5", "f", "A", "B", "beta", "alpha", "pi", "P3", "Q3", "f3", "B3"] {
        assert!(sc.names().iter().any(|n| n == name), "{name} missing");
    }
    assert!(sc.jobs.is_empty());
    assert_eq!(sc.matrix("B3").unwrap().nrows(), 4);
}

#[test]
fn jobs_over_the_fixtures() {
    let text = format!("{TANGO_SCN}\nmodule S = coker B twist -1;\njob res S;\njob pushforward pi S bound=8;\njob monad beta alpha;\n");
    let sc = parse_scenario(&text).unwrap();
    assert_eq!(sc.jobs.len(), 3);
    let (out, ok) = run_jobs(&sc, &SuiteOptions::default()).unwrap();
    assert!(ok);
    assert!(out.contains("res S: 8@-1 | 8@-2 | 8@-3") && out.contains("(truncated)"), "{out}");
    assert!(out.contains("pushforward pi S: generators [(1, 8)], 0 relations"), "{out}");
    assert!(out.contains("beta*alpha = 0: true"), "{out}");
}

#[test]
fn verify_job_parses() {
    let sc = parse_scenario("job verify-paper profile=quick;").unwrap();
    assert_eq!(sc.jobs[0].job, Job::Verify { profile: Profile::Quick });
}

#[test]
fn report_round_trips_through_json() {
    let opts = SuiteOptions { claims: vec!["det-spinor".into(), "cohomology-SC".into(), "bbw-cayley".into()], ..Default::default() };
    let report = Report::new(run_verification_suite(Fixtures::shipped().unwrap(), &opts).unwrap());
    assert_eq!((report.passed, report.failed), (2, 1));
    let back = Report::from_json(&report.to_json().unwrap()).unwrap();
    assert_eq!(back, report);
    let again = Report::new(run_verification_suite(Fixtures::shipped().unwrap(), &opts).unwrap());
    assert_eq!(again.without_timings(), report.without_timings());
}
