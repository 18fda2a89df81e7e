use spectrality::harness::{run_all, run_suite, suites_for};
use spectrality::report::merge_reports;
use spectrality::{Error, ModelSpace, NormFamily, Report};

fn censym(family: NormFamily) -> ModelSpace {
    ModelSpace::centrally_symmetric(family).unwrap()
}

#[test]
fn fn_oracle_passes_at_full_size() {
    let s = ModelSpace::function_space(5).unwrap();
    let r = run_suite("fn-oracle", &s, 1000, 42).unwrap();
    assert_eq!(r.summary.failed, 0, "{}", r.to_json_string());
    assert!(r.summary.passed >= 3);
}

#[test]
fn every_model_passes_its_suites() {
    let spaces = [
        ModelSpace::function_space(3).unwrap(),
        ModelSpace::jordan(3).unwrap(),
        censym(NormFamily::lp(2.0, 2).unwrap()),
        censym(NormFamily::lp(1.0, 2).unwrap()),
        censym(NormFamily::lp(f64::INFINITY, 2).unwrap()),
        censym(NormFamily::stadium(1.0, 1.0).unwrap()),
    ];
    for s in &spaces {
        let r = run_all(s, 100, 3).unwrap();
        let failures: Vec<_> = r.failures().map(|c| c.check.clone()).collect();
        assert!(failures.is_empty(), "{}: {failures:?}", s.descriptor());
    }
}

#[test]
fn polyhedral_norms_report_the_missing_base() {
    let s = censym(NormFamily::lp(1.0, 2).unwrap());
    let r = run_suite("compressions", &s, 100, 1).unwrap();
    let case = r.cases.iter().find(|c| c.check == "base.unavailable").expect("certificate case");
    assert!(case.pass);
    let spectral = run_suite("spectral", &s, 100, 1).unwrap();
    assert!(spectral
        .cases
        .iter()
        .any(|c| c.check == "spectral.comparability_unavailable" && c.pass));
}

#[test]
fn reports_are_reproducible() {
    let s = ModelSpace::jordan(3).unwrap();
    let a = run_all(&s, 80, 9).unwrap().to_json_string();
    let b = run_all(&s, 80, 9).unwrap().to_json_string();
    assert_eq!(a, b);
    let c = run_all(&s, 80, 10).unwrap();
    assert_eq!(c.cases.len(), run_all(&s, 80, 9).unwrap().cases.len());
}

#[test]
fn unknown_and_foreign_suites_are_rejected() {
    let s = ModelSpace::function_space(2).unwrap();
    assert!(matches!(run_suite("nope", &s, 10, 1), Err(Error::UnknownSuite(_))));
    assert!(matches!(run_suite("jb", &s, 10, 1), Err(Error::UnknownSuite(_))));
    assert_eq!(suites_for(&s), ["core", "compressions", "spectral", "fn-oracle"]);
}

#[test]
fn merging_recounts_and_unions_models() {
    assert!(merge_reports(vec![]).unwrap().cases.is_empty());

    let fn2 = ModelSpace::function_space(2).unwrap();
    let jb2 = ModelSpace::jordan(2).unwrap();
    let a = run_suite("core", &fn2, 20, 1).unwrap();
    let single = merge_reports(vec![a.clone()]).unwrap();
    assert_eq!(single.cases.len(), a.cases.len());
    assert_eq!(single.summary, a.summary);

    let b = run_suite("core", &jb2, 20, 1).unwrap();
    let both = merge_reports(vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(both.cases.len(), a.cases.len() + b.cases.len());
    assert_eq!(both.summary.passed, a.summary.passed + b.summary.passed);
    assert_eq!(both.environment.models, [fn2.descriptor(), jb2.descriptor()]);

    let mut stale: Report = b;
    stale.environment.version = "0.0.0".into();
    assert!(matches!(merge_reports(vec![a, stale]), Err(Error::VersionMismatch(..))));
}

#[test]
fn report_json_parses_back() {
    let s = censym(NormFamily::lp(1.5, 2).unwrap());
    let r = run_suite("censym", &s, 30, 2).unwrap();
    let back: Report = serde_json::from_str(&r.to_json_string()).unwrap();
    assert_eq!(back.summary, r.summary);
    assert_eq!(back.cases.len(), r.cases.len());
}
