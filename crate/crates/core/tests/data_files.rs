use std::path::PathBuf;

use cyweb_core::singularity::AnalysisOptions;
use cyweb_core::transition::{compute_table, consistency_check, decide_simplicity, Rule, Severity, TransitionRecord};
use cyweb_core::web::{Simplicity, WebGraph};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn record(name: &str) -> TransitionRecord {
    TransitionRecord::from_text(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

#[test]
fn quintic_ca4_table_and_witness() {
    let mut r = record("quintic_ca4.tr");
    let csv = compute_table(&r).unwrap().to_csv();
    assert_eq!(
        csv,
        "variety,h1_theta,b2,rho,b3,b4,chi\nQhat,18,17,17,36,17,0\nQbar,17,1,1,60,17,-40\nQbar_alpha,18,1,1,120,17,-100\nQ,101,1,1,204,1,-200\n"
    );
    let findings = consistency_check(&r);
    assert_eq!(findings.len(), 1, "{findings:?}");
    assert_eq!(findings[0].severity, Severity::Warning);
    assert_eq!(findings[0].to_string(), "WARNING: Qhat: h1Θ=18 vs expected h21=17");
    assert_eq!(decide_simplicity(&r).rule(), Rule::R6);
    r.verify_witness(&AnalysisOptions::default()).unwrap();
    let v = decide_simplicity(&r);
    assert_eq!(v.rule(), Rule::R5);
    assert_eq!(v.to_string(), "Simple: explicit def-equivalence to conifold");
}

#[test]
fn verdicts_of_shipped_records() {
    assert_eq!(
        decide_simplicity(&record("quintic_conifold.tr")).to_string(),
        "Simple: conifold is simple by definition"
    );
    assert_eq!(
        decide_simplicity(&record("mt_to_mq.tr")).to_string(),
        "NotSimple: type II never simple"
    );
    assert_eq!(
        decide_simplicity(&record("namikawa.tr")).to_string(),
        "NotSimple: violates necessary cohomological condition"
    );
    assert_eq!(decide_simplicity(&record("mt_to_md.tr")).rule(), Rule::R1);
}

#[test]
fn shipped_records_are_consistent() {
    for name in ["quintic_conifold.tr", "mt_to_mq.tr", "namikawa.tr", "mt_to_md.tr"] {
        let r = record(name);
        let findings = consistency_check(&r);
        assert!(
            findings.iter().all(|f| f.severity != Severity::Error),
            "{name}: {findings:?}"
        );
        assert_eq!(
            TransitionRecord::from_text(&r.to_text()).unwrap().to_text(),
            r.to_text(),
            "{name}"
        );
    }
}

#[test]
fn example_web() {
    let text = std::fs::read_to_string(data("example.web")).unwrap();
    let mut g = WebGraph::from_text(&text).unwrap();
    assert_eq!(g.nodes().len(), 3);
    assert!(g.validate().is_empty(), "{:?}", g.validate());
    g.load_transitions(&data(""), &AnalysisOptions::default()).unwrap();
    let findings = g.validate();
    assert!(findings.iter().all(|f| f.severity != Severity::Error), "{findings:?}");
    assert_eq!(g.arrow("t_q").unwrap().simplicity, Simplicity::NotSimple);
    assert_eq!(g.arrow("t_d").unwrap().simplicity, Simplicity::Simple);
    assert_eq!(g.path("M_Q", "M_D").unwrap().unwrap(), vec!["t_q", "t_d"]);
    assert_eq!(g.connected_components().len(), 1);
    assert_eq!(WebGraph::from_text(&g.to_text()).unwrap(), g);
}
