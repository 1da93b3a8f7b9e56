use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn cyweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyweb"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cyweb(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 8] = [
        (
            &["analyze", "data/quintic_with_plane.hsf"],
            "analyze_quintic_with_plane.txt",
        ),
        (&["milnor", "data/ca4_germ.lm"], "milnor_ca4.txt"),
        (
            &["transition", "data/quintic_ca4.tr", "--table"],
            "transition_quintic_ca4.csv",
        ),
        (&["transition", "data/quintic_ca4.tr"], "transition_quintic_ca4.txt"),
        (&["simplicity", "data/namikawa.tr"], "simplicity_namikawa.txt"),
        (&["cusps", "data/weierstrass.b"], "cusps_weierstrass.txt"),
        (&["web", "export", "--dot", "data/example.web"], "web_example.dot"),
        (&["web", "export", "--csv", "data/example.web"], "web_example.csv"),
    ];
    for (args, file) in cases {
        let first = stdout(args);
        assert_eq!(first, golden(file), "{args:?}");
        assert_eq!(stdout(args), first, "{args:?} is not byte-stable");
    }
}

#[test]
fn headline_lines() {
    assert!(
        stdout(&["analyze", "data/quintic_with_plane.hsf"]).contains("16 distinct singular points, all nodes: true")
    );
    assert!(stdout(&["milnor", "data/ca4_germ.lm"]).starts_with("mu=16 tau=16\n"));
    assert!(stdout(&["simplicity", "data/namikawa.tr"])
        .starts_with("NotSimple: violates necessary cohomological condition\n"));
    assert!(
        stdout(&["simplicity", "data/quintic_ca4.tr"]).starts_with("Simple: explicit def-equivalence to conifold\n")
    );
    assert!(stdout(&["split-verify", "data/quintic_ca4.tr"]).contains("total nodes: 10 x 10 = 100"));
    assert_eq!(stdout(&["web", "path", "data/example.web", "M_Q", "M_D"]), "t_q t_d\n");
    assert_eq!(
        stdout(&["web", "validate", "data/example.web"]),
        "3 nodes, 2 arrows, 0 findings\n"
    );
}

#[test]
fn seed_does_not_change_counts() {
    let a = stdout(&["--csv", "analyze", "data/quintic_with_plane.hsf"]);
    let b = stdout(&["--seed", "99", "--csv", "analyze", "data/quintic_with_plane.hsf"]);
    assert_eq!(a, b);
    assert_eq!(
        a,
        "point_count,multiplicity_total,all_nodes,radical_certified\n16,16,true,true\n"
    );
}

#[test]
fn build_round_trips_through_validate() {
    let built = stdout(&["web", "build", "data/example.web"]);
    let dir = std::env::temp_dir().join(format!("cyweb-build-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for f in ["mt_to_mq.tr", "mt_to_md.tr"] {
        std::fs::copy(root().join("data").join(f), dir.join(f)).unwrap();
    }
    let path = dir.join("built.web");
    std::fs::write(&path, &built).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["web", "build", p]), built);
    assert_eq!(stdout(&["web", "validate", p]), "3 nodes, 2 arrows, 0 findings\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(cyweb(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cyweb(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        cyweb(&["--budget", "lots", "milnor", "data/ca4_germ.lm"]).status.code(),
        Some(2)
    );
    let missing = cyweb(&["transition", "data/missing.tr"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read"));
    assert_eq!(
        cyweb(&["web", "path", "data/example.web", "M_Q", "nowhere"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(cyweb(&["split-verify", "data/namikawa.tr"]).status.code(), Some(1));
    let tight = cyweb(&["--budget", "1", "analyze", "data/quintic_with_plane.hsf"]);
    assert_eq!(tight.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&tight.stderr).contains("exceeded"));
}

#[test]
fn inconsistent_record_fails_with_findings() {
    let dir = std::env::temp_dir().join(format!("cyweb-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(root().join("data/mt_to_md.tr"))
        .unwrap()
        .replace("h21: 90", "h21: 91");
    let path = dir.join("bad.tr");
    std::fs::write(&path, text).unwrap();
    let out = cyweb(&["transition", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ERROR:"));
    std::fs::remove_dir_all(&dir).unwrap();
}
