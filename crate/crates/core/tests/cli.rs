use std::process::Command;

use serde::de::DeserializeOwned;
use serde_json::Value;

use reductive::dvr::{matrix_from_json, Ring};
use reductive::dynamic::{
    dynamic_parabolic, enumerate_bala_carter, is_associated, semidirect_dimension_check,
    AssociatedReport, Convention, ParabolicData, SemidirectCheck,
};
use reductive::jordan::{
    additive_relative_jordan, is_ordinary, purity_report, relative_jordan, stratum_indices,
    FiberDims, OrdinaryReport, StratumIndices, TorusElement,
};
use reductive::primes::{check_characterization, classify, CharacterizationCheck};
use reductive::rootdata::{build_root_system, Isogeny, RootDatum};
use reductive::verify::{verify_paper_examples, PaperExampleReport};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_reductive"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> T {
    serde_json::from_value(v[key].clone()).unwrap_or_else(|e| panic!("{key}: {e}"))
}

#[test]
fn primes_report_round_trips() {
    let v = json(&[
        "primes",
        "--type",
        "B3",
        "--isogeny",
        "adj",
        "--check",
        "2,3,5",
        "--json",
    ]);
    let rd = RootDatum::from_type("B3", Isogeny::Adjoint).unwrap();
    let c = classify(&rd).unwrap();
    assert_eq!(field::<std::collections::BTreeSet<u64>>(&v, "bad"), c.bad);
    assert_eq!(
        field::<std::collections::BTreeSet<u64>>(&v, "torsion"),
        c.torsion
    );
    assert_eq!(
        field::<std::collections::BTreeSet<u64>>(&v, "pretty_good_excluded"),
        c.pretty_good_excluded
    );
    let checks: Vec<CharacterizationCheck> = field(&v, "characterization");
    for ch in checks {
        assert_eq!(ch, check_characterization(&rd, ch.p).unwrap());
    }
}

#[test]
fn jordan_reports_round_trip() {
    let spec = "Zq:p=5,deg=1,prec=4";
    let ring: Ring = spec.parse().unwrap();
    let m = "[[2,1,0],[0,3,5],[10,0,2]]";
    let g = matrix_from_json(&ring, &serde_json::from_str(m).unwrap()).unwrap();
    let v = json(&["jordan", "--ring", spec, "--matrix", m, "--json"]);
    let pair = relative_jordan(&ring, &g).unwrap();
    assert_eq!(matrix_from_json(&ring, &v["t"]).unwrap(), pair.t);
    assert_eq!(matrix_from_json(&ring, &v["u"]).unwrap(), pair.u);
    assert_eq!(v["ring"], spec);

    let v = json(&[
        "jordan",
        "--ring",
        spec,
        "--matrix",
        m,
        "--additive",
        "--json",
    ]);
    let add = additive_relative_jordan(&ring, &g).unwrap();
    assert_eq!(matrix_from_json(&ring, &v["x_ss"]).unwrap(), add.x_ss);
    assert_eq!(matrix_from_json(&ring, &v["x_n"]).unwrap(), add.x_n);

    // equal characteristic, residue field of order 25
    let spec = "Fq[[x]]:q=25,prec=3";
    let ring: Ring = spec.parse().unwrap();
    let m = "[[1,1],[0,1]]";
    let g = matrix_from_json(&ring, &serde_json::from_str(m).unwrap()).unwrap();
    let v = json(&["jordan", "--ring", spec, "--matrix", m, "--json"]);
    assert_eq!(
        matrix_from_json(&ring, &v["t"]).unwrap(),
        relative_jordan(&ring, &g).unwrap().t
    );
}

#[test]
fn purity_report_round_trips() {
    let spec = "Zq:p=5,deg=1,prec=4";
    let ring: Ring = spec.parse().unwrap();
    let m = "[[1,1],[0,6]]";
    let g = matrix_from_json(&ring, &serde_json::from_str(m).unwrap()).unwrap();
    let v = json(&["purity", "--ring", spec, "--matrix", m, "--json"]);
    let r = purity_report(&ring, &g).unwrap();
    assert_eq!(field::<FiberDims>(&v, "dims"), r.dims);
    assert_eq!(field::<FiberDims>(&v, "ss_dims"), r.ss_dims);
    assert_eq!(field::<bool>(&v, "pure"), r.pure);
    assert_eq!(field::<bool>(&v, "pure_ss_part"), r.pure_ss_part);
    assert_eq!(
        field::<StratumIndices>(&v, "stratum_indices"),
        stratum_indices(&ring, &g).unwrap()
    );
}

#[test]
fn ordinary_report_round_trips() {
    let v = json(&[
        "ordinary",
        "--type",
        "A2",
        "--isogeny",
        "adj",
        "--cocharacter",
        "1,2",
        "--torsion",
        "3",
        "--json",
    ]);
    let report: OrdinaryReport = serde_json::from_value(v).unwrap();
    let rd = RootDatum::from_type("A2", Isogeny::Adjoint).unwrap();
    let t = TorusElement::from_cocharacter_at_root_of_unity(&rd, &[1, 2], 3).unwrap();
    assert_eq!(report, is_ordinary(&t).unwrap());
}

#[test]
fn dynamic_report_round_trips() {
    let v = json(&[
        "dynamic",
        "--type",
        "A3",
        "--isogeny",
        "gl",
        "--cocharacter",
        "1,-1,1,-1",
        "--partition",
        "2,2",
        "--json",
    ]);
    let gl = RootDatum::gl(4).unwrap();
    let tau = [1, -1, 1, -1];
    assert_eq!(
        field::<ParabolicData>(&v, "parabolic"),
        dynamic_parabolic(&gl, &tau).unwrap()
    );
    assert_eq!(
        field::<AssociatedReport>(&v, "associated"),
        is_associated(&tau, &[2, 2]).unwrap()
    );
    assert_eq!(
        field::<SemidirectCheck>(&v, "semidirect"),
        semidirect_dimension_check(&[2, 2], 7).unwrap()
    );
    assert_eq!(v["total_dim"], 16);
}

#[test]
fn bala_carter_report_round_trips() {
    let v = json(&["bala-carter", "--type", "B3", "--json"]);
    let rs = build_root_system(&"B3".parse().unwrap()).unwrap();
    let data = enumerate_bala_carter(&rs, Convention::Carter).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), data.len());
    for (item, d) in items.iter().zip(&data) {
        assert_eq!(
            field::<Vec<i64>>(item, "weighted_diagram"),
            d.weighted_diagram
        );
        assert_eq!(field::<usize>(item, "orbit_dim"), d.orbit_dim);
    }
}

#[test]
fn verify_paper_round_trips() {
    let r = run(&["verify-paper", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let reports: Vec<PaperExampleReport> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(reports, verify_paper_examples(Convention::Carter).unwrap());

    let r = run(&["verify-paper", "--distinguished", "literal", "--json"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("VerificationFailed"));
    let reports: Vec<PaperExampleReport> = serde_json::from_str(&r.stdout).unwrap();
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.id.as_str())
        .collect();
    assert_eq!(failed, ["borel-distinguished"]);
}

#[test]
fn exit_codes_are_stable() {
    let cases: [(&[&str], i32); 7] = [
        (&["primes", "--type", "E8"], 0),
        (&["primes", "--type", "E9"], 1),
        (&["primes"], 2),
        (
            &["jordan", "--ring", "Zq:p=4,prec=2", "--matrix", "[[1]]"],
            1,
        ),
        (
            &[
                "jordan",
                "--ring",
                "Zq:p=5,prec=2",
                "--matrix",
                "[[0,3],[1,0]]",
            ],
            1,
        ),
        (&["subsystems", "--type", "E8"], 1),
        (&["--version"], 0),
    ];
    for (args, code) in cases {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.code, code, "{args:?}: {}", first.stderr);
        assert_eq!(
            (first.code, &first.stdout, &first.stderr),
            (second.code, &second.stdout, &second.stderr)
        );
    }
    let err = run(&[
        "jordan",
        "--ring",
        "Zq:p=5,prec=2",
        "--matrix",
        "[[0,3],[1,0]]",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&err.stdout).unwrap();
    assert_eq!(v["error"], "ResidueNotSplit");
    assert!(err.stderr.starts_with("error[ResidueNotSplit]"));
}
