mod common;

use std::process::Command;

use common::*;
use matinv::{fingerprint, Field, Fingerprint, MatTuple, Matrix, SplitBudget};
use matinv_cli::{MapFile, TupleFile, VarietyFile, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NO, EXIT_YES};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f7_pair(dir: &std::path::Path) -> (std::path::PathBuf, std::path::PathBuf, std::path::PathBuf) {
    let f = Field::prime(7).unwrap();
    let x = MatTuple::new(vec![e(&f, 2, 0, 1), e(&f, 2, 1, 0)]).unwrap();
    let g = Matrix::from_i64(&f, &[&[1, 2], &[3, 4]]);
    let y = x.conjugate(&g).unwrap();
    let z = MatTuple::new(vec![e(&f, 2, 0, 1), e(&f, 2, 1, 0).scale(&f.from_i64(2))]).unwrap();
    (write_tuple(dir, "x.json", &x), write_tuple(dir, "y.json", &y), write_tuple(dir, "z.json", &z))
}

#[test]
fn in_u_reports_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let f = Field::prime(7).unwrap();
    let x = write_tuple(dir.path(), "x.json", &MatTuple::new(vec![e(&f, 2, 0, 1), e(&f, 2, 1, 0)]).unwrap());
    let out = run_paths(&["in-u"], &[&x]);
    assert_eq!(out.code, EXIT_YES);
    assert!(out.stdout.contains("spanning_words: 1, X1, X2, X2*X1"), "{}", out.stdout);

    let tri = write_tuple(dir.path(), "t.json", &MatTuple::new(vec![e(&f, 2, 0, 0), e(&f, 2, 0, 1)]).unwrap());
    let out = run_paths(&["in-u"], &[&tri]);
    assert_eq!(out.code, EXIT_NO);
    assert!(out.stdout.contains("defect_dim: 3"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\":\"F7\",\"n\":2}").unwrap();
    let out = run_paths(&["in-u"], &[&bad]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stdout.contains("error:"));
    std::fs::write(&bad, r#"{"field":"F6","n":1,"m":1,"mats":[[["1"]]]}"#).unwrap();
    assert_eq!(run_paths(&["in-u"], &[&bad]).code, EXIT_INPUT);
    std::fs::write(&bad, r#"{"field":"F7","n":2,"m":1,"mats":[[["1","x"],["0","0"]]]}"#).unwrap();
    assert_eq!(run_paths(&["in-u"], &[&bad]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(run(&["--help"]).code, EXIT_YES);
}

#[test]
fn conjugate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (x, y, z) = f7_pair(dir.path());
    for algo in ["linear", "reconstruct", "both"] {
        let out = run_paths(&["conjugate", "--algo", algo], &[&x, &y]);
        assert_eq!(out.code, EXIT_YES, "{}", out.stdout);
        assert!(out.stdout.contains("Conjugate"));
        assert!(out.stdout.contains("seed: 0"));
    }
    let out = run_paths(&["conjugate", "--algo", "reconstruct"], &[&x, &z]);
    assert_eq!(out.code, EXIT_NO);
    assert!(out.stdout.contains("witness: invariant (1,X1*X2)"), "{}", out.stdout);
    let out = run_paths(&["conjugate", "--algo", "linear"], &[&x, &z]);
    assert_eq!(out.code, EXIT_NO);
    assert!(out.stdout.contains("IntertwinerRankDefect"));
}

#[test]
fn conjugate_rejects_non_generating_x() {
    let dir = tempfile::tempdir().unwrap();
    let f = Field::prime(7).unwrap();
    let tri = write_tuple(dir.path(), "t.json", &MatTuple::new(vec![e(&f, 2, 0, 0), e(&f, 2, 0, 1)]).unwrap());
    let out = run_paths(&["conjugate"], &[&tri, &tri]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn gf2_pair_is_inconclusive_under_reconstruct() {
    let budget = SplitBudget { max_word_len: 1, tries: 0 };
    let x = gf2_inconclusive_pair(budget);
    let dir = tempfile::tempdir().unwrap();
    let path = write_tuple(dir.path(), "x.json", &x);
    let args = ["conjugate", "--algo", "reconstruct", "--budget-words", "1", "--budget-tries", "0"];
    let out = run_paths(&args, &[&path, &path]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    assert!(out.stdout.contains("NoSplitZ"));
    let out = run_paths(&["conjugate", "--algo", "both", "--budget-words", "1", "--budget-tries", "0"], &[&path, &path]);
    assert_eq!(out.code, EXIT_YES, "linear decides where reconstruction gives up");
}

#[test]
fn separate_and_fingerprint() {
    let dir = tempfile::tempdir().unwrap();
    let (x, y, z) = f7_pair(dir.path());
    let out = run_paths(&["separate"], &[&x, &y]);
    assert_eq!(out.code, EXIT_YES);
    assert!(out.stdout.contains("SameFiber"));
    let out = run_paths(&["separate", "--L", "2"], &[&x, &z]);
    assert_eq!(out.code, EXIT_NO);
    assert!(out.stdout.contains("(1,X1*X2) 1 vs 2"));

    let out = run_paths(&["--format", "json", "fingerprint", "--L", "3"], &[&x]);
    assert_eq!(out.code, EXIT_YES);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let table = Fingerprint::from_table(v["table"].as_str().unwrap()).unwrap();
    let tuple = matinv_cli::io::read_tuple(&x).unwrap();
    assert_eq!(table, fingerprint(&tuple, 3).unwrap());
}

#[test]
fn morphism_counterexample_and_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_json(dir.path(), "map.json", &inclusion_map());
    let source = write_json(dir.path(), "s.json", &s_points(&[0, 1, 2]));
    let target = write_json(dir.path(), "r.json", &r_points(&[1, 2, 3]));
    let out = run_paths(&["morphism"], &[&map, &source, &target]);
    assert_eq!(out.code, EXIT_NO, "{}", out.stdout);
    assert!(out.stdout.contains("failing_points: t=0\n"), "{}", out.stdout);

    let f = Field::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let d = Matrix::diag(&f, &[f.one(), f.from_i64(-1)]);
    let mut points = Vec::new();
    while points.len() < 5 {
        let g = Matrix::random_invertible(&f, 2, &mut rng);
        let x1 = &(&g * &d) * &g.inverse().unwrap();
        let x = MatTuple::new(vec![x1, Matrix::random(&f, 2, &mut rng)]).unwrap();
        if matinv::in_u(&x).verdict {
            points.push(x);
        }
    }
    let variety = matinv::variety_from_points(points, "involutions").unwrap();
    let path = write_json(dir.path(), "inv.json", &VarietyFile::from_variety(&variety));
    let out = run_paths(&["kernel", "--d", "2"], &[&path]);
    assert_eq!(out.code, EXIT_YES);
    assert!(out.stdout.lines().any(|l| l == "6 + X1*X1"), "{}", out.stdout);
}

#[test]
fn binary_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let (x, y, _) = f7_pair(dir.path());
    let bin = env!("CARGO_BIN_EXE_matinv");
    let out = Command::new(bin).args(["conjugate", "--seed", "9"]).arg(&x).arg(&y).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_YES));
    let lib = run_paths(&["conjugate", "--seed", "9"], &[&x, &y]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);
    let out = Command::new(bin).arg("in-u").arg(dir.path().join("missing.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert!(!out.stderr.is_empty());
}

#[test]
fn jobs_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_json(dir.path(), "map.json", &inclusion_map());
    let source = write_json(dir.path(), "s.json", &s_points(&[0, 1, 2]));
    let target = write_json(dir.path(), "r.json", &r_points(&[1, 2, 3]));
    let one = run_paths(&["--format", "json", "--jobs", "1", "morphism"], &[&map, &source, &target]);
    let four = run_paths(&["--format", "json", "--jobs", "4", "morphism"], &[&map, &source, &target]);
    assert_eq!(one, four);
}

#[test]
fn map_and_variety_files_round_trip() {
    let map = inclusion_map();
    let (field, spec) = map.to_spec().unwrap();
    assert_eq!(MapFile::from_spec(&spec, &field), map);
    let v = s_points(&[0, 1, 2]);
    assert_eq!(VarietyFile::from_variety(&v.to_variety().unwrap()), v);
}

fn any_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![
        Field::rationals(),
        Field::prime(7).unwrap(),
        Field::prime(2147483647).unwrap(),
        "F2^3:1,1,0,1".parse().unwrap(),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tuple_files_round_trip(f in any_field(), n in 1usize..=3, m in 1usize..=3, seed in any::<u64>()) {
        let x = MatTuple::random(&f, n, m, &mut ChaCha8Rng::seed_from_u64(seed));
        let file = TupleFile::from_tuple(&x);
        let text = serde_json::to_string(&file).unwrap();
        let back: TupleFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_tuple().unwrap(), x);
    }

    #[test]
    fn fingerprint_tables_round_trip(f in any_field(), seed in any::<u64>(), cyclic in any::<bool>()) {
        let x = MatTuple::random(&f, 2, 2, &mut ChaCha8Rng::seed_from_u64(seed));
        let fp = matinv::fingerprint_with(&x, 3, matinv::FingerprintOptions { cyclic_dedup: cyclic }).unwrap();
        prop_assert_eq!(Fingerprint::from_table(&fp.to_table()).unwrap(), fp);
    }
}
