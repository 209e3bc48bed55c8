use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hptsp_core::lab::{bucket_census, leak_test_against, sac_test, LeakFeature, LeakTarget};
use hptsp_core::{
    generate_random_instance, load_instance, make_example_instance, save_instance, solve_hptsp, SearchConfig,
};

fn hptsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hptsp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example_file(dir: &tempfile::TempDir) -> PathBuf {
    let p = dir.path().join("example.json");
    save_instance(&make_example_instance(), &p).unwrap();
    p
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    let mut rows = vec![r.headers().unwrap().iter().map(String::from).collect()];
    rows.extend(r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()));
    rows
}

#[test]
fn table_reproduces_reference_rows() {
    let o = hptsp(&["table"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 25);
    assert!(out.contains("B1A5C3D6 → 4ee28c970941442744512cedeff440a3292f6c53"));
    assert_eq!(out.lines().last().unwrap(), "minimum: DCAB 0274a90142fff8495ee8fc6309bbea1abe6fe9db");
}

#[test]
fn solve_example_and_write_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let inst = example_file(&dir);
    let cert = dir.path().join("dcab.json");
    let o = hptsp(&["solve", "--instance", path_str(&inst), "--out", path_str(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("DCAB 0274a90142fff8495ee8fc6309bbea1abe6fe9db 24 routes"));

    let o = hptsp(&["verify", "--instance", path_str(&inst), "--cert", path_str(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("accepted"));
}

#[test]
fn solve_matches_library_for_any_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let inst = generate_random_instance(7, 1..=50, 99, true).unwrap();
    let path = dir.path().join("r.json");
    save_instance(&inst, &path).unwrap();
    let direct = solve_hptsp(&inst, &SearchConfig::default()).unwrap();
    let want = format!("{} {} 5040 routes", inst.route_name(direct.best_route.order()), direct.best_digest);
    for w in ["1", "3"] {
        let o = hptsp(&["solve", "--instance", path_str(&path), "--workers", w]);
        assert!(stdout(&o).starts_with(&want), "{}", stdout(&o));
    }
}

#[test]
fn solve_respects_vertex_limit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    save_instance(&generate_random_instance(8, 1..=9, 1, false).unwrap(), &path).unwrap();
    let o = hptsp(&["solve", "--instance", path_str(&path), "--vertex-limit", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("limit"), "{}", stderr(&o));
}

#[test]
fn decide_reports_absence_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    save_instance(&make_example_instance().with_threshold(&"0".repeat(40)).unwrap(), &path).unwrap();
    let o = hptsp(&["decide", "--instance", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no route ≤ m"), "{}", stderr(&o));

    let o = hptsp(&["decide", "--instance", path_str(&example_file(&dir))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("DCAB"));
}

#[test]
fn verify_rejections_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = example_file(&dir);
    let cases = [
        (r#"{"order":["D","C","A","B"],"costs":[3,5,1,7]}"#, "wrong-cost"),
        (r#"{"order":["D","C","A","A"],"costs":[3,5,1,6]}"#, "duplicate-vertex"),
        (r#"{"order":["D","C","A"],"costs":[3,5,4]}"#, "missing-vertex"),
        (r#"{"order":["D","C","A","Z"],"costs":[3,5,1,6]}"#, "missing-vertex"),
        (r#"{"order":["A","B","C","D"],"costs":[1,2,3,4]}"#, "digest-above-m"),
    ];
    for (i, (body, reason)) in cases.iter().enumerate() {
        let cert = dir.path().join(format!("c{i}.json"));
        std::fs::write(&cert, body).unwrap();
        let o = hptsp(&["verify", "--instance", path_str(&inst), "--cert", path_str(&cert)]);
        assert_eq!(o.status.code(), Some(1), "{body}");
        assert!(stderr(&o).contains(reason), "{body}: {}", stderr(&o));
    }
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let good = make_example_instance().to_json();
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, r#"{"order":["D","C","A","B"],"costs":[3,5,1,6]}"#).unwrap();

    // Every proper prefix of a valid file is invalid JSON.
    let mut bodies: Vec<String> = (0..good.len()).step_by(5).map(|n| good[..n].to_string()).collect();
    let variants = [
        good.replace("\"sha1\"", "\"md5\""),
        good.replace("0274a9", "0274A9"),
        good.replace("\"D\"", "\"A\""),
        good.replace("false", "0"),
        good.replacen('0', "-1", 1),
    ];
    assert!(variants.iter().all(|v| *v != good));
    bodies.extend(variants);
    bodies.extend(["\u{0}\u{1}garbage".to_string(), "[]".to_string()]);
    for (i, body) in bodies.iter().enumerate() {
        let p = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&p, body).unwrap();
        for args in [
            vec!["solve", "--instance", path_str(&p)],
            vec!["decide", "--instance", path_str(&p)],
            vec!["verify", "--instance", path_str(&p), "--cert", path_str(&cert)],
        ] {
            let o = hptsp(&args);
            assert_eq!(o.status.code(), Some(2), "{args:?} on {body:?}: {}", stderr(&o));
        }
    }

    let inst = example_file(&dir);
    std::fs::write(&cert, r#"{"order":["D"],"cost":[3]}"#).unwrap();
    let o = hptsp(&["verify", "--instance", path_str(&inst), "--cert", path_str(&cert)]);
    assert_eq!(o.status.code(), Some(2));

    for args in [
        &["frobnicate"][..],
        &[],
        &["solve"],
        &["gen", "--v", "two"],
        &["gen", "--v", "2"],
        &["gen", "--v", "4", "--min-weight", "9", "--max-weight", "3"],
        &["solve", "--instance", "/nonexistent/x.json"],
        &["sac", "--trials", "10"],
        &["census", "--prefix-bits", "17"],
        &["bench", "--from", "3", "--to", "4"],
        &["leak", "--workers", "0"],
        &["leak", "--target", "sideways"],
    ] {
        let o = hptsp(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn gen_is_a_thin_delegate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let o = hptsp(&[
        "gen",
        "--v",
        "6",
        "--min-weight",
        "3",
        "--max-weight",
        "40",
        "--directed",
        "--seed",
        "17",
        "--out",
        path_str(&path),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(load_instance(&path).unwrap(), generate_random_instance(6, 3..=40, 17, true).unwrap());

    let o = hptsp(&["gen", "--v", "5", "--hash", "sha256", "--m", &"7".repeat(64)]);
    let inst = hptsp_core::Instance::from_json(&stdout(&o)).unwrap();
    assert_eq!((inst.hash_id(), inst.v(), inst.m()), ("sha256", 5, "7".repeat(64).as_str()));
}

#[test]
fn sac_csv_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sac.csv");
    let o = hptsp(&["sac", "--trials", "1500", "--input-len", "16", "--seed", "5", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = read_csv(&out);
    assert_eq!(rows[0], ["bit", "flip_rate"]);
    let direct = sac_test("sha1", 1500, 16, 5).unwrap();
    assert_eq!(rows.len() - 1, direct.per_output_bit_rates.len());
    for (row, rate) in rows[1..].iter().zip(&direct.per_output_bit_rates) {
        assert_eq!(row[1].parse::<f64>().unwrap(), *rate);
    }
}

#[test]
fn leak_csv_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("leak.csv");
    let o = hptsp(&[
        "leak",
        "--v",
        "6",
        "--seed",
        "4",
        "--shuffles",
        "200",
        "--target",
        "tour-cost",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = read_csv(&out);
    assert_eq!(rows[0], ["feature", "target", "v", "sample_size", "correlation", "p_value"]);
    assert_eq!(rows.len(), 4);
    let inst = generate_random_instance(6, 1..=100, 4, false).unwrap();
    for (row, f) in rows[1..].iter().zip(LeakFeature::ALL) {
        let r = leak_test_against(&inst, f, LeakTarget::TourCost, 4, 200).unwrap();
        assert_eq!((row[0].as_str(), row[1].as_str(), row[3].as_str()), (f.name(), "tour-cost", "720"));
        assert_eq!(row[4].parse::<f64>().unwrap(), r.correlation);
        assert_eq!(row[5].parse::<f64>().unwrap(), r.p_value_chance);
    }
}

#[test]
fn extend_demo_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ext.csv");
    let o = hptsp(&["extend-demo", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = read_csv(&out);
    assert_eq!(rows.len(), 25);
    assert_eq!(rows[0][0], "route");
    let abcd = rows.iter().find(|r| r[0] == "ABCD").unwrap();
    assert_eq!((abcd[1].as_str(), abcd[2].as_str()), ("A1B2", "C3D4"));
    assert_eq!(abcd[5], "897ca6fcdeed5883fd7bd85eae55406ac81d9d74");
    assert!(rows[1..].iter().all(|r| r[3] == r[4] && r[3] != r[5] && r[6] == "true" && r[7] == "true"));
}

#[test]
fn extend_demo_needs_merkle_damgard() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s256.json");
    save_instance(&make_example_instance().with_hash("sha256").unwrap(), &path).unwrap();
    let o = hptsp(&["extend-demo", "--instance", path_str(&path), "--out", path_str(&dir.path().join("x.csv"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("census.csv");
    let o = hptsp(&["census", "--prefix-bits", "1", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(read_csv(&out), [["bucket", "count"], ["0", "13"], ["1", "11"]]);

    let o = hptsp(&["census", "--v", "7", "--seed", "3", "--prefix-bits", "6", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let direct = bucket_census(&generate_random_instance(7, 1..=100, 3, false).unwrap(), 6).unwrap();
    let counts: Vec<u64> = read_csv(&out)[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(counts, direct.counts);
}

#[test]
fn bench_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.csv");
    let o = hptsp(&["bench", "--from", "6", "--to", "7", "--runs", "1", "--workers", "2", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = read_csv(&out);
    assert_eq!(rows[0], ["v", "wall_time_ms", "routes_examined", "routes_per_second"]);
    assert_eq!((rows[1][0].as_str(), rows[1][2].as_str()), ("6", "720"));
    assert_eq!((rows[2][0].as_str(), rows[2][2].as_str()), ("7", "5040"));
}
