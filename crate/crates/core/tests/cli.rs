use std::process::Command;

fn ranktower(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ranktower")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn split_listing() {
    assert_eq!(ranktower(&["split", "43", "7"]).1, "e=1 f=1 g=6 (splits completely)\n");
    let (code, _, err) = ranktower(&["split", "3", "9"]);
    assert_eq!(code, 1);
    assert!(err.contains("RamifiedPrime"), "{err}");
    let (code, out, _) = ranktower(&["--json", "split", "2", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["schema"].as_u64(), v["f"].as_u64(), v["g"].as_u64()), (Some(1), Some(3), Some(2)));
}

#[test]
fn inert_prime_listing() {
    assert_eq!(ranktower(&["inert-primes", "3", "--count", "5", "--exclude", "3"]).1, "2 5 11 17 23\n");
    let (_, out, _) = ranktower(&["inert-primes", "9", "--count", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["primes"], serde_json::json!([2, 5, 11, 23]));
}

#[test]
fn factorization_verification() {
    let (code, out, _) = ranktower(&["verify-factorization", "--conductor", "3", "--prime", "7", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("result: pass"));

    let six = [
        "ζ₇⁵ + 2ζ₇³ + ζ₇² + 1",
        "ζ₇⁵ + ζ₇⁴ + 2ζ₇² + ζ₇",
        "2ζ₇⁵ + ζ₇⁴ + 2ζ₇³ + ζ₇² + 2ζ₇ + 1",
        "-2ζ₇⁵ - ζ₇⁴ - ζ₇³ - 2ζ₇² - 2ζ₇ - 1",
        "2ζ₇⁴ + ζ₇³ + ζ₇² + ζ₇",
        "ζ₇⁵ + ζ₇⁴ + ζ₇³ + 2ζ₇²",
    ];
    let mut args = vec!["verify-factorization", "--conductor", "7", "--prime", "43"];
    args.extend(six);
    let (code, out, _) = ranktower(&args);
    assert_eq!(code, 1);
    assert!(out.contains("-43ζ₇²"), "{out}");
    assert!(out.contains("unit multiple"), "{out}");

    args.pop();
    let (code, out, _) = ranktower(&args);
    assert_eq!(code, 1);
    assert!(out.contains("result: FAIL"));

    let (code, _, _) = ranktower(&["verify-factorization", "--conductor", "7", "--prime", "43", "ζ₅ + 1"]);
    assert_eq!(code, 2);
}

#[test]
fn reproduce_and_out_file() {
    for example in ["example1", "example2", "example3"] {
        let (code, out, err) = ranktower(&["reproduce", example, "--n-max", "1"]);
        assert_eq!(code, 0, "{example}: {err}");
        assert!(out.contains("result: pass"));
    }
    let dir = std::env::temp_dir().join(format!("ranktower-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let path_str = path.to_str().unwrap();
    let args = ["--json", "--out", path_str, "certificate", "--ell", "5", "--p", "3", "--N", "2", "--s0", "2"];
    let (code, out, _) = ranktower(&args);
    assert_eq!((code, out.as_str()), (0, ""));
    let first = std::fs::read_to_string(&path).unwrap();
    ranktower(&args);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["kind"], "certificate");
    assert_eq!(v["rows"][2]["fine_selmer_lower_conservative"], "16");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn construct_failures() {
    let (code, _, err) = ranktower(&["construct", "--ell", "5", "--p", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("EqualPrimes"));
    let (code, out, _) = ranktower(&["--json", "construct", "--ell", "4", "--p", "3"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "ValidationFailed");
    assert_eq!(v["validation"]["failures"][0]["citation"], "kummer-tower");
    assert_eq!(ranktower(&["construct", "--ell", "5"]).0, 2);
}
