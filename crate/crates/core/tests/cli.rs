use nilhecke::cli::run_with;

fn run(line: &str) -> (i32, String, String) {
    let args: Vec<String> = std::iter::once("schub").chain(line.split_whitespace()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn golden_outputs() {
    assert_eq!(run("schub --type A8 --w 1,5,4,3,2,3,4 --u 2,4 --v 4,3,2,3,4").1, "2\n");
    assert_eq!(
        run("schub --type A8 --w 2,4,3,2 --u 2,3,2 --v 4,3,2").1,
        "a1*a2 + a2^2 + a1*a3 + 2*a2*a3 + a3^2\n"
    );
}

#[test]
fn group_info() {
    let (code, out, _) = run("group-info --type I2(5):normalized");
    assert_eq!(code, 0);
    for line in ["order: 10", "roots: 10 (5 positive)", "lattice index: 5"] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn json_envelope() {
    let (code, out, _) = run("schub --type A3 --w 1,2,3,1 --u 1,3 --v 1,3 --algo all --json");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["query", "result", "algo"] {
        assert!(v.get(key).is_some(), "{out}");
    }
}

#[test]
fn every_subcommand_runs() {
    for line in [
        "group-info --type H3",
        "schub --type G2 --w 1,2,1,2 --u 1,2 --v 1,2 --algo all",
        "schub --type B2 --w 1,2,1 --all-pairs --algo bs",
        "transition --type A3 --w 2,1,3,2",
        "transition --type I2(5) --w 1,2,1 --v 1",
        "billey --type B3 --u 1,2 --v 2,1,3,2",
        "smooth --type A3 --w 2,1,3,2 --rational",
        "smooth --type H3 --w 1,2,3",
        "rank2 --type I2(7)",
        "ck-schub --type B2 --w 1,2,1 --specialize t1",
        "ck-schub --type A2 --w 1,2,1 --u 1 --v 2,1 --json",
    ] {
        let (code, out, err) = run(line);
        assert_eq!(code, 0, "{line}: {err}");
        assert!(!out.is_empty(), "{line}");
    }
}

#[test]
fn deterministic() {
    let line = "schub --type B3 --w 1,2,3,2,1 --all-pairs --algo recursive";
    assert_eq!(run(line), run(line));
}

#[test]
fn exit_codes() {
    assert_eq!(run("schub --type A2 --w 1,3 --u 1 --v 1").0, 2);
    assert_eq!(run("schub --type A9x --w 1").0, 2);
    assert_eq!(run("frobnicate").0, 2);
    assert_eq!(run("--help").0, 0);
    let (code, _, err) = run("transition --type A2 --w 1,1");
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    assert_eq!(run("ck-schub --type H3 --w 1").0, 1);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run("selftest");
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}
