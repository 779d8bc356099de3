use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crgroups"))
        .args(args)
        .output()
        .expect("spawn crgroups")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn check_line<'a>(text: &'a str, name: &str) -> &'a str {
    let prefix = format!("check {name} ");
    text.lines()
        .find(|l| l.starts_with(&prefix))
        .unwrap_or_else(|| panic!("no check {name} in\n{text}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("crgroups-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn construct_toy_g2_has_order_64() {
    let o = run(&["construct", "g2", "--n", "2", "--toy-g1-dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(check_line(&text, "g2").contains("order=64"));
    assert!(text.starts_with("command construct g2\n"));
}

#[test]
fn params_scan_lists_the_minimal_triple() {
    let o = run(&["construct", "params", "--n-max", "64"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(check_line(&stdout(&o), "params").contains("triples=(2,3,12),"));

    let o = run(&["construct", "params", "--k", "1", "--m", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("check params fail"));
}

#[test]
fn construct_g1_reports_sizes_and_round_trips() {
    let path = scratch("g1.txt");
    let p = path.to_str().unwrap();
    let o = run(&[
        "construct",
        "g1",
        "--n",
        "3",
        "--m",
        "1",
        "--closure-cap",
        "100000",
        "--out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = check_line(&text, "g1");
    assert!(line.contains("H=") && line.contains("order="));

    let o = run(&["verify", "cr-axioms", "--file", p]);
    let text = stdout(&o);
    for clause in ["cr-b", "cr-c", "cr-d"] {
        assert!(check_line(&text, clause).contains(" pass"), "{text}");
    }
}

#[test]
fn star_on_toy64_is_64_of_64() {
    let o = run(&["verify", "star", "--g2", "toy64", "--istar", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = check_line(&text, "star");
    assert!(line.contains("pass") && line.contains("checked=64") && line.contains("matched=64"));
}

#[test]
fn count_x_both_methods_agree() {
    let o = run(&[
        "verify", "count-x", "--g2", "toy64", "--istar", "0,1", "--method", "both",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(check_line(&text, "count-x-naive").contains("X=4096"));
    let structured = check_line(&text, "count-x-structured");
    assert!(structured.contains("X=4096"));
    // toy64 breaks stage-1 clause (d): flagged, never a plain pass
    assert!(structured.contains("conditional"));
    assert!(check_line(&text, "cross-oracle").contains("pass"));
}

#[test]
fn relations_hold_on_toys() {
    for toy in ["toy64", "sd96", "sd512"] {
        let o = run(&["verify", "relations", "--g2", toy]);
        assert_eq!(o.status.code(), Some(0), "{toy}");
        let text = stdout(&o);
        for family in ["alpha", "beta", "gamma", "delta", "epsilon"] {
            assert!(check_line(&text, &format!("relation-{family}")).contains(" pass"));
        }
    }
}

#[test]
fn b_partition_on_toy64_is_conditional() {
    let o = run(&["verify", "b-partition", "--g2", "toy64", "--istar", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = check_line(&text, "b-partition");
    assert!(line.contains("conditional"), "{line}");
}

#[test]
fn tail_and_cover_examples() {
    let o = run(&[
        "measure",
        "tail",
        "--mstar",
        "1,1",
        "--mstarstar",
        "2,4",
        "--from",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = check_line(&text, "tail");
    assert!(line.contains("measure=5/8") && line.contains("bound=3/4"));

    let o = run(&["measure", "cover", "--sizes", "4,4", "--widths", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(check_line(&text, "cover").contains("lower=4 upper=4 exact=4"));
}

#[test]
fn cylinder_measure_is_a_product_of_ratios() {
    let o = run(&[
        "measure",
        "cylinder",
        "--sizes",
        "4,6,5",
        "--subsets",
        "2,full,3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(check_line(&stdout(&o), "cylinder").contains("measure=3/10"));
}

#[test]
fn profile_reports_each_clause() {
    let good = "0 2 1 18 17\n1 3 2 2^262146 2^262145\n2 4 3 2^2^2^262148 2^2^2^262147\n";
    let path = scratch("prof.txt");
    std::fs::write(&path, good).unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["measure", "profile", "--file", p, "--ratio", "3/4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for clause in ["a", "b", "c", "e"] {
        assert!(check_line(&text, &format!("profile-{clause}")).contains(" pass"));
    }

    let bad = good.replace("1 3 2 ", "1 3 1 ");
    std::fs::write(&path, bad).unwrap();
    let o = run(&["measure", "profile", "--file", p, "--ratio", "3/4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(check_line(&stdout(&o), "profile-a").contains("fail"));
}

#[test]
fn witness_matches_naive_product() {
    let o = run(&["measure", "witness", "--levels", "sd512,sd4096", "--naive"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(check_line(&text, "a-prime").contains(" pass"));
    assert!(check_line(&text, "naive-product").contains(" pass"));
}

#[test]
fn same_seed_gives_identical_output() {
    let args = [
        "--seed", "7", "verify", "crucial", "--g2", "sd4096", "--random", "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "--seed", "7", "--jobs", "1", "verify", "crucial", "--g2", "sd4096", "--random", "1",
    ]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn json_output_parses() {
    let o = run(&[
        "--json",
        "measure",
        "tail",
        "--mstar",
        "1,1",
        "--mstarstar",
        "2,4",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "measure tail");
    assert_eq!(v["checks"][0]["values"]["measure"], "5/8");
}

#[test]
fn wall_time_goes_to_stderr() {
    let o = run(&["measure", "cover", "--sizes", "3", "--widths", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("wall-time-ms"));
    assert!(!stdout(&o).contains("wall-time"));
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(
        run(&["verify", "star", "--g2", "toy64"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "star", "--g2", "toy64", "--istar", "0,9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["measure", "tail", "--mstar", "x", "--mstarstar", "2"])
            .status
            .code(),
        Some(2)
    );
    // construction failure
    let o = run(&["construct", "g2", "--n", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    // a failed check
    assert_eq!(
        run(&["verify", "cr-axioms", "--n", "2", "--m", "2"])
            .status
            .code(),
        Some(1)
    );
}
