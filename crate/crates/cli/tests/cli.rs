use std::fs;
use std::process::{Command, Output};

fn gasket(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gasket"))
        .args(args)
        .env_remove("GASKET_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate() {
    let o = gasket(&["generate", "--t", "3", "--format", "edge-list-tsv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut ends: Vec<&str> = text.lines().flat_map(|l| l.split('\t')).collect();
    ends.sort();
    ends.dedup();
    assert_eq!(ends.len(), 40);
    assert!(text.starts_with("-\t1\n"));

    let o = gasket(&["generate", "--t", "0"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let o = gasket(&["generate", "--t", "0", "--format", "metadata-json"]);
    assert_eq!(
        stdout(&o),
        "{\"t\":0,\"vertex_count\":1,\"edge_count\":0}\n"
    );

    assert_eq!(gasket(&["generate", "--t", "99"]).status.code(), Some(2));
    assert_eq!(
        gasket(&["generate", "--t", "2", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn distance() {
    let o = gasket(&["distance", "--t", "3", "--from", "233", "--to", "312"]);
    assert_eq!(stdout(&o), "2\n");
    let o = gasket(&[
        "distance", "--t", "3", "--from", "132", "--to", "-", "--method", "symbolic",
    ]);
    assert_eq!(stdout(&o), "2\n");
    let o = gasket(&[
        "distance", "--t", "3", "--from", "132", "--to", "-", "--method", "bfs",
    ]);
    assert_eq!(stdout(&o), "2\n");
    assert_eq!(
        gasket(&["distance", "--t", "2", "--from", "111", "--to", "-"])
            .status
            .code(),
        Some(2)
    );
    let o = gasket(&[
        "distance", "--t", "3", "--from", "132", "--to", "1", "--method", "symbolic",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apl() {
    let o = gasket(&["apl", "--t", "1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,pi,lambda,mu,nu,n_vertices,apl_exact_num,apl_exact_den,apl_decimal"
    );
    assert_eq!(lines.next().unwrap(), "1,6,3,0,3,4,1,1,1.00000000000");

    assert!(gasket(&["apl", "--t", "5", "--check-identity"])
        .status
        .success());
    let o = gasket(&["apl", "--t", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--mode sampled"));

    let args = [
        "apl", "--t", "8", "--mode", "sampled", "--pairs", "20000", "--seed", "7",
    ];
    let a = gasket(&args);
    let b = gasket(&[&args[..], &["--threads", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("t,estimate,std_err,samples,seed\n8,"));
}

#[test]
fn alpha_renewal_table() {
    let o = gasket(&["alpha", "--t", "3"]);
    assert_eq!(
        stdout(&o),
        "t,value_num,value_den,value_decimal\n3,2,9,0.222222222222\n"
    );
    let o = gasket(&["alpha", "--t", "3", "--quantity", "kappa"]);
    assert!(stdout(&o).ends_with("3,3,20,0.150000000000\n"));
    let o = gasket(&[
        "alpha",
        "--from",
        "1",
        "--to",
        "5",
        "--step",
        "2",
        "--quantity",
        "chi",
    ]);
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = gasket(&["renewal", "--t", "2000", "--exact"]);
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let v: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
    assert!((v - 2.0 / 9.0).abs() < 1e-2);
    let o = gasket(&["renewal", "--t", "4", "--raw"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "4,2,3,0.666666666667");
    let o = gasket(&["renewal", "--t", "1", "--samples", "100", "--raw"]);
    assert!(stdout(&o).ends_with("\n1,0.00000000000,0.00000000000,100,0\n"));

    let o = gasket(&["table", "--paper"]);
    let vals: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(
        vals,
        ["0.2207", "0.2211", "0.2213", "0.2214", "0.2215", "0.2216"]
    );
    let o = gasket(&["table", "--from", "3", "--to", "3"]);
    assert_eq!(stdout(&o), "t,alpha_bar_over_t\n3,0.0740\n");
}

#[test]
fn verify_suites() {
    for (suite, tmax) in [
        ("geometry", "5"),
        ("geodesic", "7"),
        ("counting", "12"),
        ("neighbors", "4"),
    ] {
        let o = gasket(&["verify", "--suite", suite, "--tmax", tmax]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("[PASS]")));
    }
    assert_eq!(
        gasket(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_config_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("edges.tsv");
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "threads = 2\nseed = 5\n").unwrap();
    let o = gasket(&[
        "generate",
        "--t",
        "2",
        "--output",
        out.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 42);

    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("edges.tsv.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["command"], "generate");
    assert_eq!(meta["threads"], 2);
    assert_eq!(meta["seed"], 5);
    assert!(meta["version"].is_string());
    assert!(meta["elapsed_ms"].is_u64());

    let side = dir.path().join("m.json");
    let o = gasket(&[
        "table",
        "--paper",
        "--meta",
        side.to_str().unwrap(),
        "--threads",
        "3",
    ]);
    assert!(o.status.success());
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(meta["threads"], 3);

    let o = Command::new(env!("CARGO_BIN_EXE_gasket"))
        .args(["table", "--paper", "--meta", side.to_str().unwrap()])
        .env("GASKET_THREADS", "4")
        .output()
        .unwrap();
    assert!(o.status.success());
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(meta["threads"], 4);
}

#[test]
fn deterministic_output() {
    for args in [
        &["generate", "--t", "4", "--format", "adjacency-jsonl"][..],
        &["apl", "--t", "4"][..],
        &["renewal", "--t", "50", "--samples", "5000", "--seed", "3"][..],
    ] {
        assert_eq!(gasket(args).stdout, gasket(args).stdout, "{args:?}");
    }
}
