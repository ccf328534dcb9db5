use std::process::Command as Process;

use hilbnef::commands::replay;
use hilbnef::scan::scan;
use hilbnef::{run, Command, Request, SurfaceConfig, Verdict};

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_hilbnef"))
}

fn requests() -> Vec<Request> {
    let mut v = vec![
        Request::new(Command::Wall, SurfaceConfig::p3_hypersurface(5), Some(5)),
        Request::new(Command::Nef, SurfaceConfig::p3_hypersurface(5), Some(2)),
        Request::new(Command::Nef, SurfaceConfig::cyclic_cover(3, 6, 4), Some(7)),
        Request::new(Command::Nef, SurfaceConfig::rank_one(3, -2, 2, 1), Some(13)),
        Request::new(Command::Critdiv, SurfaceConfig::p3_hypersurface(6), None),
        Request::new(Command::Nef, SurfaceConfig::dp1(), Some(4)),
        Request::new(Command::Dp1, SurfaceConfig::dp1(), Some(3)),
    ];
    let mut twisted = Request::new(Command::Wall, SurfaceConfig::p3_hypersurface(4), Some(9));
    twisted.twist = Some(vec![-2]);
    v.push(twisted);
    v
}

#[test]
fn echoed_input_reproduces_output() {
    for req in requests() {
        let first = run(&req).unwrap().json();
        let again = replay(&first).unwrap().json();
        assert_eq!(first, again, "{:?}", req.command);
        assert_eq!(run(&req).unwrap().json(), first);
    }
}

#[test]
fn rationals_are_canonical_strings() {
    let out = run(&Request::new(Command::Nef, SurfaceConfig::dp1(), Some(4))).unwrap();
    let d = out.document.nef_divisor.unwrap();
    // 3(-K) + ½(H - E1) = [19/2, -7/2, -3, ...].
    assert_eq!(d.l_part[0], "19/2");
    assert_eq!(d.l_part[1], "-7/2");
    assert_eq!(d.l_part[2], "-3/1");
    assert_eq!(d.b_half, "-1/1");
    let ext = out.document.extremality.unwrap();
    assert_eq!(ext.kind, "ExtremalByGenusBound");
    assert_eq!(out.document.dual_curve.unwrap().pairing, "0/1");
}

#[test]
fn dp1_critdiv_matches_predicate() {
    let out = run(&Request::new(Command::Critdiv, SurfaceConfig::dp1(), Some(3))).unwrap();
    let c = out.document.critical_divisors.unwrap();
    assert_eq!(Some(c.count), c.predicted_count);
    assert_eq!(c.count, 79);
}

#[test]
fn dp1_n2_report_lists_extras() {
    let out = run(&Request::new(Command::Dp1, SurfaceConfig::dp1(), Some(2))).unwrap();
    let d = out.document.dp1.unwrap();
    assert!(d.all_passed && d.default_ray);
    assert!(d.n2_extras.contains(&vec![1, -1, 0, 0, 0, 0, 0, 0, 0]));
    assert_eq!(out.verdict, Verdict::Certified);
}

#[test]
fn quintic_scan_has_one_wall() {
    let sc = scan(&Request::new(Command::Wall, SurfaceConfig::p3_hypersurface(5), Some(5))).unwrap();
    assert_eq!(sc.critical_count(), 1);
    assert!(sc.csv().lines().any(|l| l.starts_with("higher-rank bound,")));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["wall", "--preset", "p3-hypersurface", "--d", "5", "--n", "5"]), 0);
    assert_eq!(code(&["wall", "--preset", "p3-hypersurface", "--d", "5", "--n", "1"]), 1);
    assert_eq!(code(&["nef", "--preset", "p3-hypersurface", "--d", "5", "--n", "2"]), 2);
    assert_eq!(code(&["nef", "--preset", "cyclic-cover", "--d", "2", "--e", "6", "--n", "4"]), 1);
    assert_eq!(code(&["wall", "--preset", "p3-hypersurface", "--d", "5", "--n", "5", "--twist", "1"]), 1);
}

#[test]
fn config_file_and_replay_file() {
    let dir = std::env::temp_dir().join(format!("hilbnef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("f1.toml");
    std::fs::write(
        &cfg,
        "name = \"F1\"\nrank = 2\ngram = [1, 0, 0, -1]\ncanonical = [-3, 1]\nchi_o = 1\n\
         effective_generators = [[0, 1], [1, -1]]\nample_reference = [2, -1]\n",
    )
    .unwrap();
    let out = bin()
        .args(["wall", "--config", cfg.to_str().unwrap(), "--twist", "-1,0", "--n", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = dir.join("wall.json");
    std::fs::write(&doc, &out.stdout).unwrap();
    let again = bin().args(["replay", doc.to_str().unwrap()]).output().unwrap();
    assert_eq!(again.stdout, out.stdout);
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "preset = \"p3-hypersurface\"\n[preset_params]\nd = 5.5\n").unwrap();
    let out = bin().args(["wall", "--config", bad.to_str().unwrap(), "--n", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn worker_count_does_not_change_output() {
    let args = ["critdiv", "--preset", "dp1", "--n", "4"];
    let one = bin().env("HILBNEF_WORKERS", "1").args(args).output().unwrap();
    let three = bin().env("HILBNEF_WORKERS", "3").args(args).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
}
