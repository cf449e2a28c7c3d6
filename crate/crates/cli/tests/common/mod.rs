use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn transcript(&self) -> String {
        format!(
            "exit: {}\n--- stdout\n{}--- stderr\n{}",
            self.code, self.stdout, self.stderr
        )
    }
}

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fan_path(name: &str) -> String {
    tests_dir()
        .join("fans")
        .join(format!("{name}.fan"))
        .display()
        .to_string()
}

pub fn run(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_toricox"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

fn unit(n: usize, i: usize) -> String {
    (0..n)
        .map(|j| if j == i { "1" } else { "0" })
        .collect::<Vec<_>>()
        .join(",")
}

fn seq(n: usize) -> String {
    (1..=n).map(|j| j.to_string()).collect::<Vec<_>>().join(",")
}

fn scaled(n: usize, k: usize) -> String {
    (1..=n)
        .map(|j| (k * j).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub const FIXTURES: [(&str, usize, &str); 5] = [
    ("p2", 3, "0,1"),
    ("p1p1", 4, "0,2"),
    ("p112", 3, "0,2"),
    ("quadric", 4, "0,1,2,3"),
    ("a2", 2, "0,1"),
];

const PLAIN: [&str; 8] = [
    "validate",
    "props",
    "chow",
    "pic",
    "irrelevant",
    "locus",
    "roots",
    "fanauts",
];

pub fn cases() -> Vec<Case> {
    let mut cases = Vec::new();
    let mut push = |name: String, args: Vec<String>| cases.push(Case { name, args });
    for (fixture, n, cone) in FIXTURES {
        let file = fan_path(fixture);
        let with = |cmd: &str, extra: &[String]| {
            let mut v = vec![cmd.to_string(), file.clone()];
            v.extend(extra.iter().cloned());
            v
        };
        for cmd in PLAIN {
            push(format!("{fixture}_{cmd}"), with(cmd, &[]));
        }
        push(format!("{fixture}_aut"), with("aut", &[]));
        push(
            format!("{fixture}_aut_relaxed"),
            with("aut", &["--relaxed".into()]),
        );
        push(
            format!("{fixture}_sections"),
            with("sections", &["--divisor".into(), unit(n, 0)]),
        );
        push(
            format!("{fixture}_order"),
            with(
                "order",
                &["--lhs".into(), unit(n, 0), "--rhs".into(), unit(n, n - 1)],
            ),
        );
        push(
            format!("{fixture}_saturate"),
            with(
                "saturate",
                &["--ideal".into(), format!("{};{}", unit(n, 0), unit(n, 1))],
            ),
        );
        push(
            format!("{fixture}_empty"),
            with("empty", &["--ideal".into(), unit(n, 0)]),
        );
        push(
            format!("{fixture}_orbit"),
            with("orbit", &["--u".into(), scaled(n, 2), "--t".into(), seq(n)]),
        );
        push(
            format!("{fixture}_witness"),
            with("witness", &["--cone".into(), cone.into()]),
        );
    }
    for preset in [
        "p2",
        "p1p1",
        "p112",
        "quadric",
        "a2",
        "pn:3",
        "wps:1,2,3",
        "wps:2,4",
        "bogus",
    ] {
        let tag = preset.replace([':', ','], "_");
        push(
            format!("make_{tag}"),
            vec!["make".into(), "--preset".into(), preset.into()],
        );
    }
    let p2 = fan_path("p2");
    let quadric = fan_path("quadric");
    push(
        "p2_orbit_unit".into(),
        vec![
            "orbit".into(),
            p2.clone(),
            "--u".into(),
            "0,1,1".into(),
            "--t".into(),
            "1,1,0".into(),
        ],
    );
    push(
        "p2_orbit_scaled".into(),
        vec![
            "orbit".into(),
            p2.clone(),
            "--u".into(),
            "1/2,1,3/2".into(),
            "--t".into(),
            "1,2,3".into(),
        ],
    );
    push(
        "p2_sections_degree2".into(),
        vec![
            "sections".into(),
            p2.clone(),
            "--divisor".into(),
            "2,0,0".into(),
        ],
    );
    push(
        "p2_saturate_embedded".into(),
        vec![
            "saturate".into(),
            p2.clone(),
            "--ideal".into(),
            "2,0,0;1,1,0;1,0,1".into(),
        ],
    );
    push(
        "p2_empty_irrelevant".into(),
        vec![
            "empty".into(),
            p2.clone(),
            "--ideal".into(),
            "1,0,0;0,1,0;0,0,1".into(),
        ],
    );
    push(
        "err_parse".into(),
        vec!["validate".into(), fan_path("badkeyword")],
    );
    push(
        "err_invalid_fan".into(),
        vec!["validate".into(), fan_path("nonprimitive")],
    );
    push(
        "err_missing_file".into(),
        vec!["validate".into(), "no/such/file.fan".into()],
    );
    push(
        "err_length".into(),
        vec![
            "sections".into(),
            p2.clone(),
            "--divisor".into(),
            "1,0".into(),
        ],
    );
    push(
        "err_bad_ideal".into(),
        vec![
            "saturate".into(),
            p2.clone(),
            "--ideal".into(),
            "1,x,0".into(),
        ],
    );
    push(
        "err_unknown_cone".into(),
        vec!["witness".into(), p2.clone(), "--cone".into(), "0,7".into()],
    );
    push(
        "err_exceptional_point".into(),
        vec![
            "orbit".into(),
            p2,
            "--u".into(),
            "0,0,0".into(),
            "--t".into(),
            "1,1,1".into(),
        ],
    );
    push(
        "err_not_simplicial".into(),
        vec!["empty".into(), quadric, "--ideal".into(), "1,0,0,0".into()],
    );
    cases
}

pub fn golden_path(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.txt"))
}

pub fn check_goldens(update: bool) -> Vec<String> {
    let mut failures = Vec::new();
    for case in cases() {
        let got = run(&case.args)
            .transcript()
            .replace(&tests_dir().display().to_string(), "<tests>");
        let path = golden_path(&case.name);
        if update {
            std::fs::write(&path, &got).expect("write golden");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => failures.push(format!("{}: expected\n{want}\ngot\n{got}", case.name)),
            Err(_) => failures.push(format!("{}: missing golden {}", case.name, path.display())),
        }
    }
    failures
}
