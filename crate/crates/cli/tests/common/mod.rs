#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinrot"))
}

pub fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn spinrot");
    let mut pipe = child.stdin.take().expect("stdin is piped");
    if let Some(s) = stdin {
        pipe.write_all(s.as_bytes()).expect("write stdin");
    }
    drop(pipe);
    child.wait_with_output().expect("wait for spinrot")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case {
        name,
        args,
        stdin: None,
    }
}

const fn piped(name: &'static str, args: &'static [&'static str], stdin: &'static str) -> Case {
    Case {
        name,
        args,
        stdin: Some(stdin),
    }
}

/// DSL scripts evaluated with JSON output.
pub const SCRIPTS: &[(&str, &str)] = &[
    ("identity", "ID"),
    ("rx_pi", "RX(pi)"),
    ("ry_pi", "RY(pi)"),
    ("rz_pi", "RZ(pi)"),
    ("rx_half_pi", "RX(pi/2)"),
    ("ry_minus_quarter", "RY(-pi/4)"),
    ("rz_decimal", "RZ(0.75)"),
    ("rx_rational", "RX(2/3*pi)"),
    ("rx_ratio_radians", "RX(1/3)"),
    ("rz_multiple", "RZ(3*pi)"),
    ("rx_squared", "RX(pi) * RX(pi)"),
    ("rx_four_turns", "RX(2*pi) * RX(2*pi)"),
    ("ref_x", "REF([1,0,0])"),
    ("ref_y", "REF([0,1,0])"),
    ("ref_pair", "REF([0,1,0]) * REF([1,0,0])"),
    ("axis_unnormalized", "R([0,0,2], pi/2)"),
    ("axis_diagonal", "R([1,1,1], 2/3*pi)"),
    ("axis_negative", "R([-1, 0.5, -2], -1.25)"),
    ("gate_chain", "RX(pi/2) * RY(pi/2) * RZ(pi/2)"),
    ("nested", "RX(pi/2) * (RY(pi/3) * (RZ(pi/5) * ID))"),
    ("mixed_case", "rx(Pi/2) * Ref([0, 0, 1]) * id"),
    ("hadamard_like", "RY(pi/2) * RZ(pi)"),
    ("whitespace", "  R( [ 0 , 1 , 1 ] ,  pi / 3 )  "),
];

/// Invocations of every command, with JSON output unless noted.
pub const COMMANDS: &[Case] = &[
    case(
        "convert_axis_su2",
        &[
            "--format",
            "json",
            "convert",
            "--axis",
            "0,0,1",
            "--theta",
            "3.14159265358979",
            "--to",
            "su2",
        ],
    ),
    piped(
        "convert_su2_so3",
        &["--format", "json", "convert", "--to", "so3"],
        r#"{"a":{"re":1,"im":0},"b":{"re":0,"im":0}}"#,
    ),
    case(
        "convert_degenerate_axisangle",
        &[
            "--format",
            "json",
            "convert",
            "--axis",
            "1,1,0",
            "--theta",
            "0",
            "--to",
            "axisangle",
        ],
    ),
    case(
        "convert_bloch",
        &[
            "--format",
            "json",
            "convert",
            "--axis",
            "1,0,0",
            "--theta",
            "1.5707963267948966",
            "--to",
            "bloch",
        ],
    ),
    piped(
        "convert_so3_axisangle",
        &["--format", "json", "convert", "--to", "axisangle"],
        "[[1,0,0],[0,-1,0],[0,0,-1]]",
    ),
    piped(
        "convert_matrix_su2",
        &["--format", "json", "convert", "--to", "su2"],
        r#"[[{"re":0,"im":0},{"re":0,"im":1}],[{"re":0,"im":1},{"re":0,"im":0}]]"#,
    ),
    piped(
        "convert_coords_so3",
        &["--format", "json", "convert", "--to", "so3"],
        r#"{"n_i":0.5,"n_x":0.5,"n_y":0.5,"n_z":0.5}"#,
    ),
    case(
        "convert_text",
        &["convert", "--axis", "0,1,0", "--theta", "1", "--to", "su2"],
    ),
    case(
        "compose_args",
        &[
            "--format",
            "json",
            "compose",
            r#"{"axis":[1,0,0],"theta":3.141592653589793}"#,
            r#"{"axis":[1,0,0],"theta":3.141592653589793}"#,
        ],
    ),
    piped(
        "compose_stdin",
        &["--format", "json", "compose"],
        r#"[{"axis":[0,0,1],"theta":1.0},{"a":{"re":0,"im":0},"b":{"re":1,"im":0}},[[0,-1,0],[1,0,0],[0,0,1]]]"#,
    ),
    piped(
        "decompose_iz",
        &["--format", "json", "decompose"],
        r#"{"a":{"re":0,"im":1},"b":{"re":0,"im":0}}"#,
    ),
    case(
        "decompose_x_third",
        &[
            "--format",
            "json",
            "decompose",
            "--axis",
            "1,0,0",
            "--theta",
            "1.0471975511965976",
        ],
    ),
    case(
        "eigvec_y",
        &["--format", "json", "eigvec", "--axis", "0,1,0"],
    ),
    case("eigvec_text", &["eigvec", "--axis", "1,1,1"]),
    case(
        "prob_equal",
        &["--format", "json", "prob", "--k", "0,0,1", "--n", "0,0,1"],
    ),
    case(
        "prob_equator",
        &["--format", "json", "prob", "--k", "0,0,1", "--n", "1,0,0"],
    ),
    case(
        "prob_antiparallel",
        &["prob", "--k", "0,1,0", "--n", "0,-1,0"],
    ),
    case("eval_text", &["eval", "RX(pi) * RX(pi)"]),
    case(
        "check_small",
        &[
            "--format",
            "json",
            "check",
            "--samples",
            "50",
            "--seed",
            "7",
        ],
    ),
];

pub fn script_args(script: &'static str) -> Vec<&'static str> {
    vec!["--format", "json", "eval", script]
}

/// Zeroes the timing field of `check` output so it can be compared.
pub fn mask_elapsed(stdout: &str) -> String {
    stdout
        .lines()
        .map(|l| match l.find("\"elapsed_s\": ") {
            Some(i) => format!("{}\"elapsed_s\": 0.0", &l[..i]),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Malformed scripts and the byte offset each must be reported at.
pub const ERROR_CORPUS: &[(&str, usize)] = &[
    ("RX(", 3),
    ("", 0),
    ("RX(π)", 3),
    ("RW(pi)", 0),
    ("RX(pi", 5),
    ("R([1,0], pi)", 6),
    ("ID *", 4),
    ("ID ID", 3),
    ("RX(2*)", 5),
    ("REF([1,0,0]) * (RY(pi)", 22),
    ("RZ(1.)", 4),
    ("RY(pi/-2)", 6),
];

pub enum Verdict {
    Match,
    Blessed,
    Missing,
    Differs(String),
}

/// Compares `actual` with the stored golden `name`, rewriting it when
/// `BLESS` is set.
pub fn compare_golden(name: &str, actual: &str) -> Verdict {
    let path = golden_dir().join(format!("{name}.out"));
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, actual).expect("write golden");
        return Verdict::Blessed;
    }
    match std::fs::read_to_string(&path) {
        Err(_) => Verdict::Missing,
        Ok(want) if want == actual => Verdict::Match,
        Ok(want) => Verdict::Differs(want),
    }
}

pub fn golden_stdout(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let s = String::from_utf8(out.stdout).expect("utf-8 output");
    if args.contains(&"check") {
        mask_elapsed(&s)
    } else {
        s
    }
}
