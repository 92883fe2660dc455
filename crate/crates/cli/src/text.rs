//! Human-readable rendering with six significant digits.

use spinrot::bloch::QubitState;
use spinrot::so3::So3Rot;
use spinrot::{AxisAngle, Complex, Su2Op, Vec3};

/// `x` rounded to six significant digits, `%g` style.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn complex(c: Complex<f64>) -> String {
    let (re, im) = (num(c.re), num(c.im));
    match (re.as_str(), im.as_str()) {
        (_, "0") | (_, "-0") => re,
        ("0", _) | ("-0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re} - {}i", &im[1..]),
        _ => format!("{re} + {im}i"),
    }
}

pub fn vec3(v: Vec3) -> String {
    format!("({}, {}, {})", num(v.x), num(v.y), num(v.z))
}

fn rows(cells: Vec<Vec<String>>) -> String {
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [ {} ]", padded.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn su2(v: &Su2Op) -> String {
    let m = v.to_matrix().m;
    let cells = m
        .iter()
        .map(|r| r.iter().map(|c| complex(*c)).collect())
        .collect();
    format!("su2:\n{}", rows(cells))
}

pub fn so3(r: &So3Rot<f64>) -> String {
    let m = r.matrix().m;
    let cells = m
        .iter()
        .map(|r| r.iter().map(|x| num(*x)).collect())
        .collect();
    format!("so3:\n{}", rows(cells))
}

pub fn axis_angle(aa: &AxisAngle) -> String {
    let mut s = format!("axis:  {}\ntheta: {}", vec3(aa.axis.vec()), num(aa.theta));
    if aa.is_minus_identity {
        s.push_str("  (-Id)");
    }
    s
}

pub fn state(psi: &QubitState<f64>) -> String {
    format!("({}, {})", complex(psi.c0()), complex(psi.c1()))
}
