//! Operator input: JSON encodings from stdin or arguments, and comma
//! separated vectors from flags.

use serde::Deserialize;
use serde_json::Value;
use spinrot::linalg::ComplexJson;
use spinrot::{
    cover, so3::So3Rot, su2, Error, Mat2C, Mat3R, PauliCoords, Su2Op, Tolerance, UnitVec3, Vec3,
};

use crate::Failure;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Su2Json {
    a: ComplexJson<f64>,
    b: ComplexJson<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisAngleJson {
    axis: [f64; 3],
    theta: f64,
    #[serde(default)]
    #[allow(dead_code)]
    is_minus_identity: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordsJson {
    n_i: f64,
    n_x: f64,
    n_y: f64,
    n_z: f64,
}

/// A decoded operator. Rotations keep their SO(3) form so conversions to
/// SO(3) do not go through a lift.
#[derive(Debug, Clone, Copy)]
pub enum Operator {
    Su2(Su2Op),
    So3(So3Rot<f64>),
}

impl Operator {
    /// SU(2) form; a rotation is lifted to the preimage with `n_I ≥ 0`.
    pub fn su2(&self, tol: &Tolerance) -> Su2Op {
        match self {
            Operator::Su2(v) => *v,
            Operator::So3(r) => cover::lift(r, tol).0,
        }
    }

    pub fn so3(&self) -> So3Rot<f64> {
        match self {
            Operator::Su2(v) => cover::project(v),
            Operator::So3(r) => *r,
        }
    }
}

fn bad_input(what: &str, detail: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{what}: {detail}"))
}

/// Parses one operator from JSON text.
///
/// Accepted shapes: `{"a", "b"}`, `{"axis", "theta"}`, Pauli coordinates
/// `{"n_i", "n_x", "n_y", "n_z"}`, a 2×2 complex matrix, or a 3×3 real
/// rotation matrix.
pub fn operator_from_str(text: &str, tol: &Tolerance) -> Result<Operator, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| bad_input("malformed JSON", e))?;
    operator_from_value(value, tol)
}

pub fn operator_from_value(value: Value, tol: &Tolerance) -> Result<Operator, Failure> {
    let shape = |e: serde_json::Error| bad_input("unrecognized operator", e);
    match &value {
        Value::Object(map) if map.contains_key("a") => {
            let r: Su2Json = serde_json::from_value(value).map_err(shape)?;
            Ok(Operator::Su2(Su2Op::new(r.a.0, r.b.0, tol)?))
        }
        Value::Object(map) if map.contains_key("axis") => {
            let r: AxisAngleJson = serde_json::from_value(value).map_err(shape)?;
            let axis = UnitVec3::try_new(Vec3::from_array(r.axis), tol)?;
            if !r.theta.is_finite() {
                return Err(Error::NonFinite("theta").into());
            }
            Ok(Operator::Su2(su2::from_axis_angle(axis, r.theta)))
        }
        Value::Object(map) if map.contains_key("n_i") => {
            let r: CoordsJson = serde_json::from_value(value).map_err(shape)?;
            let c = PauliCoords::new(r.n_i, r.n_x, r.n_y, r.n_z, tol)?;
            Ok(Operator::Su2(Su2Op::from_coords(c)))
        }
        Value::Array(rows) if rows.len() == 2 => {
            let m: [[ComplexJson<f64>; 2]; 2] = serde_json::from_value(value).map_err(shape)?;
            let m = Mat2C::new(m[0][0].0, m[0][1].0, m[1][0].0, m[1][1].0);
            Ok(Operator::Su2(Su2Op::from_matrix(&m, tol)?))
        }
        Value::Array(rows) if rows.len() == 3 => {
            let m: [[f64; 3]; 3] = serde_json::from_value(value).map_err(shape)?;
            Ok(Operator::So3(So3Rot::from_matrix(Mat3R::from_rows(m), tol)?))
        }
        _ => Err(bad_input(
            "unrecognized operator",
            "expected {\"a\",\"b\"}, {\"axis\",\"theta\"}, Pauli coordinates, a 2x2 or a 3x3 matrix",
        )),
    }
}

/// A JSON array of operators.
pub fn operators_from_str(text: &str, tol: &Tolerance) -> Result<Vec<Operator>, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| bad_input("malformed JSON", e))?;
    match value {
        Value::Array(items) if !items.is_empty() => items
            .into_iter()
            .map(|v| operator_from_value(v, tol))
            .collect(),
        _ => Err(bad_input(
            "compose input",
            "expected a non-empty JSON array of operators",
        )),
    }
}

/// `"x,y,z"` as a vector.
pub fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma separated numbers, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("{p:?} is not a number"))?;
    }
    Ok(Vec3::from_array(out))
}
