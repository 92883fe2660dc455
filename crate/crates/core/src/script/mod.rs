//! A small expression language for single-qubit rotations.
//!
//! ```text
//! expr   := term ('*' term)*
//! term   := gate | axisrot | reflect | 'ID' | '(' expr ')'
//! gate   := ('RX' | 'RY' | 'RZ') '(' angle ')'
//! axisrot:= 'R' '(' vec ',' angle ')'
//! reflect:= 'REF' '(' vec ')'
//! vec    := '[' num ',' num ',' num ']'        num := ['-'] NUMBER
//! angle  := ['-'] ( NUMBER ['*' 'pi'] | 'pi' ['/' NUMBER] | NUMBER '/' NUMBER ['*' 'pi'] )
//! ```
//!
//! Names and `pi` are case-insensitive. Plain numbers are radians.
//!
//! `A * B` is the matrix product A·B: B acts first on a state, exactly as
//! when the matrices are multiplied by hand. `*` is left-associative.
//! Vector literals are normalized; only the zero vector is rejected.

mod ast;
mod lexer;
mod parser;

pub use ast::{Angle, Component, Literal, RotExpr, VecLit};
pub use lexer::{tokenize, LexError, LexFault, Token, TokenKind, MAX_INPUT};
pub use parser::{parse, ParseError, MAX_DEPTH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::project;
use crate::error::Error;
use crate::linalg::{Tolerance, UnitVec3, Vec3};
use crate::pauli::PauliAxis;
use crate::so3::So3Rot;
use crate::su2::{self, reflection, rotation_gate, AxisAngle, Su2Op};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScriptError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] Error),
}

impl ScriptError {
    /// Byte offset for lexing and parsing errors.
    pub fn pos(&self) -> Option<usize> {
        match self {
            ScriptError::Lex(e) => Some(e.pos),
            ScriptError::Parse(e) => Some(e.pos),
            ScriptError::Eval(_) => None,
        }
    }
}

/// Everything an expression denotes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub script: String,
    pub su2: Su2Op<f64>,
    pub so3: So3Rot<f64>,
    pub axis_angle: AxisAngle<f64>,
    /// Image of the north pole (0, 0, 1) under `so3`.
    pub bloch_image: UnitVec3<f64>,
}

pub fn parse_str(text: &str) -> Result<RotExpr, ScriptError> {
    let tokens = tokenize(text)?;
    Ok(parse(&tokens)?)
}

/// The SU(2) element denoted by `e`.
pub fn eval_su2(e: &RotExpr, tol: &Tolerance<f64>) -> Result<Su2Op<f64>, Error> {
    let mut acc: Option<Su2Op<f64>> = None;
    for term in e.factors() {
        let v = match term {
            RotExpr::GateRX(a) => rotation_gate(PauliAxis::X, angle(a)?)?,
            RotExpr::GateRY(a) => rotation_gate(PauliAxis::Y, angle(a)?)?,
            RotExpr::GateRZ(a) => rotation_gate(PauliAxis::Z, angle(a)?)?,
            RotExpr::AxisRot(n, a) => su2::from_axis_angle(axis(n, tol)?, angle(a)?),
            RotExpr::Reflect(n) => reflection(axis(n, tol)?),
            RotExpr::Identity => Su2Op::identity(),
            RotExpr::Product(..) => eval_su2(term, tol)?,
        };
        acc = Some(match acc {
            Some(left) => left.mul_with(&v, tol),
            None => v,
        });
    }
    Ok(acc.expect("a product has at least one factor"))
}

pub fn eval(e: &RotExpr, tol: &Tolerance<f64>) -> Result<EvalResult, Error> {
    let su2 = eval_su2(e, tol)?;
    let so3 = project(&su2);
    let pole = so3.apply(Vec3::new(0.0, 0.0, 1.0));
    Ok(EvalResult {
        script: e.to_string(),
        axis_angle: su2.to_axis_angle(tol),
        bloch_image: UnitVec3::normalize(pole, tol)?,
        su2,
        so3,
    })
}

/// Tokenizes, parses and evaluates `text`; `script` in the result is `text`
/// verbatim.
pub fn run(text: &str, tol: &Tolerance<f64>) -> Result<EvalResult, ScriptError> {
    let e = parse_str(text)?;
    let mut r = eval(&e, tol)?;
    r.script = text.to_string();
    Ok(r)
}

fn angle(a: &Angle) -> Result<f64, Error> {
    let v = a.radians();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("angle"))
    }
}

fn axis(v: &VecLit, tol: &Tolerance<f64>) -> Result<UnitVec3<f64>, Error> {
    let v = Vec3::from_array(v.values());
    if !v.is_finite() {
        return Err(Error::NonFinite("axis"));
    }
    UnitVec3::normalize(v, tol)
}
