use std::f64::consts::PI;
use std::fmt;

/// Numeric literal as written; `text` is kept so printing is lossless.
#[derive(Debug, Clone, PartialEq)]
pub struct Literal {
    pub text: String,
    pub value: f64,
}

impl Literal {
    pub fn new(text: &str) -> Self {
        Self {
            text: text.to_string(),
            value: text.parse().unwrap_or(f64::NAN),
        }
    }
}

/// Signed literal inside a vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub negative: bool,
    pub lit: Literal,
}

impl Component {
    pub fn value(&self) -> f64 {
        if self.negative {
            -self.lit.value
        } else {
            self.lit.value
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VecLit(pub [Component; 3]);

impl VecLit {
    pub fn values(&self) -> [f64; 3] {
        [self.0[0].value(), self.0[1].value(), self.0[2].value()]
    }
}

/// `[-] num [/ den] [* pi]`, with `pi [/ den]` when there is no numerator.
#[derive(Debug, Clone, PartialEq)]
pub struct Angle {
    pub negative: bool,
    pub num: Option<Literal>,
    pub den: Option<Literal>,
    pub pi: bool,
}

impl Angle {
    /// Value in radians; may be infinite or NaN for degenerate literals.
    pub fn radians(&self) -> f64 {
        let mut v = self.num.as_ref().map_or(1.0, |l| l.value);
        if let Some(d) = &self.den {
            v /= d.value;
        }
        if self.pi {
            v *= PI;
        }
        if self.negative {
            -v
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RotExpr {
    GateRX(Angle),
    GateRY(Angle),
    GateRZ(Angle),
    AxisRot(VecLit, Angle),
    Reflect(VecLit),
    Identity,
    Product(Box<RotExpr>, Box<RotExpr>),
}

impl RotExpr {
    pub fn product(left: RotExpr, right: RotExpr) -> Self {
        RotExpr::Product(Box::new(left), Box::new(right))
    }

    /// Factors of a left-nested product chain, in written order.
    pub(crate) fn factors(&self) -> Vec<&RotExpr> {
        let mut out = Vec::new();
        let mut cur = self;
        while let RotExpr::Product(l, r) = cur {
            out.push(&**r);
            cur = l;
        }
        out.push(cur);
        out.reverse();
        out
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        match (&self.num, &self.den, self.pi) {
            (None, None, _) => f.write_str("pi"),
            (None, Some(d), _) => write!(f, "pi/{}", d.text),
            (Some(n), None, false) => f.write_str(&n.text),
            (Some(n), None, true) => write!(f, "{}*pi", n.text),
            (Some(n), Some(d), false) => write!(f, "{}/{}", n.text, d.text),
            (Some(n), Some(d), true) => write!(f, "{}/{}*pi", n.text, d.text),
        }
    }
}

impl fmt::Display for VecLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if c.negative {
                f.write_str("-")?;
            }
            f.write_str(&c.lit.text)?;
        }
        f.write_str("]")
    }
}

/// Canonical form: upper-case names, `" * "` between factors, and
/// parentheses only around a product on the right of `*`.
impl fmt::Display for RotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.factors().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            match term {
                RotExpr::GateRX(a) => write!(f, "RX({a})")?,
                RotExpr::GateRY(a) => write!(f, "RY({a})")?,
                RotExpr::GateRZ(a) => write!(f, "RZ({a})")?,
                RotExpr::AxisRot(v, a) => write!(f, "R({v}, {a})")?,
                RotExpr::Reflect(v) => write!(f, "REF({v})")?,
                RotExpr::Identity => f.write_str("ID")?,
                RotExpr::Product(..) => write!(f, "({term})")?,
            }
        }
        Ok(())
    }
}
