//! Named evaluation contexts and the value semantics of expressions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use hplane_core::algebra::{embed_uv, g, s, uv_images, uv_w, AlgebraElement, Presentation};
use hplane_core::calculus::{Calculus, Form, Tensor};
use hplane_core::climit::monomial_inverse;
use hplane_core::geometry::{kappa, ExtBasis};
use hplane_core::qgroup;
use hplane_core::scalar::Scalar;

use crate::expr::{Expr, Op};

pub const CONTEXTS: &[&str] = &["plane", "plane2", "ext", "ext2", "ext3", "uv", "qgroup"];

/// The result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Element(AlgebraElement),
    Form(Form),
    Tensor(Tensor),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Element(_) => "element",
            Value::Form(_) => "form",
            Value::Tensor(_) => "tensor",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => c.fmt(f),
            Value::Element(a) => a.fmt(f),
            Value::Form(w) => w.fmt(f),
            Value::Tensor(t) => t.fmt(f),
        }
    }
}

/// An algebra, optionally a calculus over it, and the symbols it defines.
pub struct Context {
    name: String,
    alg: Arc<Presentation>,
    symbols: BTreeMap<&'static str, Value>,
}

impl Context {
    pub fn named(name: &str) -> Result<Context> {
        let (alg, calc) = match name {
            "plane" => (Presentation::plane(), Some(Calculus::plane())),
            "plane2" => (Presentation::plane2(), Some(Calculus::plane2())),
            "ext" => (Presentation::ext(), Some(Calculus::ext_xy())),
            "ext2" => (Presentation::ext(), Some(Calculus::ext2())),
            "ext3" => (Presentation::ext(), Some(Calculus::ext3())),
            "uv" => (Presentation::uv(), None),
            "qgroup" => (qgroup::presentation(), None),
            other => bail!("unknown context `{other}` (expected one of {})", CONTEXTS.join(", ")),
        };
        let mut symbols = BTreeMap::new();
        for gen in alg.generators() {
            let key = crate::expr::IDENTIFIERS.iter().find(|k| **k == gen).copied();
            if let Some(key) = key {
                symbols.insert(key, Value::Element(g(&alg, gen)));
            }
        }
        if name.starts_with("ext") {
            let (u, v) = uv_images();
            symbols.insert("u", Value::Element(u));
            symbols.insert("v", Value::Element(v));
            symbols.insert("w", Value::Element(embed_uv(&uv_w())?));
        }
        if name == "uv" {
            symbols.insert("w", Value::Element(uv_w()));
        }
        if let Some(calc) = &calc {
            for (i, c) in calc.cogenerators().iter().enumerate() {
                if let Some(key) = crate::expr::IDENTIFIERS.iter().find(|k| **k == c).copied() {
                    symbols.insert(key, Value::Form(Form::cogen(calc, i)));
                }
            }
            match name {
                "ext" => {
                    let [t1, t2] = ExtBasis::new().theta_in_xy()?;
                    symbols.insert("t1", Value::Form(t1));
                    symbols.insert("t2", Value::Form(t2));
                }
                "ext2" | "ext3" => {
                    symbols.insert("xi", Value::Form(Form::d_of(calc, &g(&alg, "x"))?));
                    symbols.insert("eta", Value::Form(Form::d_of(calc, &g(&alg, "y"))?));
                }
                _ => {}
            }
            if let Ok(k) = kappa(calc) {
                symbols.insert("kappa", Value::Form(k));
            } else if let (Some(Value::Form(xi)), Some(Value::Form(eta))) = (symbols.get("xi"), symbols.get("eta")) {
                let (x, y) = (g(&alg, "x"), g(&alg, "y"));
                let k =
                    eta.left_mul(&x)?.try_sub(&xi.left_mul(&y)?)?.try_sub(&eta.left_mul(&y.scale(&Scalar::h()))?)?;
                symbols.insert("kappa", Value::Form(k));
            }
        }
        symbols.insert("h", Value::Scalar(Scalar::h()));
        symbols.insert("hp", Value::Scalar(Scalar::hp()));
        symbols.insert("i", Value::Scalar(Scalar::i()));
        Ok(Context { name: name.to_string(), alg, symbols })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    /// `Some(invertible)` when `name` is a generator of the algebra.
    pub fn generator_invertible(&self, name: &str) -> Option<bool> {
        self.alg.generator_index(name).map(|k| self.alg.is_invertible(k))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.symbols.keys().copied()
    }

    fn element(&self, c: Scalar) -> AlgebraElement {
        s(&self.alg, c)
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        Ok(match e {
            Expr::Int(n) => {
                Value::Scalar(Scalar::int(i64::try_from(*n).map_err(|_| anyhow!("integer {n} is too large"))?))
            }
            Expr::Sym(name) => {
                self.symbols.get(name.as_str()).cloned().ok_or_else(|| anyhow!("unknown symbol `{name}`"))?
            }
            Expr::Neg(a) => self.scale(self.eval(a)?, &Scalar::int(-1)),
            Expr::Bin(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                match op {
                    Op::Add => self.add(a, b)?,
                    Op::Sub => self.add(a, self.scale(b, &Scalar::int(-1)))?,
                    Op::Mul | Op::Wedge => self.mul(a, b)?,
                    Op::Div => match b {
                        Value::Scalar(c) => self.scale(a, &c.inverse()?),
                        other => bail!("can only divide by a scalar, not by the {} {other}", other.kind()),
                    },
                    Op::Tensor => self.tensor(a, b)?,
                }
            }
            Expr::Pow(a, n) => self.pow(self.eval(a)?, *n)?,
            Expr::Comm(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let ab = self.mul(a.clone(), b.clone())?;
                let ba = self.mul(b, a)?;
                self.add(ab, self.scale(ba, &Scalar::int(-1)))?
            }
        })
    }

    fn scale(&self, v: Value, c: &Scalar) -> Value {
        match v {
            Value::Scalar(a) => Value::Scalar(&a * c),
            Value::Element(a) => Value::Element(a.scale(c)),
            Value::Form(w) => Value::Form(w.scale(c)),
            Value::Tensor(t) => Value::Tensor(t.scale(c)),
        }
    }

    fn lift(&self, v: Value) -> Value {
        match v {
            Value::Scalar(c) => Value::Element(self.element(c)),
            other => other,
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a + &b),
            (Value::Form(a), Value::Form(b)) => Value::Form(a.try_add(&b)?),
            (Value::Tensor(a), Value::Tensor(b)) => Value::Tensor(a.try_add(&b)?),
            (a, b) => match (self.lift(a), self.lift(b)) {
                (Value::Element(a), Value::Element(b)) => Value::Element(a.try_add(&b)?),
                (a, b) => bail!("cannot add a {} and a {}", a.kind(), b.kind()),
            },
        })
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(c), v) | (v, Value::Scalar(c)) => self.scale(v, &c),
            (Value::Element(a), Value::Element(b)) => Value::Element(a.try_mul(&b)?),
            (Value::Element(a), Value::Form(w)) => Value::Form(w.left_mul(&a)?),
            (Value::Form(w), Value::Element(a)) => Value::Form(w.right_mul(&a)?),
            (Value::Form(a), Value::Form(b)) => Value::Form(a.wedge(&b)?),
            (Value::Element(a), Value::Tensor(t)) => Value::Tensor(t.left_mul(&a)?),
            (Value::Tensor(t), Value::Element(a)) => Value::Tensor(t.right_mul(&a)?),
            (a, b) => bail!("cannot multiply a {} by a {}; use (x) for tensor products", a.kind(), b.kind()),
        })
    }

    fn tensor(&self, a: Value, b: Value) -> Result<Value> {
        let as_tensor = |v: Value| -> Result<Tensor> {
            match v {
                Value::Form(w) => Ok(Tensor::from_form(&w)?),
                Value::Tensor(t) => Ok(t),
                other => bail!("(x) needs forms or tensors, got the {} {other}", other.kind()),
            }
        };
        Ok(Value::Tensor(as_tensor(a)?.tensor(&as_tensor(b)?)?))
    }

    fn pow(&self, v: Value, n: i64) -> Result<Value> {
        let e = u32::try_from(n.unsigned_abs()).map_err(|_| anyhow!("exponent {n} is too large"))?;
        Ok(match v {
            Value::Scalar(c) => {
                let base = if n < 0 { c.inverse().map_err(|_| anyhow!("not invertible: {c}"))? } else { c };
                Value::Scalar(base.pow(e))
            }
            Value::Element(a) => {
                let base = if n < 0 { monomial_inverse(&a).map_err(|_| anyhow!("not invertible: {a}"))? } else { a };
                Value::Element(base.pow(e)?)
            }
            Value::Form(w) if n > 0 => {
                let mut out = w.clone();
                for _ in 1..e {
                    out = out.wedge(&w)?;
                }
                Value::Form(out)
            }
            other => bail!("cannot raise the {} {other} to the power {n}", other.kind()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn reduce(s: &str, ctx: &str) -> String {
        let c = Context::named(ctx).unwrap();
        c.eval(&parse_expr(s, &c).unwrap()).unwrap().to_string()
    }

    #[test]
    fn plane_relation() {
        assert_eq!(reduce("y*x", "plane"), "x*y - h*y^2");
        assert_eq!(reduce("[x, y]", "plane"), "h*y^2");
    }

    #[test]
    fn inverse_in_ext() {
        assert_eq!(reduce("y^-1*x", "ext"), reduce("x*y^-1 + h", "ext"));
    }

    #[test]
    fn uv_commutator() {
        assert_eq!(reduce("[u, v]", "uv"), "-2h*v");
    }

    #[test]
    fn every_context_builds() {
        for c in CONTEXTS {
            assert!(Context::named(c).is_ok(), "{c}");
        }
        assert!(Context::named("nope").is_err());
    }

    #[test]
    fn non_monomial_inverse_fails() {
        let c = Context::named("ext").unwrap();
        let err = c.eval(&parse_expr("(x + y)^-1", &c).unwrap()).unwrap_err();
        assert!(err.to_string().contains("not invertible"));
    }
}
