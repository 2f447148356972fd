//! JSON interchange: parsing with JSON-pointer diagnostics, and rendering.
//!
//! Field elements are read as an integer, a rational string `"a/b"`, a
//! monomial `{"c": "a/b", "zeta": a, "sqrt_q": b}` meaning `c·ζ_M^a·√q^b`,
//! or structurally as `{"coeffs": [[i, j, num, den], …]}` on the basis
//! `ζ_M^i·√q^j`. They are written structurally together with a `pretty`
//! string.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::field::{parse_rational, FieldCtx, FieldElem};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::param::{Base, IrredSummand, SemisimpleParam};
use crate::plancherel::{ClassicalKind, ClassicalParam};
use crate::wd::{SL2Param, Segment, WDParam};

pub const SCHEMA_VERSION: &str = "1";

/// A value together with its JSON pointer.
#[derive(Clone, Copy)]
pub struct Node<'a> {
    pub value: &'a Value,
    ptr: &'a str,
}

fn fail<T>(ptr: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Schema {
        pointer: if ptr.is_empty() { "/".into() } else { ptr.into() },
        message: message.into(),
    })
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node { value, ptr: "" }
    }

    pub fn pointer(&self) -> &str {
        if self.ptr.is_empty() {
            "/"
        } else {
            self.ptr
        }
    }

    pub fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        fail(self.ptr, message)
    }

    fn object(&self) -> Result<&'a Map<String, Value>> {
        match self.value.as_object() {
            Some(m) => Ok(m),
            None => self.fail("expected an object"),
        }
    }

    /// Runs `f` on the required field `key`.
    pub fn with<T>(&self, key: &str, f: impl FnOnce(Node<'_>) -> Result<T>) -> Result<T> {
        let obj = self.object()?;
        let ptr = format!("{}/{}", self.ptr, escape(key));
        match obj.get(key) {
            Some(v) => f(Node { value: v, ptr: &ptr }),
            None => fail(&ptr, "missing required field"),
        }
    }

    pub fn with_opt<T>(&self, key: &str, f: impl FnOnce(Node<'_>) -> Result<T>) -> Result<Option<T>> {
        let obj = self.object()?;
        let ptr = format!("{}/{}", self.ptr, escape(key));
        match obj.get(key) {
            Some(Value::Null) | None => Ok(None),
            Some(v) => f(Node { value: v, ptr: &ptr }).map(Some),
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.value.get(key).is_some_and(|v| !v.is_null())
    }

    pub fn each<T>(&self, mut f: impl FnMut(Node<'_>) -> Result<T>) -> Result<Vec<T>> {
        let Some(arr) = self.value.as_array() else {
            return self.fail("expected an array");
        };
        arr.iter()
            .enumerate()
            .map(|(i, v)| {
                let ptr = format!("{}/{i}", self.ptr);
                f(Node { value: v, ptr: &ptr })
            })
            .collect()
    }

    pub fn int(&self) -> Result<i64> {
        match self.value.as_i64() {
            Some(x) => Ok(x),
            None => self.fail("expected an integer"),
        }
    }

    pub fn uint(&self) -> Result<u64> {
        match self.value.as_u64() {
            Some(x) => Ok(x),
            None => self.fail("expected a nonnegative integer"),
        }
    }

    pub fn str(&self) -> Result<&'a str> {
        match self.value.as_str() {
            Some(x) => Ok(x),
            None => self.fail("expected a string"),
        }
    }

    pub fn bigint(&self) -> Result<BigInt> {
        match self.value {
            Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
            Value::Number(n) if n.is_u64() => Ok(BigInt::from(n.as_u64().unwrap())),
            Value::String(s) => match s.trim().parse::<BigInt>() {
                Ok(x) => Ok(x),
                Err(_) => self.fail("expected an integer string"),
            },
            _ => self.fail("expected an integer"),
        }
    }

    pub fn rational(&self) -> Result<BigRational> {
        match self.value {
            Value::String(s) => match parse_rational(s) {
                Some(r) => Ok(r),
                None => self.fail(format!("cannot parse {s:?} as a rational number")),
            },
            _ => Ok(BigRational::from_integer(self.bigint()?)),
        }
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Schema {
        pointer: "/".into(),
        message: format!("malformed JSON: {e}"),
    })
}

/// `(M, q)` from the `M` and `q` fields, either of which may be overridden.
pub fn parse_ctx(n: Node<'_>, m: Option<u64>, q: Option<u64>) -> Result<Arc<FieldCtx>> {
    let m = match m {
        Some(m) => m,
        None => n.with_opt("M", |x| x.uint())?.unwrap_or(1),
    };
    let q = match q {
        Some(q) => q,
        None => match n.value.get("q") {
            Some(_) => n.with("q", |x| x.uint())?,
            None => return n.fail("the residue cardinality q is required (field \"q\" or --q)"),
        },
    };
    FieldCtx::new(m, q)
}

pub fn parse_field(ctx: &Arc<FieldCtx>, n: Node<'_>) -> Result<FieldElem> {
    match n.value {
        Value::Number(_) | Value::String(_) => Ok(FieldElem::from_rational(ctx, n.rational()?)),
        Value::Object(o) if o.contains_key("coeffs") => {
            let terms = n.with("coeffs", |c| {
                c.each(|t| {
                    let Some(a) = t.value.as_array() else {
                        return t.fail("expected [i, j, num, den]");
                    };
                    if a.len() != 4 && a.len() != 3 {
                        return t.fail("expected [i, j, num, den] or [i, j, \"num/den\"]");
                    }
                    let i = Node { value: &a[0], ptr: t.ptr }.uint()?;
                    let j = Node { value: &a[1], ptr: t.ptr }.uint()?;
                    let c = if a.len() == 4 {
                        let num = Node { value: &a[2], ptr: t.ptr }.bigint()?;
                        let den = Node { value: &a[3], ptr: t.ptr }.bigint()?;
                        if den == BigInt::from(0) {
                            return t.fail("zero denominator");
                        }
                        BigRational::new(num, den)
                    } else {
                        Node { value: &a[2], ptr: t.ptr }.rational()?
                    };
                    if j > 1 {
                        return t.fail("√q exponent must be 0 or 1");
                    }
                    Ok((i, j, c))
                })
            })?;
            let mut x = FieldElem::zero(ctx);
            for (i, j, c) in terms {
                let mut t = &FieldElem::from_rational(ctx, c) * &FieldElem::zeta(ctx, i as i64);
                if j == 1 {
                    t = &t * &FieldElem::sqrt_q_pow(ctx, 1);
                }
                x = &x + &t;
            }
            Ok(x)
        }
        Value::Object(_) => {
            let c = n.with_opt("c", |x| x.rational())?.unwrap_or_else(|| BigRational::from_integer(1.into()));
            let a = n.with_opt("zeta", |x| x.int())?.unwrap_or(0);
            let b = n.with_opt("sqrt_q", |x| x.int())?.unwrap_or(0);
            let scale = (ctx.unit_order() / ctx.m()) as i64;
            match Monomial::new(ctx, c, a * scale, b) {
                Some(mono) => Ok(mono.to_field()),
                None => n.fail("monomial coefficient must be nonzero"),
            }
        }
        _ => n.fail("expected a field element"),
    }
}

/// The `base` field, `default` when absent.
pub fn parse_base(n: Node<'_>, default: Base) -> Result<Base> {
    Ok(n.with_opt("base", |b| match b.str()? {
        "F" => Ok(Base::F),
        "E" => Ok(Base::E),
        other => b.fail(format!("base must be \"F\" or \"E\", got {other:?}")),
    })?
    .unwrap_or(default))
}

pub fn parse_summand(ctx: &Arc<FieldCtx>, base: Base, n: Node<'_>) -> Result<IrredSummand> {
    let zeta = n.with_opt("zeta", |z| z.int())?.unwrap_or(0);
    let alpha = n.with_opt("alpha", |a| parse_field(ctx, a))?.unwrap_or_else(|| FieldElem::one(ctx));
    if alpha.is_zero() {
        return fail(&format!("{}/alpha", n.ptr), "Frobenius eigenvalue must be nonzero");
    }
    let s = IrredSummand::new(ctx, base, zeta, alpha)?;
    if let Some(f) = n.with_opt("f", |f| f.uint())? {
        if f != s.f() as u64 {
            return fail(
                &format!("{}/f", n.ptr),
                format!("the orbit of ζ^{zeta} has length {}, not {f}", s.f()),
            );
        }
    }
    Ok(s)
}

pub fn parse_semisimple(ctx: &Arc<FieldCtx>, default: Base, n: Node<'_>) -> Result<SemisimpleParam> {
    let base = parse_base(n, default)?;
    let s = n.with("summands", |s| s.each(|x| parse_summand(ctx, base, x)))?;
    SemisimpleParam::new(ctx, base, s)
}

pub fn parse_sl2(ctx: &Arc<FieldCtx>, default: Base, n: Node<'_>) -> Result<SL2Param> {
    let base = parse_base(n, default)?;
    let segs = n.with("segments", |s| {
        s.each(|x| {
            let sigma = x.with("sigma", |y| parse_summand(ctx, base, y))?;
            let d = x.with_opt("d", |d| d.uint())?.unwrap_or(1);
            if d == 0 {
                return x.fail("segment length must be positive");
            }
            Ok(Segment { sigma, d: d as u32 })
        })
    })?;
    SL2Param::new(ctx, base, segs)
}

/// A WD parameter given by segments, or by summands with an optional `N`
/// in the realized basis.
pub fn parse_wd(ctx: &Arc<FieldCtx>, default: Base, n: Node<'_>) -> Result<WDParam> {
    if n.has("segments") {
        return parse_sl2(ctx, default, n)?.to_wd();
    }
    let ss = parse_semisimple(ctx, default, n)?;
    let dim = ss.dim();
    let Some(mono) = n.with_opt("N", |m| parse_matrix(ctx, dim, m))? else {
        return Ok(WDParam::semisimple(ss));
    };
    WDParam::new(ss, mono).map_err(|e| Error::Schema {
        pointer: format!("{}/N", n.ptr),
        message: e.to_string(),
    })
}

pub fn parse_matrix(ctx: &Arc<FieldCtx>, dim: usize, n: Node<'_>) -> Result<Matrix> {
    let rows = n.each(|r| r.each(|x| parse_field(ctx, x)))?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return n.fail(format!("expected a {dim}×{dim} matrix"));
    }
    Ok(Matrix::from_fn(ctx, dim, dim, |i, j| rows[i][j].clone()))
}

pub fn parse_kind(n: Node<'_>) -> Result<ClassicalKind> {
    match n.str()? {
        "Sp" => Ok(ClassicalKind::Sp),
        "SOodd" => Ok(ClassicalKind::SOodd),
        "Ueven" => Ok(ClassicalKind::Ueven),
        "Uodd" => Ok(ClassicalKind::Uodd),
        other => n.fail(format!("unknown classical kind {other:?}")),
    }
}

pub fn parse_classical(ctx: &Arc<FieldCtx>, n: Node<'_>) -> Result<ClassicalParam> {
    let kind = n.with("kind", parse_kind)?;
    let avatar = n.with("avatar", |a| parse_wd(ctx, kind.base(), a))?;
    ClassicalParam::new(kind, avatar).map_err(|e| Error::Schema {
        pointer: format!("{}/avatar", n.ptr),
        message: e.to_string(),
    })
}

pub fn parse_divisor(ctx: &Arc<FieldCtx>, n: Node<'_>) -> Result<Divisor> {
    let places = n.each(|p| {
        let degree = p.with_opt("degree", |d| d.uint())?.unwrap_or(1);
        let point = p.with("point", |x| parse_field(ctx, x))?;
        let mult = p.with("mult", |m| m.int())?;
        if degree == 0 || point.is_zero() {
            return p.fail("places need positive degree and a nonzero point");
        }
        Ok((Place::new(degree as u32, point), mult))
    })?;
    let mut d = Divisor::new();
    for (p, m) in places {
        d.add_at(p, m);
    }
    Ok(d)
}

pub fn field_json(x: &FieldElem) -> Value {
    let coeffs: Vec<Value> = x
        .terms()
        .into_iter()
        .map(|(i, j, c)| json!([i, j, c.numer().to_string(), c.denom().to_string()]))
        .collect();
    json!({ "coeffs": coeffs, "pretty": x.to_string() })
}

pub fn summand_json(s: &IrredSummand) -> Value {
    json!({ "zeta": s.zeta(), "f": s.f(), "alpha": field_json(s.alpha()) })
}

fn base_str(b: Base) -> &'static str {
    match b {
        Base::F => "F",
        Base::E => "E",
    }
}

pub fn semisimple_json(p: &SemisimpleParam) -> Value {
    json!({
        "base": base_str(p.base()),
        "dim": p.dim(),
        "summands": p.summands().iter().map(summand_json).collect::<Vec<_>>(),
        "pretty": p.to_string(),
    })
}

pub fn sl2_json(p: &SL2Param) -> Value {
    json!({
        "base": base_str(p.base()),
        "dim": p.dim(),
        "segments": p
            .segments()
            .iter()
            .map(|s| json!({ "sigma": summand_json(&s.sigma), "d": s.d }))
            .collect::<Vec<_>>(),
        "pretty": p.to_string(),
    })
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_string())).collect()))
            .collect(),
    )
}

pub fn divisor_json(d: &Divisor) -> Value {
    json!({
        "places": d
            .iter()
            .map(|(p, m)| json!({ "degree": p.degree, "point": field_json(&p.point), "mult": m }))
            .collect::<Vec<_>>(),
        "pretty": d.to_string(),
    })
}

/// `[[λ, mult], …]`, with the place degree recorded inside `λ`.
pub fn divisor_pairs(d: &Divisor) -> Value {
    Value::Array(
        d.iter()
            .map(|(p, m)| {
                let mut lambda = field_json(&p.point);
                lambda["degree"] = json!(p.degree);
                json!([lambda, m])
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_forms() {
        let ctx = FieldCtx::new(5, 3).unwrap();
        let v: Value = serde_json::from_str(
            r#"[3, "-1/2", {"c": "2", "zeta": 1, "sqrt_q": -1}, {"coeffs": [[1, 1, 3, 4], [0, 0, "1/3"]]}]"#,
        )
        .unwrap();
        let xs = Node::root(&v).each(|x| parse_field(&ctx, x)).unwrap();
        assert_eq!(xs[0], FieldElem::from_int(&ctx, 3));
        assert_eq!(xs[1], FieldElem::from_ratio(&ctx, -1, 2));
        let want = &(&FieldElem::from_int(&ctx, 2) * &FieldElem::zeta(&ctx, 1)) * &FieldElem::sqrt_q_pow(&ctx, -1);
        assert_eq!(xs[2], want);
        for x in &xs {
            let back = field_json(x);
            assert_eq!(&parse_field(&ctx, Node::root(&back)).unwrap(), x);
        }
    }

    #[test]
    fn pointers() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let v: Value = serde_json::from_str(r#"{"summands": [{"alpha": 1}, {"alpha": "x"}]}"#).unwrap();
        match parse_semisimple(&ctx, Base::F, Node::root(&v)) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/summands/1/alpha"),
            other => panic!("{other:?}"),
        }
        let v: Value = serde_json::from_str(r#"{"summands": [{"zeta": 0, "f": 2}]}"#).unwrap();
        match parse_semisimple(&ctx, Base::F, Node::root(&v)) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/summands/0/f"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wd_with_monodromy() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        let v: Value = serde_json::from_str(
            r#"{"summands": [{"alpha": {"sqrt_q": -1}}, {"alpha": {"sqrt_q": 1}}], "N": [[0, 1], [0, 0]]}"#,
        )
        .unwrap();
        let w = parse_wd(&ctx, Base::F, Node::root(&v)).unwrap();
        assert_eq!(w.to_sl2().unwrap().segments()[0].d, 2);
        let v: Value = serde_json::from_str(
            r#"{"summands": [{"alpha": {"sqrt_q": -1}}, {"alpha": {"sqrt_q": 1}}], "N": [[0, 0], [1, 0]]}"#,
        )
        .unwrap();
        match parse_wd(&ctx, Base::F, Node::root(&v)) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/N"),
            other => panic!("{other:?}"),
        }
    }
}
