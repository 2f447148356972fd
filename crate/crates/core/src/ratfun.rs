//! Rational functions in `T` over `K`, kept reduced with a monic denominator.

use std::fmt;
use std::sync::Arc;

use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let ctx = den.ctx().clone();
            return Ok(RatFun {
                num,
                den: Poly::one(&ctx),
            });
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g)?;
        let (den, _) = den.divrem(&g)?;
        let lead = den.lead().unwrap().inv()?;
        Ok(RatFun {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let ctx = p.ctx().clone();
        RatFun {
            num: p,
            den: Poly::one(&ctx),
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_poly(Poly::one(ctx))
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.num.ctx()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.degree() == Some(0) && self.num == self.den
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<RatFun> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        RatFun::new(base.num.pow(e), base.den.pow(e))
    }

    /// `f(c · T)`.
    pub fn scale_var(&self, c: &FieldElem) -> RatFun {
        RatFun::new(self.num.scale_var(c), self.den.scale_var(c)).expect("nonzero denominator")
    }

    /// `f(T^k)` for any nonzero `k`, clearing negative powers of `T`.
    pub fn subst_power(&self, k: i64) -> RatFun {
        assert!(k != 0);
        let a = self.num.compose_power(k.unsigned_abs() as usize);
        let b = self.den.compose_power(k.unsigned_abs() as usize);
        if k > 0 {
            return RatFun::new(a, b).expect("nonzero denominator");
        }
        let da = a.degree().unwrap_or(0);
        let db = b.degree().unwrap_or(0);
        let d = da.max(db);
        let a = a.reverse().shift_up(d - da);
        let b = b.reverse().shift_up(d - db);
        RatFun::new(a, b).expect("nonzero denominator")
    }

    /// The unique `g` with `f = c · T^k · g`, `g(0) = 1`, for the zero
    /// function returns itself.
    pub fn monomial_normalized(&self) -> RatFun {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.num.shift_down(self.num.low_order().unwrap());
        let d = self.den.shift_down(self.den.low_order().unwrap());
        let c = &d.coeff(0) / &n.coeff(0);
        let c = c.expect("nonzero constant term");
        RatFun::new(n.scale(&c), d).expect("nonzero denominator")
    }

    /// `(c, k)` with `f = c · T^k · monomial_normalized(f)`.
    pub fn monomial_part(&self) -> Option<(FieldElem, i64)> {
        let lo_n = self.num.low_order()?;
        let lo_d = self.den.low_order().unwrap();
        let c = (&self.num.coeff(lo_n) / &self.den.coeff(lo_d)).ok()?;
        Some((c, lo_n as i64 - lo_d as i64))
    }

    pub fn galois(&self, k: i64) -> Result<RatFun> {
        RatFun::new(self.num.galois(k)?, self.den.galois(k)?)
    }

    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        &self.num.eval(x) / &self.den.eval(x)
    }

    /// Divisor on `K^×`, extracting roots from `candidates`. A leftover
    /// linear factor is solved directly; anything else is reported.
    pub fn divisor(&self, candidates: &[FieldElem]) -> Result<Divisor> {
        if self.is_zero() {
            return Err(Error::InvalidInput("divisor of the zero function".into()));
        }
        let mut d = poly_divisor(&self.num, candidates)?;
        d = d.sub(&poly_divisor(&self.den, candidates)?);
        Ok(d)
    }
}

fn poly_divisor(p: &Poly, candidates: &[FieldElem]) -> Result<Divisor> {
    let ctx = p.ctx().clone();
    let mut rest = p.shift_down(p.low_order().unwrap_or(0));
    let mut d = Divisor::new();
    for lambda in candidates {
        if lambda.is_zero() || rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        let k = rest.root_multiplicity(lambda);
        if k > 0 {
            let lin = Poly::new(&ctx, vec![-lambda, FieldElem::one(&ctx)]);
            rest = rest.divrem(&lin.pow(k as u32))?.0;
            d.add_at(Place::point(lambda.clone()), k as i64);
        }
    }
    match rest.degree() {
        Some(0) | None => Ok(d),
        Some(1) => {
            let root = (&(-&rest.coeff(0)) / &rest.coeff(1))?;
            d.add_at(Place::point(root), 1);
            Ok(d)
        }
        Some(_) => Err(Error::NonSplit(rest.to_string())),
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Writes `c · N / D` with `N(0) = D(0) = 1` where possible, so that Euler
/// factors appear as `(1 - λ T)^{-1}`.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n0 = self.num.coeff(0);
        let d0 = self.den.coeff(0);
        let (num, den, c) = if !n0.is_zero() && !d0.is_zero() {
            let num = self.num.scale(&n0.inv().unwrap());
            let den = self.den.scale(&d0.inv().unwrap());
            (num, den, (&n0 / &d0).unwrap())
        } else {
            let ctx = self.ctx();
            (self.num.clone(), self.den.clone(), FieldElem::one(ctx))
        };
        let num_one = num.degree() == Some(0) && num.coeff(0).is_one();
        let den_one = den.degree() == Some(0) && den.coeff(0).is_one();
        let prefix = if c.is_one() {
            String::new()
        } else {
            let (neg, body) = crate::poly::signed_coeff(&c);
            format!("{}{} · ", if neg { "-" } else { "" }, body)
        };
        match (num_one, den_one) {
            (true, true) => {
                if c.is_one() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", prefix.trim_end_matches(" · "))
                }
            }
            (false, true) => write!(f, "{prefix}({num})"),
            (true, false) => write!(f, "{prefix}({den})^{{-1}}"),
            (false, false) => write!(f, "{prefix}({num}) / ({den})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(1, 3).unwrap()
    }

    #[test]
    fn divisor_of_simple_ratio() {
        let ctx = ctx();
        let one = FieldElem::one(&ctx);
        let q = FieldElem::from_int(&ctx, 3);
        let qi = q.inv().unwrap();
        let f = RatFun::new(Poly::one_minus(&one, 1), Poly::one_minus(&q, 1)).unwrap();
        let d = f.divisor(&[one.clone(), qi.clone()]).unwrap();
        let expect: Divisor = [(Place::point(one), 1), (Place::point(qi), -1)].into_iter().collect();
        assert_eq!(d, expect);
        assert!(RatFun::one(&ctx).divisor(&[]).unwrap().is_zero());
    }

    #[test]
    fn gamma_one_one_shape() {
        let ctx = ctx();
        let one = FieldElem::one(&ctx);
        let q = FieldElem::from_int(&ctx, 3);
        let qi = q.inv().unwrap();
        let num = Poly::one_minus(&one, 1).pow(2);
        let den = Poly::one_minus(&qi, 1).mul(&Poly::one_minus(&q, 1));
        let f = RatFun::new(num, den).unwrap();
        let d = f.divisor(&[one.clone(), q.clone(), qi.clone()]).unwrap();
        let expect: Divisor = [
            (Place::point(one), 2),
            (Place::point(q), -1),
            (Place::point(qi), -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
    }

    #[test]
    fn negative_substitution() {
        let ctx = ctx();
        let q = FieldElem::from_int(&ctx, 3);
        // 1 - q T  ->  1 - q / T  =  (T - q) / T
        let f = RatFun::from_poly(Poly::one_minus(&q, 1)).subst_power(-1);
        assert_eq!(f.num().degree(), Some(1));
        assert_eq!(f.den().degree(), Some(1));
        let back = f.subst_power(-1);
        assert_eq!(back, RatFun::from_poly(Poly::one_minus(&q, 1)));
        let norm = f.monomial_normalized();
        assert_eq!(norm.num().coeff(0), norm.den().coeff(0));
    }

    #[test]
    fn display_euler_factor() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        let a = FieldElem::sqrt_q_pow(&ctx, -1);
        let l = RatFun::from_poly(Poly::one_minus(&a, 1)).inv().unwrap();
        assert_eq!(l.to_string(), "(1 - q^{-1/2} T)^{-1}");
    }
}
