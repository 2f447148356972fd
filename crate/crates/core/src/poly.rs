//! Dense univariate polynomials over `K` in the variable `T = q^{-s}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::monomial::Monomial;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Poly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::constant(FieldElem::one(ctx))
    }

    pub fn constant(c: FieldElem) -> Self {
        let ctx = c.ctx().clone();
        Self::new(&ctx, vec![c])
    }

    /// `T`.
    pub fn var(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, vec![FieldElem::zero(ctx), FieldElem::one(ctx)])
    }

    /// `c · T^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let ctx = c.ctx().clone();
        let mut coeffs = vec![FieldElem::zero(&ctx); k];
        coeffs.push(c);
        Self::new(&ctx, coeffs)
    }

    /// `1 - c · T^k`.
    pub fn one_minus(c: &FieldElem, k: usize) -> Self {
        let ctx = c.ctx().clone();
        let one = Self::one(&ctx);
        one.sub(&Self::monomial(c.clone(), k))
    }

    pub fn new(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    /// Order of vanishing at `T = 0`.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![FieldElem::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.ctx, out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(&self.ctx, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.lead().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let mut quot = vec![FieldElem::zero(&self.ctx); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, y) in d.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * y);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(&self.ctx, quot), Poly::new(&self.ctx, rem)))
    }

    /// Monic scalar multiple (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) if !l.is_one() => self.scale(&l.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.degree().is_some_and(|d| d > 0) && other.degree().is_some_and(|d| d > 0) {
            if let Some(g) = crate::modgcd::modular_gcd(self, other) {
                return g;
            }
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = FieldElem::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `f(c · T)`.
    pub fn scale_var(&self, c: &FieldElem) -> Poly {
        let mut pw = FieldElem::one(&self.ctx);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        Poly::new(&self.ctx, out)
    }

    /// `f(T^k)` for `k >= 1`.
    pub fn compose_power(&self, k: usize) -> Poly {
        assert!(k >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![FieldElem::zero(&self.ctx); (self.coeffs.len() - 1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] = a.clone();
        }
        Poly::new(&self.ctx, out)
    }

    /// `T^d · f(1/T)` where `d` is the degree.
    pub fn reverse(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(&self.ctx, c)
    }

    /// Divides out `T^k`; `T^k` must divide the polynomial.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::new(&self.ctx, self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![FieldElem::zero(&self.ctx); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(&self.ctx, c)
    }

    pub fn galois(&self, k: i64) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.galois(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(&self.ctx, coeffs))
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &FieldElem::from_int(&self.ctx, i as i64))
            .collect();
        Poly::new(&self.ctx, coeffs)
    }

    /// Squarefree part (product of the distinct monic irreducible factors).
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).expect("nonzero gcd").0.monic()
    }

    /// Multiplicity of `λ` as a root.
    pub fn root_multiplicity(&self, lambda: &FieldElem) -> usize {
        let mut p = self.clone();
        let lin = Poly::new(&self.ctx, vec![-lambda, FieldElem::one(&self.ctx)]);
        let mut k = 0;
        while !p.is_zero() && p.eval(lambda).is_zero() {
            p = p.divrem(&lin).expect("monic divisor").0;
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Formats a coefficient in front of a power of `T`, returning the sign
/// separately so that sums read naturally.
pub(crate) fn signed_coeff(c: &FieldElem) -> (bool, String) {
    match Monomial::from_field(c) {
        Some(m) => {
            let s = m.to_string();
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        }
        None => (false, format!("({})", c)),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = signed_coeff(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "T".into(),
                k => format!("T^{k}"),
            };
            if k == 0 {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{var}")?;
            } else {
                write!(f, "{body} {var}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let a = FieldElem::zeta(&ctx, 1);
        let b = FieldElem::sqrt_q_pow(&ctx, 1);
        let fa = Poly::one_minus(&a, 1);
        let fb = Poly::one_minus(&b, 1);
        let prod = fa.mul(&fb);
        let (quo, rem) = prod.divrem(&fa).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, fb);
        assert_eq!(prod.gcd(&fa.mul(&fa)), fa.monic());
    }

    #[test]
    fn roots_and_reverse() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let q = FieldElem::from_int(&ctx, 3);
        let f = Poly::one_minus(&q, 1).pow(2);
        assert_eq!(f.root_multiplicity(&q.inv().unwrap()), 2);
        assert_eq!(f.reverse().root_multiplicity(&q), 2);
        assert_eq!(Poly::one_minus(&q, 2).degree(), Some(2));
        assert_eq!(Poly::one_minus(&q, 1).to_string(), "1 - q T");
    }
}
