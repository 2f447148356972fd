//! Elements of the form `c · ω · √q^b`, with `c` a positive rational, `ω` a
//! root of unity in `μ_W` (`W = lcm(2, M)`) and `b ∈ {0, 1}`.
//!
//! Every eigenvalue produced by tensor, Sym², ∧² and Asai constructions from
//! monomial data is again monomial, which is what makes root extraction
//! against a finite candidate set possible.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{pow_rational, rational_valuation, FieldCtx, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    ctx: Arc<FieldCtx>,
    coeff: BigRational,
    unit: u64,
    sqrt_q: bool,
}

/// Coordinates (over the power basis of `Q(ζ_M)`) of `ζ_W^u`.
fn unit_vector(ctx: &FieldCtx, u: u64) -> (i64, Vec<i64>) {
    let m = ctx.m();
    let w = ctx.unit_order();
    let u = u % w;
    if m.is_multiple_of(2) {
        (1, zeta_coords(ctx, u))
    } else {
        // ζ_{2M} = -ζ_M^{(M+1)/2}
        let sign = if u.is_multiple_of(2) { 1 } else { -1 };
        (sign, zeta_coords(ctx, (u * (m + 1) / 2) % m))
    }
}

fn zeta_coords(ctx: &FieldCtx, e: u64) -> Vec<i64> {
    ctx.zeta_coords(e).to_vec()
}

impl Monomial {
    pub fn new(ctx: &Arc<FieldCtx>, coeff: BigRational, unit: i64, sqrt_q: i64) -> Option<Self> {
        if coeff.is_zero() {
            return None;
        }
        let w = ctx.unit_order() as i64;
        let mut unit = unit.rem_euclid(w);
        let mut coeff = coeff;
        if coeff.is_negative() {
            coeff = -coeff;
            unit = (unit + w / 2).rem_euclid(w);
        }
        // fold √q^b into the canonical b ∈ {0, 1}
        let q = BigRational::from_integer(BigInt::from(ctx.q()));
        coeff *= pow_rational(&q, sqrt_q.div_euclid(2));
        let mut odd = sqrt_q.rem_euclid(2) == 1;
        if odd {
            if let Some(r) = ctx.int_sqrt_q() {
                coeff *= BigRational::from_integer(BigInt::from(r));
                odd = false;
            }
        }
        Some(Monomial {
            ctx: ctx.clone(),
            coeff,
            unit: unit as u64,
            sqrt_q: odd,
        })
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Monomial {
            ctx: ctx.clone(),
            coeff: BigRational::one(),
            unit: 0,
            sqrt_q: false,
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    /// Exponent `u` of `ζ_W^u`.
    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn has_sqrt_q(&self) -> bool {
        self.sqrt_q
    }

    /// Recognizes a field element of monomial shape.
    pub fn from_field(x: &FieldElem) -> Option<Self> {
        let ctx = x.ctx();
        let phi = ctx.phi();
        let coeffs = x.coeffs();
        let (part, odd) = if ctx.q_is_square() {
            (coeffs, false)
        } else {
            let a = &coeffs[..phi];
            let b = &coeffs[phi..];
            let a_zero = a.iter().all(Zero::is_zero);
            let b_zero = b.iter().all(Zero::is_zero);
            match (a_zero, b_zero) {
                (false, true) => (a, false),
                (true, false) => (b, true),
                _ => return None,
            }
        };
        let lead = part.iter().position(|c| !c.is_zero())?;
        let w = ctx.unit_order();
        for u in 0..w {
            let (sign, v) = unit_vector(ctx, u);
            if v[lead] == 0 {
                continue;
            }
            let c = &part[lead] / BigRational::from_integer(BigInt::from(sign * v[lead]));
            let matches = part.iter().zip(v.iter()).all(|(x, &y)| {
                *x == &c * BigRational::from_integer(BigInt::from(sign * y))
            });
            if matches {
                return Monomial::new(ctx, c, u as i64, if odd { 1 } else { 0 });
            }
        }
        None
    }

    pub fn to_field(&self) -> FieldElem {
        let ctx = &self.ctx;
        let (sign, v) = unit_vector(ctx, self.unit);
        let mut e = FieldElem::zero(ctx);
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                e.add_term(
                    i as i64,
                    if self.sqrt_q { 1 } else { 0 },
                    &(&self.coeff * BigRational::from_integer(BigInt::from(sign * c))),
                );
            }
        }
        e
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let both = self.sqrt_q && other.sqrt_q;
        let mut coeff = &self.coeff * &other.coeff;
        if both {
            coeff *= BigRational::from_integer(BigInt::from(self.ctx.q()));
        }
        Monomial {
            ctx: self.ctx.clone(),
            coeff,
            unit: (self.unit + other.unit) % self.ctx.unit_order(),
            sqrt_q: self.sqrt_q ^ other.sqrt_q,
        }
    }

    pub fn inv(&self) -> Monomial {
        let w = self.ctx.unit_order();
        let mut coeff = self.coeff.recip();
        if self.sqrt_q {
            coeff /= BigRational::from_integer(BigInt::from(self.ctx.q()));
        }
        Monomial {
            ctx: self.ctx.clone(),
            coeff,
            unit: (w - self.unit) % w,
            sqrt_q: self.sqrt_q,
        }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Monomial::one(&self.ctx);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// All monomial `k`-th roots of `self`.
    pub fn roots(&self, k: u32) -> Vec<Monomial> {
        assert!(k > 0);
        let ctx = &self.ctx;
        let w = ctx.unit_order();
        let g = (k as u64).gcd(&w);
        if !self.unit.is_multiple_of(g) {
            return Vec::new();
        }
        // solve k·u' ≡ unit (mod w)
        let wg = w / g;
        let kg = (k as u64 / g) % wg;
        let base_u = if wg == 1 {
            0
        } else {
            (self.unit / g) * mod_inverse(kg, wg) % wg
        };
        let units: Vec<u64> = (0..g).map(|t| (base_u + t * wg) % w).collect();

        let mut out = Vec::new();
        let b_choices: &[bool] = if ctx.q_is_square() { &[false] } else { &[false, true] };
        for &b in b_choices {
            let kb = if b { k as u64 } else { 0 };
            if (kb % 2 == 1) != self.sqrt_q {
                continue;
            }
            let q = BigRational::from_integer(BigInt::from(ctx.q()));
            let target = &self.coeff / pow_rational(&q, (kb / 2) as i64);
            if let Some(c) = rational_root(&target, k) {
                for &u in &units {
                    out.push(Monomial {
                        ctx: ctx.clone(),
                        coeff: c.clone(),
                        unit: u,
                        sqrt_q: b,
                    });
                }
            }
        }
        out
    }

    /// `v_ℓ` of the rational part (the valuation of the monomial when
    /// `ℓ ∤ 2Mq`).
    pub fn valuation(&self, ell: u64) -> i64 {
        rational_valuation(&self.coeff, ell)
    }

    /// Exponent `h` and rational `c'` with `|self| = c' · √q^h`, choosing `h`
    /// to absorb the `p`-part of the coefficient as far as possible.
    pub fn split_q_power(&self) -> (BigRational, i64) {
        let ctx = &self.ctx;
        let p = ctx.p();
        let r = ctx.q_exponent() as i64;
        let v = rational_valuation(&self.coeff, p);
        match ctx.int_sqrt_q() {
            Some(s) => {
                let half = r / 2;
                let h = v.div_euclid(half);
                let sq = BigRational::from_integer(BigInt::from(s));
                (&self.coeff / pow_rational(&sq, h), h)
            }
            None => {
                let k = v.div_euclid(r);
                let q = BigRational::from_integer(BigInt::from(ctx.q()));
                let h = 2 * k + if self.sqrt_q { 1 } else { 0 };
                (&self.coeff / pow_rational(&q, k), h)
            }
        }
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, (a % m) as i64);
    while new_r != 0 {
        let quo = r / new_r;
        (t, new_t) = (new_t, t - quo * new_t);
        (r, new_r) = (new_r, r - quo * new_r);
    }
    t.rem_euclid(m as i64) as u64
}

fn int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

fn rational_root(r: &BigRational, k: u32) -> Option<BigRational> {
    let n = int_root(r.numer(), k)?;
    let d = int_root(r.denom(), k)?;
    Some(BigRational::new(n, d))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = &self.ctx;
        let m = ctx.m();
        let w = ctx.unit_order();
        let (mut sign, zeta_exp) = if m.is_multiple_of(2) {
            if self.unit == w / 2 {
                (-1, 0)
            } else {
                (1, self.unit % m)
            }
        } else {
            let s = if self.unit.is_multiple_of(2) { 1 } else { -1 };
            (s, (self.unit * (m + 1) / 2) % m)
        };
        let (c, h) = self.split_q_power();
        let mut parts = Vec::new();
        if !c.is_one() {
            parts.push(crate::field::rational_to_string(&c));
        }
        if zeta_exp != 0 {
            parts.push(if zeta_exp == 1 {
                "ζ".to_string()
            } else {
                format!("ζ^{zeta_exp}")
            });
        }
        match h {
            0 => {}
            2 => parts.push("q".into()),
            h if h % 2 == 0 => parts.push(format!("q^{{{}}}", h / 2)),
            h => parts.push(format!("q^{{{}/2}}", h)),
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if c.is_negative() {
            sign = -sign;
        }
        if sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", parts.join("·"))
    }
}
