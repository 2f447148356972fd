//! L-factors, gamma ratios and Γ-divisors.
//!
//! Everything is computed up to a monomial `c·T^k`: the ε-factor is such a
//! monomial, so ratios are returned in monomial-normalized form.

use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::matrix::Matrix;
use crate::param::{Base, Realization, SemisimpleParam};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::wd::WDParam;

/// `det(1 - T·Φ | ker N ∩ V^Σ)`.
pub fn euler_poly(phi: &Matrix, sigma: &Matrix, n: &Matrix) -> Result<Poly> {
    let ctx = phi.ctx();
    let dim = phi.rows();
    let fixed = sigma.sub(&Matrix::identity(ctx, dim));
    let stacked = Matrix::vstack(ctx, &[fixed, n.clone()]);
    let ker = stacked.kernel();
    if ker.is_empty() {
        return Ok(Poly::one(ctx));
    }
    let basis = Matrix::from_columns(ctx, dim, &ker);
    Ok(phi.restrict(&basis)?.det_one_minus())
}

/// `L(s, (r, N))` as a rational function of `T = Q^{-s}`.
pub fn l_factor(w: &WDParam) -> Result<RatFun> {
    let r = w.realize();
    RatFun::from_poly(euler_poly(&r.phi, &r.sigma, w.n())?).inv()
}

/// `L(s, ·)` of a realization with monodromy `n` (`None` for zero).
pub fn l_factor_realization(r: &Realization, n: Option<&Matrix>) -> Result<RatFun> {
    let zero = Matrix::zeros(&r.ctx, r.dim(), r.dim());
    RatFun::from_poly(euler_poly(&r.phi, &r.sigma, n.unwrap_or(&zero))?).inv()
}

/// `L(1-s, w^∨) / L(s, w)`, monomial-normalized.
pub fn gamma_ratio(w: &WDParam) -> Result<RatFun> {
    gamma_ratio_realization(&w.realize(), Some(w.n()))
}

pub fn gamma_ratio_realization(r: &Realization, n: Option<&Matrix>) -> Result<RatFun> {
    let ctx = &r.ctx;
    let dim = r.dim();
    let zero = Matrix::zeros(ctx, dim, dim);
    let n = n.unwrap_or(&zero);
    let p = euler_poly(&r.phi, &r.sigma, n)?;
    let dual = r.dual();
    let minus_nt = n.transpose().scale(&FieldElem::from_int(ctx, -1));
    let pd = euler_poly(&dual.phi, &dual.sigma, &minus_nt)?;
    // s ↦ 1 - s is T ↦ Q^{-1} T^{-1}
    let pd_sub = RatFun::from_poly(pd)
        .scale_var(&r.base.q_pow(ctx, -1))
        .subst_power(-1);
    Ok(RatFun::from_poly(p).div(&pd_sub)?.monomial_normalized())
}

/// Substitution `s ↦ k·s` (`T ↦ T^k`), monomial-normalized.
pub fn scale_s(f: &RatFun, k: i64) -> RatFun {
    f.subst_power(k).monomial_normalized()
}

/// Divisor of [`gamma_ratio`]; all roots lie in `K` because only
/// unramified characters contribute.
pub fn gamma_divisor(w: &WDParam) -> Result<Divisor> {
    let ctx = w.ctx();
    let qi = w.base().q_pow(ctx, -1);
    let mut cands = Vec::new();
    for s in w.ss().summands() {
        if s.zeta() == 0 {
            let ai = s.alpha().inv()?;
            cands.push(&ai * &qi);
            cands.push(ai);
        }
    }
    gamma_ratio(w)?.divisor(&cands)
}

/// `Γ(φ₁, φ₂)`, the divisor of
/// `L(1-s, φ₁⊗φ₂^∨) L(1+s, φ₁^∨⊗φ₂) / (L(s, φ₁^∨⊗φ₂) L(-s, φ₁⊗φ₂^∨))`.
///
/// For irreducible `σ₁ = (e, f, α₁)` and an unramified twist
/// `σ₂ = (e, f, α₂)`, with `c = α₂/α₁` and `U = T^f`, the ratio is
/// `(1 - cU)^2 / ((1 - c Q^f U)(1 - c Q^{-f} U))` up to a monomial; every
/// other pair contributes nothing.
pub fn big_gamma(phi1: &SemisimpleParam, phi2: &SemisimpleParam) -> Result<Divisor> {
    phi1.check_compatible(phi2)?;
    let ctx = phi1.ctx();
    let base = phi1.base();
    let mut d = Divisor::new();
    for s1 in phi1.summands() {
        for s2 in phi2.summands() {
            if s1.zeta() != s2.zeta() {
                continue;
            }
            let f = s1.f();
            let c = (s2.alpha() / s1.alpha())?;
            let ci = c.inv()?;
            let qf = base.q_pow(ctx, f as i64);
            let qmf = base.q_pow(ctx, -(f as i64));
            d.add_at(Place::new(f, ci.clone()), 2);
            d.add_at(Place::new(f, &ci * &qf), -1);
            d.add_at(Place::new(f, &ci * &qmf), -1);
        }
    }
    Ok(d)
}

/// The same four-L-factor ratio, evaluated as a rational function from the
/// tensor realizations.
pub fn big_gamma_ratfun(phi1: &SemisimpleParam, phi2: &SemisimpleParam) -> Result<RatFun> {
    phi1.check_compatible(phi2)?;
    let ctx = phi1.ctx();
    let base = phi1.base();
    let r1 = phi1.realize();
    let r2 = phi2.realize();
    let x = r1.dual().tensor(&r2)?; // φ₁^∨ ⊗ φ₂
    let y = r1.tensor(&r2.dual())?; // φ₁ ⊗ φ₂^∨
    let px = RatFun::from_poly(euler_poly(&x.phi, &x.sigma, &Matrix::zeros(ctx, x.dim(), x.dim()))?);
    let py = RatFun::from_poly(euler_poly(&y.phi, &y.sigma, &Matrix::zeros(ctx, y.dim(), y.dim()))?);
    let qi = base.q_pow(ctx, -1);
    // L = 1/P, so the ratio is P_X(T) P_Y(T^{-1}) / (P_Y(Q^{-1}T^{-1}) P_X(Q^{-1}T))
    let num = px.mul(&py.subst_power(-1));
    let den = py.scale_var(&qi).subst_power(-1).mul(&px.scale_var(&qi));
    Ok(num.div(&den)?.monomial_normalized())
}

/// The monomial-normalized function `∏ (1 - T^f/λ)^m` of a divisor.
pub fn divisor_ratfun(base_ctx: &std::sync::Arc<crate::field::FieldCtx>, d: &Divisor) -> Result<RatFun> {
    let mut out = RatFun::one(base_ctx);
    for (place, &m) in d.iter() {
        let inv = place.point.inv()?;
        let factor = RatFun::from_poly(Poly::one_minus(&inv, place.degree as usize));
        out = out.mul(&factor.pow(m)?);
    }
    Ok(out)
}

/// Candidate roots for divisors of ratios built from `phi`: `Q^k / α` for
/// the unramified summands and small `k`.
pub fn unramified_candidates(phi: &SemisimpleParam, span: i64) -> Vec<FieldElem> {
    let ctx = phi.ctx();
    let mut out = Vec::new();
    for s in phi.summands() {
        if s.zeta() != 0 {
            continue;
        }
        let ai = s.alpha().inv().expect("nonzero");
        for k in -span..=span {
            out.push(&ai * &phi.base().q_pow(ctx, k));
        }
    }
    out
}

pub(crate) fn require_base(p: &SemisimpleParam, base: Base, what: &str) -> Result<()> {
    if p.base() != base {
        return Err(Error::InvalidInput(format!("{what} must be a {base:?}-parameter")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::param::IrredSummand;
    use crate::wd::{SL2Param, Segment};
    use std::sync::Arc;

    fn chi(ctx: &Arc<FieldCtx>, a: FieldElem) -> SemisimpleParam {
        SemisimpleParam::character(ctx, Base::F, a).unwrap()
    }

    #[test]
    fn character_l_factor() {
        let ctx = FieldCtx::new(1, 5).unwrap();
        let a = FieldElem::from_int(&ctx, 3);
        let l = l_factor(&WDParam::semisimple(chi(&ctx, a.clone()))).unwrap();
        assert_eq!(l, RatFun::from_poly(Poly::one_minus(&a, 1)).inv().unwrap());
    }

    #[test]
    fn steinberg_l_factor() {
        for q in [2, 3, 4, 5] {
            let ctx = FieldCtx::new(1, q).unwrap();
            let triv = IrredSummand::new(&ctx, Base::F, 0, FieldElem::one(&ctx)).unwrap();
            let st = SL2Param::new(&ctx, Base::F, vec![Segment { sigma: triv, d: 2 }]).unwrap();
            let l = l_factor(&st.to_wd().unwrap()).unwrap();
            let expect = RatFun::from_poly(Poly::one_minus(&FieldElem::sqrt_q_pow(&ctx, -1), 1))
                .inv()
                .unwrap();
            assert_eq!(l, expect, "q = {q}");
        }
    }

    #[test]
    fn ramified_is_trivial() {
        let ctx = FieldCtx::new(4, 3).unwrap();
        let s = IrredSummand::new(&ctx, Base::F, 1, FieldElem::from_int(&ctx, 2)).unwrap();
        let p = SemisimpleParam::new(&ctx, Base::F, vec![s]).unwrap();
        let w = WDParam::semisimple(p);
        assert!(l_factor(&w).unwrap().is_one());
        assert!(gamma_ratio(&w).unwrap().is_one());
    }

    #[test]
    fn trivial_character_gamma() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let one = FieldElem::one(&ctx);
        let w = WDParam::semisimple(chi(&ctx, one.clone()));
        let d = gamma_divisor(&w).unwrap();
        let expect: Divisor = [
            (Place::point(one), 1),
            (Place::point(FieldElem::from_ratio(&ctx, 1, 3)), -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
    }

    #[test]
    fn gamma_of_trivial_pair() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        let one = FieldElem::one(&ctx);
        let d = big_gamma(&chi(&ctx, one.clone()), &chi(&ctx, one.clone())).unwrap();
        let expect: Divisor = [
            (Place::point(one.clone()), 2),
            (Place::point(FieldElem::from_int(&ctx, 2)), -1),
            (Place::point(FieldElem::from_ratio(&ctx, 1, 2)), -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expect);
        let f = big_gamma_ratfun(&chi(&ctx, one.clone()), &chi(&ctx, one)).unwrap();
        assert_eq!(f, divisor_ratfun(&ctx, &d).unwrap());
    }

    #[test]
    fn combinatorial_gamma_matches_matrices_for_induced() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let s = IrredSummand::new(&ctx, Base::F, 1, FieldElem::from_int(&ctx, 3)).unwrap();
        let t = IrredSummand::new(&ctx, Base::F, 1, FieldElem::zeta(&ctx, 2)).unwrap();
        let a = SemisimpleParam::new(&ctx, Base::F, vec![s]).unwrap();
        let b = SemisimpleParam::new(&ctx, Base::F, vec![t]).unwrap();
        let d = big_gamma(&a, &b).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(big_gamma_ratfun(&a, &b).unwrap(), divisor_ratfun(&ctx, &d).unwrap());
    }

    #[test]
    fn unrelated_pair_has_empty_gamma() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let a = chi(&ctx, FieldElem::one(&ctx));
        let s = IrredSummand::new(&ctx, Base::F, 1, FieldElem::one(&ctx)).unwrap();
        let b = SemisimpleParam::new(&ctx, Base::F, vec![s]).unwrap();
        assert!(big_gamma(&a, &b).unwrap().is_zero());
        assert!(big_gamma_ratfun(&a, &b).unwrap().is_one());
    }
}
