//! `ℓ`-adic integrality of parameters with monomial Frobenius eigenvalues.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldElem};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::param::{Realization, SemisimpleParam};
use crate::wd::{frobenius_ss, WDParam};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralReport {
    pub integral: bool,
    pub frob_ss_integral: bool,
    pub ss_integral: bool,
    pub git_integral: bool,
}

impl IntegralReport {
    pub fn consistent(&self) -> bool {
        self.integral == self.frob_ss_integral
            && self.integral == self.ss_integral
            && self.integral == self.git_integral
    }
}

pub fn check_prime(ell: u64, p: u64, m: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::InvalidInput(format!("ℓ = {ell} is not prime")));
    }
    if ell == 2 || ell == p || m.is_multiple_of(ell) {
        return Err(Error::BadPrime { ell });
    }
    Ok(())
}

fn monomial(x: &FieldElem) -> Result<Monomial> {
    Monomial::from_field(x).ok_or_else(|| Error::NotMonomial(x.to_string()))
}

/// Every eigenvalue `α = c·ζ·√q^b` has `v_ℓ(c) = 0`.
pub fn ss_integral(ss: &SemisimpleParam, ell: u64) -> Result<bool> {
    let mut ok = true;
    for s in ss.summands() {
        ok &= monomial(s.alpha())?.valuation(ell) == 0;
    }
    Ok(ok)
}

/// Characteristic polynomials of `Φ^f` on every orbit block have
/// `ℓ`-integral coefficients and a unit constant term.
pub fn blocks_integral(r: &Realization, ell: u64) -> Result<bool> {
    for (_, (_, a)) in r.orbit_blocks()? {
        let cp = a.charpoly();
        if !cp.coeffs().iter().all(|c| c.is_ell_integral(ell)) {
            return Ok(false);
        }
        if !cp.coeff(0).is_ell_unit(ell) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `exp(N)` for nilpotent `N`.
pub fn exp_nilpotent(n: &Matrix) -> Matrix {
    let ctx = n.ctx();
    let dim = n.rows();
    let mut acc = Matrix::identity(ctx, dim);
    let mut term = Matrix::identity(ctx, dim);
    for k in 1..=dim {
        term = term.mul(n).scale(&FieldElem::from_ratio(ctx, 1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    acc
}

pub fn integral_predicates(w: &WDParam, ell: u64) -> Result<IntegralReport> {
    let ctx = w.ctx();
    check_prime(ell, ctx.p(), ctx.m())?;
    let ss = ss_integral(w.ss(), ell)?;
    let r = w.realize();
    let git = blocks_integral(&r, ell)?;
    // the ℓ-adic image of a Frobenius lift is Φ·exp(N); semisimplify it
    let phi_l = r.phi.mul(&exp_nilpotent(w.n()));
    let (r_ss, _) = frobenius_ss(w.base(), &phi_l, &r.sigma)?;
    let frob = blocks_integral(&r_ss, ell)?;
    // compact closure: every segment is an integral twist of a unit
    let mut integral = true;
    for seg in w.to_sl2()?.segments() {
        integral &= monomial(seg.sigma.alpha())?.valuation(ell) == 0;
    }
    Ok(IntegralReport {
        integral,
        frob_ss_integral: frob,
        ss_integral: ss,
        git_integral: git,
    })
}

/// `det Φ` is an `ℓ`-adic unit.
pub fn det_integral(w: &WDParam, ell: u64) -> Result<bool> {
    let ctx = w.ctx();
    check_prime(ell, ctx.p(), ctx.m())?;
    Ok(w.ss().det_frobenius().is_ell_unit(ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::param::{Base, IrredSummand};
    use crate::wd::{SL2Param, Segment};

    #[test]
    fn steinberg_is_integral() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let triv = IrredSummand::new(&ctx, Base::F, 0, FieldElem::one(&ctx)).unwrap();
        let w = SL2Param::new(&ctx, Base::F, vec![Segment { sigma: triv, d: 2 }])
            .unwrap()
            .to_wd()
            .unwrap();
        for ell in [5, 7, 11] {
            let rep = integral_predicates(&w, ell).unwrap();
            assert!(rep.consistent() && rep.integral);
            assert!(det_integral(&w, ell).unwrap());
        }
    }

    #[test]
    fn ell_character_is_not() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let ss = SemisimpleParam::character(&ctx, Base::F, FieldElem::from_int(&ctx, 5)).unwrap();
        let rep = integral_predicates(&WDParam::semisimple(ss), 5).unwrap();
        assert!(rep.consistent() && !rep.integral);
    }

    #[test]
    fn bad_primes_and_non_monomials() {
        let ctx = FieldCtx::new(5, 3).unwrap();
        let ss = SemisimpleParam::character(&ctx, Base::F, FieldElem::one(&ctx)).unwrap();
        let w = WDParam::semisimple(ss);
        assert!(matches!(integral_predicates(&w, 3), Err(Error::BadPrime { .. })));
        assert!(matches!(integral_predicates(&w, 5), Err(Error::BadPrime { .. })));
        assert!(matches!(integral_predicates(&w, 2), Err(Error::BadPrime { .. })));
        let x = &FieldElem::one(&ctx) + &FieldElem::zeta(&ctx, 1).scale_int(2);
        let ss = SemisimpleParam::character(&ctx, Base::F, x).unwrap();
        assert!(matches!(
            integral_predicates(&WDParam::semisimple(ss), 7),
            Err(Error::NotMonomial(_))
        ));
    }

    trait ScaleInt {
        fn scale_int(&self, k: i64) -> FieldElem;
    }

    impl ScaleInt for FieldElem {
        fn scale_int(&self, k: i64) -> FieldElem {
            self * &FieldElem::from_int(self.ctx(), k)
        }
    }
}
