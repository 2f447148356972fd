//! Plancherel measures on the parameter side and their multiplicativity.
//!
//! A value is a monomial-normalized rational function of `T = q^{-s}`, `q`
//! the residue cardinality of `F`. GL-pair measures live in
//! `X = Q^{-(s-r)}` over their own base.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{gamma_ratio_realization, require_base, scale_s};
use crate::field::FieldElem;
use crate::matrix::Matrix;
use crate::param::{Base, Realization, SemisimpleParam};
use crate::ratfun::RatFun;
use crate::wd::{SL2Param, Segment, WDParam};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalKind {
    Sp,
    SOodd,
    Ueven,
    Uodd,
}

impl ClassicalKind {
    pub fn base(self) -> Base {
        match self {
            ClassicalKind::Sp | ClassicalKind::SOodd => Base::F,
            ClassicalKind::Ueven | ClassicalKind::Uodd => Base::E,
        }
    }

    /// The representation `R` of the Levi `GL_k` on the unipotent radical.
    pub fn r_name(self) -> &'static str {
        match self {
            ClassicalKind::Sp => "∧²",
            ClassicalKind::SOodd => "Sym²",
            ClassicalKind::Ueven => "As⁺",
            ClassicalKind::Uodd => "As⁻",
        }
    }

    /// `R ∘ r`, always a `W_F`-realization.
    pub fn apply_r(self, r: &Realization) -> Result<Realization> {
        match self {
            ClassicalKind::Sp => Ok(r.ext2()),
            ClassicalKind::SOodd => Ok(r.sym2()),
            ClassicalKind::Ueven => r.asai(1),
            ClassicalKind::Uodd => r.asai(-1),
        }
    }
}

/// `(ρ^c)^∨`; for `W_F`-parameters `c` is trivial.
pub fn conj_dual(p: &SemisimpleParam) -> Result<SemisimpleParam> {
    match p.base() {
        Base::F => Ok(p.dual()),
        Base::E => p.conj_dual(),
    }
}

fn conj_dual_sl2(p: &SL2Param) -> Result<SL2Param> {
    let ctx = p.ctx();
    let base = p.base();
    let segs = p
        .segments()
        .iter()
        .map(|s| {
            let one = SemisimpleParam::new(ctx, base, vec![s.sigma.clone()])?;
            Ok(Segment {
                sigma: conj_dual(&one)?.summands()[0].clone(),
                d: s.d,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SL2Param::new(ctx, base, segs)
}

/// A classical-group parameter through its `GL_m` avatar.
#[derive(Clone, Debug)]
pub struct ClassicalParam {
    kind: ClassicalKind,
    avatar: WDParam,
}

impl ClassicalParam {
    pub fn new(kind: ClassicalKind, avatar: WDParam) -> Result<Self> {
        require_base(avatar.ss(), kind.base(), "avatar")?;
        let m = avatar.dim();
        match kind {
            ClassicalKind::SOodd if m % 2 == 1 => {
                return Err(Error::InvalidInput("SO_{2n+1} avatar must be even-dimensional".into()))
            }
            ClassicalKind::Sp if m.is_multiple_of(2) && m > 0 => {
                return Err(Error::InvalidInput("Sp_{2n} avatar must be odd-dimensional".into()))
            }
            _ => {}
        }
        let sl2 = avatar.to_sl2()?;
        if conj_dual_sl2(&sl2)? != sl2 {
            let what = match kind.base() {
                Base::F => "self-dual",
                Base::E => "conjugate self-dual",
            };
            return Err(Error::InvalidInput(format!("avatar {sl2} is not {what}")));
        }
        Ok(ClassicalParam { kind, avatar })
    }

    pub fn semisimple(kind: ClassicalKind, avatar: SemisimpleParam) -> Result<Self> {
        Self::new(kind, WDParam::semisimple(avatar))
    }

    pub fn kind(&self) -> ClassicalKind {
        self.kind
    }

    pub fn avatar(&self) -> &WDParam {
        &self.avatar
    }

    pub fn galois(&self, k: i64) -> Result<Self> {
        Self::new(self.kind, self.avatar.galois(k)?)
    }
}

fn tensor_gamma(a: &Realization, b: &Realization, nb: &Matrix) -> Result<RatFun> {
    let t = a.tensor(b)?;
    let n = Matrix::identity(&a.ctx, a.dim()).kron(nb);
    gamma_ratio_realization(&t, Some(&n))
}

fn neg_transpose(n: &Matrix) -> Matrix {
    n.transpose().scale(&FieldElem::from_int(n.ctx(), -1))
}

/// `μ(τ_s ⊗ τ'_r) = γ(s-r, τ⊗τ'^∨) γ(r-s, τ^∨⊗τ')` in `X = Q^{-(s-r)}`.
pub fn mu_gl(tau: &SemisimpleParam, tau2: &SemisimpleParam) -> Result<RatFun> {
    tau.check_compatible(tau2)?;
    let ctx = tau.ctx();
    let a = tau.realize();
    let b = tau2.realize();
    let zero = Matrix::zeros(ctx, b.dim(), b.dim());
    let g1 = tensor_gamma(&a, &b.dual(), &zero)?;
    let g2 = tensor_gamma(&a.dual(), &b, &zero)?;
    Ok(g1.mul(&scale_s(&g2, -1)))
}

/// [`mu_gl`] restricted to `r = (1 - k) s`, written in `T = q^{-s}`:
/// `k = 1` is `q^{-t} = 1`, `k = 2` is `q^{-t} = q^{s}`.
pub fn mu_gl_restricted(tau: &SemisimpleParam, tau2: &SemisimpleParam, k: i64) -> Result<RatFun> {
    let f = tau.base().residue_power() as i64;
    Ok(scale_s(&mu_gl(tau, tau2)?, k * f))
}

/// `μ(τ_s ⊗ π) = γ(s, τ⊗φ^∨) γ(-s, τ^∨⊗φ) γ(2s, R∘τ) γ(-2s, R∘τ^∨)`.
pub fn mu_classical(tau: &SemisimpleParam, pi: &ClassicalParam) -> Result<RatFun> {
    let kind = pi.kind;
    require_base(tau, kind.base(), "τ")?;
    tau.check_compatible(pi.avatar.ss())?;
    let k = kind.base().residue_power() as i64;
    let rt = tau.realize();
    let rp = pi.avatar.realize();
    let np = pi.avatar.n();
    let g1 = tensor_gamma(&rt, &rp.dual(), &neg_transpose(np))?;
    let g2 = tensor_gamma(&rt.dual(), &rp, np)?;
    let g3 = gamma_ratio_realization(&kind.apply_r(&rt)?, None)?;
    let g4 = gamma_ratio_realization(&kind.apply_r(&rt.dual())?, None)?;
    Ok(scale_s(&g1, k)
        .mul(&scale_s(&g2, -k))
        .mul(&scale_s(&g3, 2))
        .mul(&scale_s(&g4, -2)))
}

/// Parameter-side Levi data for the three multiplicativity identities.
#[derive(Clone, Debug)]
pub enum LeviData {
    /// `φ ≅ φ' ⊕ ⊕_i (ρ_i ⊕ (ρ_i^c)^∨)`.
    Classical {
        tau: SemisimpleParam,
        pi: ClassicalParam,
        rho_prime: ClassicalParam,
        rhos: Vec<SemisimpleParam>,
    },
    /// `τ = τ'_1 ⊕ … ⊕ τ'_l`.
    Inducing {
        taus: Vec<SemisimpleParam>,
        pi: ClassicalParam,
    },
    /// `τ = ⊕ τ_i`, `τ' = ⊕ τ'_j` for `GL_{m+n}`.
    General {
        taus: Vec<SemisimpleParam>,
        taus2: Vec<SemisimpleParam>,
    },
}

impl LeviData {
    pub fn case(&self) -> u8 {
        match self {
            LeviData::Classical { .. } => 1,
            LeviData::Inducing { .. } => 2,
            LeviData::General { .. } => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: RatFun,
    pub rhs: RatFun,
}

fn sum_all(parts: &[SemisimpleParam]) -> Result<SemisimpleParam> {
    let first = parts
        .first()
        .ok_or_else(|| Error::MalformedLevi("no blocks".into()))?;
    let mut acc = SemisimpleParam::empty(first.ctx(), first.base());
    for p in parts {
        acc = acc.direct_sum(p)?;
    }
    Ok(acc)
}

pub fn check_multiplicativity(data: &LeviData) -> Result<IdentityCheck> {
    let (lhs, rhs) = match data {
        LeviData::Classical {
            tau,
            pi,
            rho_prime,
            rhos,
        } => {
            if pi.kind != rho_prime.kind {
                return Err(Error::MalformedLevi("kinds of π and ρ' differ".into()));
            }
            let mut levi = rho_prime.avatar.ss().clone();
            for r in rhos {
                require_base(r, pi.kind.base(), "ρ_i")?;
                levi = levi.direct_sum(&r.direct_sum(&conj_dual(r)?)?)?;
            }
            if !levi.is_isomorphic(pi.avatar.ss()) {
                return Err(Error::MalformedLevi(format!(
                    "avatar {} is not induced from the Levi data {}",
                    pi.avatar.ss(),
                    levi
                )));
            }
            let lhs = mu_classical(tau, pi)?;
            let mut rhs = mu_classical(tau, rho_prime)?;
            for r in rhos {
                rhs = rhs
                    .mul(&mu_gl_restricted(tau, r, 1)?)
                    .mul(&mu_gl_restricted(tau, &conj_dual(r)?, 1)?);
            }
            (lhs, rhs)
        }
        LeviData::Inducing { taus, pi } => {
            let tau = sum_all(taus)?;
            let lhs = mu_classical(&tau, pi)?;
            let mut rhs = RatFun::one(tau.ctx());
            for (i, ti) in taus.iter().enumerate() {
                rhs = rhs.mul(&mu_classical(ti, pi)?);
                for tj in &taus[i + 1..] {
                    rhs = rhs.mul(&mu_gl_restricted(ti, &conj_dual(tj)?, 2)?);
                }
            }
            (lhs, rhs)
        }
        LeviData::General { taus, taus2 } => {
            let lhs = mu_gl(&sum_all(taus)?, &sum_all(taus2)?)?;
            let mut rhs = RatFun::one(lhs.ctx());
            for a in taus {
                for b in taus2 {
                    rhs = rhs.mul(&mu_gl(a, b)?);
                }
            }
            (lhs, rhs)
        }
    };
    Ok(IdentityCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::gamma_ratio_realization;
    use crate::field::FieldCtx;
    use crate::param::IrredSummand;
    use std::sync::Arc;

    fn chi(ctx: &Arc<FieldCtx>, base: Base, a: FieldElem) -> SemisimpleParam {
        SemisimpleParam::character(ctx, base, a).unwrap()
    }

    #[test]
    fn ramified_pair_gives_a_monomial() {
        let ctx = FieldCtx::new(4, 3).unwrap();
        let a = chi(&ctx, Base::F, FieldElem::one(&ctx));
        let b = SemisimpleParam::new(&ctx, Base::F, vec![
            IrredSummand::new(&ctx, Base::F, 2, FieldElem::from_int(&ctx, 7)).unwrap(),
        ])
        .unwrap();
        assert!(mu_gl(&a, &b).unwrap().is_one());
        assert!(!mu_gl(&a, &a).unwrap().is_one());
        assert!(!mu_gl(&b, &b).unwrap().is_one());
    }

    #[test]
    fn gl_symmetry() {
        let ctx = FieldCtx::new(4, 5).unwrap();
        let a = chi(&ctx, Base::F, FieldElem::one(&ctx));
        let b = chi(&ctx, Base::F, FieldElem::q_pow(&ctx, -1))
            .direct_sum(&chi(&ctx, Base::F, FieldElem::zeta(&ctx, 1)))
            .unwrap();
        let ab = mu_gl(&a, &b).unwrap();
        let ba = mu_gl(&b, &a).unwrap();
        assert_eq!(ab, scale_s(&ba, -1));
        // both restrictions are defined
        mu_gl_restricted(&a, &b, 1).unwrap();
        mu_gl_restricted(&a, &b, 2).unwrap();
    }

    #[test]
    fn empty_sp_avatar_is_pure_rank_one() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let pi = ClassicalParam::semisimple(ClassicalKind::Sp, SemisimpleParam::empty(&ctx, Base::F))
            .unwrap();
        let t = chi(&ctx, Base::F, FieldElem::one(&ctx));
        // ∧² of a character vanishes
        assert!(mu_classical(&t, &pi).unwrap().is_one());
        let pi = ClassicalParam::semisimple(ClassicalKind::SOodd, SemisimpleParam::empty(&ctx, Base::F))
            .unwrap();
        assert!(!mu_classical(&t, &pi).unwrap().is_one());
    }

    #[test]
    fn sym2_and_ext2_make_the_square() {
        let ctx = FieldCtx::new(4, 3).unwrap();
        let t = chi(&ctx, Base::F, FieldElem::q_pow(&ctx, 1))
            .direct_sum(&SemisimpleParam::new(&ctx, Base::F, vec![
                IrredSummand::new(&ctx, Base::F, 1, FieldElem::one(&ctx)).unwrap(),
            ]).unwrap())
            .unwrap();
        let r = t.realize();
        let g = |x: &Realization| gamma_ratio_realization(x, None).unwrap();
        assert_eq!(g(&r.sym2()).mul(&g(&r.ext2())), g(&r.tensor(&r).unwrap()));
    }

    #[test]
    fn self_duality_is_enforced() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let bad = chi(&ctx, Base::F, FieldElem::from_int(&ctx, 2))
            .direct_sum(&chi(&ctx, Base::F, FieldElem::one(&ctx)))
            .unwrap();
        assert!(ClassicalParam::semisimple(ClassicalKind::SOodd, bad).is_err());
        let good = chi(&ctx, Base::F, FieldElem::from_int(&ctx, 2))
            .direct_sum(&chi(&ctx, Base::F, FieldElem::from_ratio(&ctx, 1, 2)))
            .unwrap();
        ClassicalParam::semisimple(ClassicalKind::SOodd, good).unwrap();
        let e = chi(&ctx, Base::E, FieldElem::from_int(&ctx, 2));
        assert!(ClassicalParam::semisimple(ClassicalKind::Uodd, e).is_err());
        let e = chi(&ctx, Base::E, FieldElem::from_int(&ctx, -1));
        ClassicalParam::semisimple(ClassicalKind::Uodd, e).unwrap();
    }

    #[test]
    fn case_three_trivial_characters() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        let t = chi(&ctx, Base::F, FieldElem::one(&ctx));
        let c = check_multiplicativity(&LeviData::General {
            taus: vec![t.clone()],
            taus2: vec![t.clone()],
        })
        .unwrap();
        assert!(c.holds);
        let c = check_multiplicativity(&LeviData::General {
            taus: vec![t.clone(), t.nu_twist_half(2)],
            taus2: vec![t.clone(), t.nu_twist_half(-2)],
        })
        .unwrap();
        assert!(c.holds);
    }

    #[test]
    fn case_one_sp() {
        let ctx = FieldCtx::new(3, 5).unwrap();
        let one = FieldElem::one(&ctx);
        let tau = chi(&ctx, Base::F, one.clone());
        let rho_prime =
            ClassicalParam::semisimple(ClassicalKind::Sp, chi(&ctx, Base::F, one.clone())).unwrap();
        let rho = chi(&ctx, Base::F, FieldElem::q_pow(&ctx, 1));
        let avatar = rho_prime
            .avatar()
            .ss()
            .direct_sum(&rho)
            .unwrap()
            .direct_sum(&rho.dual())
            .unwrap();
        let pi = ClassicalParam::semisimple(ClassicalKind::Sp, avatar).unwrap();
        let c = check_multiplicativity(&LeviData::Classical {
            tau,
            pi,
            rho_prime,
            rhos: vec![rho],
        })
        .unwrap();
        assert!(c.holds, "{} vs {}", c.lhs, c.rhs);
    }

    #[test]
    fn case_two_unitary_cross_term() {
        let ctx = FieldCtx::new(4, 3).unwrap();
        let pi = ClassicalParam::semisimple(
            ClassicalKind::Ueven,
            chi(&ctx, Base::E, FieldElem::one(&ctx)).direct_sum(&chi(&ctx, Base::E, FieldElem::one(&ctx))).unwrap(),
        )
        .unwrap();
        let t1 = SemisimpleParam::new(&ctx, Base::E, vec![
            IrredSummand::new(&ctx, Base::E, 1, FieldElem::one(&ctx)).unwrap(),
        ])
        .unwrap();
        let t2 = chi(&ctx, Base::E, FieldElem::q_pow(&ctx, -1));
        for kind in [ClassicalKind::Ueven, ClassicalKind::Uodd] {
            let pi = ClassicalParam::new(kind, pi.avatar().clone()).unwrap();
            let c = check_multiplicativity(&LeviData::Inducing {
                taus: vec![t1.clone(), t2.clone()],
                pi,
            })
            .unwrap();
            assert!(c.holds, "{} vs {}", c.lhs, c.rhs);
        }
    }

    #[test]
    fn malformed_levi() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        let one = FieldElem::one(&ctx);
        let triv = ClassicalParam::semisimple(ClassicalKind::Sp, chi(&ctx, Base::F, one.clone())).unwrap();
        let r = check_multiplicativity(&LeviData::Classical {
            tau: chi(&ctx, Base::F, one.clone()),
            pi: triv.clone(),
            rho_prime: triv,
            rhos: vec![chi(&ctx, Base::F, one)],
        });
        assert!(matches!(r, Err(Error::MalformedLevi(_))));
    }
}
