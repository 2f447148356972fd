//! Reconstruction of a semisimple parameter from its Γ-divisors.
//!
//! For an irreducible `τ` and `φ = ⊕ m_σ σ`, the divisor `Γ(τ, φ)` lives on
//! the `ν`-chains of unramified twists of `τ`; on each chain it is the
//! second difference `d_k = -m_{k+1} + 2 m_k - m_{k-1}` of the twist
//! multiplicities, which is inverted here.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::param::{orbit, orbit_reps, Base, IrredSummand, SemisimpleParam};
use crate::wd::nu_steps;

/// One family of unramified twists: the orbit `ζ^e` of size `f`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Family {
    pub zeta: u64,
    pub f: u32,
}

impl Family {
    /// The representative with `α = 1`.
    pub fn representative(&self, ctx: &Arc<FieldCtx>, base: Base) -> IrredSummand {
        IrredSummand::new(ctx, base, self.zeta as i64, FieldElem::one(ctx)).expect("valid orbit")
    }
}

/// A twist class `τ ⊗ χ` of a family. The stabilizer `H_τ` consists of the
/// unramified `c` with `c^f = 1`, which fixes `α = c^f`, so `α` itself is a
/// complete invariant of the class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwistClass {
    pub zeta: u64,
    pub f: u32,
    pub alpha_rep: FieldElem,
}

/// All families with `f <= n`, one per orbit of `Q` on `Z/M`.
pub fn enumerate_irreducibles(n: usize, ctx: &Arc<FieldCtx>, base: Base) -> Vec<Family> {
    let big_q = base.q(ctx);
    orbit_reps(big_q, ctx.m())
        .into_iter()
        .map(|e| Family {
            zeta: e,
            f: orbit(e, big_q, ctx.m()).len() as u32,
        })
        .filter(|fam| fam.f as usize <= n)
        .collect()
}

/// Second difference `d_k = -m_{k+1} + 2 m_k - m_{k-1}`.
pub fn laplacian(m: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut d: BTreeMap<i64, i64> = BTreeMap::new();
    for (&k, &v) in m {
        *d.entry(k).or_default() += 2 * v;
        *d.entry(k - 1).or_default() -= v;
        *d.entry(k + 1).or_default() -= v;
    }
    d.retain(|_, v| *v != 0);
    d
}

/// The unique finitely supported `m` with `laplacian(m) = d`, if any.
pub fn deconvolve(d: &BTreeMap<i64, i64>) -> std::result::Result<BTreeMap<i64, i64>, String> {
    let Some((&lo, _)) = d.iter().next() else {
        return Ok(BTreeMap::new());
    };
    let hi = *d.keys().next_back().unwrap();
    // m_k = -Σ_{j<k} (k - j) d_j, zero below the support
    let mut m = BTreeMap::new();
    for k in lo..=hi + 1 {
        let v: i64 = -d.range(..k).map(|(&j, &dj)| (k - j) * dj).sum::<i64>();
        if k >= hi && v != 0 {
            return Err(format!("no finitely supported solution (m_{k} = {v})"));
        }
        if v != 0 {
            m.insert(k, v);
        }
    }
    Ok(m)
}

/// Rebuilds `φ` from `τ ↦ Γ(τ, φ)` over all families of dimension `<= n`.
pub fn reconstruct(
    oracle: &(dyn Fn(&IrredSummand) -> Result<Divisor> + Sync),
    n: usize,
    ctx: &Arc<FieldCtx>,
    base: Base,
) -> Result<SemisimpleParam> {
    let fams = enumerate_irreducibles(n, ctx, base);
    let per_family: Vec<Result<Vec<IrredSummand>>> = fams
        .par_iter()
        .map(|fam| {
            let tau = fam.representative(ctx, base);
            let d = oracle(&tau)?;
            recover_family(fam, &d, ctx, base)
        })
        .collect();
    let mut summands = Vec::new();
    for r in per_family {
        summands.extend(r?);
    }
    let phi = SemisimpleParam::new(ctx, base, summands)?;
    if phi.dim() > n {
        return Err(Error::BoundExceeded(format!(
            "recovered dimension {} exceeds {n}",
            phi.dim()
        )));
    }
    Ok(phi)
}

fn recover_family(
    fam: &Family,
    d: &Divisor,
    ctx: &Arc<FieldCtx>,
    base: Base,
) -> Result<Vec<IrredSummand>> {
    let f = fam.f;
    // a-coordinate: the class with α = a has its double zero at T^f = 1/a
    let mut chains: Vec<(FieldElem, BTreeMap<i64, i64>)> = Vec::new();
    for (place, &mult) in d.iter() {
        if place.degree != f {
            return Err(Error::InconsistentOracle {
                chain: format!("ζ^{}", fam.zeta),
                reason: format!("place {place} has degree {}, expected {f}", place.degree),
            });
        }
        let a = place.point.inv()?;
        let mut placed = false;
        for (anchor, vals) in chains.iter_mut() {
            if let Some(k) = nu_steps(anchor, &a, base, f) {
                *vals.entry(k).or_default() += mult;
                placed = true;
                break;
            }
        }
        if !placed {
            chains.push((a, BTreeMap::from([(0, mult)])));
        }
    }
    let mut out = Vec::new();
    for (anchor, vals) in chains {
        let name = format!("ζ^{} through α = {}", fam.zeta, anchor);
        let m = deconvolve(&vals).map_err(|reason| Error::InconsistentOracle {
            chain: name.clone(),
            reason,
        })?;
        for (&k, &mk) in &m {
            if mk < 0 {
                return Err(Error::InconsistentOracle {
                    chain: name,
                    reason: format!("negative multiplicity {mk} at step {k}"),
                });
            }
            let alpha = &anchor * &base.q_pow(ctx, -(f as i64) * k);
            let s = IrredSummand::new(ctx, base, fam.zeta as i64, alpha)?;
            for _ in 0..mk {
                out.push(s.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::big_gamma;

    #[test]
    fn families() {
        let ctx = FieldCtx::new(1, 3).unwrap();
        assert_eq!(enumerate_irreducibles(1, &ctx, Base::F), vec![Family { zeta: 0, f: 1 }]);
        let ctx = FieldCtx::new(3, 2).unwrap();
        assert_eq!(
            enumerate_irreducibles(2, &ctx, Base::F),
            vec![Family { zeta: 0, f: 1 }, Family { zeta: 1, f: 2 }]
        );
        // ·3 on Z/8: {0}, {1,3}, {2,6}, {4}, {5,7}
        let ctx = FieldCtx::new(8, 3).unwrap();
        assert_eq!(enumerate_irreducibles(2, &ctx, Base::F).len(), 5);
        assert_eq!(enumerate_irreducibles(1, &ctx, Base::F).len(), 2);
    }

    #[test]
    fn deconvolution_inverts_laplacian() {
        let m = BTreeMap::from([(0, 1), (1, 1), (5, 3)]);
        assert_eq!(deconvolve(&laplacian(&m)).unwrap(), m);
        assert!(deconvolve(&BTreeMap::from([(0, 1)])).is_err());
    }

    #[test]
    fn overlapping_twists_recovered() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        let a = FieldElem::from_int(&ctx, 5);
        let phi = SemisimpleParam::new(
            &ctx,
            Base::F,
            vec![
                IrredSummand::new(&ctx, Base::F, 0, a.clone()).unwrap(),
                IrredSummand::new(&ctx, Base::F, 0, &a * &FieldElem::from_ratio(&ctx, 1, 2)).unwrap(),
            ],
        )
        .unwrap();
        let oracle = |tau: &IrredSummand| {
            let t = SemisimpleParam::new(&ctx, Base::F, vec![tau.clone()])?;
            big_gamma(&t, &phi)
        };
        let got = reconstruct(&oracle, 2, &ctx, Base::F).unwrap();
        assert!(got.is_isomorphic(&phi));
    }

    #[test]
    fn inconsistent_oracle_rejected() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        let oracle = |_: &IrredSummand| {
            Ok([(crate::divisor::Place::point(FieldElem::one(&ctx)), 1)]
                .into_iter()
                .collect::<Divisor>())
        };
        assert!(matches!(
            reconstruct(&oracle, 2, &ctx, Base::F),
            Err(Error::InconsistentOracle { .. })
        ));
    }
}
