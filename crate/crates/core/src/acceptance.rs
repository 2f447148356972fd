//! The acceptance suite, shared by the test target and `wdparam selftest`.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::converse::reconstruct;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::factors::{big_gamma, big_gamma_ratfun, divisor_ratfun, gamma_ratio, l_factor};
use crate::field::{FieldCtx, FieldElem};
use crate::integrality::{det_integral, integral_predicates};
use crate::moduli::{closed_form_n1, count_points, count_points_naive};
use crate::monodromy::{check_gpr_uniqueness, enumerate_orbits, is_open, monodromy_space, pole_order_at_1, rank_sequence};
use crate::param::{orbit, orbit_reps, Base, IrredSummand, SemisimpleParam};
use crate::plancherel::{check_multiplicativity, conj_dual, ClassicalKind, ClassicalParam, LeviData};
use crate::poly::Poly;
use crate::random::Gen;
use crate::ratfun::RatFun;
use crate::wd::{sl2_to_wd, wd_to_sl2, SL2Param, Segment, WDParam};

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub max_n: usize,
    pub max_m: u64,
    pub exhaustive_n: usize,
    pub exhaustive_m: u64,
    /// Overrides every per-criterion instance count.
    pub samples: Option<usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: 4,
            max_m: 12,
            exhaustive_n: 4,
            exhaustive_m: 6,
            samples: None,
        }
    }
}

impl Bounds {
    fn count(&self, n: usize) -> usize {
        self.samples.unwrap_or(n)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<28} {} ({} checked, {} ms)",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.checked,
            self.millis
        )?;
        for x in self.failures.iter().take(3) {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "gamma-ss-invariance"),
    (2, "gamma-multiplicativity"),
    (3, "converse-round-trip"),
    (4, "maximal-monodromy"),
    (5, "monodromy-dim-pole-order"),
    (6, "integrality"),
    (7, "dictionary-bijectivity"),
    (8, "structural-identities"),
    (9, "plancherel-multiplicativity"),
    (10, "steinberg-golden-value"),
    (11, "moduli-counts"),
    (12, "galois-equivariance"),
];

type Check = Box<dyn Fn() -> Result<bool> + Send + Sync>;

/// Runs the checks in parallel; the order of failures follows the input.
fn evaluate(checks: Vec<(String, Check)>) -> (usize, Vec<String>) {
    let n = checks.len();
    let failures = checks
        .into_par_iter()
        .filter_map(|(label, c)| match c() {
            Ok(true) => None,
            Ok(false) => Some(label),
            Err(e) => Some(format!("{label}: {e}")),
        })
        .collect();
    (n, failures)
}

pub fn run(id: u8, seed: u64, bounds: &Bounds) -> CriterionResult {
    let start = Instant::now();
    let seed = seed.wrapping_mul(1000).wrapping_add(id as u64);
    let (checked, failures) = match id {
        1 => gamma_ss_invariance(seed, bounds),
        2 => gamma_multiplicativity(seed, bounds),
        3 => converse_round_trip(seed, bounds),
        4 => maximal_monodromy(bounds, false),
        5 => maximal_monodromy(bounds, true),
        6 => integrality(seed, bounds),
        7 => dictionary(seed, bounds),
        8 => structural(seed, bounds),
        9 => plancherel(seed, bounds),
        10 => steinberg(),
        11 => moduli(),
        12 => galois(seed, bounds),
        _ => (0, vec![format!("unknown criterion {id}")]),
    };
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown");
    CriterionResult {
        id,
        name,
        passed: failures.is_empty() && checked > 0,
        checked,
        failures,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_all(seed: u64, bounds: &Bounds) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run(id, seed, bounds)).collect()
}

fn random_base(g: &mut Gen) -> Base {
    if g.bool() {
        Base::F
    } else {
        Base::E
    }
}

fn gamma_ss_invariance(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(200) {
        let ctx = g.ctx(b.max_m, &[2, 3, 5]);
        let base = random_base(&mut g);
        let w = g.wd(&ctx, base, b.max_n);
        checks.push((
            format!("#{i} {}", w.ss()),
            Box::new(move || {
                let ss = WDParam::semisimple(w.ss().clone());
                Ok(gamma_ratio(&w)? == gamma_ratio(&ss)?)
            }),
        ));
    }
    evaluate(checks)
}

fn gamma_multiplicativity(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(200) {
        let ctx = g.ctx(b.max_m, &[2, 3, 5]);
        let base = random_base(&mut g);
        let half = (b.max_n / 2).max(1);
        let w1 = g.wd(&ctx, base, half);
        let w2 = g.wd(&ctx, base, half);
        let p1 = g.semisimple(&ctx, base, half);
        let p2 = g.semisimple(&ctx, base, half);
        let psi = g.semisimple(&ctx, base, b.max_n);
        checks.push((
            format!("#{i} {} / {} / {}", w1.ss(), w2.ss(), psi),
            Box::new(move || {
                let lhs = gamma_ratio(&w1.direct_sum(&w2)?)?;
                let rhs = gamma_ratio(&w1)?.mul(&gamma_ratio(&w2)?);
                let sum = p1.direct_sum(&p2)?;
                let first = big_gamma(&sum, &psi)? == big_gamma(&p1, &psi)?.add(&big_gamma(&p2, &psi)?);
                let second = big_gamma(&psi, &sum)? == big_gamma(&psi, &p1)?.add(&big_gamma(&psi, &p2)?);
                let ctx = psi.ctx();
                let matrix = divisor_ratfun(ctx, &big_gamma(&p1, &psi)?)? == big_gamma_ratfun(&p1, &psi)?;
                Ok(lhs == rhs && first && second && matrix)
            }),
        ));
    }
    evaluate(checks)
}

fn converse_round_trip(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(100) {
        let ctx = g.ctx(b.max_m, &[2, 3, 5]);
        let base = random_base(&mut g);
        let phi = g.semisimple(&ctx, base, 5);
        checks.push((
            format!("#{i} {phi}"),
            Box::new(move || {
                let target = phi.clone();
                let oracle = move |tau: &IrredSummand| -> Result<Divisor> {
                    let t = SemisimpleParam::new(target.ctx(), target.base(), vec![tau.clone()])?;
                    big_gamma(&t, &target)
                };
                let got = reconstruct(&oracle, 5, phi.ctx(), phi.base())?;
                Ok(got.is_isomorphic(&phi))
            }),
        ));
    }
    evaluate(checks)
}

/// Every semisimple `F`-parameter of dimension `<= n` built from the
/// summands `(e, f, Q^{-fk})`, `k = 0..n`.
pub fn sweep_params(ctx: &Arc<FieldCtx>, n: usize) -> Vec<SemisimpleParam> {
    let base = Base::F;
    let big_q = base.q(ctx);
    let mut types = Vec::new();
    for e in orbit_reps(big_q, ctx.m()) {
        let f = orbit(e, big_q, ctx.m()).len();
        if f > n {
            continue;
        }
        for k in 0..n as i64 {
            let a = base.q_pow(ctx, -(f as i64) * k);
            types.push(IrredSummand::new(ctx, base, e as i64, a).expect("valid summand"));
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        types: &[IrredSummand],
        start: usize,
        room: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !stack.is_empty() {
            out.push(stack.clone());
        }
        for i in start..types.len() {
            let f = types[i].f() as usize;
            if f <= room {
                stack.push(i);
                rec(types, i, room - f, stack, out);
                stack.pop();
            }
        }
    }
    let mut idx = Vec::new();
    rec(&types, 0, n, &mut stack, &mut idx);
    for ix in idx {
        let s = ix.iter().map(|&i| types[i].clone()).collect();
        out.push(SemisimpleParam::new(ctx, base, s).expect("same context"));
    }
    out
}

fn sweep_contexts(b: &Bounds) -> Vec<Arc<FieldCtx>> {
    let mut out = Vec::new();
    for m in 1..=b.exhaustive_m {
        for q in [2, 3, 5] {
            if let Ok(ctx) = FieldCtx::new(m, q) {
                out.push(ctx);
            }
        }
    }
    out
}

fn maximal_monodromy(b: &Bounds, dims_only: bool) -> (usize, Vec<String>) {
    let mut checks: Vec<(String, Check)> = Vec::new();
    let n = b.exhaustive_n;
    for ctx in sweep_contexts(b) {
        for r in sweep_params(&ctx, n) {
            let label = format!("M={} q={} r={r}", ctx.m(), ctx.q());
            if dims_only {
                checks.push((
                    label,
                    Box::new(move || {
                        let w = WDParam::semisimple(r.clone());
                        Ok(monodromy_space(&r).len() == pole_order_at_1(&w)?)
                    }),
                ));
            } else {
                checks.push((label, Box::new(move || three_way(&r, n))));
            }
        }
    }
    evaluate(checks)
}

fn three_way(r: &SemisimpleParam, n: usize) -> Result<bool> {
    let orbits = enumerate_orbits(r, n)?;
    let best = orbits.iter().map(|o| o.rank_seq.clone()).max().unwrap_or_default();
    let mut open_count = 0;
    for o in &orbits {
        let open = is_open(r, &o.n)?;
        let holo = pole_order_at_1(&WDParam::new(r.clone(), o.n.clone())?)? == 0;
        let lexmax = o.rank_seq == best;
        if open != holo || open != lexmax {
            return Ok(false);
        }
        open_count += open as usize;
    }
    Ok(open_count == 1 && check_gpr_uniqueness(r, n).is_ok())
}

const ELLS: [u64; 6] = [3, 5, 7, 11, 13, 17];

fn integrality(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(200) {
        let ctx = g.ctx(b.max_m, &[2, 3, 5]);
        let ell = loop {
            let l = g.pick(&ELLS);
            if l != ctx.p() && !ctx.m().is_multiple_of(l) {
                break l;
            }
        };
        let li = ell as i64;
        g.set_pool(&[(1, 1), (1, 1), (2, 1), (li, 1), (1, li)]);
        let base = random_base(&mut g);
        let w = g.wd(&ctx, base, b.max_n);
        let single = SL2Param::new(&ctx, base, vec![g.segment(&ctx, base, b.max_n)])
            .expect("same context");
        checks.push((
            format!("#{i} ℓ={ell} {} / {single}", w.ss()),
            Box::new(move || {
                let rep = integral_predicates(&w, ell)?;
                let s = sl2_to_wd(&single);
                let disc = integral_predicates(&s, ell)?;
                Ok(rep.consistent() && disc.consistent() && disc.integral == det_integral(&s, ell)?)
            }),
        ));
    }
    evaluate(checks)
}

fn dictionary(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(200) {
        let ctx = g.ctx(b.max_m, &[2, 3, 5]);
        let base = random_base(&mut g);
        let w = g.wd(&ctx, base, b.max_n);
        let p = g.sl2(&ctx, base, b.max_n);
        checks.push((
            format!("#{i} {} / {p}", w.ss()),
            Box::new(move || {
                let s = wd_to_sl2(&w)?;
                let w2 = sl2_to_wd(&s);
                let there = w2.ss().is_isomorphic(w.ss())
                    && rank_sequence(w2.n()) == rank_sequence(w.n())
                    && wd_to_sl2(&w2)? == s;
                let back = wd_to_sl2(&sl2_to_wd(&p))? == p;
                Ok(there && back)
            }),
        ));
    }
    evaluate(checks)
}

fn structural(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(100) {
        let ctx = g.ctx(b.max_m, &[2, 3, 5]);
        let base = random_base(&mut g);
        let p = g.semisimple(&ctx, base, 3);
        checks.push((
            format!("#{i} Sym²⊕∧² {p}"),
            Box::new(move || {
                let r = p.realize();
                r.sym2().direct_sum(&r.ext2()).ss_equivalent(&r.tensor(&r)?)
            }),
        ));
    }
    for i in 0..b.count(50) {
        let ctx = g.ctx(b.max_m, &[2, 3, 5]);
        let p = g.semisimple(&ctx, Base::E, 3);
        checks.push((
            format!("#{i} As {p}"),
            Box::new(move || {
                let r = p.realize();
                let lhs = r.asai(1)?.direct_sum(&r.asai(-1)?).restrict_to_e()?;
                let t = r.tensor(&p.conj()?.realize())?;
                lhs.ss_equivalent(&t.direct_sum(&t))
            }),
        ));
    }
    evaluate(checks)
}

fn random_classical(g: &mut Gen, ctx: &Arc<FieldCtx>, pairs: &[SemisimpleParam]) -> Result<ClassicalParam> {
    let kind = g.pick(&[ClassicalKind::Sp, ClassicalKind::SOodd, ClassicalKind::Ueven, ClassicalKind::Uodd]);
    random_classical_of(g, ctx, kind, pairs)
}

fn random_classical_of(
    g: &mut Gen,
    ctx: &Arc<FieldCtx>,
    kind: ClassicalKind,
    pairs: &[SemisimpleParam],
) -> Result<ClassicalParam> {
    let base = kind.base();
    let one = FieldElem::one(ctx);
    let sign = FieldElem::from_int(ctx, if g.bool() { 1 } else { -1 });
    let mut avatar = match kind {
        ClassicalKind::Sp => SemisimpleParam::character(ctx, base, one)?,
        ClassicalKind::Uodd => SemisimpleParam::character(ctx, base, sign)?,
        _ => SemisimpleParam::empty(ctx, base),
    };
    for r in pairs {
        avatar = avatar.direct_sum(&r.direct_sum(&conj_dual(r)?)?)?;
    }
    ClassicalParam::semisimple(kind, avatar)
}

fn plancherel(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(100) {
        let ctx = g.ctx(b.max_m.min(6), &[2, 3, 5]);
        let data = match i % 3 {
            0 => {
                let nblocks = g.range(0, 2) as usize;
                let kind = g.pick(&[ClassicalKind::Sp, ClassicalKind::SOodd, ClassicalKind::Ueven, ClassicalKind::Uodd]);
                let base = kind.base();
                let rhos: Vec<_> = (0..nblocks).map(|_| g.semisimple(&ctx, base, 1)).collect();
                let extra = if g.bool() { vec![g.semisimple(&ctx, base, 1)] } else { vec![] };
                let rho_prime = random_classical_of(&mut g, &ctx, kind, &extra);
                let tau = g.semisimple(&ctx, base, 2);
                rho_prime.and_then(|rp| {
                    let mut avatar = rp.avatar().ss().clone();
                    for r in &rhos {
                        avatar = avatar.direct_sum(&r.direct_sum(&conj_dual(r)?)?)?;
                    }
                    Ok(LeviData::Classical {
                        tau,
                        pi: ClassicalParam::semisimple(kind, avatar)?,
                        rho_prime: rp,
                        rhos,
                    })
                })
            }
            1 => {
                let mut pick = Gen::new(seed ^ i as u64);
                let pi_pairs = g.range(0, 1) as usize;
                let kind_probe = random_classical(&mut pick, &ctx, &[]);
                kind_probe.and_then(|probe| {
                    let base = probe.kind().base();
                    let pairs: Vec<_> = (0..pi_pairs).map(|_| g.semisimple(&ctx, base, 1)).collect();
                    let pi = random_classical_of(&mut g, &ctx, probe.kind(), &pairs)?;
                    let l = g.range(1, 3) as usize;
                    let taus = (0..l).map(|_| g.semisimple(&ctx, base, if l == 3 { 1 } else { 2 })).collect();
                    Ok(LeviData::Inducing { taus, pi })
                })
            }
            _ => {
                let base = random_base(&mut g);
                let l1 = g.range(1, 3) as usize;
                let l2 = g.range(1, 3) as usize;
                let taus = (0..l1).map(|_| g.semisimple(&ctx, base, 2)).collect();
                let taus2 = (0..l2).map(|_| g.semisimple(&ctx, base, 2)).collect();
                Ok(LeviData::General { taus, taus2 })
            }
        };
        checks.push((
            format!("#{i} case {}", 1 + i % 3),
            Box::new(move || match &data {
                Ok(d) => Ok(check_multiplicativity(d)?.holds),
                Err(e) => Err(Error::InvalidInput(format!("instance generation: {e}"))),
            }),
        ));
    }
    evaluate(checks)
}

fn steinberg() -> (usize, Vec<String>) {
    let mut checks: Vec<(String, Check)> = Vec::new();
    for q in [2u64, 3, 4, 5] {
        checks.push((
            format!("q={q}"),
            Box::new(move || {
                let ctx = FieldCtx::new(1, q)?;
                let triv = IrredSummand::new(&ctx, Base::F, 0, FieldElem::one(&ctx))?;
                let st = SL2Param::new(&ctx, Base::F, vec![Segment { sigma: triv, d: 2 }])?.to_wd()?;
                let want = RatFun::from_poly(Poly::one_minus(&FieldElem::sqrt_q_pow(&ctx, -1), 1)).inv()?;
                Ok(l_factor(&st)? == want)
            }),
        ));
    }
    evaluate(checks)
}

fn moduli() -> (usize, Vec<String>) {
    let mut checks: Vec<(String, Check)> = Vec::new();
    for q in [2u64, 3, 4, 5] {
        for ell in [3u64, 5, 7, 11] {
            if q % ell == 0 {
                continue;
            }
            checks.push((
                format!("n=1 q={q} ℓ={ell}"),
                Box::new(move || Ok(count_points(1, q, ell)? == closed_form_n1(q, ell)?)),
            ));
        }
    }
    checks.push((
        "n=2 q=2 ℓ=3".into(),
        Box::new(|| Ok(count_points(2, 2, 3)? == count_points_naive(2, 2, 3)?)),
    ));
    evaluate(checks)
}

fn galois(seed: u64, b: &Bounds) -> (usize, Vec<String>) {
    let mut g = Gen::new(seed);
    let mut checks: Vec<(String, Check)> = Vec::new();
    for i in 0..b.count(100) {
        let ctx = loop {
            let c = g.ctx(b.max_m, &[2, 3, 5]);
            if c.m() >= 3 {
                break c;
            }
        };
        let k = loop {
            let k = g.range(2, ctx.m() as i64 - 1);
            if num_integer::gcd(k as u64, ctx.m()) == 1 {
                break k;
            }
        };
        let base = random_base(&mut g);
        let tau = g.semisimple(&ctx, base, 2);
        let phi = g.semisimple(&ctx, base, b.max_n);
        checks.push((
            format!("#{i} k={k} {tau} / {phi}"),
            Box::new(move || {
                let lhs = big_gamma(&tau, &phi)?.galois(k)?;
                let rhs = big_gamma(&tau.galois(k)?, &phi.galois(k)?)?;
                Ok(lhs == rhs)
            }),
        ));
    }
    evaluate(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_sizes() {
        let ctx = FieldCtx::new(1, 2).unwrap();
        // four characters, multisets of size 1..=2
        assert_eq!(sweep_params(&ctx, 2).len(), 2 + 3);
    }

    #[test]
    fn quick_run() {
        let b = Bounds {
            samples: Some(3),
            exhaustive_n: 2,
            exhaustive_m: 2,
            ..Bounds::default()
        };
        for r in run_all(1, &b) {
            println!("{r}");
            assert!(r.passed, "{r}");
        }
    }
}
