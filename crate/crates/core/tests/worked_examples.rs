//! Small hand-checked instances across the public API.

use std::sync::Arc;

use wdparam::converse::{enumerate_irreducibles, reconstruct};
use wdparam::factors::{big_gamma, gamma_divisor, gamma_ratio, l_factor};
use wdparam::moduli::{closed_form_n1, count_points, count_points_naive};
use wdparam::monodromy::{check_gpr_uniqueness, enumerate_orbits, monodromy_space};
use wdparam::wd::{sl2_to_wd, wd_to_sl2};
use wdparam::{
    Base, Divisor, FieldCtx, FieldElem, IrredSummand, Matrix, Place, Poly, RatFun, Result, SL2Param, Segment,
    SemisimpleParam, WDParam,
};

fn ctx(m: u64, q: u64) -> Arc<FieldCtx> {
    FieldCtx::new(m, q).unwrap()
}

fn q_pow(c: &Arc<FieldCtx>, k: i64) -> FieldElem {
    Base::F.q_pow(c, k)
}

fn chars(c: &Arc<FieldCtx>, alphas: &[FieldElem]) -> SemisimpleParam {
    let s = alphas
        .iter()
        .map(|a| IrredSummand::new(c, Base::F, 0, a.clone()).unwrap())
        .collect();
    SemisimpleParam::new(c, Base::F, s).unwrap()
}

fn divisor(points: &[(FieldElem, i64)]) -> Divisor {
    let mut d = Divisor::new();
    for (p, m) in points {
        d.add_at(Place::point(p.clone()), *m);
    }
    d
}

fn steinberg(c: &Arc<FieldCtx>, d: u32) -> WDParam {
    let triv = IrredSummand::new(c, Base::F, 0, FieldElem::one(c)).unwrap();
    SL2Param::new(c, Base::F, vec![Segment { sigma: triv, d }])
        .unwrap()
        .to_wd()
        .unwrap()
}

#[test]
fn field_relations() {
    let c = ctx(7, 5);
    let s = FieldElem::sqrt_q_pow(&c, 1);
    assert_eq!(&s * &s, FieldElem::from_int(&c, 5));
    assert_eq!(FieldElem::zeta(&c, 7), FieldElem::one(&c));
    let x = &FieldElem::zeta(&c, 1) + &s;
    assert_eq!(x.galois(-1).unwrap(), &FieldElem::zeta(&c, -1) + &s);
}

#[test]
fn ratfun_divisors() {
    let c = ctx(1, 3);
    let one = FieldElem::one(&c);
    let q = q_pow(&c, 1);
    let qi = q_pow(&c, -1);
    let f = RatFun::new(Poly::one_minus(&one, 1), Poly::one_minus(&q, 1)).unwrap();
    assert_eq!(f.divisor(&[one.clone(), qi.clone()]).unwrap(), divisor(&[(one.clone(), 1), (qi.clone(), -1)]));
    assert!(RatFun::one(&c).divisor(&[]).unwrap().is_empty());
    let g = RatFun::new(
        Poly::one_minus(&one, 1).pow(2),
        Poly::one_minus(&qi, 1).mul(&Poly::one_minus(&q, 1)),
    )
    .unwrap();
    assert_eq!(
        g.divisor(&[one.clone(), q.clone(), qi.clone()]).unwrap(),
        divisor(&[(one, 2), (q, -1), (qi, -1)])
    );
}

#[test]
fn realizations() {
    let c = ctx(3, 2);
    let a = FieldElem::from_int(&c, 7);
    let p = SemisimpleParam::new(&c, Base::F, vec![IrredSummand::new(&c, Base::F, 1, a.clone()).unwrap()]).unwrap();
    let r = p.realize();
    let z = FieldElem::zeta(&c, 1);
    let zero = FieldElem::zero(&c);
    assert_eq!(r.sigma, Matrix::from_fn(&c, 2, 2, |i, j| if i != j { zero.clone() } else if i == 0 { z.clone() } else { &z * &z }));
    assert_eq!(r.phi.get(0, 1), &a);
    assert_eq!(r.phi.get(1, 0), &FieldElem::one(&c));
    r.check_relation().unwrap();
}

#[test]
fn sym2_and_ext2() {
    let c = ctx(3, 2);
    let a = FieldElem::from_int(&c, 7);
    let ind = SemisimpleParam::new(&c, Base::F, vec![IrredSummand::new(&c, Base::F, 1, a.clone()).unwrap()]).unwrap();
    let (_, ext) = ind.sym2_ext2().unwrap();
    // ζ^{1+q} = ζ^3 = 1 here
    let want = SemisimpleParam::character(&c, Base::F, -&a).unwrap();
    assert!(ext.is_isomorphic(&want));
    let chi = chars(&c, std::slice::from_ref(&a));
    let (s, e) = chi.sym2_ext2().unwrap();
    assert!(s.is_isomorphic(&chars(&c, &[&a * &a])));
    assert_eq!(e.dim(), 0);
}

#[test]
fn dictionary_examples() {
    let c = ctx(1, 5);
    let st = steinberg(&c, 2);
    assert!(st.ss().is_isomorphic(&chars(&c, &[Base::F.sqrt_q_pow(&c, -1), Base::F.sqrt_q_pow(&c, 1)])));
    let st3 = steinberg(&c, 3);
    assert!(st3.ss().is_isomorphic(&chars(&c, &[q_pow(&c, 1), FieldElem::one(&c), q_pow(&c, -1)])));
    assert_eq!(wdparam::monodromy::rank_sequence(st3.n()), vec![2, 1]);
    let two = WDParam::semisimple(chars(&c, &[FieldElem::one(&c), FieldElem::one(&c)]));
    let s = wd_to_sl2(&two).unwrap();
    assert_eq!(s.segments().len(), 2);
    assert!(s.segments().iter().all(|x| x.d == 1));
    assert_eq!(sl2_to_wd(&s), two);
}

#[test]
fn local_factor_examples() {
    for q in [2, 3, 4, 5] {
        let c = ctx(1, q);
        let want = RatFun::from_poly(Poly::one_minus(&FieldElem::sqrt_q_pow(&c, -1), 1)).inv().unwrap();
        assert_eq!(l_factor(&steinberg(&c, 2)).unwrap(), want, "q={q}");
    }
    let c = ctx(4, 5);
    let a = FieldElem::from_int(&c, 3);
    let chi = WDParam::semisimple(chars(&c, std::slice::from_ref(&a)));
    assert_eq!(l_factor(&chi).unwrap(), RatFun::from_poly(Poly::one_minus(&a, 1)).inv().unwrap());
    let ram = WDParam::semisimple(
        SemisimpleParam::new(&c, Base::F, vec![IrredSummand::new(&c, Base::F, 2, a).unwrap()]).unwrap(),
    );
    assert!(l_factor(&ram).unwrap().is_one());
    assert!(gamma_ratio(&ram).unwrap().is_one());
    let triv = WDParam::semisimple(chars(&c, &[FieldElem::one(&c)]));
    assert_eq!(
        gamma_divisor(&triv).unwrap(),
        divisor(&[(FieldElem::one(&c), 1), (q_pow(&c, -1), -1)])
    );
}

#[test]
fn big_gamma_examples() {
    let c = ctx(1, 3);
    let one = FieldElem::one(&c);
    let chi1 = chars(&c, std::slice::from_ref(&one));
    assert_eq!(
        big_gamma(&chi1, &chi1).unwrap(),
        divisor(&[(one.clone(), 2), (q_pow(&c, 1), -1), (q_pow(&c, -1), -1)])
    );
    let c6 = ctx(6, 5);
    let ram = SemisimpleParam::new(&c6, Base::F, vec![IrredSummand::new(&c6, Base::F, 1, FieldElem::one(&c6)).unwrap()]).unwrap();
    assert!(big_gamma(&ram, &chars(&c6, &[FieldElem::from_int(&c6, 2)])).unwrap().is_empty());
    let a = FieldElem::from_int(&c, 2);
    let single = big_gamma(&chi1, &chars(&c, std::slice::from_ref(&a))).unwrap();
    assert_eq!(big_gamma(&chi1, &chars(&c, &[a.clone(), a])).unwrap(), single.scale(2));
}

#[test]
fn converse_examples() {
    let c = ctx(1, 2);
    let a = FieldElem::from_int(&c, 5);
    for phi in [
        chars(&c, std::slice::from_ref(&a)),
        chars(&c, &[a.clone(), &a * &q_pow(&c, -1)]),
    ] {
        let target = phi.clone();
        let oracle = move |t: &IrredSummand| -> Result<Divisor> {
            big_gamma(&SemisimpleParam::new(target.ctx(), Base::F, vec![t.clone()])?, &target)
        };
        let got = reconstruct(&oracle, phi.dim(), &c, Base::F).unwrap();
        assert!(got.is_isomorphic(&phi), "{got} vs {phi}");
    }
    assert_eq!(enumerate_irreducibles(1, &ctx(1, 3), Base::F).len(), 1);
    let fams = enumerate_irreducibles(2, &ctx(3, 2), Base::F);
    assert_eq!(fams.iter().map(|f| f.f).collect::<Vec<_>>(), vec![1, 2]);
    // ·3 on Z/8: {0} {1,3} {2,6} {4} {5,7}
    assert_eq!(enumerate_irreducibles(2, &ctx(8, 3), Base::F).len(), 5);
}

#[test]
fn monodromy_examples() {
    let c = ctx(1, 3);
    let one = FieldElem::one(&c);
    let pair = chars(&c, &[one.clone(), q_pow(&c, -1)]);
    assert_eq!(monodromy_space(&pair).len(), 1);
    assert_eq!(enumerate_orbits(&pair, 4).unwrap().len(), 2);
    assert_eq!(check_gpr_uniqueness(&pair, 4).unwrap().sl2.segments()[0].d, 2);
    let generic = chars(&c, &[one, FieldElem::from_int(&c, 7)]);
    assert!(monodromy_space(&generic).is_empty());
    let chain3 = chars(&c, &[FieldElem::one(&c), q_pow(&c, -1), q_pow(&c, -2)]);
    assert_eq!(enumerate_orbits(&chain3, 4).unwrap().len(), 4);
}

#[test]
fn moduli_examples() {
    assert_eq!(count_points(1, 3, 5).unwrap(), 8);
    assert_eq!(count_points(1, 2, 3).unwrap(), 2);
    for (q, ell) in [(2, 3), (3, 5), (4, 7), (5, 11)] {
        assert_eq!(count_points(1, q, ell).unwrap(), closed_form_n1(q, ell).unwrap());
    }
    assert_eq!(count_points(2, 2, 3).unwrap(), count_points_naive(2, 2, 3).unwrap());
}
