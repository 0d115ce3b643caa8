//! Property tests for the algebraic invariants of the Witt, necklace and
//! power-series layers.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qwitt::bridges::{tau, tau_inv};
use qwitt::exactalg::{QRationalFunction, ZPolynomial};
use qwitt::lambdaf::{theta, theta_inv, upsilon, upsilon_by_log_derivative};
use qwitt::necklace::{eta_inverse, f_coeffs, mobius, NecklaceVector};
use qwitt::rings::{CoeffRing, IntegerRing, PolyRing, RationalFunctionField, ZMod};
use qwitt::witt::{ComputePath, Deformation, WittContext, WittVector};

fn poly(c: &[i64]) -> ZPolynomial {
    ZPolynomial::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
}

fn ints(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, n)
}

fn polys(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 2), n)
}

fn elems<R: CoeffRing>(ring: &R, v: &[i64]) -> Vec<R::Elem> {
    v.iter().map(|&x| ring.from_i64(x)).collect()
}

fn poly_elems(v: &[Vec<i64>]) -> Vec<ZPolynomial> {
    v.iter().map(|c| poly(c)).collect()
}

fn witt<R: CoeffRing>(ctx: &Arc<WittContext<R>>, coords: Vec<R::Elem>) -> WittVector<R> {
    ctx.vector(coords).unwrap()
}

fn neck<R: CoeffRing>(ctx: &Arc<WittContext<R>>, coords: Vec<R::Elem>) -> NecklaceVector<R> {
    NecklaceVector::new(ctx, coords).unwrap()
}

fn deformations() -> impl Strategy<Value = ZPolynomial> {
    prop_oneof![Just(poly(&[0, 1])), Just(poly(&[1, -2])), Just(poly(&[0, 0, 1])), Just(poly(&[0, 1, 1])), Just(poly(&[3]))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witt_ring_axioms_mod_k(k in prop_oneof![Just(4u64), Just(6), Just(9)], m in -2i64..=3,
                              a in ints(8), b in ints(8), c in ints(8)) {
        let ring = ZMod::new(k).unwrap();
        let ctx = WittContext::new(ring.clone(), Deformation::int(m), 8).unwrap();
        prop_assert_eq!(ctx.path(), ComputePath::Universal);
        let (a, b, c) = (witt(&ctx, elems(&ring, &a)), witt(&ctx, elems(&ring, &b)), witt(&ctx, elems(&ring, &c)));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a.neg().unwrap()).unwrap().coords().iter().all(|x| *x == 0));
    }

    #[test]
    fn specializing_q_is_functorial(g in deformations(), m in -2i64..=3, a in polys(10), b in polys(10)) {
        let n = 10;
        let src = WittContext::new(PolyRing, Deformation::poly(g.clone()), n).unwrap();
        let gm = g.eval(&BigInt::from(m));
        let dst = WittContext::new(IntegerRing, Deformation::Integer(gm), n).unwrap();
        let at = |v: &WittVector<PolyRing>| witt(&dst, v.coords().iter().map(|c| c.eval(&BigInt::from(m))).collect());
        let (a, b) = (witt(&src, poly_elems(&a)), witt(&src, poly_elems(&b)));
        prop_assert_eq!(at(&a.mul(&b).unwrap()), at(&a).mul(&at(&b)).unwrap());
        prop_assert_eq!(at(&a.add(&b).unwrap()), at(&a).add(&at(&b)).unwrap());
    }

    #[test]
    fn ghost_and_universal_paths_agree(g in deformations(), a in polys(10), b in polys(10)) {
        let n = 10;
        let ghost = WittContext::with_path(PolyRing, Deformation::poly(g.clone()), n, ComputePath::Ghost).unwrap();
        let univ = WittContext::with_path(PolyRing, Deformation::poly(g), n, ComputePath::Universal).unwrap();
        let (ga, gb) = (witt(&ghost, poly_elems(&a)), witt(&ghost, poly_elems(&b)));
        let (ua, ub) = (witt(&univ, poly_elems(&a)), witt(&univ, poly_elems(&b)));
        prop_assert_eq!(ga.mul(&gb).unwrap().coords().to_vec(), ua.mul(&ub).unwrap().coords().to_vec());
        prop_assert_eq!(ga.add(&gb).unwrap().coords().to_vec(), ua.add(&ub).unwrap().coords().to_vec());
        prop_assert_eq!(ga.neg().unwrap().coords().to_vec(), ua.neg().unwrap().coords().to_vec());
    }

    #[test]
    fn transport_is_a_ring_isomorphism(g in deformations(), a in polys(8), b in polys(8)) {
        let ctx = WittContext::new(PolyRing, Deformation::poly(g), 8).unwrap();
        let (a, b) = (witt(&ctx, poly_elems(&a)), witt(&ctx, poly_elems(&b)));
        let t = |v: &WittVector<PolyRing>| v.transport_two_minus_g().unwrap();
        prop_assert_eq!(t(&a).ghost().coords().to_vec(), a.ghost().coords().to_vec());
        prop_assert_eq!(t(&a.mul(&b).unwrap()), t(&a).mul(&t(&b)).unwrap());
        prop_assert_eq!(t(&a.add(&b).unwrap()), t(&a).add(&t(&b)).unwrap());
    }

    #[test]
    fn induction_and_restriction(g in deformations(), r in 2usize..=3, a in polys(12), b in polys(12)) {
        let n = 12;
        let ctx = WittContext::new(PolyRing, Deformation::poly(g), n).unwrap();
        let (a, b) = (witt(&ctx, poly_elems(&a)), witt(&ctx, poly_elems(&b)));
        prop_assert_eq!(a.add(&b).unwrap().induce(r).unwrap(), a.induce(r).unwrap().add(&b.induce(r).unwrap()).unwrap());
        let res = |v: &WittVector<PolyRing>| v.restrict(r, n / r).unwrap();
        prop_assert_eq!(res(&a.mul(&b).unwrap()), res(&a).mul(&res(&b)).unwrap());
        prop_assert_eq!(res(&a.add(&b).unwrap()), res(&a).add(&res(&b)).unwrap());
        let back = res(&a.induce(r).unwrap()).ghost();
        let scaled: Vec<ZPolynomial> = a.ghost().coords()[..n / r].iter().map(|w| w.scale(&BigInt::from(r as i64))).collect();
        prop_assert_eq!(back.coords(), scaled.as_slice());
    }

    #[test]
    fn necklace_ghost_is_multiplicative(g in prop_oneof![Just(poly(&[0, 1])), Just(poly(&[0, 0, 1]))],
                                        a in polys(10), b in polys(10)) {
        let ctx = WittContext::new(PolyRing, Deformation::poly(g), 10).unwrap();
        let (a, b) = (neck(&ctx, poly_elems(&a)), neck(&ctx, poly_elems(&b)));
        prop_assert_eq!(a.mul(&b).unwrap().ghost().unwrap(), a.ghost().unwrap().mul(&b.ghost().unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), a.mul_via_constants(&b).unwrap());
    }

    #[test]
    fn necklace_integer_products(m in -2i64..=3, a in ints(16), b in ints(16)) {
        let ctx = WittContext::new(IntegerRing, Deformation::int(m), 16).unwrap();
        let (a, b) = (neck(&ctx, elems(&IntegerRing, &a)), neck(&ctx, elems(&IntegerRing, &b)));
        let p = a.mul(&b).unwrap();
        prop_assert_eq!(p.ghost().unwrap(), a.ghost().unwrap().mul(&b.ghost().unwrap()).unwrap());
        prop_assert_eq!(p, a.mul_via_constants(&b).unwrap());
    }

    #[test]
    fn necklace_restriction_paths(m in -2i64..=3, r in 2usize..=3, a in ints(12)) {
        let ctx = WittContext::new(IntegerRing, Deformation::int(m), 12).unwrap();
        let a = neck(&ctx, elems(&IntegerRing, &a));
        let rec = a.restrict(r, 12 / r).unwrap();
        prop_assert_eq!(&rec, &a.restrict_closed_form(r, 12 / r).unwrap());
        let (gr, ga) = (rec.ghost().unwrap(), a.ghost().unwrap());
        for k in 1..=12 / r {
            prop_assert_eq!(&gr.coords()[k - 1], &ga.coords()[k * r - 1]);
        }
    }

    #[test]
    fn eta_inverts_the_necklace_ghost(g in deformations(), a in polys(8)) {
        let ctx = WittContext::new(RationalFunctionField, Deformation::poly(g), 8).unwrap();
        let a = neck(&ctx, poly_elems(&a).iter().map(QRationalFunction::from_zpoly).collect());
        prop_assert_eq!(eta_inverse(&a.ghost().unwrap()).unwrap(), a);
    }

    #[test]
    fn theta_is_a_ghost_compatible_bijection(g in deformations(), a in polys(8)) {
        let ctx = WittContext::new(RationalFunctionField, Deformation::poly(g), 8).unwrap();
        let a = witt(&ctx, poly_elems(&a).iter().map(QRationalFunction::from_zpoly).collect());
        let s = theta(&a).unwrap();
        prop_assert_eq!(&theta_inv(&s).unwrap(), &a);
        prop_assert_eq!(upsilon(&s).unwrap(), a.ghost());
        prop_assert_eq!(upsilon_by_log_derivative(&s).unwrap(), a.ghost());
    }

    #[test]
    fn tau_round_trip(m in -1i64..=2, a in ints(12)) {
        let ctx = WittContext::new(IntegerRing, Deformation::int(m), 12).unwrap();
        let a = witt(&ctx, elems(&IntegerRing, &a));
        let t = tau(&a).unwrap();
        prop_assert_eq!(&tau_inv(&t).unwrap(), &a);
        prop_assert_eq!(tau(&tau_inv(&t).unwrap()).unwrap(), t);
    }
}

#[test]
fn mobius_at_small_arguments() {
    for m in -3i64..=4 {
        let mb = BigInt::from(m);
        let qint = |k: u32| -> BigInt { (0..k).map(|i| mb.pow(i)).sum() };
        for p in [2usize, 3, 5, 7, 11, 13] {
            assert_eq!(mobius(&mb, p), -qint(p as u32), "m={m}, p={p}");
        }
        assert_eq!(mobius(&mb, 4), qint(2) * qint(2) - qint(4), "m={m}");
    }
}

#[test]
fn f_coefficients_at_g_equal_q() {
    let f = f_coeffs(&poly(&[0, 1]), 24).unwrap();
    let one_minus_q = QRationalFunction::from_zpoly(&poly(&[1, -1]));
    for (i, c) in f.iter().enumerate() {
        let mu = mobius(&BigInt::zero(), i + 1);
        let expect = QRationalFunction::from_zpoly(&ZPolynomial::constant(mu)).div(&one_minus_q).unwrap();
        assert_eq!(*c, expect, "n={}", i + 1);
    }
    assert!(f[0].mul(&one_minus_q).is_one());
    assert_eq!(BigInt::one(), mobius(&BigInt::zero(), 1));
}
