//! Hand-computed values for the built-in groups, checked through the public API.

use cartan_core::catalog::{self, rotation_cocycle, s0, s1, s2, torsion_cocycle, torsion_group, torsion_s, z5_cocycle, z5_group};
use cartan_core::subgroup::{immediately_centralizing_scan, is_normal};
use cartan_core::{AlgebraElement, Ball, Character, CircleElement, Cyclotomic, TwistedAlgebra, WeylContext};

fn a(n: i64, d: u64) -> CircleElement {
    CircleElement::new(n, d)
}

#[test]
fn circle_arithmetic() {
    assert_eq!(a(1, 2) * a(1, 2), CircleElement::IDENTITY);
    assert_eq!(a(1, 3) * a(1, 2), a(5, 6));
    assert_eq!(a(1, 8).pow(-2), a(3, 4));
    assert_eq!(a(1, 3).pow(3), CircleElement::IDENTITY);
}

#[test]
fn cyclotomic_identities() {
    let z3 = Cyclotomic::zeta(3);
    assert_eq!(&z3 + &(&z3 * &z3), Cyclotomic::from_integer(-1, 3));
    let z4 = Cyclotomic::zeta(4);
    assert_eq!(&z4 * &z4, Cyclotomic::from_integer(-1, 4));
    assert!((&z4 + &(&z4 * &(&z4 * &z4))).is_zero());
    assert_eq!(z4.conj(), -z4.clone());
    let one_plus = &Cyclotomic::one(4) + &z4;
    assert_eq!(one_plus.norm_sq(), Cyclotomic::from_integer(2, 4));
    let v = (&Cyclotomic::one(3) + &z3).eval_numeric();
    let t = 2.0 * std::f64::consts::PI / 3.0;
    assert!((v.re - (1.0 + t.cos())).abs() < 1e-9 && (v.im - t.sin()).abs() < 1e-9);
}

#[test]
fn group_laws_by_hand() {
    let d = z5_group();
    assert_eq!(d.mul(&d.elem(&[0, 0, 0, 0, 1]), &d.elem(&[0, 0, 1, 0, 0])), d.elem(&[2, 0, 1, 0, 1]));
    assert_eq!(d.inverse(&d.elem(&[1, 1, 1, 1, 1])), d.elem(&[1, 1, -1, -1, -1]));
    assert_eq!(d.pow(&d.elem(&[0, 0, 1, 0, 1]), 2), d.elem(&[2, 0, 2, 0, 2]));
    assert_eq!(d.ball_size(Ball::new(1)), 243);

    let t = torsion_group();
    assert_eq!(t.mul(&t.elem(&[1, 0, 0, 0, 1]), &t.elem(&[0, 0, 1, 0, 0])), t.elem(&[3, 0, 1, 0, 1]));
    assert_eq!(t.inverse(&t.elem(&[1, 0, 1, 0, 1])), t.elem(&[1, 0, -1, 0, 3]));
    assert_eq!(t.ball_size(Ball::new(1)), 576);
    let g = t.elem(&[0, 0, 0, 0, 1]);
    assert_eq!(t.mul(&t.mul(&g, &t.elem(&[0, 0, 1, 0, 0])), &t.inverse(&g)), t.elem(&[2, 0, 1, 0, 0]));
}

#[test]
fn cocycle_values() {
    let d = z5_group();
    assert_eq!(z5_cocycle().eval(&d.elem(&[0, 0, 0, 1, 0]), &d.elem(&[1, 0, 0, 0, 0])), a(1, 2));
    let r = catalog::rotation_group();
    assert_eq!(rotation_cocycle(a(1, 5)).eval(&r.elem(&[0, 1]), &r.elem(&[1, 0])), a(1, 5));
}

#[test]
fn subgroup_facts() {
    let d = z5_group();
    for s in [s0(), s1(), s2()] {
        assert!(is_normal(&s, &d, Ball::new(2)).0);
    }
    assert_eq!(s1().coordinates(&d.elem(&[3, 1, 2, 4, 0])).unwrap(), vec![3, 1, 2, 2]);
    assert!(!s1().contains(&d.elem(&[0, 0, 0, 1, 0])));
    assert_eq!(catalog::s0_conjugate(&d, &d.elem(&[0, 0, 0, 0, 1]), &d.elem(&[1, 0, 0, 0, 0])), d.elem(&[1, 0, 0, 0, 0]));

    let t = torsion_group();
    let scan = immediately_centralizing_scan(&torsion_s(), &t, 2, Ball::new(2));
    assert_eq!(scan.witness.unwrap().element, t.elem(&[0, 0, 0, 0, 1]));
}

#[test]
fn delta_products() {
    let d = z5_group();
    let alg = TwistedAlgebra::new(d.clone(), z5_cocycle());
    let p = alg.convolve(&alg.delta(&d.elem(&[0, 0, 0, 1, 0])), &alg.delta(&d.elem(&[1, 0, 0, 0, 0])));
    assert_eq!(p, alg.delta(&d.elem(&[1, 0, 0, 1, 0])).neg());

    // |f|^2 at the identity: f = δ_g + ζ₄ δ_h
    let alg4 = TwistedAlgebra::with_conductor(d.clone(), z5_cocycle(), 4);
    let f = AlgebraElement::from_terms([
        (d.elem(&[1, 0, 0, 0, 0]), alg4.one()),
        (d.elem(&[0, 1, 0, 0, 0]), Cyclotomic::zeta(4)),
    ]);
    let (lhs, rhs, ok) = alg4.faithfulness_identity(&f, &s1());
    assert!(ok);
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.as_rational().map(|r| r.to_string()), Some("2".to_string()));
}

#[test]
fn counterexample_commutant() {
    let t = torsion_group();
    let alg = TwistedAlgebra::new(t.clone(), torsion_cocycle());
    let h = AlgebraElement::from_terms([(t.elem(&[0, 0, 0, 0, 1]), alg.one()), (t.elem(&[2, 0, 0, 0, 1]), alg.one())]);
    let scan = alg.commutant_scan(&h, &torsion_s(), Ball::new(4));
    assert_eq!(scan.nonzero, 0);
    assert!(scan.probes > 0);
    assert!(alg.cond_expect(&h, &torsion_s()).is_zero());
}

#[test]
fn weyl_values() {
    let d = z5_group();
    let w0 = WeylContext::new(d.clone(), z5_cocycle(), s0()).unwrap();
    assert_eq!(w0.coset_rep(&d.elem(&[1, 2, 3, 4, 5])), d.elem(&[0, 0, 3, 4, 0]));
    let nu = Character::new(vec![a(1, 8), a(1, 3), a(0, 1)]);
    let out = w0.weyl_action(&d.elem(&[0, 0, 1, 1, 0]), &nu).unwrap();
    assert_eq!(out.angles, vec![a(5, 8), a(1, 3), a(11, 12)]);

    let w1 = WeylContext::new(d.clone(), z5_cocycle(), s1()).unwrap();
    assert_eq!(w1.coset_rep(&d.elem(&[5, -2, 7, 3, 4])), d.elem(&[0, 0, 0, 1, 4]));
    let nu = Character::new(vec![a(1, 8), a(1, 3), a(0, 1), a(0, 1)]);
    assert_eq!(w1.char_eval(&nu, &d.elem(&[1, 1, 0, 2, 0])).unwrap(), a(11, 24));
    let sigma = w1.weyl_cocycle(&d.elem(&[0, 0, 0, 0, 1]), &d.elem(&[0, 0, 0, 1, 0]), &nu).unwrap();
    assert_eq!(sigma, a(2, 3));

    let w2 = WeylContext::new(d.clone(), z5_cocycle(), s2()).unwrap();
    let out = w2.weyl_action(&d.elem(&[1, 0, 0, 0, 1]), &nu).unwrap();
    assert_eq!(out.angles, vec![a(1, 8), a(1, 3), a(7, 8), a(5, 6)]);
    let nu = Character::new(vec![a(1, 4), a(0, 1), a(0, 1), a(0, 1)]);
    let g = d.elem(&[1, 0, 0, 0, 0]);
    assert_eq!(w2.weyl_cocycle(&g, &g, &nu).unwrap(), a(1, 4));
}
