//! Hand-checked values for the generalized Clifford algebra family and its
//! weak Hopf structures.

use gca_core::scalar::cyclotomic_modulus;
use gca_core::weakhopf::{coalgebra_constraint_witness, ConstraintViolation};
use gca_core::*;

fn ctx(n: u32, m: usize) -> ScalarContext {
    ScalarContext::new(n, m).unwrap()
}

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a, b).unwrap()
}

#[test]
fn cyclotomic_moduli() {
    assert_eq!(cyclotomic_modulus(2).unwrap(), Polynomial::from_integers(&[1, 1]));
    assert_eq!(cyclotomic_modulus(4).unwrap(), Polynomial::from_integers(&[1, 0, 1]));
    assert_eq!(cyclotomic_modulus(6).unwrap(), Polynomial::from_integers(&[1, -1, 1]));
}

#[test]
fn root_of_unity_arithmetic() {
    let c = ctx(3, 0);
    let w = Scalar::omega_pow(&c, 1);
    let w2 = Scalar::omega_pow(&c, 2);
    assert!((&w * &w2).is_one());
    assert!((&(&Scalar::one(&c) + &w) + &w2).is_zero());
    let one_plus_w = &Scalar::one(&c) + &w;
    assert_eq!(one_plus_w, w2.neg());
    assert_eq!(one_plus_w.try_invert().unwrap(), w.neg());
    assert!((&one_plus_w * &w.neg()).is_one());

    let c4 = ctx(4, 0);
    assert_eq!(
        Scalar::omega_pow(&c4, 1).try_invert().unwrap(),
        Scalar::omega_pow(&c4, 3)
    );
    assert_eq!(Scalar::omega_pow(&c4, 3), Scalar::omega_pow(&c4, 1).neg());
}

#[test]
fn laurent_monomials() {
    let c = ctx(2, 1);
    let q = Scalar::q(&c, 0).unwrap();
    assert!((&q * &q.try_invert().unwrap()).is_one());

    let c = ctx(2, 2);
    let m = (&Scalar::q(&c, 0).unwrap() * &Scalar::q(&c, 1).unwrap()).neg();
    let inv = (&Scalar::q(&c, 0).unwrap().pow(-1).unwrap() * &Scalar::q(&c, 1).unwrap().pow(-1).unwrap()).neg();
    assert_eq!(m.try_invert().unwrap(), inv);
}

#[test]
fn evaluation() {
    let c = ctx(2, 1);
    let minus = Scalar::from_integer(&ScalarContext::new(2, 0).unwrap(), -1);
    assert_eq!(
        Scalar::q(&c, 0)
            .unwrap()
            .evaluate(std::slice::from_ref(&minus))
            .unwrap(),
        minus
    );

    let c = ctx(2, 2);
    let s = &Scalar::q(&c, 0).unwrap() * &Scalar::q(&c, 1).unwrap().pow(-1).unwrap();
    assert!(s.evaluate(&[minus.clone(), minus]).unwrap().is_one());

    let c = ctx(3, 1);
    let s = &Scalar::omega_pow(&c, 1) * &Scalar::q(&c, 0).unwrap();
    let w = Scalar::omega_pow(&ctx(3, 0), 1);
    assert_eq!(s.evaluate(&[w]).unwrap(), Scalar::omega_pow(&ctx(3, 0), 2));
}

#[test]
fn group_basics() {
    let z3 = GroupSpec::new(vec![3]).unwrap();
    let two = z3.element(&[2]).unwrap();
    assert_eq!(two.add(&two).unwrap(), z3.element(&[1]).unwrap());

    let v = GroupSpec::new(vec![2, 2]).unwrap();
    let sum = v.element(&[1, 0]).unwrap().add(&v.element(&[0, 1]).unwrap()).unwrap();
    assert_eq!(sum.to_string(), "(1,1)");
    let listed: Vec<String> = v.enumerate().iter().map(|g| g.to_string()).collect();
    assert_eq!(listed, ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);

    let z4 = GroupSpec::new(vec![4]).unwrap();
    assert_eq!(z4.element(&[3]).unwrap().neg(), z4.element(&[1]).unwrap());
    assert_eq!(GroupSpec::new(vec![7]).unwrap().enumerate().len(), 7);

    assert_eq!(two.carry(&two, 0).unwrap(), 1);
    let z5 = GroupSpec::new(vec![5]).unwrap();
    assert_eq!(
        z5.element(&[1]).unwrap().carry(&z5.element(&[2]).unwrap(), 0).unwrap(),
        0
    );
    assert_eq!(two.carry(&z3.zero(), 0).unwrap(), 0);
}

#[test]
fn cochain_values() {
    let p = GcaParams::symbolic(2, 1).unwrap();
    let f = build_f_gca(&p).unwrap();
    assert_eq!(f.value(1, 1), &Scalar::q(p.ctx(), 0).unwrap());
    assert!(gca_braiding_direct(&p).unwrap().is_trivial());

    let cl = build_f_clifford(2).unwrap();
    let s = cl.spec();
    let e = |r: &[u32]| s.element(r).unwrap();
    assert_eq!(
        cl.at(&e(&[1, 0]), &e(&[0, 1])).unwrap(),
        &Scalar::from_integer(cl.ctx(), -1)
    );
    assert!(cl.at(&e(&[0, 1]), &e(&[1, 0])).unwrap().is_one());
    for g in 0..s.order() {
        assert!(cl.value(g, 0).is_one());
    }
}

#[test]
fn gca_braiding_closed_form() {
    let p = GcaParams::symbolic(3, 3).unwrap();
    let r = gca_braiding_direct(&p).unwrap();
    let f = build_f_gca(&p).unwrap();
    assert_eq!(r, f.braiding());
    let spec = p.group().unwrap();
    for g in 0..spec.order() {
        for h in 0..spec.order() {
            let (gr, hr) = (spec.residues_at(g), spec.residues_at(h));
            let mut e = 0i64;
            for i in 0..3 {
                for j in 0..i {
                    e += gr[i] as i64 * hr[j] as i64 - gr[j] as i64 * hr[i] as i64;
                }
            }
            assert_eq!(r.value(g, h), &Scalar::omega_pow(p.ctx(), e));
        }
    }
}

#[test]
fn twisted_products() {
    let p = GcaParams::symbolic(2, 1).unwrap();
    let a = QuasiAlgebra::twisted_group_algebra(&build_f_gca(&p).unwrap());
    let prod = a.multiply_labels("u_(1)", "u_(1)").unwrap();
    assert_eq!(prod, LinComb::term(0, Scalar::q(p.ctx(), 0).unwrap()));

    let cl = QuasiAlgebra::twisted_group_algebra(&build_f_clifford(2).unwrap());
    let c = cl.ctx().clone();
    assert_eq!(
        cl.multiply_labels("u_(1,0)", "u_(0,1)").unwrap(),
        cl.lincomb(&[(Scalar::from_integer(&c, -1), "u_(1,1)")]).unwrap()
    );
    assert_eq!(
        cl.multiply_labels("u_(0,1)", "u_(1,0)").unwrap(),
        cl.lincomb(&[(Scalar::one(&c), "u_(1,1)")]).unwrap()
    );
}

#[test]
fn quaternions() {
    let p = GcaParams::symbolic(2, 2).unwrap();
    let minus = Scalar::from_integer(&ScalarContext::new(2, 0).unwrap(), -1);
    let h = gca_presentation(&p.evaluate(&[minus.clone(), minus]).unwrap()).unwrap();
    let c = h.ctx().clone();
    let neg_one = h.lincomb(&[(Scalar::from_integer(&c, -1), "1")]).unwrap();
    assert_eq!(h.multiply_labels("e1", "e1").unwrap(), neg_one);
    assert_eq!(h.multiply_labels("e2", "e2").unwrap(), neg_one);
    assert_eq!(h.multiply_labels("e1*e2", "e1*e2").unwrap(), neg_one);
    let e12 = h.multiply_labels("e1", "e2").unwrap();
    let e21 = h.multiply_labels("e2", "e1").unwrap();
    assert_eq!(e12.scale(&Scalar::from_integer(&c, -1)).unwrap(), e21);
    assert_eq!(h.products().len(), 16);
}

#[test]
fn generator_relations() {
    let p = GcaParams::symbolic(3, 1).unwrap();
    let a = gca_presentation(&p).unwrap();
    let e1 = a.lincomb(&[(Scalar::one(p.ctx()), "e1")]).unwrap();
    let e1sq = a.lincomb(&[(Scalar::one(p.ctx()), "e1^2")]).unwrap();
    let one_q = a.lincomb(&[(Scalar::q(p.ctx(), 0).unwrap(), "1")]).unwrap();
    assert_eq!(a.multiply(&e1, &e1sq).unwrap(), one_q);

    let p = GcaParams::symbolic(2, 2).unwrap();
    let a = gca_presentation(&p).unwrap();
    let e21 = a.multiply_labels("e2", "e1").unwrap();
    let e12 = a.multiply_labels("e1", "e2").unwrap();
    assert_eq!(e21, e12.scale(&Scalar::omega_pow(p.ctx(), 1)).unwrap());
    assert_eq!(e21, e12.scale(&Scalar::from_integer(p.ctx(), -1)).unwrap());
    assert!(!a.check_commutativity(&Braiding::trivial(a.spec(), a.ctx())).unwrap());
}

#[test]
fn braided_tensor_of_generators() {
    let p = GcaParams::symbolic(3, 2).unwrap();
    let spec = p.group().unwrap();
    let r = gca_braiding_direct(&p).unwrap();
    let factor = |i: usize| {
        gca_presentation(&p.slice(i, i + 1).unwrap())
            .unwrap()
            .embed_grading(&spec, i)
            .unwrap()
    };
    let t = braided_tensor_algebra(&factor(0), &factor(1), &Cochain3::trivial(&spec, p.ctx()), &r).unwrap();
    let one = Scalar::one(p.ctx());
    assert_eq!(
        t.multiply_labels("e1⊗1", "1⊗e1").unwrap(),
        t.lincomb(&[(one.clone(), "e1⊗e1")]).unwrap()
    );
    let swapped = t.multiply_labels("1⊗e1", "e1⊗1").unwrap();
    let rv = r.value(
        spec.element(&[0, 1]).unwrap().index(),
        spec.element(&[1, 0]).unwrap().index(),
    );
    assert_eq!(swapped, t.lincomb(&[(rv.clone(), "e1⊗e1")]).unwrap());
    assert_eq!(rv, &Scalar::omega_pow(p.ctx(), 1));
}

#[test]
fn canonical_structures() {
    let c = ScalarContext::rational();
    for n in 2..=6u32 {
        let spec = GroupSpec::new(vec![n]).unwrap();
        let h = canonical_weak_hopf(&spec, &c).unwrap();
        assert_eq!(h.coalgebra().counit(0), &Scalar::from_integer(&c, n as i64));
        for g in 1..n as usize {
            assert!(h.coalgebra().counit(g).is_zero());
            assert_eq!(h.antipode()[g], LinComb::basis(&c, g));
        }
        for g in 0..n as usize {
            for t in h.coalgebra().comul(g) {
                assert_eq!(t.coeff, Scalar::from_rational(&c, rat(1, n as i64)));
            }
        }
    }
}

#[test]
fn twisted_coproduct_coefficients() {
    let p = GcaParams::symbolic(3, 2).unwrap();
    let f = build_f_gca(&p).unwrap();
    let h = twisted_weak_hopf(&f).unwrap();
    let spec = f.spec().clone();
    let cay = spec.cayley();
    for g in 0..spec.order() {
        for t in h.coalgebra().comul(g) {
            assert_eq!(cay.sub(g, t.left), t.right);
            let want = f.value(t.left, t.right).try_invert().unwrap().scale(&rat(1, 9));
            assert_eq!(t.coeff, want);
        }
    }
}

#[test]
fn gca_weak_hopf_antipode_and_counit() {
    let p = GcaParams::symbolic(2, 1).unwrap();
    let h = gca_weak_hopf(&p).unwrap();
    let b = h.algebra().basis();
    assert_eq!(
        h.coalgebra().counit(b.index_of("1").unwrap()),
        &Scalar::from_integer(p.ctx(), 2)
    );
    assert!(h.coalgebra().counit(b.index_of("e1").unwrap()).is_zero());
    for i in 0..b.dim() {
        assert_eq!(h.antipode()[i], LinComb::basis(p.ctx(), i));
    }
    let e1 = b.index_of("e1").unwrap();
    let half = Scalar::from_rational(p.ctx(), rat(1, 2));
    let terms: Vec<_> = h
        .coalgebra()
        .comul(e1)
        .iter()
        .map(|t| (b.label(t.left), b.label(t.right), t.coeff.clone()))
        .collect();
    assert_eq!(terms, [("1", "e1", half.clone()), ("e1", "1", half)]);
}

#[test]
fn uniqueness_values() {
    for orders in [vec![4], vec![6], vec![2, 2, 2]] {
        let spec = GroupSpec::new(orders).unwrap();
        let d = derive_unique_coalgebra(&spec).unwrap();
        assert_eq!(d.constant, rat(1, spec.order() as i64));
        let c = ScalarContext::rational();
        let n = spec.order();
        let eps: Vec<Scalar> = (0..n)
            .map(|g| {
                if g == 0 {
                    Scalar::from_integer(&c, 2 * n as i64)
                } else {
                    Scalar::zero(&c)
                }
            })
            .collect();
        let delta = vec![Scalar::from_rational(&c, rat(1, 2 * n as i64)); n * n];
        assert!(matches!(
            coalgebra_constraint_witness(&spec, &delta, &eps).unwrap(),
            Some(ConstraintViolation::Multiplicativity(..))
        ));
    }
}

#[test]
fn tensor_counit() {
    let c = ScalarContext::rational();
    let spec = GroupSpec::new(vec![3]).unwrap();
    let co = canonical_weak_hopf(&spec, &c).unwrap().coalgebra().clone();
    let t = braided_tensor_coalgebra(&co, &co, &Cochain3::trivial(&spec, &c), &Braiding::trivial(&spec, &c)).unwrap();
    assert_eq!(t.counit(0), &Scalar::from_integer(&c, 9));
}
