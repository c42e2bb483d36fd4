use std::sync::Arc;

use hplane_core::algebra::{AlgebraElement, Presentation};
use hplane_core::calculus::{rhat, Calculus, Form, Tensor};
use hplane_core::climit::{classical_uv, poisson};
use hplane_core::geometry::{ybe_defect, BraidMap, SkewDerivative};
use hplane_core::scalar::Scalar;
use proptest::prelude::*;

type Terms = Vec<(i32, i32, i64)>;

fn build(alg: &Arc<Presentation>, terms: &Terms) -> AlgebraElement {
    let mut out = AlgebraElement::zero(alg);
    for &(i, j, c) in terms {
        let word: Vec<(usize, i32)> = [(0, i), (1, j)].into_iter().filter(|(_, e)| *e != 0).collect();
        out = out + AlgebraElement::normalize(alg, &Scalar::int(c), &word).unwrap();
    }
    out
}

fn poly(max_deg: i32) -> impl Strategy<Value = Terms> {
    proptest::collection::vec((0..=max_deg, 0..=max_deg, -3i64..=3), 0..4)
}

fn laurent() -> impl Strategy<Value = Terms> {
    proptest::collection::vec((0..=2, -2..=2, -3i64..=3), 0..3)
}

fn one_form(calc: &Arc<Calculus>, a: &AlgebraElement, b: &AlgebraElement) -> Form {
    let xi = Form::cogen(calc, 0).right_mul(a).unwrap();
    xi.try_add(&Form::cogen(calc, 1).right_mul(b).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(f in poly(3)) {
        let c = Calculus::plane();
        let f = build(c.algebra(), &f);
        prop_assert!(Form::d_of(&c, &f).unwrap().d().unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule(f in poly(2), g in poly(2)) {
        let c = Calculus::plane();
        let (f, g) = (build(c.algebra(), &f), build(c.algebra(), &g));
        let lhs = Form::d_of(&c, &(&f * &g)).unwrap();
        let rhs = Form::d_of(&c, &f).unwrap().right_mul(&g).unwrap()
            .try_add(&Form::d_of(&c, &g).unwrap().left_mul(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extended_leibniz_rule(f in laurent(), g in laurent()) {
        let c = Calculus::ext2();
        let (f, g) = (build(c.algebra(), &f), build(c.algebra(), &g));
        let lhs = Form::d_of(&c, &(&f * &g)).unwrap();
        let rhs = Form::d_of(&c, &f).unwrap().right_mul(&g).unwrap()
            .try_add(&Form::d_of(&c, &g).unwrap().left_mul(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_action_is_associative(f in poly(2), g in poly(2), a in poly(1), b in poly(1)) {
        let c = Calculus::plane();
        let alg = c.algebra();
        let (f, g) = (build(alg, &f), build(alg, &g));
        let w = one_form(&c, &build(alg, &a), &build(alg, &b));
        prop_assert_eq!(w.left_mul(&g).unwrap().left_mul(&f).unwrap(), w.left_mul(&(&f * &g)).unwrap());
    }

    #[test]
    fn bimodule_actions_commute(f in poly(2), g in poly(2), a in poly(1), b in poly(1)) {
        let c = Calculus::plane();
        let alg = c.algebra();
        let (f, g) = (build(alg, &f), build(alg, &g));
        let w = one_form(&c, &build(alg, &a), &build(alg, &b));
        prop_assert_eq!(w.left_mul(&f).unwrap().right_mul(&g).unwrap(), w.right_mul(&g).unwrap().left_mul(&f).unwrap());
    }

    #[test]
    fn braid_map_is_bilinear(f in poly(2), a in 0usize..2, b in 0usize..2) {
        let c = Calculus::plane();
        let f = build(c.algebra(), &f);
        let s = BraidMap::wess_zumino(&c, &Scalar::h());
        let t = Tensor::basis(&c, &[a, b]);
        prop_assert_eq!(s.apply(&t.left_mul(&f).unwrap(), 0).unwrap(), s.apply(&t, 0).unwrap().left_mul(&f).unwrap());
        prop_assert_eq!(s.apply(&t.right_mul(&f).unwrap(), 0).unwrap(), s.apply(&t, 0).unwrap().right_mul(&f).unwrap());
    }

    #[test]
    fn yang_baxter_at_rational_points(hn in -6i64..=6, hd in 1i64..=4, pn in -6i64..=6, pd in 1i64..=4) {
        let r = rhat(&Scalar::ratio(hn, hd), &Scalar::ratio(pn, pd));
        prop_assert!(ybe_defect(&r).iter().flatten().all(Scalar::is_zero));
    }

    #[test]
    fn wess_zumino_exchange(f in poly(4), a in 0usize..2, b in 0usize..2) {
        let sd = SkewDerivative::new().unwrap();
        let f = build(sd.calculus().algebra(), &f);
        prop_assert!(sd.exchange_defect(a, b, &f).unwrap().is_zero());
    }

    #[test]
    fn poisson_jacobi(f in laurent(), g in laurent(), k in laurent()) {
        let alg = classical_uv();
        let (f, g, k) = (build(&alg, &f), build(&alg, &g), build(&alg, &k));
        let j = poisson(&f, &poisson(&g, &k).unwrap()).unwrap()
            + poisson(&g, &poisson(&k, &f).unwrap()).unwrap()
            + poisson(&k, &poisson(&f, &g).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }
}
