use std::collections::BTreeMap;
use std::sync::Arc;

use hplane_core::algebra::{AlgebraElement, Monomial, Presentation};
use hplane_core::scalar::Scalar;
use proptest::prelude::*;

/// Single-letter rewriting system: each rule replaces an adjacent pair.
type Rule = ((char, char), Vec<(Scalar, String)>);

struct Rewriter {
    rules: Vec<Rule>,
    order: Vec<char>,
}

impl Rewriter {
    /// x < y with yx → xy − h·yy, Yx → xY + h, and y, Y inverse.
    fn ext() -> Self {
        let h = Scalar::h();
        Rewriter {
            rules: vec![
                (('y', 'x'), vec![(Scalar::one(), "xy".into()), (-&h, "yy".into())]),
                (('Y', 'x'), vec![(Scalar::one(), "xY".into()), (h, "".into())]),
                (('y', 'Y'), vec![(Scalar::one(), "".into())]),
                (('Y', 'y'), vec![(Scalar::one(), "".into())]),
            ],
            order: vec!['x', 'y'],
        }
    }

    /// u < v with vu → uv + 2h·v, Vu → uV − 2h·V, and v, V inverse.
    fn uv() -> Self {
        let h2 = Scalar::int(2) * Scalar::h();
        Rewriter {
            rules: vec![
                (('v', 'u'), vec![(Scalar::one(), "uv".into()), (h2.clone(), "v".into())]),
                (('V', 'u'), vec![(Scalar::one(), "uV".into()), (-&h2, "V".into())]),
                (('v', 'V'), vec![(Scalar::one(), "".into())]),
                (('V', 'v'), vec![(Scalar::one(), "".into())]),
            ],
            order: vec!['u', 'v'],
        }
    }

    fn normal_form(&self, word: &str) -> BTreeMap<Monomial, Scalar> {
        let mut pending: Vec<(Scalar, String)> = vec![(Scalar::one(), word.to_string())];
        let mut done: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        while let Some((c, w)) = pending.pop() {
            let chars: Vec<char> = w.chars().collect();
            let hit = (0..chars.len().saturating_sub(1)).find_map(|i| {
                self.rules.iter().find(|(lhs, _)| *lhs == (chars[i], chars[i + 1])).map(|(_, rhs)| (i, rhs))
            });
            match hit {
                Some((i, rhs)) => {
                    let head: String = chars[..i].iter().collect();
                    let tail: String = chars[i + 2..].iter().collect();
                    for (k, r) in rhs {
                        pending.push((&c * k, format!("{head}{r}{tail}")));
                    }
                }
                None => {
                    let mut m = Monomial::unit(2);
                    for ch in chars {
                        let lower = ch.to_ascii_lowercase();
                        let g = self.order.iter().position(|&o| o == lower).unwrap();
                        m.0[g] += if ch.is_uppercase() { -1 } else { 1 };
                    }
                    let e = done.entry(m.clone()).or_insert_with(Scalar::zero);
                    *e += &c;
                    if e.is_zero() {
                        done.remove(&m);
                    }
                }
            }
        }
        done
    }
}

fn to_letters(alg: &Arc<Presentation>, word: &str) -> Vec<(usize, i32)> {
    word.chars()
        .map(|ch| {
            let g = alg.generator_index(&ch.to_ascii_lowercase().to_string()).unwrap();
            (g, if ch.is_uppercase() { -1 } else { 1 })
        })
        .collect()
}

fn engine(alg: &Arc<Presentation>, word: &str) -> AlgebraElement {
    AlgebraElement::normalize(alg, &Scalar::one(), &to_letters(alg, word)).unwrap()
}

fn power_word(ch: char, inv: char, e: i32) -> String {
    let c = if e >= 0 { ch } else { inv };
    std::iter::repeat_n(c, e.unsigned_abs() as usize).collect()
}

#[test]
fn jordan_closed_form_matches_rewriting() {
    let alg = Presentation::ext();
    let rw = Rewriter::ext();
    for b in -4..=5 {
        for c in 0..=4 {
            let word = format!("{}{}", power_word('y', 'Y', b), "x".repeat(c));
            let got = engine(&alg, &word);
            assert_eq!(got.terms(), &rw.normal_form(&word), "y^{b} x^{c}");
        }
    }
}

#[test]
fn shift_closed_form_matches_rewriting() {
    let alg = Presentation::uv();
    let rw = Rewriter::uv();
    for b in -4..=4 {
        for c in 0..=4 {
            let word = format!("{}{}", power_word('v', 'V', b), "u".repeat(c));
            assert_eq!(engine(&alg, &word).terms(), &rw.normal_form(&word), "v^{b} u^{c}");
        }
    }
}

#[test]
fn commutator_with_powers_of_y() {
    let alg = Presentation::ext();
    let rw = Rewriter::ext();
    for b in -5..=5 {
        let yb = power_word('y', 'Y', b);
        let lhs = rw.normal_form(&format!("x{yb}"));
        let rhs = rw.normal_form(&format!("{yb}x"));
        let mut comm = AlgebraElement::from_terms(&alg, lhs) - AlgebraElement::from_terms(&alg, rhs);
        let mut expected = Monomial::unit(2);
        expected.0[1] = b + 1;
        let want = Scalar::int(b as i64) * Scalar::h();
        if !want.is_zero() {
            comm = comm - AlgebraElement::from_terms(&alg, BTreeMap::from([(expected, want)]));
        }
        assert!(comm.is_zero(), "b = {b}");
    }
}

fn ext_word() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('x'), Just('y'), Just('Y')], 0..9).prop_map(|v| v.into_iter().collect())
}

fn uv_word() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('u'), Just('v'), Just('V')], 0..9).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn ext_words_match_rewriter(w in ext_word()) {
        let alg = Presentation::ext();
        let got = engine(&alg, &w);
        prop_assert_eq!(got.terms(), &Rewriter::ext().normal_form(&w));
    }

    #[test]
    fn uv_words_match_rewriter(w in uv_word()) {
        let alg = Presentation::uv();
        let got = engine(&alg, &w);
        prop_assert_eq!(got.terms(), &Rewriter::uv().normal_form(&w));
    }

    #[test]
    fn fold_order_is_irrelevant(w in ext_word()) {
        let alg = Presentation::ext();
        let letters = to_letters(&alg, &w);
        let left = AlgebraElement::normalize(&alg, &Scalar::one(), &letters).unwrap();
        let right = AlgebraElement::normalize_from_right(&alg, &Scalar::one(), &letters).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn associativity(a in ext_word(), b in ext_word(), c in ext_word()) {
        let alg = Presentation::ext();
        let (a, b, c) = (engine(&alg, &a), engine(&alg, &b), engine(&alg, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn embedding_is_multiplicative(a in uv_word(), b in uv_word()) {
        use hplane_core::algebra::embed_uv;
        let alg = Presentation::uv();
        let (a, b) = (engine(&alg, &a), engine(&alg, &b));
        let lhs = embed_uv(&(&a * &b)).unwrap();
        let rhs = &embed_uv(&a).unwrap() * &embed_uv(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
