//! The quantum group `GL_h(2)`: relations, quantum determinant and coaction.

use std::sync::{Arc, OnceLock};

use crate::algebra::{g, s, AlgebraElement, Presentation, PresentationBuilder, SwapRule};
use crate::calculus::{Calculus, Form};
use crate::error::Result;
use crate::scalar::Scalar;

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

type Word = Vec<(usize, i32)>;

fn w(letters: &[usize]) -> Word {
    letters.iter().map(|&l| (l, 1)).collect()
}

/// `δ = AD − CB − hCD` as a sum of words.
fn delta_words(coeff: &Scalar) -> Vec<(Scalar, Word)> {
    let h = Scalar::h();
    vec![(coeff.clone(), w(&[A, D])), (-coeff, w(&[C, B])), (-(coeff * &h), w(&[C, D]))]
}

fn with_group_rules(b: PresentationBuilder) -> PresentationBuilder {
    let h = Scalar::h();
    let one = Scalar::one();
    let mut ba = vec![(one.clone(), w(&[A, B])), (h.clone(), w(&[A, A]))];
    ba.extend(delta_words(&-&h));
    let mut db = vec![(one.clone(), w(&[B, D])), (-&h, w(&[D, D]))];
    db.extend(delta_words(&h));
    b.rule(B, A, SwapRule::Words(ba))
        .rule(C, A, SwapRule::Words(vec![(one.clone(), w(&[A, C])), (-&h, w(&[C, C]))]))
        .rule(D, A, SwapRule::Words(vec![(one.clone(), w(&[A, D])), (-&h, w(&[C, D])), (h.clone(), w(&[C, A]))]))
        .rule(C, B, SwapRule::Words(vec![(one.clone(), w(&[B, C])), (-&h, w(&[C, D])), (-&h, w(&[A, C]))]))
        .rule(D, B, SwapRule::Words(db))
        .rule(D, C, SwapRule::Words(vec![(one, w(&[C, D])), (h, w(&[C, C]))]))
}

/// `GL_h(2)` on generators `A < B < C < D`.
pub fn presentation() -> Arc<Presentation> {
    static P: OnceLock<Arc<Presentation>> = OnceLock::new();
    P.get_or_init(|| {
        let b = Presentation::builder("glh2")
            .generator("A", false)
            .generator("B", false)
            .generator("C", false)
            .generator("D", false);
        with_group_rules(b).build()
    })
    .clone()
}

/// `GL_h(2)` together with the plane; the two factors commute.
pub fn tensor_presentation() -> Arc<Presentation> {
    static P: OnceLock<Arc<Presentation>> = OnceLock::new();
    P.get_or_init(|| {
        let b = Presentation::builder("glh2-plane")
            .generator("A", false)
            .generator("B", false)
            .generator("C", false)
            .generator("D", false)
            .generator("x", false)
            .generator("y", false)
            .rule(5, 4, SwapRule::Jordan(Scalar::h()));
        with_group_rules(b).build()
    })
    .clone()
}

/// `AD − CB − hCD` in the given presentation (which must contain `A…D`).
pub fn delta_in(p: &Arc<Presentation>) -> AlgebraElement {
    let (a, b, c, d) = (g(p, "A"), g(p, "B"), g(p, "C"), g(p, "D"));
    &(&(&a * &d) - &(&c * &b)) - &(&c * &d).scale(&Scalar::h())
}

/// The quantum determinant.
pub fn delta() -> AlgebraElement {
    delta_in(&presentation())
}

/// `DA − CB − hCA`.
pub fn delta_alt() -> AlgebraElement {
    let p = presentation();
    let (a, b, c, d) = (g(&p, "A"), g(&p, "B"), g(&p, "C"), g(&p, "D"));
    &(&(&d * &a) - &(&c * &b)) - &(&c * &a).scale(&Scalar::h())
}

/// `[δ, X]` for each generator.
pub fn determinant_commutators() -> Result<Vec<(String, AlgebraElement)>> {
    let p = presentation();
    let dl = delta();
    ["A", "B", "C", "D"].iter().map(|n| Ok((n.to_string(), dl.commutator(&g(&p, n))?))).collect()
}

/// `x′y′ − y′x′ − h y′²` for `x′ = Ax + By`, `y′ = Cx + Dy`.
pub fn coaction_defect() -> Result<AlgebraElement> {
    let p = tensor_presentation();
    let (x, y) = (g(&p, "x"), g(&p, "y"));
    let xp = &(&g(&p, "A") * &x) + &(&g(&p, "B") * &y);
    let yp = &(&g(&p, "C") * &x) + &(&g(&p, "D") * &y);
    plane_relation(&xp, &yp)
}

/// `xy − yx − hy²`.
pub fn plane_relation(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.commutator(y)?.try_sub(&y.try_mul(y)?.scale(&Scalar::h()))
}

/// The plane relation under the identity coaction.
pub fn identity_coaction_defect() -> Result<AlgebraElement> {
    let p = Presentation::plane();
    plane_relation(&g(&p, "x"), &g(&p, "y"))
}

/// `(TΛTᵗ)^{ab} − δΛ^{ab}` for `Λ = [[h, 1], [−1, 0]]`.
pub fn symplectic_defects() -> Result<[[AlgebraElement; 2]; 2]> {
    let p = presentation();
    let t = [[g(&p, "A"), g(&p, "B")], [g(&p, "C"), g(&p, "D")]];
    let lam = lambda_matrix();
    let dl = delta();
    let entry = |a: usize, b: usize| -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero(&p);
        for c in 0..2 {
            for d in 0..2 {
                acc = acc.try_add(&t[a][c].scale(&lam[c][d]).try_mul(&t[b][d])?)?;
            }
        }
        acc.try_sub(&dl.scale(&lam[a][b]))
    };
    Ok([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]])
}

/// `TΛTᵗ` for the identity matrix.
pub fn identity_symplectic() -> [[Scalar; 2]; 2] {
    let lam = lambda_matrix();
    let mut out: [[Scalar; 2]; 2] = Default::default();
    for a in 0..2 {
        for b in 0..2 {
            out[a][b] = lam[a][b].clone();
        }
    }
    out
}

pub fn lambda_matrix() -> [[Scalar; 2]; 2] {
    [[Scalar::h(), Scalar::one()], [Scalar::int(-1), Scalar::zero()]]
}

/// `κ′ − δκ` under the coaction `ξ′ = Aξ + Bη`, `η′ = Cξ + Dη`.
pub fn kappa_covariance_defect() -> Result<(Form, Form)> {
    let calc = Calculus::qgroup_plane();
    let p = calc.algebra().clone();
    let (x, y) = (g(&p, "x"), g(&p, "y"));
    let xi = Form::cogen(&calc, 0);
    let eta = Form::cogen(&calc, 1);
    let xp = &(&g(&p, "A") * &x) + &(&g(&p, "B") * &y);
    let yp = &(&g(&p, "C") * &x) + &(&g(&p, "D") * &y);
    let xip = xi.right_mul(&g(&p, "A"))?.try_add(&eta.right_mul(&g(&p, "B"))?)?;
    let etap = xi.right_mul(&g(&p, "C"))?.try_add(&eta.right_mul(&g(&p, "D"))?)?;
    let kappa_of = |x: &AlgebraElement, y: &AlgebraElement, xi: &Form, eta: &Form| -> Result<Form> {
        eta.left_mul(x)?.try_sub(&xi.left_mul(y)?)?.try_sub(&eta.left_mul(&y.scale(&Scalar::h()))?)
    };
    let kp = kappa_of(&xp, &yp, &xip, &etap)?;
    let k = kappa_of(&x, &y, &xi, &eta)?;
    let dk = k.left_mul(&delta_in(&p))?;
    Ok((kp.clone(), kp.try_sub(&dk)?))
}

/// Unit element shorthand for callers building corpora.
pub fn unit() -> AlgebraElement {
    s(&presentation(), Scalar::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let p = presentation();
        let (a, b, c) = (g(&p, "A"), g(&p, "B"), g(&p, "C"));
        assert_eq!((&c * &a).to_string(), "A*C - h*C^2");
        assert_eq!(&a * &unit(), a);
        assert_eq!(delta().to_string(), "h*A*C + A*D - B*C");
        let ba = &b * &a;
        let expected = &(&(&a * &b) - &delta().scale(&Scalar::h())) + &(&a * &a).scale(&Scalar::h());
        assert_eq!(ba, expected);
    }

    #[test]
    fn determinant() {
        for (n, c) in determinant_commutators().unwrap() {
            assert!(c.is_zero(), "[δ, {n}] = {c}");
        }
        assert_eq!(delta(), delta_alt());
        assert!(coaction_defect().unwrap().is_zero());
        for row in symplectic_defects().unwrap() {
            for e in row {
                assert!(e.is_zero(), "{e}");
            }
        }
    }
}
