//! The commutative limit: Laurent polynomials on the half-plane, the Poisson
//! bracket, vector fields and Killing analysis.

use std::sync::{Arc, OnceLock};

use crate::algebra::{g, gp, s, uv_w, AlgebraElement, Monomial, Presentation, Terms};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Commutative `ũ, ṽ` with `ṽ` invertible.
pub fn classical_uv() -> Arc<Presentation> {
    static P: OnceLock<Arc<Presentation>> = OnceLock::new();
    P.get_or_init(|| Presentation::builder("classical-uv").generator("u", false).generator("v", true).build()).clone()
}

/// Commutative `x̃, ỹ` with `ỹ` invertible.
pub fn classical_xy() -> Arc<Presentation> {
    static P: OnceLock<Arc<Presentation>> = OnceLock::new();
    P.get_or_init(|| Presentation::builder("classical-xy").generator("x", false).generator("y", true).build()).clone()
}

pub fn u() -> AlgebraElement {
    g(&classical_uv(), "u")
}

pub fn v() -> AlgebraElement {
    g(&classical_uv(), "v")
}

pub fn v_pow(e: i32) -> AlgebraElement {
    gp(&classical_uv(), "v", e)
}

pub fn constant(c: Scalar) -> AlgebraElement {
    s(&classical_uv(), c)
}

/// `w̃ = −½(ũ² + 1)ṽ⁻¹`.
pub fn w() -> AlgebraElement {
    (&(&u() * &u()) + &constant(Scalar::one())).try_mul(&v_pow(-1)).expect("same algebra").scale(&Scalar::ratio(-1, 2))
}

/// `h → 0` after normal ordering, in the matching commutative presentation.
pub fn classical_limit(a: &AlgebraElement) -> Result<AlgebraElement> {
    let target = match a.algebra().name() {
        "uv" => classical_uv(),
        "ext" => classical_xy(),
        other => return Err(Error::Other(format!("no commutative limit for {other}"))),
    };
    let lim = a.map_coefficients(|c| c.limit_at_zero())?;
    Ok(AlgebraElement::from_terms(&target, lim.terms().clone()))
}

/// The normal-ordered lift `u^a v^b` of a commutative `ũ, ṽ` element.
pub fn lift(f: &AlgebraElement) -> Result<AlgebraElement> {
    check_uv(f)?;
    Ok(AlgebraElement::from_terms(&Presentation::uv(), f.terms().clone()))
}

/// The lift with each monomial ordered `v^b u^a` instead.
pub fn lift_reversed(f: &AlgebraElement) -> Result<AlgebraElement> {
    check_uv(f)?;
    let uv = Presentation::uv();
    let mut out = AlgebraElement::zero(&uv);
    for (m, c) in f.terms() {
        let word = [(1, m.exps()[1]), (0, m.exps()[0])];
        let word: Vec<(usize, i32)> = word.into_iter().filter(|(_, e)| *e != 0).collect();
        out = out.try_add(&AlgebraElement::normalize(&uv, c, &word)?)?;
    }
    Ok(out)
}

fn check_uv(f: &AlgebraElement) -> Result<()> {
    if Arc::ptr_eq(f.algebra(), &classical_uv()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch(f.algebra().name().into(), "classical-uv".into()))
    }
}

/// `{f, g} = lim (1/h)[f̂, ĝ]` computed from a pair of lifts.
fn bracket_of_lifts(fl: &AlgebraElement, gl: &AlgebraElement) -> Result<AlgebraElement> {
    let c = fl.commutator(gl)?;
    for sc in c.terms().values() {
        if sc.min_h_power().map(|p| p < 1).unwrap_or(false) {
            return Err(Error::SingularLimit(format!("commutator {c} is not O(h)")));
        }
    }
    let first = c.map_coefficients(|sc| Ok(sc.h_coefficient(1)))?;
    Ok(AlgebraElement::from_terms(&classical_uv(), first.terms().clone()))
}

/// Poisson bracket via the lifted commutator.
pub fn poisson(f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement> {
    bracket_of_lifts(&lift(f)?, &lift(g)?)
}

/// Poisson bracket with the reversed lift of `f`.
pub fn poisson_reversed(f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement> {
    bracket_of_lifts(&lift_reversed(f)?, &lift(g)?)
}

/// `−2ṽ(∂_ũf ∂_ṽg − ∂_ṽf ∂_ũg)`.
pub fn poisson_formula(f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement> {
    let (fu, fv) = (partial(f, 0)?, partial(f, 1)?);
    let (gu, gv) = (partial(g, 0)?, partial(g, 1)?);
    let inner = fu.try_mul(&gv)?.try_sub(&fv.try_mul(&gu)?)?;
    v().scale(&Scalar::int(-2)).try_mul(&inner)
}

/// `∂/∂g_k` on a commutative Laurent polynomial.
pub fn partial(f: &AlgebraElement, k: usize) -> Result<AlgebraElement> {
    if k >= f.algebra().ngens() {
        return Err(Error::UnknownGenerator(format!("#{k}")));
    }
    let mut terms = Terms::new();
    for (m, c) in f.terms() {
        let e = m.exps()[k];
        if e == 0 {
            continue;
        }
        let mut exps = m.0.clone();
        exps[k] = e - 1;
        terms.insert(Monomial(exps), c * &Scalar::int(e as i64));
    }
    Ok(AlgebraElement::from_terms(f.algebra(), terms))
}

/// Inverse of a single-term element in invertible generators.
pub fn monomial_inverse(f: &AlgebraElement) -> Result<AlgebraElement> {
    let alg = f.algebra();
    let mut it = f.terms().iter();
    let (Some((m, c)), None) = (it.next(), it.next()) else {
        return Err(Error::NonInvertibleMap(format!("{f} is not a monomial")));
    };
    let mut exps = m.0.clone();
    for (k, e) in exps.iter_mut().enumerate() {
        if *e != 0 && !alg.is_invertible(k) {
            return Err(Error::NonInvertibleMap(format!("{f} involves {}", alg.generators()[k])));
        }
        *e = -*e;
    }
    let mut terms = Terms::new();
    terms.insert(Monomial(exps), c.inverse()?);
    Ok(AlgebraElement::from_terms(alg, terms))
}

/// `a_u ∂_ũ + a_v ∂_ṽ`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub au: AlgebraElement,
    pub av: AlgebraElement,
}

impl VectorField {
    pub fn new(au: AlgebraElement, av: AlgebraElement) -> VectorField {
        VectorField { au, av }
    }

    pub fn components(&self) -> [&AlgebraElement; 2] {
        [&self.au, &self.av]
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        self.au.try_mul(&partial(f, 0)?)?.try_add(&self.av.try_mul(&partial(f, 1)?)?)
    }

    pub fn commutator(&self, o: &VectorField) -> Result<VectorField> {
        let c =
            |a: &AlgebraElement, b: &AlgebraElement| -> Result<AlgebraElement> { self.apply(b)?.try_sub(&o.apply(a)?) };
        Ok(VectorField { au: c(&self.au, &o.au)?, av: c(&self.av, &o.av)? })
    }

    pub fn try_sub(&self, o: &VectorField) -> Result<VectorField> {
        Ok(VectorField { au: self.au.try_sub(&o.au)?, av: self.av.try_sub(&o.av)? })
    }

    pub fn is_zero(&self) -> bool {
        self.au.is_zero() && self.av.is_zero()
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})*d_u + ({})*d_v", self.au, self.av)
    }
}

/// `X₁ = ṽ∂_ũ`, `X₂ = −ṽ∂_ṽ`, `X₃ = −w̃∂_ũ + ũ∂_ṽ`.
pub fn limit_fields() -> [VectorField; 3] {
    let zero = constant(Scalar::zero());
    [VectorField::new(v(), zero.clone()), VectorField::new(zero, -v()), VectorField::new(-w(), u())]
}

/// `X′₁ = ∂_ũ`, `X′₂ = ũ∂_ũ + ṽ∂_ṽ`, `X′₃ = ½(ṽ² − ũ²)∂_ũ − ũṽ∂_ṽ`.
pub fn killing_fields() -> [VectorField; 3] {
    let half = Scalar::ratio(1, 2);
    [
        VectorField::new(constant(Scalar::one()), constant(Scalar::zero())),
        VectorField::new(u(), v()),
        VectorField::new((&(&v() * &v()) - &(&u() * &u())).scale(&half), -(&u() * &v())),
    ]
}

pub type Metric = [[AlgebraElement; 2]; 2];

/// `ṽ⁻²(dũ² + dṽ²)`.
pub fn half_plane_metric() -> Metric {
    let c = v_pow(-2);
    let z = constant(Scalar::zero());
    [[c.clone(), z.clone()], [z, c]]
}

/// `(L_X g)_{ab} = X(g_{ab}) + g_{cb}∂_aX^c + g_{ac}∂_bX^c`.
pub fn killing_defect(x: &VectorField, metric: &Metric) -> Result<Metric> {
    let comps = x.components();
    let mut out: Vec<AlgebraElement> = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = x.apply(&metric[a][b])?;
            for (c, xc) in comps.iter().enumerate() {
                acc = acc.try_add(&metric[c][b].try_mul(&partial(xc, a)?)?)?;
                acc = acc.try_add(&metric[a][c].try_mul(&partial(xc, b)?)?)?;
            }
            out.push(acc);
        }
    }
    let [a, b, c, d]: [AlgebraElement; 4] = out.try_into().expect("four entries");
    Ok([[a, b], [c, d]])
}

/// A commutative 1-form `a dũ + b dṽ`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    pub du: AlgebraElement,
    pub dv: AlgebraElement,
}

impl OneForm {
    pub fn d(f: &AlgebraElement) -> Result<OneForm> {
        Ok(OneForm { du: partial(f, 0)?, dv: partial(f, 1)? })
    }

    pub fn scale_by(&self, f: &AlgebraElement) -> Result<OneForm> {
        Ok(OneForm { du: f.try_mul(&self.du)?, dv: f.try_mul(&self.dv)? })
    }

    pub fn try_add(&self, o: &OneForm) -> Result<OneForm> {
        Ok(OneForm { du: self.du.try_add(&o.du)?, dv: self.dv.try_add(&o.dv)? })
    }

    pub fn try_sub(&self, o: &OneForm) -> Result<OneForm> {
        Ok(OneForm { du: self.du.try_sub(&o.du)?, dv: self.dv.try_sub(&o.dv)? })
    }

    pub fn is_zero(&self) -> bool {
        self.du.is_zero() && self.dv.is_zero()
    }

    fn comps(&self) -> [&AlgebraElement; 2] {
        [&self.du, &self.dv]
    }
}

impl std::fmt::Display for OneForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})*du + ({})*dv", self.du, self.dv)
    }
}

/// `θ̃¹ = ṽ⁻¹dũ`, `θ̃² = −ṽ⁻¹dṽ`.
pub fn frame() -> [OneForm; 2] {
    let z = constant(Scalar::zero());
    [OneForm { du: v_pow(-1), dv: z.clone() }, OneForm { du: z, dv: -v_pow(-1) }]
}

/// `Σ_i α^i ⊗ α^i` as a symmetric matrix.
pub fn metric_of(frame: &[OneForm]) -> Result<Metric> {
    let mut out: Vec<AlgebraElement> = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = constant(Scalar::zero());
            for f in frame {
                acc = acc.try_add(&f.comps()[a].try_mul(f.comps()[b])?)?;
            }
            out.push(acc);
        }
    }
    let [a, b, c, d]: [AlgebraElement; 4] = out.try_into().expect("four entries");
    Ok([[a, b], [c, d]])
}

/// A map of the half-plane given by the images of `ũ, ṽ` and of its inverse.
#[derive(Clone, Debug)]
pub struct DiffeoMap {
    pub images: [AlgebraElement; 2],
    pub inverse: [AlgebraElement; 2],
}

impl DiffeoMap {
    /// `φ(ũ) = ũṽ⁻¹`, `φ(ṽ) = ṽ⁻¹`; an involution.
    pub fn phi() -> DiffeoMap {
        let images = [&u() * &v_pow(-1), v_pow(-1)];
        DiffeoMap { inverse: images.clone(), images }
    }

    fn substitute(images: &[AlgebraElement; 2], f: &AlgebraElement) -> Result<AlgebraElement> {
        check_uv(f)?;
        let mut out = constant(Scalar::zero());
        for (m, c) in f.terms() {
            let mut term = constant(c.clone());
            for (k, &e) in m.exps().iter().enumerate() {
                let base = if e < 0 { monomial_inverse(&images[k])? } else { images[k].clone() };
                term = term.try_mul(&base.pow(e.unsigned_abs())?)?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// `f∘φ`.
    pub fn pullback(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        DiffeoMap::substitute(&self.images, f)
    }

    /// `f∘φ⁻¹`.
    pub fn pullback_inverse(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        DiffeoMap::substitute(&self.inverse, f)
    }

    /// `φ∘φ⁻¹` evaluated on the coordinates; identity iff the data is consistent.
    pub fn round_trip(&self) -> Result<[AlgebraElement; 2]> {
        Ok([self.pullback(&self.inverse[0])?, self.pullback(&self.inverse[1])?])
    }

    /// `(φ_*X)^c = X(φ^c)∘φ⁻¹`.
    pub fn pushforward(&self, x: &VectorField) -> Result<VectorField> {
        Ok(VectorField {
            au: self.pullback_inverse(&x.apply(&self.images[0])?)?,
            av: self.pullback_inverse(&x.apply(&self.images[1])?)?,
        })
    }

    /// `φ*(a dũ + b dṽ) = (a∘φ) dφ(ũ) + (b∘φ) dφ(ṽ)`.
    pub fn pullback_form(&self, w: &OneForm) -> Result<OneForm> {
        let a = OneForm::d(&self.images[0])?.scale_by(&self.pullback(&w.du)?)?;
        let b = OneForm::d(&self.images[1])?.scale_by(&self.pullback(&w.dv)?)?;
        a.try_add(&b)
    }
}

/// Gaussian curvature of `λ(dũ² + dṽ²)` for a monomial `λ`:
/// `K = −(λΔλ − |∇λ|²)/(2λ³)`.
pub fn conformal_curvature(lambda: &AlgebraElement) -> Result<AlgebraElement> {
    let lu = partial(lambda, 0)?;
    let lv = partial(lambda, 1)?;
    let lap = partial(&lu, 0)?.try_add(&partial(&lv, 1)?)?;
    let grad2 = lu.try_mul(&lu)?.try_add(&lv.try_mul(&lv)?)?;
    let num = lambda.try_mul(&lap)?.try_sub(&grad2)?;
    let inv = monomial_inverse(&lambda.pow(3)?)?;
    Ok(num.try_mul(&inv)?.scale(&Scalar::ratio(-1, 2)))
}

/// `[λ_a, f]` in the `u, v` presentation, `λ₁ = v/2h`, `λ₂ = u/2h`, `λ₃ = w/2h`.
pub fn uv_derivation(a: usize, f: &AlgebraElement) -> Result<AlgebraElement> {
    let p = Presentation::uv();
    let inv2h = Scalar::ratio(1, 2) * Scalar::h().inverse()?;
    let lam = match a {
        0 => g(&p, "v"),
        1 => g(&p, "u"),
        2 => uv_w(),
        _ => return Err(Error::Other(format!("no derivation e{}", a + 1))),
    };
    lam.scale(&inv2h).commutator(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        let p = Presentation::uv();
        let vu = &g(&p, "v") * &g(&p, "u");
        assert_eq!(classical_limit(&vu).unwrap(), &u() * &v());
        let l1 = g(&p, "v").scale(&Scalar::h().inverse().unwrap());
        assert!(matches!(classical_limit(&l1), Err(Error::SingularLimit(_))));
    }

    #[test]
    fn brackets() {
        assert_eq!(poisson(&u(), &v()).unwrap(), v().scale(&Scalar::int(-2)));
        assert!(poisson(&u(), &u()).unwrap().is_zero());
        let u2 = &u() * &u();
        assert_eq!(poisson(&u2, &v()).unwrap(), (&u() * &v()).scale(&Scalar::int(-4)));
        assert_eq!(poisson_formula(&u2, &v()).unwrap(), poisson(&u2, &v()).unwrap());
    }

    #[test]
    fn fields() {
        let [x1, x2, x3] = limit_fields();
        assert_eq!(x1.commutator(&x2).unwrap(), x1);
        assert_eq!(x2.commutator(&x3).unwrap(), x3);
        assert_eq!(x3.commutator(&x1).unwrap(), x2);
        let m = half_plane_metric();
        for k in killing_fields() {
            assert!(killing_defect(&k, &m).unwrap().iter().flatten().all(|e| e.is_zero()), "{k}");
        }
        for x in limit_fields() {
            assert!(!killing_defect(&x, &m).unwrap().iter().flatten().all(|e| e.is_zero()), "{x}");
        }
    }

    #[test]
    fn involution() {
        let phi = DiffeoMap::phi();
        assert_eq!(phi.round_trip().unwrap(), [u(), v()]);
        let [x1, x2, x3] = limit_fields();
        let [k1, k2, k3] = killing_fields();
        assert_eq!(phi.pushforward(&x1).unwrap(), k1);
        assert_eq!(phi.pushforward(&x2).unwrap(), k2);
        assert_eq!(phi.pushforward(&x3).unwrap(), k3);
        let [t1, t2] = frame();
        let expected = t1.scale_by(&v()).unwrap().try_add(&t2.scale_by(&u()).unwrap()).unwrap();
        assert_eq!(phi.pullback_form(&t1).unwrap(), expected);
        assert_eq!(conformal_curvature(&v_pow(-2)).unwrap(), constant(Scalar::int(-1)));
    }
}
