//! Presented noncommutative algebras and their normal-ordered elements.
//!
//! A [`Presentation`] lists generators in normal order and, for every pair
//! `later > earlier`, a [`SwapRule`] rewriting `later^a · earlier^e` into a sum
//! of ordered monomials. Products are computed by pushing letters of the right
//! factor into the left monomial one generator at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{coefficient_prefix, join_signed, Scalar};

const MAX_DEPTH: usize = 512;

/// Exponent vector in the presentation's generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[i32; 6]>);

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn single(n: usize, g: usize, e: i32) -> Self {
        let mut m = Monomial::unit(n);
        m.0[g] = e;
        m
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e != 0)
    }
}

pub type Terms = BTreeMap<Monomial, Scalar>;

fn add_into(acc: &mut Terms, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c.clone());
        }
    }
}

fn add_scaled(acc: &mut Terms, src: Terms, c: &Scalar) {
    for (m, v) in src {
        let prod = if c.is_one() { v } else { &v * c };
        add_into(acc, m, &prod);
    }
}

/// How `later^a · earlier^e` is put back in normal order.
#[derive(Clone, Debug)]
pub enum SwapRule {
    /// The two generators commute.
    Commute,
    /// `later^b · earlier = earlier · later^b − b·c·later^(b+1)`, valid for all integer `b`.
    Jordan(Scalar),
    /// `later^b · earlier = earlier · later^b + b·c·later^b`, valid for all integer `b`.
    Shift(Scalar),
    /// `later · earlier = Σ coeff · word`; words need not be ordered.
    /// Only natural exponents are supported.
    Words(Vec<(Scalar, Vec<(usize, i32)>)>),
}

#[derive(Debug)]
pub struct Presentation {
    name: String,
    gens: Vec<String>,
    invertible: Vec<bool>,
    rules: Vec<Vec<SwapRule>>,
}

/// Builder for custom presentations; unspecified pairs commute.
pub struct PresentationBuilder {
    name: String,
    gens: Vec<(String, bool)>,
    rules: Vec<(usize, usize, SwapRule)>,
}

impl PresentationBuilder {
    pub fn generator(mut self, name: &str, invertible: bool) -> Self {
        self.gens.push((name.to_string(), invertible));
        self
    }

    /// Rule for `later · earlier` with `later > earlier` in generator order.
    pub fn rule(mut self, later: usize, earlier: usize, rule: SwapRule) -> Self {
        assert!(later > earlier, "swap rules rewrite later·earlier");
        self.rules.push((later, earlier, rule));
        self
    }

    pub fn build(self) -> Arc<Presentation> {
        let n = self.gens.len();
        let mut rules: Vec<Vec<SwapRule>> = (0..n).map(|k| vec![SwapRule::Commute; k]).collect();
        for (k, g, r) in self.rules {
            rules[k][g] = r;
        }
        Arc::new(Presentation {
            name: self.name,
            gens: self.gens.iter().map(|g| g.0.clone()).collect(),
            invertible: self.gens.iter().map(|g| g.1).collect(),
            rules,
        })
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn rising(b: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(b + j))
}

fn int_scalar(n: BigInt) -> Scalar {
    Scalar::rational(BigRational::from_integer(n))
}

impl Presentation {
    pub fn builder(name: &str) -> PresentationBuilder {
        PresentationBuilder { name: name.to_string(), gens: Vec::new(), rules: Vec::new() }
    }

    /// `xy − yx = hy²`.
    pub fn plane() -> Arc<Presentation> {
        static P: OnceLock<Arc<Presentation>> = OnceLock::new();
        P.get_or_init(|| {
            Presentation::builder("plane")
                .generator("x", false)
                .generator("y", false)
                .rule(1, 0, SwapRule::Jordan(Scalar::h()))
                .build()
        })
        .clone()
    }

    /// The plane relation with `y` invertible: `[x, y^b] = b·h·y^(b+1)`.
    pub fn ext() -> Arc<Presentation> {
        static P: OnceLock<Arc<Presentation>> = OnceLock::new();
        P.get_or_init(|| {
            Presentation::builder("ext")
                .generator("x", false)
                .generator("y", true)
                .rule(1, 0, SwapRule::Jordan(Scalar::h()))
                .build()
        })
        .clone()
    }

    /// `[u, v] = −2hv` with `v` invertible.
    pub fn uv() -> Arc<Presentation> {
        static P: OnceLock<Arc<Presentation>> = OnceLock::new();
        P.get_or_init(|| {
            Presentation::builder("uv")
                .generator("u", false)
                .generator("v", true)
                .rule(1, 0, SwapRule::Shift(Scalar::int(2) * Scalar::h()))
                .build()
        })
        .clone()
    }

    /// Coordinate algebra of the two-parameter plane; its `x, y` relation is the
    /// one-parameter one.
    pub fn plane2() -> Arc<Presentation> {
        static P: OnceLock<Arc<Presentation>> = OnceLock::new();
        P.get_or_init(|| {
            Presentation::builder("plane2")
                .generator("x", false)
                .generator("y", false)
                .rule(1, 0, SwapRule::Jordan(Scalar::h()))
                .build()
        })
        .clone()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn is_invertible(&self, g: usize) -> bool {
        self.invertible[g]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn rule(&self, later: usize, earlier: usize) -> &SwapRule {
        &self.rules[later][earlier]
    }

    fn check_exp(&self, g: usize, e: i32) -> Result<()> {
        if e < 0 && !self.invertible[g] {
            return Err(Error::NotInvertible(self.gens[g].clone()));
        }
        Ok(())
    }

    /// Normal form of `m · g^e` for a normal monomial `m`.
    fn mul_letter(&self, m: &Monomial, g: usize, e: i32, depth: usize) -> Result<Terms> {
        if depth > MAX_DEPTH {
            return Err(Error::RewriteLimit(MAX_DEPTH));
        }
        self.check_exp(g, e)?;
        let mut out = Terms::new();
        if e == 0 {
            out.insert(m.clone(), Scalar::one());
            return Ok(out);
        }
        match m.last_nonzero() {
            Some(k) if k > g => {
                let a = m.0[k];
                let mut prefix = m.clone();
                prefix.0[k] = 0;
                let swapped = self.swap(k, a, g, e, depth + 1)?;
                for (t, c) in swapped {
                    let prod = self.mul_monomials(&prefix, &t, depth + 1)?;
                    add_scaled(&mut out, prod, &c);
                }
            }
            _ => {
                let mut next = m.clone();
                let total = next.0[g].checked_add(e).ok_or(Error::ExponentOverflow)?;
                self.check_exp(g, total)?;
                next.0[g] = total;
                out.insert(next, Scalar::one());
            }
        }
        Ok(out)
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial, depth: usize) -> Result<Terms> {
        let mut acc = Terms::new();
        acc.insert(a.clone(), Scalar::one());
        for (g, &e) in b.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut next = Terms::new();
            for (m, c) in acc {
                let prod = self.mul_letter(&m, g, e, depth + 1)?;
                add_scaled(&mut next, prod, &c);
            }
            acc = next;
        }
        Ok(acc)
    }

    fn mul_terms(&self, a: &Terms, b: &Terms, depth: usize) -> Result<Terms> {
        let mut out = Terms::new();
        for (m1, c1) in a {
            for (m2, c2) in b {
                let prod = self.mul_monomials(m1, m2, depth + 1)?;
                add_scaled(&mut out, prod, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Normal form of `g_later^a · g_earlier^e`.
    fn swap(&self, later: usize, a: i32, earlier: usize, e: i32, depth: usize) -> Result<Terms> {
        let n = self.ngens();
        let mut out = Terms::new();
        let negative_earlier =
            || Error::Other(format!("no rule for {}^{} · {}^{}", self.gens[later], a, self.gens[earlier], e));
        match &self.rules[later][earlier] {
            SwapRule::Commute => {
                let mut m = Monomial::unit(n);
                m.0[earlier] = e;
                m.0[later] = a;
                out.insert(m, Scalar::one());
            }
            SwapRule::Jordan(c) => {
                if e < 0 {
                    return Err(negative_earlier());
                }
                // y^b x^e = Σ_j (−1)^j C(e,j) b(b+1)…(b+j−1) c^j x^(e−j) y^(b+j)
                let b = a as i64;
                let mut cpow = Scalar::one();
                for j in 0..=e as i64 {
                    let mut coeff = binomial(e as i64, j) * rising(b, j);
                    if j % 2 == 1 {
                        coeff = -coeff;
                    }
                    let mut m = Monomial::unit(n);
                    m.0[earlier] = e - j as i32;
                    m.0[later] = a.checked_add(j as i32).ok_or(Error::ExponentOverflow)?;
                    self.check_exp(later, m.0[later])?;
                    add_into(&mut out, m, &(&int_scalar(coeff) * &cpow));
                    cpow = &cpow * c;
                }
            }
            SwapRule::Shift(c) => {
                if e < 0 {
                    return Err(negative_earlier());
                }
                // v^b u^e = (u + b c)^e v^b
                let shift = &int_scalar(BigInt::from(a)) * c;
                let mut spow = Scalar::one();
                for j in 0..=e as i64 {
                    let mut m = Monomial::unit(n);
                    m.0[earlier] = e - j as i32;
                    m.0[later] = a;
                    add_into(&mut out, m, &(&int_scalar(binomial(e as i64, j)) * &spow));
                    spow = &spow * &shift;
                }
            }
            SwapRule::Words(words) => {
                if a < 0 || e < 0 {
                    return Err(negative_earlier());
                }
                let mut base = Terms::new();
                for (c, w) in words {
                    let t = self.normalize_letters(w, depth + 1)?;
                    add_scaled(&mut base, t, c);
                }
                if a == 1 && e == 1 {
                    return Ok(base);
                }
                let mut left = Terms::new();
                left.insert(Monomial::single(n, later, a - 1), Scalar::one());
                let mut right = Terms::new();
                right.insert(Monomial::single(n, earlier, e - 1), Scalar::one());
                let lb = self.mul_terms(&left, &base, depth + 1)?;
                out = self.mul_terms(&lb, &right, depth + 1)?;
            }
        }
        Ok(out)
    }

    fn normalize_letters(&self, word: &[(usize, i32)], depth: usize) -> Result<Terms> {
        let mut acc = Terms::new();
        acc.insert(Monomial::unit(self.ngens()), Scalar::one());
        for &(g, e) in word {
            let mut next = Terms::new();
            for (m, c) in acc {
                let prod = self.mul_letter(&m, g, e, depth + 1)?;
                add_scaled(&mut next, prod, &c);
            }
            acc = next;
        }
        Ok(acc)
    }
}

fn same_algebra(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || a.name == b.name
}

/// A normal-ordered element of a presented algebra.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Arc<Presentation>,
    terms: Terms,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.alg.name, self)
    }
}

impl AlgebraElement {
    pub fn zero(alg: &Arc<Presentation>) -> Self {
        AlgebraElement { alg: alg.clone(), terms: Terms::new() }
    }

    pub fn one(alg: &Arc<Presentation>) -> Self {
        AlgebraElement::scalar(alg, Scalar::one())
    }

    pub fn scalar(alg: &Arc<Presentation>, c: Scalar) -> Self {
        let mut terms = Terms::new();
        add_into(&mut terms, Monomial::unit(alg.ngens()), &c);
        AlgebraElement { alg: alg.clone(), terms }
    }

    pub fn from_terms(alg: &Arc<Presentation>, raw: Terms) -> Self {
        let terms = raw.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AlgebraElement { alg: alg.clone(), terms }
    }

    /// The generator `name` to the power `e`.
    pub fn gen_pow(alg: &Arc<Presentation>, name: &str, e: i32) -> Result<Self> {
        let g = alg.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        alg.check_exp(g, e)?;
        let mut terms = Terms::new();
        terms.insert(Monomial::single(alg.ngens(), g, e), Scalar::one());
        Ok(AlgebraElement { alg: alg.clone(), terms })
    }

    pub fn gen(alg: &Arc<Presentation>, name: &str) -> Result<Self> {
        AlgebraElement::gen_pow(alg, name, 1)
    }

    /// Normalize `coeff · g1^e1 · g2^e2 · …`, folding letters from the left.
    pub fn normalize(alg: &Arc<Presentation>, coeff: &Scalar, word: &[(usize, i32)]) -> Result<Self> {
        let mut terms = Terms::new();
        add_scaled(&mut terms, alg.normalize_letters(word, 0)?, coeff);
        Ok(AlgebraElement { alg: alg.clone(), terms })
    }

    /// Normalize a word by folding letters from the right: `g1·(g2·(…))`.
    pub fn normalize_from_right(alg: &Arc<Presentation>, coeff: &Scalar, word: &[(usize, i32)]) -> Result<Self> {
        let mut acc = AlgebraElement::scalar(alg, coeff.clone());
        for &(g, e) in word.iter().rev() {
            alg.check_exp(g, e)?;
            let letter =
                AlgebraElement::from_terms(alg, Terms::from([(Monomial::single(alg.ngens(), g, e), Scalar::one())]));
            acc = letter.try_mul(&acc)?;
        }
        Ok(acc)
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.alg
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the element is the scalar `c`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.as_scalar().is_some()
    }

    fn check_same(&self, o: &AlgebraElement) -> Result<()> {
        if !same_algebra(&self.alg, &o.alg) {
            return Err(Error::AlgebraMismatch(self.alg.name.clone(), o.alg.name.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_into(&mut terms, m.clone(), c);
        }
        Ok(AlgebraElement { alg: self.alg.clone(), terms })
    }

    pub fn try_sub(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(o)?;
        let terms = self.alg.mul_terms(&self.terms, &o.terms, 0)?;
        Ok(AlgebraElement { alg: self.alg.clone(), terms })
    }

    /// `ab − ba`.
    pub fn commutator(&self, o: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut terms = Terms::new();
        for (m, v) in &self.terms {
            add_into(&mut terms, m.clone(), &(v * c));
        }
        AlgebraElement { alg: self.alg.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::one(&self.alg);
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Apply `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<AlgebraElement> {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            add_into(&mut terms, m.clone(), &f(c)?);
        }
        Ok(AlgebraElement { alg: self.alg.clone(), terms })
    }

    /// Move the element into another presentation with the same generator list.
    pub fn reinterpret(&self, alg: &Arc<Presentation>) -> Result<AlgebraElement> {
        if alg.gens != self.alg.gens {
            return Err(Error::AlgebraMismatch(self.alg.name.clone(), alg.name.clone()));
        }
        Ok(AlgebraElement { alg: alg.clone(), terms: self.terms.clone() })
    }

    pub fn monomial_text(alg: &Presentation, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(g, &e)| if e == 1 { alg.gens[g].clone() } else { format!("{}^{}", alg.gens[g], e) })
                .collect();
        parts.join("*")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_scalar() {
            return c.fmt(f);
        }
        let parts: Vec<(bool, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| coefficient_prefix(c, &AlgebraElement::monomial_text(&self.alg, m)))
            .collect();
        f.write_str(&join_signed(&parts))
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_add(o).expect("algebra addition")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_sub(o).expect("algebra subtraction")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_mul(o).expect("algebra multiplication")
    }
}

impl Mul<&Scalar> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, c: &Scalar) -> AlgebraElement {
        self.scale(c)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&Scalar::int(-1))
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: AlgebraElement) -> AlgebraElement {
        &self + &o
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: AlgebraElement) -> AlgebraElement {
        &self - &o
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: AlgebraElement) -> AlgebraElement {
        &self * &o
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

/// Named generator shorthand; panics on an unknown name.
pub fn g(alg: &Arc<Presentation>, name: &str) -> AlgebraElement {
    AlgebraElement::gen(alg, name).unwrap_or_else(|e| panic!("{e}"))
}

/// Generator power shorthand; panics on an unknown name or bad exponent.
pub fn gp(alg: &Arc<Presentation>, name: &str, e: i32) -> AlgebraElement {
    AlgebraElement::gen_pow(alg, name, e).unwrap_or_else(|err| panic!("{err}"))
}

/// Scalar element shorthand.
pub fn s(alg: &Arc<Presentation>, c: Scalar) -> AlgebraElement {
    AlgebraElement::scalar(alg, c)
}

/// `w = −½(u² − 2hu + 1 + 2h²)v⁻¹` in the `u, v` presentation.
pub fn uv_w() -> AlgebraElement {
    let p = Presentation::uv();
    let u = g(&p, "u");
    let h = Scalar::h();
    let poly = &(&u * &u) - &u.scale(&(Scalar::int(2) * h.clone()));
    let poly = &poly + &s(&p, Scalar::one() + Scalar::int(2) * h.pow(2));
    (&poly * &gp(&p, "v", -1)).scale(&Scalar::ratio(-1, 2))
}

/// Images of `u` and `v` in the extended plane: `u = xy⁻¹ + h/2`, `v = y⁻²`.
pub fn uv_images() -> (AlgebraElement, AlgebraElement) {
    let e = Presentation::ext();
    let u = &(&g(&e, "x") * &gp(&e, "y", -1)) + &s(&e, Scalar::ratio(1, 2) * Scalar::h());
    (u, gp(&e, "y", -2))
}

/// Substitution homomorphism from the `u, v` presentation into the extended plane.
pub fn embed_uv(a: &AlgebraElement) -> Result<AlgebraElement> {
    let uv = Presentation::uv();
    if !same_algebra(a.algebra(), &uv) {
        return Err(Error::AlgebraMismatch(a.algebra().name.clone(), uv.name.clone()));
    }
    let ext = Presentation::ext();
    let (u, _) = uv_images();
    let mut out = AlgebraElement::zero(&ext);
    for (m, c) in a.terms() {
        let (ua, vb) = (m.0[0], m.0[1]);
        let upow = u.pow(ua as u32)?;
        let vpow = gp(&ext, "y", vb.checked_mul(-2).ok_or(Error::ExponentOverflow)?);
        out = out.try_add(&upow.try_mul(&vpow)?.scale(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_swap() {
        let p = Presentation::plane();
        let (x, y) = (g(&p, "x"), g(&p, "y"));
        assert_eq!((&y * &x).to_string(), "x*y - h*y^2");
        assert_eq!(&x * &AlgebraElement::one(&p), x);
        let y2x = &(&y * &y) * &x;
        assert_eq!(y2x.to_string(), "x*y^2 - 2h*y^3");
        assert_eq!((&x * &y).to_string(), "x*y");
    }

    #[test]
    fn ext_inverse_rule() {
        let p = Presentation::ext();
        let yinv_x = &gp(&p, "y", -1) * &g(&p, "x");
        assert_eq!(yinv_x.to_string(), "x*y^-1 + h");
        let y = g(&p, "y");
        assert!((&y * &gp(&p, "y", -1)).as_scalar().unwrap().is_one());
        assert!(g(&p, "x").commutator(&(&y * &gp(&p, "y", -1))).unwrap().is_zero());
    }

    #[test]
    fn uv_relation() {
        let p = Presentation::uv();
        let (u, v) = (g(&p, "u"), g(&p, "v"));
        assert_eq!((&v * &u).to_string(), "u*v + 2h*v");
        assert_eq!(u.commutator(&v).unwrap().to_string(), "-2h*v");
    }

    #[test]
    fn commutators() {
        let p = Presentation::plane();
        let (x, y) = (g(&p, "x"), g(&p, "y"));
        assert_eq!(x.commutator(&y).unwrap().to_string(), "h*y^2");
        assert!(x.commutator(&x).unwrap().is_zero());
    }

    #[test]
    fn constant_prints_as_scalar() {
        let p = Presentation::plane();
        let c = s(&p, &Scalar::one() + &Scalar::h());
        assert_eq!(c.to_string(), "1 + h");
        assert_eq!(AlgebraElement::zero(&p).to_string(), "0");
    }

    #[test]
    fn errors() {
        let p = Presentation::plane();
        assert!(matches!(AlgebraElement::gen_pow(&p, "y", -1), Err(Error::NotInvertible(_))));
        let q = Presentation::uv();
        assert!(matches!(g(&p, "x").try_mul(&g(&q, "u")), Err(Error::AlgebraMismatch(..))));
        let big = AlgebraElement::gen_pow(&Presentation::ext(), "y", i32::MAX).unwrap();
        assert!(matches!(big.try_mul(&g(&Presentation::ext(), "y")), Err(Error::ExponentOverflow)));
    }

    #[test]
    fn embedding() {
        let uv = Presentation::uv();
        let u = embed_uv(&g(&uv, "u")).unwrap();
        assert_eq!(u.to_string(), "x*y^-1 + 1/2*h");
        let comm = embed_uv(&g(&uv, "u").commutator(&g(&uv, "v")).unwrap()).unwrap();
        assert_eq!(comm.to_string(), "-2h*y^-2");
        let (ue, ve) = uv_images();
        assert_eq!(ue.commutator(&ve).unwrap(), comm);
        assert!(embed_uv(&AlgebraElement::one(&uv)).unwrap().as_scalar().unwrap().is_one());
        // w lands in the extended plane through v⁻¹ = y².
        assert!(embed_uv(&uv_w()).is_ok());
    }
}
