//! Exact coefficients: Gaussian rationals tensored with Laurent polynomials
//! in the central deformation parameters `h` and `hp` (h′).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gauss { re, im: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Gauss::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Gauss::real(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn i() -> Self {
        Gauss { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Gauss { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Gauss::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Gauss { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
}

impl Add for &Gauss {
    type Output = Gauss;
    fn add(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Gauss {
    type Output = Gauss;
    fn sub(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Gauss {
    type Output = Gauss;
    fn mul(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// Exponents of `h` and `hp` in one scalar term.
pub type ParamPowers = (i32, i32);

/// Element of `Q(i)[h, h⁻¹, hp, hp⁻¹]` in canonical form: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    terms: BTreeMap<ParamPowers, Gauss>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(Gauss::one())
    }

    pub fn constant(c: Gauss) -> Self {
        Scalar::monomial(c, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Scalar::constant(Gauss::int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::constant(Gauss::ratio(p, q))
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::constant(Gauss::real(r))
    }

    pub fn i() -> Self {
        Scalar::constant(Gauss::i())
    }

    pub fn h() -> Self {
        Scalar::h_pow(1)
    }

    pub fn hp() -> Self {
        Scalar::monomial(Gauss::one(), 0, 1)
    }

    pub fn h_pow(k: i32) -> Self {
        Scalar::monomial(Gauss::one(), k, 0)
    }

    pub fn monomial(c: Gauss, h_pow: i32, hp_pow: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((h_pow, hp_pow), c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(Gauss::is_one)
    }

    /// True when no `h` or `hp` appears.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn constant_term(&self) -> Gauss {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(Gauss::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamPowers, &Gauss)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// A unit of the ring: exactly one term with non-zero coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.terms.len() != 1 {
            return Err(Error::NonInvertibleScalar(self.to_string()));
        }
        let (&(a, b), c) = self.terms.iter().next().unwrap();
        let inv = c.inverse().ok_or_else(|| Error::NonInvertibleScalar(self.to_string()))?;
        Ok(Scalar::monomial(inv, -a, -b))
    }

    pub fn try_div(&self, divisor: &Scalar) -> Result<Scalar> {
        Ok(self * &divisor.inverse()?)
    }

    pub fn scale(&self, c: &Gauss) -> Scalar {
        let mut out = Scalar::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    fn add_term(&mut self, k: ParamPowers, c: &Gauss) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// Substitute `h = hp = 0`.
    pub fn limit_at_zero(&self) -> Result<Scalar> {
        if self.terms.keys().any(|&(a, b)| a < 0 || b < 0) {
            return Err(Error::SingularLimit(self.to_string()));
        }
        Ok(Scalar::constant(self.constant_term()))
    }

    /// Coefficient of `h^k` (collecting every `hp` power).
    pub fn h_coefficient(&self, k: i32) -> Scalar {
        let mut out = Scalar::zero();
        for (&(a, b), c) in &self.terms {
            if a == k {
                out.add_term((0, b), c);
            }
        }
        out
    }

    /// Lowest power of `h` present, if any.
    pub fn min_h_power(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).min()
    }

    /// Complex conjugation with `h` and `hp` treated as real.
    pub fn conj(&self) -> Scalar {
        let mut out = Scalar::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, &c.conj());
        }
        out
    }

    /// Replace `hp` by `value`. Negative `hp` powers require `value` to be a unit.
    pub fn substitute_hp(&self, value: &Scalar) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (&(a, b), c) in &self.terms {
            let base = if b >= 0 { value.clone() } else { value.inverse()? };
            let mut p = Scalar::monomial(c.clone(), a, 0);
            for _ in 0..b.unsigned_abs() {
                p = &p * &base;
            }
            out += &p;
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Split into rendered atoms `(negative, text)`; used by the printers of
    /// every layer so that coefficients look the same everywhere.
    pub(crate) fn atoms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (&(a, b), c) in &self.terms {
            let mut factors = Vec::new();
            if a != 0 {
                factors.push(power_text("h", a));
            }
            if b != 0 {
                factors.push(power_text("hp", b));
            }
            if !c.re.is_zero() {
                out.push(atom_text(&c.re, None, &factors));
            }
            if !c.im.is_zero() {
                out.push(atom_text(&c.im, Some("i"), &factors));
            }
        }
        out
    }
}

fn power_text(sym: &str, k: i32) -> String {
    if k == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{k}")
    }
}

fn atom_text(mag: &BigRational, unit: Option<&str>, factors: &[String]) -> (bool, String) {
    let neg = mag.is_negative();
    let mag = mag.abs();
    let mut syms: Vec<&str> = Vec::new();
    if let Some(u) = unit {
        syms.push(u);
    }
    syms.extend(factors.iter().map(String::as_str));
    let tail = syms.join("*");
    let text = if syms.is_empty() {
        rational_text(&mag)
    } else if mag.is_one() {
        tail
    } else if mag.is_integer() {
        format!("{}{}", mag.numer(), tail)
    } else {
        format!("{}*{}", rational_text(&mag), tail)
    };
    (neg, text)
}

pub(crate) fn rational_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Join signed atoms as `a + b - c`.
pub(crate) fn join_signed(parts: &[(bool, String)]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (neg, text)) in parts.iter().enumerate() {
        match (idx, neg) {
            (0, true) => {
                s.push('-');
                s.push_str(text);
            }
            (0, false) => s.push_str(text),
            (_, true) => {
                s.push_str(" - ");
                s.push_str(text);
            }
            (_, false) => {
                s.push_str(" + ");
                s.push_str(text);
            }
        }
    }
    s
}

/// Render a scalar used as a coefficient in front of `rest` (a monomial or
/// basis symbol). Returns `(negative, text)`.
pub(crate) fn coefficient_prefix(c: &Scalar, rest: &str) -> (bool, String) {
    let atoms = c.atoms();
    if atoms.len() == 1 {
        let (neg, text) = &atoms[0];
        if rest.is_empty() {
            return (*neg, text.clone());
        }
        if text == "1" {
            return (*neg, rest.to_string());
        }
        return (*neg, format!("{text}*{rest}"));
    }
    let inner = join_signed(&atoms);
    if rest.is_empty() {
        (false, format!("({inner})"))
    } else {
        (false, format!("({inner})*{rest}"))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_signed(&self.atoms()))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Gauss> for Scalar {
    fn from(c: Gauss) -> Self {
        Scalar::constant(c)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, o: Scalar) -> Scalar {
        self += &o;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        for (k, c) in &o.terms {
            self.add_term(*k, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        for (k, c) in &o.terms {
            self.add_term(*k, &-c);
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, o: Scalar) -> Scalar {
        self -= &o;
        self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_times_h() {
        assert_eq!(&Scalar::h() * &Scalar::h(), Scalar::h_pow(2));
    }

    #[test]
    fn laurent_inverse() {
        let two_h = Scalar::int(2) * Scalar::h();
        let inv = two_h.inverse().unwrap();
        assert_eq!(inv, Scalar::ratio(1, 2) * Scalar::h_pow(-1));
        assert!((&inv * &two_h).is_one());
    }

    #[test]
    fn gaussian_product() {
        // (1 + ih/2)(1 - ih/2) = 1 + h²/4
        let ih2 = Scalar::i() * Scalar::ratio(1, 2) * Scalar::h();
        let a = Scalar::one() + ih2.clone();
        let b = Scalar::one() - ih2;
        assert_eq!(&a * &b, Scalar::one() + Scalar::ratio(1, 4) * Scalar::h_pow(2));
    }

    #[test]
    fn i_squared() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::int(-1));
    }

    #[test]
    fn division_by_non_unit_fails() {
        let a = Scalar::one() + Scalar::h();
        assert!(matches!(Scalar::one().try_div(&a), Err(Error::NonInvertibleScalar(_))));
        assert!(matches!(Scalar::one().try_div(&Scalar::zero()), Err(Error::NonInvertibleScalar(_))));
    }

    #[test]
    fn limits() {
        let a = Scalar::int(3) + Scalar::int(2) * Scalar::h();
        assert_eq!(a.limit_at_zero().unwrap(), Scalar::int(3));
        assert!(matches!(Scalar::h_pow(-1).limit_at_zero(), Err(Error::SingularLimit(_))));
        let b = Scalar::one() + Scalar::i() * Scalar::ratio(1, 2) * Scalar::h();
        assert_eq!(b.limit_at_zero().unwrap(), Scalar::one());
    }

    #[test]
    fn rendering() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((Scalar::int(-2) * Scalar::h()).to_string(), "-2h");
        let s = Scalar::one() + Scalar::i() * Scalar::ratio(1, 2) * Scalar::h();
        assert_eq!(s.to_string(), "1 + 1/2*i*h");
        assert_eq!((Scalar::h() * Scalar::hp()).to_string(), "h*hp");
        assert_eq!(Scalar::h_pow(-1).to_string(), "h^-1");
    }

    #[test]
    fn hp_substitution() {
        let s = Scalar::h() * Scalar::hp();
        let r = s.substitute_hp(&(Scalar::int(3) * Scalar::h())).unwrap();
        assert_eq!(r, Scalar::int(3) * Scalar::h_pow(2));
    }
}
