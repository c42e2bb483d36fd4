//! Differential calculi over presented algebras.
//!
//! Forms and tensors are kept in right-coefficient normal form: a sum of basis
//! elements each followed by an algebra coefficient. Moving an algebra element
//! from the left of a basis form to the right uses the calculus swap rules.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::algebra::{embed_uv, g, gp, s, uv_w, AlgebraElement, Presentation};
use crate::error::{Error, Result};
use crate::scalar::{join_signed, Scalar};

/// Basis index → right coefficient.
pub type Coeffs = BTreeMap<usize, AlgebraElement>;

/// Tensor key: one basis index per slot.
pub type Key = SmallVec<[usize; 4]>;

pub(crate) fn add_coeff<K: Ord>(acc: &mut BTreeMap<K, AlgebraElement>, k: K, c: AlgebraElement) {
    if c.is_zero() {
        return;
    }
    match acc.remove(&k) {
        Some(prev) => {
            let sum = &prev + &c;
            if !sum.is_zero() {
                acc.insert(k, sum);
            }
        }
        None => {
            acc.insert(k, c);
        }
    }
}

/// A derivation of the base algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Derivation {
    /// `e = ad λ`, i.e. `e f = [λ, f]`.
    Inner(AlgebraElement),
    /// Images of the generators, extended by the Leibniz rule.
    Table(Vec<AlgebraElement>),
}

impl Derivation {
    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        match self {
            Derivation::Inner(l) => l.commutator(f),
            Derivation::Table(images) => {
                let alg = f.algebra().clone();
                let mut out = AlgebraElement::zero(&alg);
                for (m, c) in f.terms() {
                    let letters = letters_of(&alg, m.exps())?;
                    let imgs: Vec<AlgebraElement> = letters
                        .iter()
                        .map(|(gi, sign, _)| {
                            let eg = images[*gi].clone();
                            if *sign > 0 {
                                Ok(eg)
                            } else {
                                let inv = AlgebraElement::gen_pow(&alg, &alg.generators()[*gi], -1)?;
                                Ok(-(&(&inv * &eg) * &inv))
                            }
                        })
                        .collect::<Result<_>>()?;
                    let term = leibniz(&alg, &letters, &imgs, |pre, img, post| pre.try_mul(img)?.try_mul(post))?;
                    out = &out + &term.scale(c);
                }
                Ok(out)
            }
        }
    }
}

/// Letters of a normal monomial, left to right: (generator, ±1, letter element).
fn letters_of(alg: &Arc<Presentation>, exps: &[i32]) -> Result<Vec<(usize, i32, AlgebraElement)>> {
    let mut out = Vec::new();
    for (gi, &e) in exps.iter().enumerate() {
        let sign = e.signum();
        for _ in 0..e.unsigned_abs() {
            let letter = AlgebraElement::gen_pow(alg, &alg.generators()[gi], sign)?;
            out.push((gi, sign, letter));
        }
    }
    Ok(out)
}

/// `Σ_i combine(L_1…L_{i−1}, img_i, L_{i+1}…L_N)` with prefix and suffix products.
fn leibniz<T, F>(alg: &Arc<Presentation>, letters: &[(usize, i32, AlgebraElement)], imgs: &[T], combine: F) -> Result<T>
where
    T: Clone + std::ops::Add<Output = T> + ZeroLike,
    F: Fn(&AlgebraElement, &T, &AlgebraElement) -> Result<T>,
{
    let n = letters.len();
    let mut prefix = vec![AlgebraElement::one(alg)];
    for (_, _, l) in letters {
        let next = prefix.last().unwrap().try_mul(l)?;
        prefix.push(next);
    }
    let mut suffix = vec![AlgebraElement::one(alg); n + 1];
    for i in (0..n).rev() {
        suffix[i] = letters[i].2.try_mul(&suffix[i + 1])?;
    }
    let mut acc = T::zero_like(imgs.first());
    for i in 0..n {
        acc = acc + combine(&prefix[i], &imgs[i], &suffix[i + 1])?;
    }
    Ok(acc)
}

trait ZeroLike {
    fn zero_like(sample: Option<&Self>) -> Self;
}

impl ZeroLike for AlgebraElement {
    fn zero_like(sample: Option<&Self>) -> Self {
        AlgebraElement::zero(sample.expect("nonempty word").algebra())
    }
}

/// How `d` acts on the algebra.
#[derive(Clone, Debug)]
pub enum DRule {
    /// Differentials of the generators, extended by the Leibniz rule.
    Generators(Vec<Coeffs>),
    /// `df = Σ θ^a e_a f` for central frame forms `θ^a` dual to the derivations.
    Frame(Vec<Derivation>),
}

/// A first-order calculus with degree-two forms.
#[derive(Debug)]
pub struct Calculus {
    name: String,
    alg: Arc<Presentation>,
    cogens: Vec<String>,
    central: bool,
    left: Vec<Vec<Coeffs>>,
    left_inv: Vec<Option<Vec<Coeffs>>>,
    basis2: Vec<String>,
    basis2_rep: Vec<(usize, usize)>,
    wedge: Vec<Vec<BTreeMap<usize, Scalar>>>,
    d_rule: DRule,
    d_cogen: Vec<Coeffs>,
    dimage: Vec<Vec<(AlgebraElement, AlgebraElement)>>,
}

/// Ingredients for [`Calculus::new`].
pub struct CalculusSpec {
    pub name: String,
    pub alg: Arc<Presentation>,
    pub cogens: Vec<String>,
    /// `None` for central cogenerators; otherwise `left[g][c]` is `g·c` in normal form.
    pub left: Option<Vec<Vec<Coeffs>>>,
    /// `g⁻¹·c` for invertible generators.
    pub left_inv: Vec<Option<Vec<Coeffs>>>,
    /// Degree-two basis, each with a pair `(i, j)` whose wedge is exactly that basis element.
    pub basis2: Vec<(String, (usize, usize))>,
    /// `wedge[i][j]` = `c_i ∧ c_j` in the degree-two basis.
    pub wedge: Vec<Vec<BTreeMap<usize, Scalar>>>,
    pub d_rule: DRule,
    /// `d c_i` as degree-two coefficients.
    pub d_cogen: Vec<Coeffs>,
    /// Each cogenerator as `Σ f·dg`.
    pub dimage: Vec<Vec<(AlgebraElement, AlgebraElement)>>,
}

fn coeffs(entries: Vec<(usize, AlgebraElement)>) -> Coeffs {
    let mut out = Coeffs::new();
    for (k, c) in entries {
        add_coeff(&mut out, k, c);
    }
    out
}

fn scalar_map(entries: &[(usize, Scalar)]) -> BTreeMap<usize, Scalar> {
    entries.iter().filter(|(_, c)| !c.is_zero()).cloned().collect()
}

/// `R̂` with `h` in the lower rows and `p` in the top row, rows/columns ordered `11, 12, 21, 22`.
pub fn rhat(h: &Scalar, p: &Scalar) -> [[Scalar; 4]; 4] {
    let z = Scalar::zero;
    let o = Scalar::one;
    [[o(), -p, p.clone(), h * p], [z(), z(), o(), h.clone()], [z(), o(), z(), -h], [z(), z(), z(), o()]]
}

type Basis2 = Vec<(String, (usize, usize))>;
type WedgeTable = Vec<Vec<BTreeMap<usize, Scalar>>>;

/// Antisymmetric wedge on `n` central cogenerators; basis `c_i c_j`, `i < j`.
fn antisymmetric(names: &[&str]) -> (Basis2, WedgeTable) {
    let n = names.len();
    let mut basis = Vec::new();
    let mut wedge = vec![vec![BTreeMap::new(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = basis.len();
            basis.push((format!("{}/\\{}", names[i], names[j]), (i, j)));
            wedge[i][j].insert(b, Scalar::one());
            wedge[j][i].insert(b, Scalar::int(-1));
        }
    }
    (basis, wedge)
}

impl Calculus {
    /// Build a calculus and verify that the left action respects the algebra
    /// relations and that `d` is compatible with the swap rules.
    pub fn new(spec: CalculusSpec) -> Result<Arc<Calculus>> {
        let n = spec.cogens.len();
        let central = spec.left.is_none();
        let calc = Arc::new(Calculus {
            name: spec.name,
            alg: spec.alg.clone(),
            cogens: spec.cogens,
            central,
            left: spec.left.unwrap_or_default(),
            left_inv: spec.left_inv,
            basis2: spec.basis2.iter().map(|b| b.0.clone()).collect(),
            basis2_rep: spec.basis2.iter().map(|b| b.1).collect(),
            wedge: spec.wedge,
            d_rule: spec.d_rule,
            d_cogen: spec.d_cogen,
            dimage: spec.dimage,
        });
        if calc.wedge.len() != n || calc.d_cogen.len() != n {
            return Err(Error::Other(format!("calculus `{}` is malformed", calc.name)));
        }
        let defects = calc.consistency_defects()?;
        if let Some((what, defect)) = defects.into_iter().next() {
            return Err(Error::Other(format!("calculus `{}` inconsistent at {what}: {defect}", calc.name)));
        }
        Ok(calc)
    }

    /// Wess–Zumino calculus `x^a ξ^b = R̂^{ab}_{cd} ξ^c x^d`, `ξ^a ξ^b = −R̂^{ab}_{cd} ξ^c ξ^d`.
    fn wess_zumino(name: &str, alg: Arc<Presentation>, h: &Scalar, p: &Scalar) -> Result<Arc<Calculus>> {
        let r = rhat(h, p);
        let x = [g(&alg, "x"), g(&alg, "y")];
        let mut left = vec![vec![Coeffs::new(); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let mut terms = Vec::new();
                for c in 0..2 {
                    for d in 0..2 {
                        terms.push((c, x[d].scale(&r[2 * a + b][2 * c + d])));
                    }
                }
                left[a][b] = coeffs(terms);
            }
        }
        let left_inv = if alg.is_invertible(1) {
            let yinv = gp(&alg, "y", -1);
            vec![None, Some(vec![coeffs(vec![(0, yinv.clone()), (1, yinv.scale(h))]), coeffs(vec![(1, yinv.clone())])])]
        } else {
            vec![None, None]
        };
        let one = || AlgebraElement::one(&alg);
        let wedge = vec![
            vec![scalar_map(&[(0, p.clone())]), scalar_map(&[(0, Scalar::one())])],
            vec![scalar_map(&[(0, Scalar::int(-1))]), BTreeMap::new()],
        ];
        Calculus::new(CalculusSpec {
            name: name.to_string(),
            alg: alg.clone(),
            cogens: vec!["xi".into(), "eta".into()],
            left: Some(left),
            left_inv,
            basis2: vec![("xi/\\eta".into(), (0, 1))],
            wedge,
            d_rule: DRule::Generators(vec![coeffs(vec![(0, one())]), coeffs(vec![(1, one())])]),
            d_cogen: vec![Coeffs::new(), Coeffs::new()],
            dimage: vec![vec![(one(), x[0].clone())], vec![(one(), x[1].clone())]],
        })
    }

    pub fn plane() -> Arc<Calculus> {
        static C: OnceLock<Arc<Calculus>> = OnceLock::new();
        C.get_or_init(|| {
            Calculus::wess_zumino("plane", Presentation::plane(), &Scalar::h(), &Scalar::h()).expect("plane calculus")
        })
        .clone()
    }

    /// Two-parameter calculus with a symbolic `h′`.
    pub fn plane2() -> Arc<Calculus> {
        static C: OnceLock<Arc<Calculus>> = OnceLock::new();
        C.get_or_init(|| Calculus::plane2_at(&Scalar::hp()).expect("plane2 calculus")).clone()
    }

    /// Two-parameter calculus with `h′` replaced by `hp`.
    pub fn plane2_at(hp: &Scalar) -> Result<Arc<Calculus>> {
        Calculus::wess_zumino("plane2", Presentation::plane2(), &Scalar::h(), hp)
    }

    /// The `ξ, η` calculus over the extended plane.
    pub fn ext_xy() -> Arc<Calculus> {
        static C: OnceLock<Arc<Calculus>> = OnceLock::new();
        C.get_or_init(|| {
            Calculus::wess_zumino("ext-xy", Presentation::ext(), &Scalar::h(), &Scalar::h()).expect("ext-xy calculus")
        })
        .clone()
    }

    fn frame(
        name: &str,
        lambdas: Vec<AlgebraElement>,
        dcogen: Vec<Coeffs>,
        dimage: Vec<Vec<(AlgebraElement, AlgebraElement)>>,
    ) -> Result<Arc<Calculus>> {
        let n = lambdas.len();
        let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let (basis2, wedge) = antisymmetric(&refs);
        Calculus::new(CalculusSpec {
            name: name.to_string(),
            alg: Presentation::ext(),
            cogens: names,
            left: None,
            left_inv: vec![None; 2],
            basis2,
            wedge,
            d_rule: DRule::Frame(lambdas.into_iter().map(Derivation::Inner).collect()),
            d_cogen: dcogen,
            dimage,
        })
    }

    /// Frame calculus `θ¹, θ²` over the extended plane with `λ₁ = v/2h`, `λ₂ = u/2h`.
    pub fn ext2() -> Arc<Calculus> {
        static C: OnceLock<Arc<Calculus>> = OnceLock::new();
        C.get_or_init(|| {
            let e = Presentation::ext();
            let [l1, l2, _] = frame_lambdas();
            let (u, v) = crate::algebra::uv_images();
            let vinv = gp(&e, "y", 2);
            let dt1 = coeffs(vec![(0, s(&e, Scalar::int(-1)))]);
            Calculus::frame(
                "ext2",
                vec![l1, l2],
                vec![dt1, Coeffs::new()],
                vec![vec![(vinv.clone(), u)], vec![(-&vinv, v)]],
            )
            .expect("ext2 calculus")
        })
        .clone()
    }

    /// Frame calculus `θ¹, θ², θ³` with the additional `λ₃ = w/2h`.
    pub fn ext3() -> Arc<Calculus> {
        static C: OnceLock<Arc<Calculus>> = OnceLock::new();
        C.get_or_init(|| {
            let e = Presentation::ext();
            let lambdas = frame_lambdas().to_vec();
            // basis: t1t2 = 0, t1t3 = 1, t2t3 = 2; dθ^i = −½ C^i_{jk} θ^j θ^k
            let one = || s(&e, Scalar::one());
            let dcogen = vec![coeffs(vec![(0, -one())]), coeffs(vec![(1, one())]), coeffs(vec![(2, -one())])];
            Calculus::frame("ext3", lambdas, dcogen, vec![Vec::new(); 3]).expect("ext3 calculus")
        })
        .clone()
    }

    /// `ξ, η` over the algebra generated by `A, B, C, D, x, y`, with `A…D`
    /// commuting with the forms and `d` vanishing on them.
    pub fn qgroup_plane() -> Arc<Calculus> {
        static C: OnceLock<Arc<Calculus>> = OnceLock::new();
        C.get_or_init(|| {
            let alg = crate::qgroup::tensor_presentation();
            let h = Scalar::h();
            let r = rhat(&h, &h);
            let xs = [g(&alg, "x"), g(&alg, "y")];
            let mut left = Vec::new();
            for name in ["A", "B", "C", "D"] {
                let gen = g(&alg, name);
                left.push(vec![coeffs(vec![(0, gen.clone())]), coeffs(vec![(1, gen)])]);
            }
            for a in 0..2 {
                let mut row = Vec::new();
                for b in 0..2 {
                    let mut terms = Vec::new();
                    for c in 0..2 {
                        for d in 0..2 {
                            terms.push((c, xs[d].scale(&r[2 * a + b][2 * c + d])));
                        }
                    }
                    row.push(coeffs(terms));
                }
                left.push(row);
            }
            let one = || AlgebraElement::one(&alg);
            let mut dgen = vec![Coeffs::new(); 4];
            dgen.push(coeffs(vec![(0, one())]));
            dgen.push(coeffs(vec![(1, one())]));
            Calculus::new(CalculusSpec {
                name: "qgroup-plane".into(),
                alg: alg.clone(),
                cogens: vec!["xi".into(), "eta".into()],
                left: Some(left),
                left_inv: vec![None; 6],
                basis2: vec![("xi/\\eta".into(), (0, 1))],
                wedge: vec![
                    vec![scalar_map(&[(0, h.clone())]), scalar_map(&[(0, Scalar::one())])],
                    vec![scalar_map(&[(0, Scalar::int(-1))]), BTreeMap::new()],
                ],
                d_rule: DRule::Generators(dgen),
                d_cogen: vec![Coeffs::new(), Coeffs::new()],
                dimage: vec![vec![(one(), xs[0].clone())], vec![(one(), xs[1].clone())]],
            })
            .expect("qgroup-plane calculus")
        })
        .clone()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.alg
    }

    pub fn cogenerators(&self) -> &[String] {
        &self.cogens
    }

    pub fn rank(&self) -> usize {
        self.cogens.len()
    }

    pub fn basis2(&self) -> &[String] {
        &self.basis2
    }

    pub fn is_central(&self) -> bool {
        self.central
    }

    pub fn d_rule(&self) -> &DRule {
        &self.d_rule
    }

    /// Frame derivations, for frame calculi.
    pub fn frame_derivations(&self) -> Option<&[Derivation]> {
        match &self.d_rule {
            DRule::Frame(e) => Some(e),
            DRule::Generators(_) => None,
        }
    }

    pub fn cogen_index(&self, name: &str) -> Option<usize> {
        self.cogens.iter().position(|c| c == name)
    }

    /// `c_i ∧ c_j` in the degree-two basis.
    pub fn wedge_basis(&self, i: usize, j: usize) -> &BTreeMap<usize, Scalar> {
        &self.wedge[i][j]
    }

    fn left_letter(&self, gi: usize, sign: i32, form: &Coeffs) -> Result<Coeffs> {
        let table = if sign > 0 {
            &self.left[gi]
        } else {
            self.left_inv[gi].as_ref().ok_or_else(|| Error::NotInvertible(self.alg.generators()[gi].clone()))?
        };
        let mut out = Coeffs::new();
        for (c, a) in form {
            for (c2, b) in &table[*c] {
                add_coeff(&mut out, *c2, b.try_mul(a)?);
            }
        }
        Ok(out)
    }

    /// `f · (Σ c·a)` for a degree-one coefficient map.
    pub(crate) fn left_mul1(&self, f: &AlgebraElement, form: &Coeffs) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        if self.central {
            for (c, a) in form {
                add_coeff(&mut out, *c, f.try_mul(a)?);
            }
            return Ok(out);
        }
        for (m, coef) in f.terms() {
            let mut acc: Coeffs = form.iter().map(|(c, a)| (*c, a.scale(coef))).collect();
            for (gi, &e) in m.exps().iter().enumerate().rev() {
                for _ in 0..e.unsigned_abs() {
                    acc = self.left_letter(gi, e.signum(), &acc)?;
                }
            }
            for (c, a) in acc {
                add_coeff(&mut out, c, a);
            }
        }
        Ok(out)
    }

    /// `f · (k₁ ⊗ … ⊗ k_r)` pushed to right-coefficient form.
    pub(crate) fn left_mul_key(
        &self,
        f: &AlgebraElement,
        kinds: &[u8],
        key: &[usize],
    ) -> Result<BTreeMap<Key, AlgebraElement>> {
        let mut out = BTreeMap::new();
        if key.is_empty() {
            add_coeff(&mut out, Key::new(), f.clone());
            return Ok(out);
        }
        let first = match kinds[0] {
            1 => self.left_mul1(f, &Coeffs::from([(key[0], AlgebraElement::one(&self.alg))]))?,
            _ => self.left_mul2_basis(f, key[0])?,
        };
        for (k0, b) in first {
            for (rest, c) in self.left_mul_key(&b, &kinds[1..], &key[1..])? {
                let mut k = Key::new();
                k.push(k0);
                k.extend_from_slice(&rest);
                add_coeff(&mut out, k, c);
            }
        }
        Ok(out)
    }

    fn left_mul2_basis(&self, f: &AlgebraElement, b: usize) -> Result<Coeffs> {
        if self.central {
            return Ok(coeffs(vec![(b, f.clone())]));
        }
        let (i, j) = self.basis2_rep[b];
        let tensor = self.left_mul_key(f, &[1, 1], &[i, j])?;
        let mut out = Coeffs::new();
        for (k, a) in tensor {
            for (b2, sc) in &self.wedge[k[0]][k[1]] {
                add_coeff(&mut out, *b2, a.scale(sc));
            }
        }
        Ok(out)
    }

    /// `f · (Σ b·a)` for degree-two coefficients.
    pub(crate) fn left_mul2(&self, f: &AlgebraElement, form: &Coeffs) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        for (b, a) in form {
            for (b2, c) in self.left_mul2_basis(f, *b)? {
                add_coeff(&mut out, b2, c.try_mul(a)?);
            }
        }
        Ok(out)
    }

    /// `(Σ c·a) ∧ (Σ c'·b)`.
    pub(crate) fn wedge11(&self, a: &Coeffs, b: &Coeffs) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        for (c, ca) in a {
            for (c2, cb) in self.left_mul1(ca, b)? {
                for (bi, sc) in &self.wedge[*c][c2] {
                    add_coeff(&mut out, *bi, cb.scale(sc));
                }
            }
        }
        Ok(out)
    }

    /// `d f` for an algebra element.
    pub(crate) fn d0(&self, f: &AlgebraElement) -> Result<Coeffs> {
        match &self.d_rule {
            DRule::Frame(es) => {
                let mut out = Coeffs::new();
                for (a, e) in es.iter().enumerate() {
                    add_coeff(&mut out, a, e.apply(f)?);
                }
                Ok(out)
            }
            DRule::Generators(dg) => {
                let mut out = Coeffs::new();
                for (m, c) in f.terms() {
                    let letters = letters_of(&self.alg, m.exps())?;
                    let imgs: Vec<Coeffs> = letters
                        .iter()
                        .map(|(gi, sign, l)| {
                            if *sign > 0 {
                                Ok(dg[*gi].clone())
                            } else {
                                // d(g⁻¹) = −g⁻¹ dg g⁻¹
                                let left = self.left_mul1(&-l, &dg[*gi])?;
                                Ok(left.into_iter().map(|(k, a)| (k, &a * l)).collect())
                            }
                        })
                        .collect::<Result<_>>()?;
                    let mut term = Coeffs::new();
                    let n = letters.len();
                    let mut prefix = vec![AlgebraElement::one(&self.alg)];
                    for (_, _, l) in &letters {
                        let next = prefix.last().unwrap().try_mul(l)?;
                        prefix.push(next);
                    }
                    let mut suffix = vec![AlgebraElement::one(&self.alg); n + 1];
                    for i in (0..n).rev() {
                        suffix[i] = letters[i].2.try_mul(&suffix[i + 1])?;
                    }
                    for i in 0..n {
                        for (k, a) in self.left_mul1(&prefix[i], &imgs[i])? {
                            add_coeff(&mut term, k, a.try_mul(&suffix[i + 1])?);
                        }
                    }
                    for (k, a) in term {
                        add_coeff(&mut out, k, a.scale(c));
                    }
                }
                Ok(out)
            }
        }
    }

    /// `d(Σ c·a) = Σ (dc)·a − c ∧ da`.
    pub(crate) fn d1(&self, form: &Coeffs) -> Result<Coeffs> {
        let mut out = Coeffs::new();
        for (c, a) in form {
            for (b, s2) in &self.d_cogen[*c] {
                add_coeff(&mut out, *b, s2.try_mul(a)?);
            }
            let da = self.d0(a)?;
            let unit = Coeffs::from([(*c, AlgebraElement::one(&self.alg))]);
            for (b, v) in self.wedge11(&unit, &da)? {
                add_coeff(&mut out, b, -v);
            }
        }
        Ok(out)
    }

    /// Defects of the construction-time checks, labelled; empty when consistent.
    pub fn consistency_defects(&self) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        let alg = &self.alg;
        let n = alg.ngens();
        for c in 0..self.rank() {
            let unit = Coeffs::from([(c, AlgebraElement::one(alg))]);
            // Each relation later·earlier = normal form must act identically on c.
            for k in 0..n {
                for e in 0..k {
                    let lhs_word = [(k, 1), (e, 1)];
                    let normal = AlgebraElement::normalize(alg, &Scalar::one(), &lhs_word)?;
                    let ge = AlgebraElement::gen_pow(alg, &alg.generators()[e], 1)?;
                    let gk = AlgebraElement::gen_pow(alg, &alg.generators()[k], 1)?;
                    let stepwise = self.left_mul1(&gk, &self.left_mul1(&ge, &unit)?)?;
                    let direct = self.left_mul1(&normal, &unit)?;
                    let diff = sub_coeffs(&stepwise, &direct);
                    if !diff.is_empty() {
                        out.push((
                            format!("{}{}*{}", alg.generators()[k], alg.generators()[e], self.cogens[c]),
                            render_coeffs(&diff, &self.cogens),
                        ));
                    }
                }
            }
            for gi in 0..n {
                if alg.is_invertible(gi) && !self.central {
                    let gpos = AlgebraElement::gen_pow(alg, &alg.generators()[gi], 1)?;
                    let gneg = AlgebraElement::gen_pow(alg, &alg.generators()[gi], -1)?;
                    let back = self.left_mul1(&gpos, &self.left_mul1(&gneg, &unit)?)?;
                    let diff = sub_coeffs(&back, &unit);
                    if !diff.is_empty() {
                        out.push((format!("inverse {}", alg.generators()[gi]), render_coeffs(&diff, &self.cogens)));
                    }
                }
            }
        }
        // d applied to each defining relation later·earlier − normal form must vanish.
        for k in 0..n {
            for e in 0..k {
                let word = AlgebraElement::normalize(alg, &Scalar::one(), &[(k, 1), (e, 1)])?;
                let gk = AlgebraElement::gen_pow(alg, &alg.generators()[k], 1)?;
                let ge = AlgebraElement::gen_pow(alg, &alg.generators()[e], 1)?;
                let dk = self.d0(&gk)?;
                let de = self.d0(&ge)?;
                let mut lhs = self.left_mul1(&gk, &de)?;
                for (c, a) in dk {
                    add_coeff(&mut lhs, c, a.try_mul(&ge)?);
                }
                let diff = sub_coeffs(&lhs, &self.d0(&word)?);
                if !diff.is_empty() {
                    out.push((
                        format!("d({}{})", alg.generators()[k], alg.generators()[e]),
                        render_coeffs(&diff, &self.cogens),
                    ));
                }
            }
        }
        Ok(out)
    }
}

fn frame_lambdas() -> [AlgebraElement; 3] {
    let e = Presentation::ext();
    let inv2h = Scalar::ratio(1, 2) * Scalar::h().inverse().expect("h is a unit");
    let uv = Presentation::uv();
    let l1 = gp(&e, "y", -2).scale(&inv2h);
    let l2 = embed_uv(&g(&uv, "u")).expect("embed u").scale(&inv2h);
    let l3 = embed_uv(&uv_w()).expect("embed w").scale(&inv2h);
    [l1, l2, l3]
}

/// `λ₁ = v/2h`, `λ₂ = u/2h`, `λ₃ = w/2h` in the extended plane.
pub fn lambdas() -> [AlgebraElement; 3] {
    frame_lambdas()
}

fn sub_coeffs(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let mut out = a.clone();
    for (k, v) in b {
        add_coeff(&mut out, *k, -v);
    }
    out
}

fn term_text(name: &str, coef: &AlgebraElement) -> (bool, String) {
    let text = coef.to_string();
    let single = coef.terms().len() == 1 && coef.terms().values().next().map(|c| c.atoms().len() == 1).unwrap_or(false);
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) if single => (true, rest.to_string()),
        _ => (false, text),
    };
    if body == "1" {
        (neg, name.to_string())
    } else {
        (neg, format!("{name}*({body})"))
    }
}

fn render_coeffs(terms: &Coeffs, names: &[String]) -> String {
    let parts: Vec<(bool, String)> = terms.iter().map(|(k, c)| term_text(&names[*k], c)).collect();
    join_signed(&parts)
}

fn same_calc(a: &Arc<Calculus>, b: &Arc<Calculus>) -> bool {
    Arc::ptr_eq(a, b)
}

/// A differential form of degree 0, 1 or 2.
#[derive(Clone)]
pub struct Form {
    calc: Arc<Calculus>,
    degree: usize,
    terms: Coeffs,
}

impl PartialEq for Form {
    fn eq(&self, o: &Self) -> bool {
        same_calc(&self.calc, &o.calc) && self.degree == o.degree && self.terms == o.terms
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} deg {}] {}", self.calc.name, self.degree, self)
    }
}

impl Form {
    pub fn zero(calc: &Arc<Calculus>, degree: usize) -> Form {
        Form { calc: calc.clone(), degree, terms: Coeffs::new() }
    }

    pub fn from_coeffs(calc: &Arc<Calculus>, degree: usize, terms: Coeffs) -> Result<Form> {
        if degree > 2 {
            return Err(Error::UnsupportedDegree(degree));
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Form { calc: calc.clone(), degree, terms })
    }

    /// A function viewed as a 0-form.
    pub fn function(calc: &Arc<Calculus>, f: &AlgebraElement) -> Form {
        Form { calc: calc.clone(), degree: 0, terms: coeffs(vec![(0, f.clone())]) }
    }

    /// Basis 1-form by index.
    pub fn cogen(calc: &Arc<Calculus>, i: usize) -> Form {
        Form { calc: calc.clone(), degree: 1, terms: coeffs(vec![(i, AlgebraElement::one(&calc.alg))]) }
    }

    /// Basis 1-form by name.
    pub fn named(calc: &Arc<Calculus>, name: &str) -> Result<Form> {
        let i = calc.cogen_index(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Form::cogen(calc, i))
    }

    /// Basis 2-form by index.
    pub fn basis2(calc: &Arc<Calculus>, b: usize) -> Form {
        Form { calc: calc.clone(), degree: 2, terms: coeffs(vec![(b, AlgebraElement::one(&calc.alg))]) }
    }

    /// `df` for an algebra element.
    pub fn d_of(calc: &Arc<Calculus>, f: &AlgebraElement) -> Result<Form> {
        Ok(Form { calc: calc.clone(), degree: 1, terms: calc.d0(f)? })
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &Coeffs {
        &self.terms
    }

    pub fn coefficient(&self, i: usize) -> AlgebraElement {
        self.terms.get(&i).cloned().unwrap_or_else(|| AlgebraElement::zero(&self.calc.alg))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The algebra element of a 0-form.
    pub fn as_function(&self) -> Result<AlgebraElement> {
        if self.degree != 0 {
            return Err(Error::UnsupportedDegree(self.degree));
        }
        Ok(self.coefficient(0))
    }

    fn check(&self, o: &Form) -> Result<()> {
        if !same_calc(&self.calc, &o.calc) {
            return Err(Error::CalculusMismatch(self.calc.name.clone(), o.calc.name.clone()));
        }
        if self.degree != o.degree {
            return Err(Error::UnsupportedDegree(o.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Form) -> Result<Form> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            add_coeff(&mut terms, *k, v.clone());
        }
        Ok(Form { calc: self.calc.clone(), degree: self.degree, terms })
    }

    pub fn try_sub(&self, o: &Form) -> Result<Form> {
        self.try_add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        let terms = self.terms.iter().map(|(k, v)| (*k, v.scale(c))).filter(|(_, v)| !v.is_zero()).collect();
        Form { calc: self.calc.clone(), degree: self.degree, terms }
    }

    /// `ω · f`.
    pub fn right_mul(&self, f: &AlgebraElement) -> Result<Form> {
        let mut terms = Coeffs::new();
        for (k, v) in &self.terms {
            add_coeff(&mut terms, *k, v.try_mul(f)?);
        }
        Ok(Form { calc: self.calc.clone(), degree: self.degree, terms })
    }

    /// `f · ω`.
    pub fn left_mul(&self, f: &AlgebraElement) -> Result<Form> {
        let terms = match self.degree {
            0 => coeffs(vec![(0, f.try_mul(&self.coefficient(0))?)]),
            1 => self.calc.left_mul1(f, &self.terms)?,
            _ => self.calc.left_mul2(f, &self.terms)?,
        };
        Ok(Form { calc: self.calc.clone(), degree: self.degree, terms })
    }

    /// `f·ω − ω·f`.
    pub fn commutator_with(&self, f: &AlgebraElement) -> Result<Form> {
        self.left_mul(f)?.try_sub(&self.right_mul(f)?)
    }

    /// Exterior product, with products of degree above two rejected.
    pub fn wedge(&self, o: &Form) -> Result<Form> {
        if !same_calc(&self.calc, &o.calc) {
            return Err(Error::CalculusMismatch(self.calc.name.clone(), o.calc.name.clone()));
        }
        match (self.degree, o.degree) {
            (0, _) => o.left_mul(&self.coefficient(0)),
            (_, 0) => self.right_mul(&o.coefficient(0)),
            (1, 1) => Ok(Form { calc: self.calc.clone(), degree: 2, terms: self.calc.wedge11(&self.terms, &o.terms)? }),
            (a, b) => Err(Error::UnsupportedDegree(a + b)),
        }
    }

    /// Exterior derivative on forms of degree 0 and 1.
    pub fn d(&self) -> Result<Form> {
        match self.degree {
            0 => Form::d_of(&self.calc, &self.coefficient(0)),
            1 => Ok(Form { calc: self.calc.clone(), degree: 2, terms: self.calc.d1(&self.terms)? }),
            d => Err(Error::UnsupportedDegree(d + 1)),
        }
    }

    /// `ω(e)` for a 1-form.
    pub fn evaluate(&self, e: &Derivation) -> Result<AlgebraElement> {
        if self.degree != 1 {
            return Err(Error::UnsupportedDegree(self.degree));
        }
        let mut out = AlgebraElement::zero(&self.calc.alg);
        for (c, a) in &self.terms {
            out = &out + &cogen_value(&self.calc, *c, e)?.try_mul(a)?;
        }
        Ok(out)
    }

    /// Interior product; an antiderivation on frame 2-forms.
    pub fn interior(&self, e: &Derivation) -> Result<Form> {
        match self.degree {
            0 => Err(Error::UnsupportedDegree(0)),
            1 => Ok(Form::function(&self.calc, &self.evaluate(e)?)),
            _ => {
                if !self.calc.central {
                    return Err(Error::NotFrame(self.calc.name.clone()));
                }
                let mut terms = Coeffs::new();
                for (b, a) in &self.terms {
                    let (i, j) = self.calc.basis2_rep[*b];
                    let ti = cogen_value(&self.calc, i, e)?;
                    let tj = cogen_value(&self.calc, j, e)?;
                    add_coeff(&mut terms, j, ti.try_mul(a)?);
                    add_coeff(&mut terms, i, -&tj.try_mul(a)?);
                }
                Ok(Form { calc: self.calc.clone(), degree: 1, terms })
            }
        }
    }

    /// Lie derivative via the Cartan formula, on degrees 0 and 1.
    pub fn lie(&self, e: &Derivation) -> Result<Form> {
        match self.degree {
            0 => Ok(Form::function(&self.calc, &e.apply(&self.coefficient(0))?)),
            1 => self.interior(e)?.d()?.try_add(&self.d()?.interior(e)?),
            d => Err(Error::UnsupportedDegree(d)),
        }
    }
}

/// `c_i(e)`, via the d-image of `c_i` when known and frame duality otherwise.
fn cogen_value(calc: &Arc<Calculus>, i: usize, e: &Derivation) -> Result<AlgebraElement> {
    let alg = &calc.alg;
    if !calc.dimage[i].is_empty() {
        let mut out = AlgebraElement::zero(alg);
        for (f, gg) in &calc.dimage[i] {
            out = &out + &f.try_mul(&e.apply(gg)?)?;
        }
        return Ok(out);
    }
    if let DRule::Frame(es) = &calc.d_rule {
        if let Some(j) = es.iter().position(|x| x == e) {
            return Ok(AlgebraElement::scalar(alg, if i == j { Scalar::one() } else { Scalar::zero() }));
        }
    }
    Err(Error::CannotEvaluate(format!("{} on a derivation outside the frame", calc.cogens[i])))
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            0 => write!(f, "{}", self.coefficient(0)),
            1 => f.write_str(&render_coeffs(&self.terms, &self.calc.cogens)),
            _ => f.write_str(&render_coeffs(&self.terms, &self.calc.basis2)),
        }
    }
}

/// An element of a tensor product of degree-one and degree-two forms.
#[derive(Clone)]
pub struct Tensor {
    calc: Arc<Calculus>,
    kinds: SmallVec<[u8; 4]>,
    terms: BTreeMap<Key, AlgebraElement>,
}

impl PartialEq for Tensor {
    fn eq(&self, o: &Self) -> bool {
        same_calc(&self.calc, &o.calc) && self.kinds == o.kinds && self.terms == o.terms
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {:?}] {}", self.calc.name, self.kinds.as_slice(), self)
    }
}

impl Tensor {
    pub fn zero(calc: &Arc<Calculus>, kinds: &[u8]) -> Tensor {
        Tensor { calc: calc.clone(), kinds: kinds.into(), terms: BTreeMap::new() }
    }

    pub fn from_terms(calc: &Arc<Calculus>, kinds: &[u8], terms: BTreeMap<Key, AlgebraElement>) -> Tensor {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Tensor { calc: calc.clone(), kinds: kinds.into(), terms }
    }

    /// `c_{i₁} ⊗ … ⊗ c_{i_r}` with unit coefficient.
    pub fn basis(calc: &Arc<Calculus>, key: &[usize]) -> Tensor {
        let kinds: SmallVec<[u8; 4]> = key.iter().map(|_| 1u8).collect();
        let mut terms = BTreeMap::new();
        terms.insert(Key::from_slice(key), AlgebraElement::one(&calc.alg));
        Tensor { calc: calc.clone(), kinds, terms }
    }

    pub fn from_form(w: &Form) -> Result<Tensor> {
        if w.degree == 0 {
            return Err(Error::UnsupportedDegree(0));
        }
        let terms = w.terms.iter().map(|(k, v)| (Key::from_slice(&[*k]), v.clone())).collect();
        Ok(Tensor { calc: w.calc.clone(), kinds: SmallVec::from_slice(&[w.degree as u8]), terms })
    }

    /// `α ⊗ β` for 1-forms.
    pub fn of_forms(a: &Form, b: &Form) -> Result<Tensor> {
        Tensor::from_form(a)?.tensor(&Tensor::from_form(b)?)
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn kinds(&self) -> &[u8] {
        &self.kinds
    }

    pub fn rank(&self) -> usize {
        self.kinds.len()
    }

    pub fn terms(&self) -> &BTreeMap<Key, AlgebraElement> {
        &self.terms
    }

    pub fn coefficient(&self, key: &[usize]) -> AlgebraElement {
        self.terms.get(&Key::from_slice(key)).cloned().unwrap_or_else(|| AlgebraElement::zero(&self.calc.alg))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Tensor) -> Result<()> {
        if !same_calc(&self.calc, &o.calc) {
            return Err(Error::CalculusMismatch(self.calc.name.clone(), o.calc.name.clone()));
        }
        if self.kinds != o.kinds {
            return Err(Error::Other("tensor shape mismatch".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Tensor) -> Result<Tensor> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            add_coeff(&mut terms, k.clone(), v.clone());
        }
        Ok(Tensor { calc: self.calc.clone(), kinds: self.kinds.clone(), terms })
    }

    pub fn try_sub(&self, o: &Tensor) -> Result<Tensor> {
        self.try_add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v.scale(c))).filter(|(_, v)| !v.is_zero()).collect();
        Tensor { calc: self.calc.clone(), kinds: self.kinds.clone(), terms }
    }

    pub fn right_mul(&self, f: &AlgebraElement) -> Result<Tensor> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            add_coeff(&mut terms, k.clone(), v.try_mul(f)?);
        }
        Ok(Tensor { calc: self.calc.clone(), kinds: self.kinds.clone(), terms })
    }

    pub fn left_mul(&self, f: &AlgebraElement) -> Result<Tensor> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            for (k2, b) in self.calc.left_mul_key(f, &self.kinds, k)? {
                add_coeff(&mut terms, k2, b.try_mul(v)?);
            }
        }
        Ok(Tensor { calc: self.calc.clone(), kinds: self.kinds.clone(), terms })
    }

    /// `self ⊗ o` over the algebra.
    pub fn tensor(&self, o: &Tensor) -> Result<Tensor> {
        if !same_calc(&self.calc, &o.calc) {
            return Err(Error::CalculusMismatch(self.calc.name.clone(), o.calc.name.clone()));
        }
        let mut kinds = self.kinds.clone();
        kinds.extend_from_slice(&o.kinds);
        let mut terms = BTreeMap::new();
        for (k1, a) in &self.terms {
            for (k2, b) in &o.terms {
                for (k2n, a2) in self.calc.left_mul_key(a, &o.kinds, k2)? {
                    let mut key = k1.clone();
                    key.extend_from_slice(&k2n);
                    add_coeff(&mut terms, key, a2.try_mul(b)?);
                }
            }
        }
        Ok(Tensor { calc: self.calc.clone(), kinds, terms })
    }

    /// Wedge projection on slots `slot, slot+1`.
    pub fn pi(&self, slot: usize) -> Result<Tensor> {
        if slot + 1 >= self.rank() {
            return Err(Error::SlotOutOfRange { slot, rank: self.rank() });
        }
        if self.kinds[slot] != 1 || self.kinds[slot + 1] != 1 {
            return Err(Error::UnsupportedDegree(3));
        }
        let mut kinds = self.kinds.clone();
        kinds.remove(slot + 1);
        kinds[slot] = 2;
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            for (b, sc) in self.calc.wedge_basis(k[slot], k[slot + 1]) {
                let mut key = k.clone();
                key.remove(slot + 1);
                key[slot] = *b;
                add_coeff(&mut terms, key, v.scale(sc));
            }
        }
        Ok(Tensor { calc: self.calc.clone(), kinds, terms })
    }

    /// Contract slots `slot, slot+1` with `B(c_i ⊗ c_j) = m[i][j]`.
    pub fn contract(&self, slot: usize, m: &[Vec<AlgebraElement>]) -> Result<Tensor> {
        if slot + 1 >= self.rank() {
            return Err(Error::SlotOutOfRange { slot, rank: self.rank() });
        }
        let mut kinds = self.kinds.clone();
        kinds.remove(slot);
        kinds.remove(slot);
        let tail_kinds: SmallVec<[u8; 4]> = kinds[slot..].into();
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let b = &m[k[slot]][k[slot + 1]];
            if b.is_zero() {
                continue;
            }
            for (tail, c) in self.calc.left_mul_key(b, &tail_kinds, &k[slot + 2..])? {
                let mut key: Key = k[..slot].into();
                key.extend_from_slice(&tail);
                add_coeff(&mut terms, key, c.try_mul(v)?);
            }
        }
        Ok(Tensor { calc: self.calc.clone(), kinds, terms })
    }

    /// A rank-one tensor as a form; a rank-zero one as a function.
    pub fn into_form(&self) -> Result<Form> {
        match self.rank() {
            0 => Ok(Form::function(&self.calc, &self.coefficient(&[]))),
            1 => Ok(Form {
                calc: self.calc.clone(),
                degree: self.kinds[0] as usize,
                terms: self.terms.iter().map(|(k, v)| (k[0], v.clone())).collect(),
            }),
            r => Err(Error::UnsupportedDegree(r)),
        }
    }

    /// Lie derivative on rank-2 tensors of 1-forms by the untwisted Leibniz rule.
    pub fn lie(&self, e: &Derivation) -> Result<Tensor> {
        if self.kinds.as_slice() != [1, 1] {
            return Err(Error::UnsupportedDegree(self.rank()));
        }
        let mut out = Tensor::zero(&self.calc, &self.kinds);
        for (k, a) in &self.terms {
            let c1 = Form::cogen(&self.calc, k[0]);
            let c2 = Form::cogen(&self.calc, k[1]);
            let first = Tensor::of_forms(&c1.lie(e)?, &c2)?;
            let second = Tensor::of_forms(&c1, &c2.lie(e)?)?;
            let base = Tensor::basis(&self.calc, k);
            out = out.try_add(&first.try_add(&second)?.right_mul(a)?)?.try_add(&base.right_mul(&e.apply(a)?)?)?;
        }
        Ok(out)
    }

    fn slot_name(&self, slot: usize, idx: usize) -> &str {
        if self.kinds[slot] == 1 {
            &self.calc.cogens[idx]
        } else {
            &self.calc.basis2[idx]
        }
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(bool, String)> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let name: Vec<&str> = k.iter().enumerate().map(|(s, i)| self.slot_name(s, *i)).collect();
                term_text(&name.join("(x)"), c)
            })
            .collect();
        f.write_str(&join_signed(&parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_xy() -> (Arc<Calculus>, AlgebraElement, AlgebraElement) {
        let c = Calculus::plane();
        let a = c.algebra().clone();
        (c, g(&a, "x"), g(&a, "y"))
    }

    #[test]
    fn gaussian_coefficient_keeps_its_signs() {
        let (c, _, _) = plane_xy();
        let k = &Scalar::int(-1) - &Scalar::i();
        let w = Form::cogen(&c, 0).try_add(&Form::cogen(&c, 1).scale(&k)).unwrap();
        assert_eq!(w.to_string(), "xi + eta*(-1 - i)");
        assert_eq!(Form::cogen(&c, 1).scale(&Scalar::int(-2)).to_string(), "-eta*(2)");
    }

    #[test]
    fn plane_swap_rules() {
        let (c, x, y) = plane_xy();
        let xi = Form::cogen(&c, 0);
        let eta = Form::cogen(&c, 1);
        assert_eq!(xi.left_mul(&x).unwrap().to_string(), "xi*(x - h*y) + eta*(h*x + h^2*y)");
        assert_eq!(eta.left_mul(&y).unwrap().to_string(), "eta*(y)");
        assert_eq!(eta.left_mul(&x).unwrap().to_string(), "eta*(x + h*y)");
    }

    #[test]
    fn rendering() {
        let (c, x, y) = plane_xy();
        let w = Form::cogen(&c, 0)
            .right_mul(&(&x * &y))
            .unwrap()
            .try_add(&Form::cogen(&c, 1).right_mul(&(&y * &y).scale(&Scalar::h())).unwrap())
            .unwrap();
        assert_eq!(w.to_string(), "xi*(x*y) + eta*(h*y^2)");
        assert_eq!(Form::cogen(&c, 0).to_string(), "xi");
        assert_eq!(Form::zero(&c, 1).to_string(), "0");
    }

    #[test]
    fn plane_wedges() {
        let c = Calculus::plane();
        let xi = Form::cogen(&c, 0);
        let eta = Form::cogen(&c, 1);
        assert_eq!(xi.wedge(&xi).unwrap().to_string(), "xi/\\eta*(h)");
        assert!(eta.wedge(&eta).unwrap().is_zero());
        assert!(xi.wedge(&eta).unwrap().try_add(&eta.wedge(&xi).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn d_of_product() {
        let (c, x, y) = plane_xy();
        let lhs = Form::d_of(&c, &(&x * &y)).unwrap();
        let rhs = Form::cogen(&c, 0).right_mul(&y).unwrap().try_add(&Form::cogen(&c, 1).left_mul(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(Form::d_of(&c, &AlgebraElement::one(c.algebra())).unwrap().is_zero());
    }

    #[test]
    fn frame_basics() {
        let c = Calculus::ext2();
        let t1 = Form::cogen(&c, 0);
        let x = g(c.algebra(), "x");
        assert_eq!(t1.left_mul(&x).unwrap(), t1.right_mul(&x).unwrap());
        assert_eq!(t1.d().unwrap().to_string(), "-t1/\\t2");
        let es = c.frame_derivations().unwrap().to_vec();
        assert!(t1.evaluate(&es[1]).unwrap().is_zero());
        assert!(t1.evaluate(&es[0]).unwrap().as_scalar().unwrap().is_one());
    }

    #[test]
    fn calculi_are_consistent() {
        for c in [Calculus::plane(), Calculus::plane2(), Calculus::ext_xy(), Calculus::ext2(), Calculus::ext3()] {
            assert!(c.consistency_defects().unwrap().is_empty(), "{}", c.name());
        }
    }

    #[test]
    fn degree_errors() {
        let c = Calculus::plane();
        let two = Form::basis2(&c, 0);
        assert!(matches!(two.d(), Err(Error::UnsupportedDegree(3))));
        assert!(matches!(two.wedge(&Form::cogen(&c, 0)), Err(Error::UnsupportedDegree(3))));
        assert!(Form::function(&c, &g(c.algebra(), "x")).interior(&Derivation::Table(vec![])).is_err());
    }
}
