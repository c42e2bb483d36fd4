//! Braid maps, bimodule connections, bilinear forms and frame geometry.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{g, gp, s, AlgebraElement};
use crate::calculus::{rhat, Calculus, Coeffs, Derivation, Form, Key, Tensor};
use crate::error::{Error, Result};
use crate::scalar::{Gauss, Scalar};

pub type Mat2 = [[Scalar; 2]; 2];

/// Generalized flip `σ(c_i ⊗ c_j) = Σ S^{ij}_{kl} c_k ⊗ c_l` with constant entries.
#[derive(Clone, Debug)]
pub struct BraidMap {
    calc: Arc<Calculus>,
    s: Vec<Vec<BTreeMap<(usize, usize), Scalar>>>,
}

impl BraidMap {
    /// `S^{ij}_{kl} = R̂^{ij}_{kl}` on a two-cogenerator calculus.
    pub fn from_rhat(calc: &Arc<Calculus>, r: &[[Scalar; 4]; 4]) -> BraidMap {
        let mut s = vec![vec![BTreeMap::new(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let v = &r[2 * i + j][2 * k + l];
                        if !v.is_zero() {
                            s[i][j].insert((k, l), v.clone());
                        }
                    }
                }
            }
        }
        BraidMap { calc: calc.clone(), s }
    }

    /// `σ(c_i ⊗ c_j) = c_j ⊗ c_i`.
    pub fn flip(calc: &Arc<Calculus>) -> BraidMap {
        let n = calc.rank();
        let mut s = vec![vec![BTreeMap::new(); n]; n];
        for (i, row) in s.iter_mut().enumerate() {
            for (j, m) in row.iter_mut().enumerate() {
                m.insert((j, i), Scalar::one());
            }
        }
        BraidMap { calc: calc.clone(), s }
    }

    /// The braid map of a Wess–Zumino calculus with parameters `h`, `p`.
    pub fn wess_zumino(calc: &Arc<Calculus>, p: &Scalar) -> BraidMap {
        BraidMap::from_rhat(calc, &rhat(&Scalar::h(), p))
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        self.s[i][j].get(&(k, l)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `σ` on slots `slot, slot+1`.
    pub fn apply(&self, t: &Tensor, slot: usize) -> Result<Tensor> {
        if slot + 1 >= t.rank() {
            return Err(Error::SlotOutOfRange { slot, rank: t.rank() });
        }
        if t.kinds()[slot] != 1 || t.kinds()[slot + 1] != 1 {
            return Err(Error::UnsupportedDegree(2));
        }
        let mut terms: BTreeMap<Key, AlgebraElement> = BTreeMap::new();
        for (k, v) in t.terms() {
            for ((a, b), sc) in &self.s[k[slot]][k[slot + 1]] {
                let mut key = k.clone();
                key[slot] = *a;
                key[slot + 1] = *b;
                let c = v.scale(sc);
                match terms.get_mut(&key) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        terms.insert(key, c);
                    }
                }
            }
        }
        Ok(Tensor::from_terms(t.calculus(), t.kinds(), terms))
    }

    fn pairs(&self) -> Vec<[usize; 2]> {
        let n = self.calc.rank();
        (0..n).flat_map(|i| (0..n).map(move |j| [i, j])).collect()
    }

    fn triples(&self) -> Vec<[usize; 3]> {
        let n = self.calc.rank();
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k]))).collect()
    }

    /// `σ²(c_i⊗c_j) − c_i⊗c_j` on every basis pair.
    pub fn square_defects(&self) -> Result<Vec<([usize; 2], Tensor)>> {
        self.pairs()
            .into_iter()
            .map(|p| {
                let t = Tensor::basis(&self.calc, &p);
                Ok((p, self.apply(&self.apply(&t, 0)?, 0)?.try_sub(&t)?))
            })
            .collect()
    }

    /// `σ₁₂σ₂₃σ₁₂ − σ₂₃σ₁₂σ₂₃` on every basis triple.
    pub fn braid_defects(&self) -> Result<Vec<([usize; 3], Tensor)>> {
        self.triples()
            .into_iter()
            .map(|p| {
                let t = Tensor::basis(&self.calc, &p);
                let l = self.apply(&self.apply(&self.apply(&t, 0)?, 1)?, 0)?;
                let r = self.apply(&self.apply(&self.apply(&t, 1)?, 0)?, 1)?;
                Ok((p, l.try_sub(&r)?))
            })
            .collect()
    }

    /// `π(σ + 1)` on every basis pair.
    pub fn pi_defects(&self) -> Result<Vec<([usize; 2], Tensor)>> {
        self.pairs()
            .into_iter()
            .map(|p| {
                let t = Tensor::basis(&self.calc, &p);
                Ok((p, self.apply(&t, 0)?.try_add(&t)?.pi(0)?))
            })
            .collect()
    }

    /// `σ(f·(c_i⊗c_j)) − f·σ(c_i⊗c_j)` for each generator letter `f`.
    pub fn bimodule_defects(&self) -> Result<Vec<(String, Tensor)>> {
        let alg = self.calc.algebra().clone();
        let mut out = Vec::new();
        for (gi, name) in alg.generators().iter().enumerate() {
            let mut letters = vec![(name.clone(), 1)];
            if alg.is_invertible(gi) {
                letters.push((format!("{name}^-1"), -1));
            }
            for (label, e) in letters {
                let f = gp(&alg, name, e);
                for p in self.pairs() {
                    let t = Tensor::basis(&self.calc, &p);
                    let lhs = self.apply(&t.left_mul(&f)?, 0)?;
                    let rhs = self.apply(&t, 0)?.left_mul(&f)?;
                    out.push((format!("{label}{:?}", p), lhs.try_sub(&rhs)?));
                }
            }
        }
        Ok(out)
    }
}

/// Scalar Yang–Baxter defect `R₁₂R₂₃R₁₂ − R₂₃R₁₂R₂₃` on the 8 basis triples.
pub fn ybe_defect(r: &[[Scalar; 4]; 4]) -> Vec<Vec<Scalar>> {
    let idx = |a: usize, b: usize, c: usize| 4 * a + 2 * b + c;
    let mut r12 = vec![vec![Scalar::zero(); 8]; 8];
    let mut r23 = vec![vec![Scalar::zero(); 8]; 8];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    for e in 0..2 {
                        r12[idx(a, b, c)][idx(d, e, c)] = r[2 * a + b][2 * d + e].clone();
                        r23[idx(c, a, b)][idx(c, d, e)] = r[2 * a + b][2 * d + e].clone();
                    }
                }
            }
        }
    }
    let mul = |x: &Vec<Vec<Scalar>>, y: &Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
        (0..8)
            .map(|i| {
                (0..8)
                    .map(|j| {
                        let mut acc = Scalar::zero();
                        for k in 0..8 {
                            acc += &(&x[i][k] * &y[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let lhs = mul(&mul(&r12, &r23), &r12);
    let rhs = mul(&mul(&r23, &r12), &r23);
    (0..8).map(|i| (0..8).map(|j| &lhs[i][j] - &rhs[i][j]).collect()).collect()
}

/// `κ = xη − yξ − hyη`.
pub fn kappa(calc: &Arc<Calculus>) -> Result<Form> {
    let alg = calc.algebra();
    let x = AlgebraElement::gen(alg, "x")?;
    let y = AlgebraElement::gen(alg, "y")?;
    let xi = Form::named(calc, "xi")?;
    let eta = Form::named(calc, "eta")?;
    eta.left_mul(&x)?.try_sub(&xi.left_mul(&y)?)?.try_sub(&eta.left_mul(&y.scale(&Scalar::h()))?)
}

/// Which relation between `h′` and `h` a two-parameter family assumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarpiCase {
    /// `h′ = nh`.
    Integer,
    /// `h′ = nh/2`.
    Half,
}

impl VarpiCase {
    pub fn hp(&self, n: i64) -> Scalar {
        match self {
            VarpiCase::Integer => Scalar::int(n) * Scalar::h(),
            VarpiCase::Half => Scalar::ratio(n, 2) * Scalar::h(),
        }
    }

    fn validate(&self, n: i64) -> Result<()> {
        let ok = match self {
            VarpiCase::Integer => n >= 2,
            VarpiCase::Half => n >= 3 && n % 2 == 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidN(n))
        }
    }
}

/// Which connection to build.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Plane { mu: Scalar, rho: Scalar },
    Plane2 { case: VarpiCase, n: i64, mu: Scalar, rho: Scalar },
    ExtFlat,
    ExtLeviCivita,
}

fn y_pow(calc: &Arc<Calculus>, e: i64) -> Result<AlgebraElement> {
    AlgebraElement::gen_pow(calc.algebra(), "y", e as i32)
}

/// The two-parameter calculus for a case and `n`, with `ϖ` and its partner
/// `y^{2n−2}κ⊗κ − (n−1)hy^{2n−1}η⊗κ` used by the `h′ = nh` family.
pub fn varpi(case: VarpiCase, n: i64) -> Result<(Arc<Calculus>, Tensor)> {
    case.validate(n)?;
    let calc = Calculus::plane2_at(&case.hp(n))?;
    let w = varpi_in(&calc, case, n)?;
    Ok((calc, w))
}

fn varpi_in(calc: &Arc<Calculus>, case: VarpiCase, n: i64) -> Result<Tensor> {
    let k = kappa(calc)?;
    let eta = Form::named(calc, "eta")?;
    match case {
        VarpiCase::Integer => {
            Tensor::of_forms(&k, &eta)?.try_add(&Tensor::of_forms(&eta, &k)?)?.left_mul(&y_pow(calc, n - 2)?)
        }
        VarpiCase::Half => half_varpi(calc, n, &k, &eta),
    }
}

fn half_varpi(calc: &Arc<Calculus>, n: i64, k: &Form, eta: &Form) -> Result<Tensor> {
    let kk = Tensor::of_forms(k, k)?.left_mul(&y_pow(calc, n - 2)?)?;
    let ek =
        Tensor::of_forms(eta, k)?.left_mul(&y_pow(calc, n - 1)?.scale(&(Scalar::ratio(n - 2, 2) * Scalar::h())))?;
    kk.try_sub(&ek)
}

/// A bimodule connection `D` determined by its values on the cogenerators.
#[derive(Clone, Debug)]
pub struct Connection {
    calc: Arc<Calculus>,
    sigma: BraidMap,
    values: Vec<Tensor>,
}

impl Connection {
    pub fn new(sigma: BraidMap, values: Vec<Tensor>) -> Result<Connection> {
        let calc = sigma.calculus().clone();
        if values.len() != calc.rank() {
            return Err(Error::Other(format!("expected {} connection values, got {}", calc.rank(), values.len())));
        }
        for v in &values {
            if v.kinds() != [1, 1] || !Arc::ptr_eq(v.calculus(), &calc) {
                return Err(Error::Other("connection values must be rank-2 tensors in the calculus".into()));
            }
        }
        Ok(Connection { calc, sigma, values })
    }

    pub fn from_family(f: &Family) -> Result<Connection> {
        match f {
            Family::Plane { mu, rho } => Connection::plane(mu, rho),
            Family::Plane2 { case, n, mu, rho } => Connection::plane2(*case, *n, mu, rho),
            Family::ExtFlat => Connection::ext_flat(),
            Family::ExtLeviCivita => Connection::ext_levicivita(),
        }
    }

    /// `Dξ^a = μx^aκ⊗κ + ρ(ξ^a⊗κ + κ⊗ξ^a)`.
    pub fn plane(mu: &Scalar, rho: &Scalar) -> Result<Connection> {
        let calc = Calculus::plane();
        let k = kappa(&calc)?;
        let kk = Tensor::of_forms(&k, &k)?;
        let mut values = Vec::new();
        for (a, name) in ["x", "y"].iter().enumerate() {
            let xa = g(calc.algebra(), name);
            let c = Form::cogen(&calc, a);
            let sym = Tensor::of_forms(&c, &k)?.try_add(&Tensor::of_forms(&k, &c)?)?;
            values.push(kk.left_mul(&xa)?.scale(mu).try_add(&sym.scale(rho))?);
        }
        Connection::new(BraidMap::wess_zumino(&calc, &Scalar::h()), values)
    }

    /// The two-parameter families; `rho` must vanish in the `h′ = nh/2` case.
    pub fn plane2(case: VarpiCase, n: i64, mu: &Scalar, rho: &Scalar) -> Result<Connection> {
        case.validate(n)?;
        let hp = case.hp(n);
        let calc = Calculus::plane2_at(&hp)?;
        let k = kappa(&calc)?;
        let eta = Form::named(&calc, "eta")?;
        let (mu_part, rho_part) = match case {
            VarpiCase::Integer => (half_varpi(&calc, 2 * n, &k, &eta)?, varpi_in(&calc, case, n)?),
            VarpiCase::Half => {
                if !rho.is_zero() {
                    return Err(Error::Other("the h′ = nh/2 family has no ρ term".into()));
                }
                (varpi_in(&calc, case, n)?, Tensor::zero(&calc, &[1, 1]))
            }
        };
        let base = mu_part.scale(mu).try_add(&rho_part.scale(rho))?;
        let values = ["x", "y"].iter().map(|nm| base.left_mul(&g(calc.algebra(), nm))).collect::<Result<_>>()?;
        Connection::new(BraidMap::wess_zumino(&calc, &hp), values)
    }

    /// `Dθ^a = 0` on the extended frame.
    pub fn ext_flat() -> Result<Connection> {
        let calc = Calculus::ext2();
        let values = vec![Tensor::zero(&calc, &[1, 1]); 2];
        Connection::new(BraidMap::flip(&calc), values)
    }

    /// `Dθ¹ = −θ¹⊗θ²`, `Dθ² = θ¹⊗θ¹`.
    pub fn ext_levicivita() -> Result<Connection> {
        let calc = Calculus::ext2();
        let values = vec![Tensor::basis(&calc, &[0, 1]).scale(&Scalar::int(-1)), Tensor::basis(&calc, &[0, 0])];
        Connection::new(BraidMap::flip(&calc), values)
    }

    /// `Dθ^a = −ω^a_{bc} θ^b⊗θ^c` with constant coefficients, indexed `ω[a][b][c]`.
    pub fn frame(calc: &Arc<Calculus>, sigma: BraidMap, omega: &[Vec<Vec<Scalar>>]) -> Result<Connection> {
        let n = calc.rank();
        let mut values = Vec::new();
        for om in omega.iter().take(n) {
            let mut t = Tensor::zero(calc, &[1, 1]);
            for b in 0..n {
                for c in 0..n {
                    if !om[b][c].is_zero() {
                        t = t.try_sub(&Tensor::basis(calc, &[b, c]).scale(&om[b][c]))?;
                    }
                }
            }
            values.push(t);
        }
        Connection::new(sigma, values)
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn sigma(&self) -> &BraidMap {
        &self.sigma
    }

    pub fn values(&self) -> &[Tensor] {
        &self.values
    }

    /// `D(Σ c·a) = Σ σ(c⊗da) + (Dc)·a`.
    pub fn apply(&self, w: &Form) -> Result<Tensor> {
        if w.degree() != 1 {
            return Err(Error::UnsupportedDegree(w.degree()));
        }
        let mut out = Tensor::zero(&self.calc, &[1, 1]);
        for (c, a) in w.terms() {
            let da = Form::d_of(&self.calc, a)?;
            let twisted = self.sigma.apply(&Tensor::of_forms(&Form::cogen(&self.calc, *c), &da)?, 0)?;
            out = out.try_add(&twisted)?.try_add(&self.values[*c].right_mul(a)?)?;
        }
        Ok(out)
    }

    /// `D(α⊗β) = Dα⊗β + σ₁₂(α⊗Dβ)` on rank-2 tensors of 1-forms.
    pub fn extend(&self, t: &Tensor) -> Result<Tensor> {
        if t.kinds() != [1, 1] {
            return Err(Error::UnsupportedDegree(t.rank()));
        }
        let mut out = Tensor::zero(&self.calc, &[1, 1, 1]);
        for (k, a) in t.terms() {
            let first = self.values[k[0]].tensor(&Tensor::basis(&self.calc, &[k[1]]))?.right_mul(a)?;
            let inner = self.apply(&Form::from_coeffs(&self.calc, 1, Coeffs::from([(k[1], a.clone())]))?)?;
            let second = self.sigma.apply(&Tensor::basis(&self.calc, &[k[0]]).tensor(&inner)?, 0)?;
            out = out.try_add(&first)?.try_add(&second)?;
        }
        Ok(out)
    }

    /// `D²ω` as a rank-3 tensor.
    pub fn square(&self, w: &Form) -> Result<Tensor> {
        self.extend(&self.apply(w)?)
    }

    /// `π₁₂D²ω`.
    pub fn curvature(&self, w: &Form) -> Result<Tensor> {
        self.square(w)?.pi(0)
    }

    /// `Θω = dω − πDω`.
    pub fn torsion(&self, w: &Form) -> Result<Form> {
        w.d()?.try_sub(&self.apply(w)?.pi(0)?.into_form()?)
    }

    /// `D(f·c) − (df⊗c + f·Dc)` for each generator letter `f` and cogenerator `c`.
    pub fn leibniz_defects(&self) -> Result<Vec<(String, Tensor)>> {
        let alg = self.calc.algebra().clone();
        let mut out = Vec::new();
        for (gi, name) in alg.generators().iter().enumerate() {
            let mut letters = vec![(name.clone(), 1)];
            if alg.is_invertible(gi) {
                letters.push((format!("{name}^-1"), -1));
            }
            for (label, e) in letters {
                let f = gp(&alg, name, e);
                for c in 0..self.calc.rank() {
                    let cf = Form::cogen(&self.calc, c);
                    let lhs = self.apply(&cf.left_mul(&f)?)?;
                    let rhs =
                        Tensor::of_forms(&Form::d_of(&self.calc, &f)?, &cf)?.try_add(&self.values[c].left_mul(&f)?)?;
                    out.push((format!("{label}*{}", self.calc.cogenerators()[c]), lhs.try_sub(&rhs)?));
                }
            }
        }
        Ok(out)
    }
}

/// `Ω^a_b ⊗ ξ^b` summed, with `Ω = 4μ M ξη` for the plane family.
pub fn omega_expected(mu: &Scalar) -> Result<[Tensor; 2]> {
    let calc = Calculus::plane();
    let alg = calc.algebra();
    let (x, y) = (g(alg, "x"), g(alg, "y"));
    let h = Scalar::h();
    let m = [[&x * &y, &(&x * &y).scale(&h) - &(&x * &x)], [&y * &y, &(&y * &y).scale(&h) - &(&y * &x)]];
    let four_mu = Scalar::int(4) * mu.clone();
    let mut out = Vec::new();
    for row in &m {
        let mut t = Tensor::zero(&calc, &[2, 1]);
        for (b, entry) in row.iter().enumerate() {
            let mut terms = BTreeMap::new();
            terms.insert(Key::from_slice(&[0, b]), AlgebraElement::one(alg));
            let basis = Tensor::from_terms(&calc, &[2, 1], terms);
            t = t.try_add(&basis.left_mul(&entry.scale(&four_mu))?)?;
        }
        out.push(t);
    }
    Ok([out.remove(0), out.remove(0)])
}

/// Symmetry class of a bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
    General,
}

/// An algebra-bilinear map `Ω¹⊗Ω¹ → A` given on cogenerator pairs.
#[derive(Clone, Debug)]
pub struct BilinearForm {
    calc: Arc<Calculus>,
    matrix: Vec<Vec<AlgebraElement>>,
    symmetry: Symmetry,
}

impl BilinearForm {
    pub fn new(calc: &Arc<Calculus>, matrix: Vec<Vec<AlgebraElement>>, symmetry: Symmetry) -> BilinearForm {
        BilinearForm { calc: calc.clone(), matrix, symmetry }
    }

    pub fn constant(calc: &Arc<Calculus>, m: &[Vec<Scalar>], symmetry: Symmetry) -> BilinearForm {
        let alg = calc.algebra();
        let matrix = m.iter().map(|row| row.iter().map(|c| s(alg, c.clone())).collect()).collect();
        BilinearForm::new(calc, matrix, symmetry)
    }

    fn from_mat2(calc: &Arc<Calculus>, m: &Mat2, symmetry: Symmetry) -> BilinearForm {
        let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.to_vec()).collect();
        BilinearForm::constant(calc, &rows, symmetry)
    }

    /// `Λ = [[h, 1], [−1, 0]]` on `ξ, η`.
    pub fn lambda(calc: &Arc<Calculus>) -> BilinearForm {
        BilinearForm::from_mat2(calc, &lambda_matrix(), Symmetry::Skew)
    }

    pub fn metric_g(calc: &Arc<Calculus>) -> BilinearForm {
        BilinearForm::from_mat2(calc, &g_matrix(), Symmetry::Symmetric)
    }

    pub fn metric_g_prime(calc: &Arc<Calculus>) -> BilinearForm {
        BilinearForm::from_mat2(calc, &g_prime_matrix(), Symmetry::Symmetric)
    }

    /// `g(θ^a⊗θ^b) = δ^{ab}`.
    pub fn identity(calc: &Arc<Calculus>) -> BilinearForm {
        let n = calc.rank();
        let rows: Vec<Vec<Scalar>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
        BilinearForm::constant(calc, &rows, Symmetry::Symmetric)
    }

    /// `Λ(θ¹⊗θ²) = 1 = −Λ(θ²⊗θ¹)`, zero diagonal.
    pub fn lambda_frame(calc: &Arc<Calculus>) -> BilinearForm {
        let m = [[Scalar::zero(), Scalar::one()], [Scalar::int(-1), Scalar::zero()]];
        BilinearForm::from_mat2(calc, &m, Symmetry::Skew)
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn matrix(&self) -> &[Vec<AlgebraElement>] {
        &self.matrix
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Value on a rank-2 tensor of 1-forms.
    pub fn eval(&self, t: &Tensor) -> Result<AlgebraElement> {
        Ok(t.contract(0, &self.matrix)?.coefficient(&[]))
    }

    /// Determinant when every entry is a scalar.
    pub fn determinant(&self) -> Option<Scalar> {
        let m: Option<Vec<Vec<Scalar>>> =
            self.matrix.iter().map(|r| r.iter().map(|e| e.as_scalar()).collect()).collect();
        determinant(&m?)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.determinant().map(|d| !d.is_zero()).unwrap_or(false)
    }

    /// `B∘σ − sign·B` on every basis pair.
    pub fn sigma_defects(&self, sigma: &BraidMap, sign: i64) -> Result<Vec<([usize; 2], AlgebraElement)>> {
        let n = self.calc.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let t = Tensor::basis(&self.calc, &[i, j]);
                let lhs = self.eval(&sigma.apply(&t, 0)?)?;
                out.push(([i, j], lhs.try_sub(&self.matrix[i][j].scale(&Scalar::int(sign)))?));
            }
        }
        Ok(out)
    }

    /// `(1⊗B)D(c_a⊗c_b) − d(B^{ab})` for each pair.
    pub fn compat_defects(&self, conn: &Connection) -> Result<Vec<([usize; 2], Form)>> {
        if !Arc::ptr_eq(&self.calc, conn.calculus()) {
            return Err(Error::CalculusMismatch(self.calc.name().into(), conn.calculus().name().into()));
        }
        let n = self.calc.rank();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let dt = conn.extend(&Tensor::basis(&self.calc, &[a, b]))?;
                let lhs = dt.contract(1, &self.matrix)?.into_form()?;
                let rhs = Form::d_of(&self.calc, &self.matrix[a][b])?;
                out.push(([a, b], lhs.try_sub(&rhs)?));
            }
        }
        Ok(out)
    }

    /// `(1⊗B)` on slots 2 and 3 of a rank-3 tensor, as a 1-form.
    pub fn contract_tail(&self, t: &Tensor) -> Result<Form> {
        t.contract(1, &self.matrix)?.into_form()
    }
}

fn determinant(m: &[Vec<Scalar>]) -> Option<Scalar> {
    match m.len() {
        0 => Some(Scalar::one()),
        1 => Some(m[0][0].clone()),
        n => {
            let mut acc = Scalar::zero();
            for (j, top) in m[0].iter().enumerate() {
                let minor: Vec<Vec<Scalar>> =
                    m[1..].iter().map(|r| (0..n).filter(|&c| c != j).map(|c| r[c].clone()).collect()).collect();
                let term = top * &determinant(&minor)?;
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            Some(acc)
        }
    }
}

pub fn lambda_matrix() -> Mat2 {
    crate::qgroup::lambda_matrix()
}

/// `g = [[−ih, −i], [−i, 0]]`.
pub fn g_matrix() -> Mat2 {
    let mi = -Scalar::i();
    [[&mi * &Scalar::h(), mi.clone()], [mi, Scalar::zero()]]
}

/// `g′ = [[ih, −i], [−i, 0]]`.
pub fn g_prime_matrix() -> Mat2 {
    let mi = -Scalar::i();
    [[Scalar::i() * Scalar::h(), mi.clone()], [mi, Scalar::zero()]]
}

/// `H = g′ + iΛ`.
pub fn hermitian_matrix() -> Mat2 {
    let gp = g_prime_matrix();
    let l = lambda_matrix();
    let i = Scalar::i();
    let e = |a: usize, b: usize| &gp[a][b] + &(&i * &l[a][b]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Eigenvalues of `J` on `ξ, η`.
pub fn j_action() -> [Scalar; 2] {
    [Scalar::i(), -Scalar::i()]
}

/// Components of `√2·ϑ^a` on `ξ, η`.
pub fn theta_hat() -> Mat2 {
    [[Scalar::one(), Scalar::i()], [Scalar::i(), Scalar::one()]]
}

/// `J` applied to a component vector.
pub fn j_apply(v: &[Scalar; 2]) -> [Scalar; 2] {
    let j = j_action();
    [&j[0] * &v[0], &j[1] * &v[1]]
}

/// `X(ϑ^a⊗ϑ^b)` from `X(ξ^c⊗ξ^d)`.
pub fn in_theta_basis(m: &Mat2) -> Mat2 {
    let t = theta_hat();
    let half = Scalar::ratio(1, 2);
    let e = |a: usize, b: usize| {
        let mut acc = Scalar::zero();
        for c in 0..2 {
            for d in 0..2 {
                acc += &(&(&t[a][c] * &t[b][d]) * &m[c][d]);
            }
        }
        &half * &acc
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `∂_a f = Λ(η_a⊗df)` with `η_a = (−η, ξ + hη)`.
pub struct SkewDerivative {
    calc: Arc<Calculus>,
    eta: [Form; 2],
    lambda: BilinearForm,
}

impl SkewDerivative {
    pub fn new() -> Result<SkewDerivative> {
        let calc = Calculus::plane();
        let xi = Form::cogen(&calc, 0);
        let eta = Form::cogen(&calc, 1);
        let e1 = eta.scale(&Scalar::int(-1));
        let e2 = xi.try_add(&eta.scale(&Scalar::h()))?;
        Ok(SkewDerivative { lambda: BilinearForm::lambda(&calc), calc, eta: [e1, e2] })
    }

    pub fn calculus(&self) -> &Arc<Calculus> {
        &self.calc
    }

    pub fn covector(&self, a: usize) -> &Form {
        &self.eta[a]
    }

    pub fn apply(&self, a: usize, f: &AlgebraElement) -> Result<AlgebraElement> {
        let df = Form::d_of(&self.calc, f)?;
        self.lambda.eval(&Tensor::of_forms(&self.eta[a], &df)?)
    }

    /// `∂_a(x^b f) − δ_a^b f − Σ R̂^{bd}_{ac} x^c ∂_d f`.
    pub fn exchange_defect(&self, a: usize, b: usize, f: &AlgebraElement) -> Result<AlgebraElement> {
        let alg = self.calc.algebra();
        let xs = [g(alg, "x"), g(alg, "y")];
        let r = rhat(&Scalar::h(), &Scalar::h());
        let mut rhs = if a == b { f.clone() } else { AlgebraElement::zero(alg) };
        for c in 0..2 {
            for d in 0..2 {
                let coef = &r[2 * b + d][2 * a + c];
                if !coef.is_zero() {
                    rhs = rhs.try_add(&xs[c].try_mul(&self.apply(d, f)?)?.scale(coef))?;
                }
            }
        }
        self.apply(a, &xs[b].try_mul(f)?)?.try_sub(&rhs)
    }
}

/// Four-index scalar array.
#[derive(Clone, Debug, PartialEq)]
pub struct Array4 {
    n: usize,
    data: Vec<Scalar>,
}

impl Array4 {
    pub fn zeros(n: usize) -> Array4 {
        Array4 { n, data: vec![Scalar::zero(); n * n * n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> Scalar) -> Array4 {
        let mut a = Array4::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        *a.get_mut(i, j, k, l) = f(i, j, k, l);
                    }
                }
            }
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }

    pub fn get_mut(&mut self, i: usize, j: usize, k: usize, l: usize) -> &mut Scalar {
        let n = self.n;
        &mut self.data[((i * n + j) * n + k) * n + l]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }
}

/// `R^i_{jkl}` from `π₁₂D²θ^i = −½R^i_{jkl}θ^kθ^l⊗θ^j`, antisymmetric in `k, l`.
pub fn riemann(conn: &Connection) -> Result<Array4> {
    let calc = conn.calculus();
    if !calc.is_central() {
        return Err(Error::NotFrame(calc.name().into()));
    }
    let n = calc.rank();
    let mut r = Array4::zeros(n);
    for i in 0..n {
        let curv = conn.curvature(&Form::cogen(calc, i))?;
        for (key, coef) in curv.terms() {
            let c =
                coef.as_scalar().ok_or_else(|| Error::Other(format!("non-constant curvature coefficient {coef}")))?;
            let wedge = key[0];
            let j = key[1];
            let (k, l) = (0..n)
                .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
                .find(|&(k, l)| calc.wedge_basis(k, l).get(&wedge).map(|s| s.is_one()).unwrap_or(false))
                .ok_or_else(|| Error::Other("degree-two basis is not of the form θ^kθ^l".into()))?;
            *r.get_mut(i, j, k, l) = -c.clone();
            *r.get_mut(i, j, l, k) = c;
        }
    }
    Ok(r)
}

fn metric_scalars(g: &BilinearForm) -> Result<Vec<Vec<Scalar>>> {
    g.matrix()
        .iter()
        .map(|r| r.iter().map(|e| e.as_scalar().ok_or_else(|| Error::Other("non-constant metric".into()))).collect())
        .collect()
}

/// `R_{abcd} = g_{ae}R^e_{bcd}`, with `g_{ae}` the inverse of the frame metric.
pub fn lower(r: &Array4, g: &BilinearForm) -> Result<Array4> {
    let gi = inverse_matrix(&metric_scalars(g)?)?;
    let n = r.dim();
    Ok(Array4::from_fn(n, |a, b, c, d| {
        let mut acc = Scalar::zero();
        for (e, ge) in gi[a].iter().enumerate() {
            acc += &(ge * r.get(e, b, c, d));
        }
        acc
    }))
}

/// `R^a_b = Σ_{c,d} R^a_{cdb} g^{cd}`.
pub fn ricci(r: &Array4, g: &BilinearForm) -> Result<Vec<Vec<Scalar>>> {
    let gm = metric_scalars(g)?;
    let n = r.dim();
    Ok((0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut acc = Scalar::zero();
                    for c in 0..n {
                        for d in 0..n {
                            acc += &(r.get(a, c, d, b) * &gm[c][d]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect())
}

/// `R^i_k` read off from `Ric(θ^i) = ½R^i_{jkl}θ^k g^{lj}`.
pub fn ricci_half_contraction(r: &Array4, g: &BilinearForm) -> Result<Vec<Vec<Scalar>>> {
    let gm = metric_scalars(g)?;
    let n = r.dim();
    let half = Scalar::ratio(1, 2);
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let mut acc = Scalar::zero();
                    for j in 0..n {
                        for l in 0..n {
                            acc += &(r.get(i, j, k, l) * &gm[l][j]);
                        }
                    }
                    &half * &acc
                })
                .collect()
        })
        .collect())
}

fn inverse_matrix(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = m.len();
    let det = determinant(m).ok_or(Error::NonInvertibleMap("singular matrix".into()))?;
    let dinv = det.inverse().map_err(|_| Error::NonInvertibleMap("singular matrix".into()))?;
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let minor: Vec<Vec<Scalar>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let cof = determinant(&minor).ok_or(Error::NonInvertibleMap("singular matrix".into()))?;
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            *e = &signed * &dinv;
        }
    }
    Ok(out)
}

/// Frame data `λ_i`, `P^{ij}_{kl}`, `F^k_{ij}`, `K_{ij}` and the derived `C^i_{jk}`.
#[derive(Clone, Debug)]
pub struct FrameData {
    pub lambdas: Vec<AlgebraElement>,
    pub p: Array4,
    /// `f[k][i][j] = F^k_{ij}`.
    pub f: Vec<Vec<Vec<Scalar>>>,
    pub k: Vec<Vec<AlgebraElement>>,
}

/// `P^{ij}_{kl} = ½(δ^i_kδ^j_l − δ^i_lδ^j_k)`.
pub fn antisymmetrizer(n: usize) -> Array4 {
    Array4::from_fn(n, |i, j, k, l| {
        let a = if i == k && j == l { 1 } else { 0 };
        let b = if i == l && j == k { 1 } else { 0 };
        Scalar::ratio(a - b, 2)
    })
}

impl FrameData {
    /// Antisymmetrizer, `K = 0`, structure constants `f`.
    pub fn lie(lambdas: Vec<AlgebraElement>, f: Vec<Vec<Vec<Scalar>>>) -> FrameData {
        let n = lambdas.len();
        let alg = lambdas[0].algebra().clone();
        FrameData { p: antisymmetrizer(n), f, k: vec![vec![AlgebraElement::zero(&alg); n]; n], lambdas }
    }

    /// `λ₁ = v/2h`, `λ₂ = u/2h`, `F¹₁₂ = 1`.
    pub fn extended() -> FrameData {
        let [l1, l2, _] = crate::calculus::lambdas();
        let mut f = vec![vec![vec![Scalar::zero(); 2]; 2]; 2];
        f[0][0][1] = Scalar::one();
        f[0][1][0] = Scalar::int(-1);
        FrameData::lie(vec![l1, l2], f)
    }

    /// `λ₁, λ₂, λ₃` with `[λ₁,λ₂] = λ₁`, `[λ₂,λ₃] = λ₃`, `[λ₃,λ₁] = λ₂`.
    pub fn three() -> FrameData {
        let mut f = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        for (k, i, j) in [(0, 0, 1), (2, 1, 2), (1, 2, 0)] {
            f[k][i][j] = Scalar::one();
            f[k][j][i] = Scalar::int(-1);
        }
        FrameData::lie(crate::calculus::lambdas().to_vec(), f)
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    /// `2λ_kλ_lP^{kl}_{ij} − λ_kF^k_{ij} − K_{ij}` for each `i, j`.
    pub fn quadratic_defects(&self) -> Result<Vec<Vec<AlgebraElement>>> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                let mut acc = self.k[i][j].scale(&Scalar::int(-1));
                for k in 0..n {
                    for l in 0..n {
                        let p = self.p.get(k, l, i, j);
                        if !p.is_zero() {
                            acc = acc.try_add(
                                &self.lambdas[k].try_mul(&self.lambdas[l])?.scale(&(Scalar::int(2) * p.clone())),
                            )?;
                        }
                    }
                    acc = acc.try_sub(&self.lambdas[k].scale(&self.f[k][i][j]))?;
                }
                row.push(acc);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// `P² − P`.
    pub fn idempotency_defect(&self) -> Array4 {
        let n = self.dim();
        Array4::from_fn(n, |i, j, k, l| {
            let mut acc = -self.p.get(i, j, k, l).clone();
            for m in 0..n {
                for q in 0..n {
                    acc += &(self.p.get(i, j, m, q) * self.p.get(m, q, k, l));
                }
            }
            acc
        })
    }

    /// `C^i_{jk} = F^i_{jk} − 2λ_lP^{(li)}_{jk}`; errors if not constant.
    pub fn structure(&self) -> Result<Vec<Vec<Vec<Scalar>>>> {
        let n = self.dim();
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let alg = self.lambdas[0].algebra();
                    let mut acc = s(alg, self.f[i][j][k].clone());
                    for l in 0..n {
                        let sym = &(self.p.get(l, i, j, k) + self.p.get(i, l, j, k)) * &Scalar::ratio(1, 2);
                        if !sym.is_zero() {
                            acc = acc.try_sub(&self.lambdas[l].scale(&(Scalar::int(2) * sym)))?;
                        }
                    }
                    c[i][j][k] = acc
                        .as_scalar()
                        .ok_or_else(|| Error::Other(format!("non-constant structure coefficient {acc}")))?;
                }
            }
        }
        Ok(c)
    }

    /// `P^{ij}_{kl}C^m_{ij} − C^m_{kl}` and `P^{ij}_{kl}K_{ij} − K_{kl}`, flattened.
    pub fn projection_defects(&self) -> Result<(Vec<Scalar>, Vec<AlgebraElement>)> {
        let n = self.dim();
        let c = self.structure()?;
        let mut cd = Vec::new();
        let mut kd = Vec::new();
        for k in 0..n {
            for l in 0..n {
                for (m, cm) in c.iter().enumerate() {
                    let _ = m;
                    let mut acc = -cm[k][l].clone();
                    for i in 0..n {
                        for j in 0..n {
                            acc += &(self.p.get(i, j, k, l) * &cm[i][j]);
                        }
                    }
                    cd.push(acc);
                }
                let mut acc = self.k[k][l].scale(&Scalar::int(-1));
                for i in 0..n {
                    for j in 0..n {
                        acc = acc.try_add(&self.k[i][j].scale(self.p.get(i, j, k, l)))?;
                    }
                }
                kd.push(acc);
            }
        }
        Ok((cd, kd))
    }

    /// `dθ^i + ½C^i_{jk}θ^jθ^k` computed in a frame calculus.
    pub fn dtheta_defects(&self, calc: &Arc<Calculus>) -> Result<Vec<Form>> {
        let n = self.dim();
        if calc.rank() != n || !calc.is_central() {
            return Err(Error::NotFrame(calc.name().into()));
        }
        let c = self.structure()?;
        let half = Scalar::ratio(1, 2);
        (0..n)
            .map(|i| {
                let mut acc = Form::cogen(calc, i).d()?;
                for j in 0..n {
                    for k in 0..n {
                        if !c[i][j][k].is_zero() {
                            let w = Form::cogen(calc, j).wedge(&Form::cogen(calc, k))?;
                            acc = acc.try_add(&w.scale(&(&half * &c[i][j][k])))?;
                        }
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// `(S^{ij}_{kl} + δ^i_kδ^j_l)P^{kl}_{mn}`.
    pub fn braid_projection_defect(&self, sigma: &BraidMap) -> Array4 {
        let n = self.dim();
        Array4::from_fn(n, |i, j, m, q| {
            let mut acc = Scalar::zero();
            for k in 0..n {
                for l in 0..n {
                    let mut sv = sigma.entry(i, j, k, l);
                    if i == k && j == l {
                        sv += &Scalar::one();
                    }
                    acc += &(&sv * self.p.get(k, l, m, q));
                }
            }
            acc
        })
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub unknowns: usize,
    pub rank: usize,
    pub consistent: bool,
    /// A particular solution with free variables set to zero.
    pub particular: Option<Vec<Gauss>>,
}

impl LinearSolution {
    /// Dimension of the solution space, `None` if there is none.
    pub fn nullity(&self) -> Option<usize> {
        self.consistent.then_some(self.unknowns - self.rank)
    }

    pub fn is_unique(&self) -> bool {
        self.nullity() == Some(0)
    }
}

/// Row-reduce `A ω = b` over the Gaussian rationals.
pub fn solve_linear(mut a: Vec<Vec<Gauss>>, mut b: Vec<Gauss>, unknowns: usize) -> LinearSolution {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].inverse().expect("nonzero pivot");
        for c in 0..unknowns {
            a[row][c] = &a[row][c] * &inv;
        }
        b[row] = &b[row] * &inv;
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..unknowns {
                    let t = &factor * &a[row][c];
                    a[r][c] = &a[r][c] - &t;
                }
                let t = &factor * &b[row];
                b[r] = &b[r] - &t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let consistent = b[row..].iter().all(|v| v.is_zero());
    let particular = consistent.then(|| {
        let mut x = vec![Gauss::zero(); unknowns];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = b[r].clone();
        }
        x
    });
    LinearSolution { unknowns, rank: pivots.len(), consistent, particular }
}

type FlatKey = (usize, usize, Vec<i32>, (i32, i32));

fn flatten(defects: &[Form], out: &mut BTreeMap<FlatKey, Gauss>) {
    for (n, f) in defects.iter().enumerate() {
        for (b, coef) in f.terms() {
            for (m, sc) in coef.terms() {
                for (pp, c) in sc.terms() {
                    out.insert((n, *b, m.exps().to_vec(), *pp), c.clone());
                }
            }
        }
    }
}

/// Torsion `dθ^a − πDθ^a` against prescribed `dθ` and metric-compatibility defects, flattened.
fn frame_conditions(
    calc: &Arc<Calculus>,
    sigma: &BraidMap,
    metric: &BilinearForm,
    dtheta: &[Form],
    omega: &[Vec<Vec<Scalar>>],
) -> Result<BTreeMap<FlatKey, Gauss>> {
    let conn = Connection::frame(calc, sigma.clone(), omega)?;
    let mut defects = Vec::new();
    for (a, target) in dtheta.iter().enumerate() {
        let pd = conn.apply(&Form::cogen(calc, a))?.pi(0)?.into_form()?;
        defects.push(target.try_sub(&pd)?);
    }
    defects.extend(metric.compat_defects(&conn)?.into_iter().map(|(_, f)| f));
    let mut out = BTreeMap::new();
    flatten(&defects, &mut out);
    Ok(out)
}

/// Constant connection coefficients `ω^a_{bc}`.
pub type Christoffel = Vec<Vec<Vec<Scalar>>>;

/// All constant-coefficient connections `Dθ^a = −ω^a_{bc}θ^b⊗θ^c` that are
/// torsion-free for the prescribed `dθ` and compatible with `metric`.
pub fn solve_frame_connections(
    calc: &Arc<Calculus>,
    sigma: &BraidMap,
    metric: &BilinearForm,
    dtheta: &[Form],
) -> Result<(LinearSolution, Option<Christoffel>)> {
    let n = calc.rank();
    let unknowns = n * n * n;
    let unpack = |v: &[Gauss]| -> Vec<Vec<Vec<Scalar>>> {
        (0..n)
            .map(|a| {
                (0..n).map(|b| (0..n).map(|c| Scalar::constant(v[(a * n + b) * n + c].clone())).collect()).collect()
            })
            .collect()
    };
    let base = frame_conditions(calc, sigma, metric, dtheta, &unpack(&vec![Gauss::zero(); unknowns]))?;
    let mut columns = Vec::new();
    for j in 0..unknowns {
        let mut e = vec![Gauss::zero(); unknowns];
        e[j] = Gauss::one();
        columns.push(frame_conditions(calc, sigma, metric, dtheta, &unpack(&e))?);
    }
    let mut keys: Vec<FlatKey> = base.keys().cloned().collect();
    for c in &columns {
        keys.extend(c.keys().cloned());
    }
    keys.sort();
    keys.dedup();
    let zero = Gauss::zero();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in &keys {
        let b0 = base.get(k).unwrap_or(&zero);
        a.push(columns.iter().map(|c| c.get(k).unwrap_or(&zero) - b0).collect());
        b.push(-b0);
    }
    let sol = solve_linear(a, b, unknowns);
    let omega = sol.particular.as_ref().map(|p| unpack(p));
    Ok((sol, omega))
}

/// Change of basis on the extended plane, as evaluated in both calculi.
pub struct ExtBasis {
    pub xy: Arc<Calculus>,
    pub frame: Arc<Calculus>,
}

impl ExtBasis {
    pub fn new() -> ExtBasis {
        ExtBasis { xy: Calculus::ext_xy(), frame: Calculus::ext2() }
    }

    /// `θ¹ = yξ − (x − hy)η` and `θ² = 2y⁻¹η` in the `ξ, η` calculus.
    pub fn theta_in_xy(&self) -> Result<[Form; 2]> {
        let alg = self.xy.algebra();
        let (x, y) = (g(alg, "x"), g(alg, "y"));
        let xi = Form::cogen(&self.xy, 0);
        let eta = Form::cogen(&self.xy, 1);
        let t1 = xi.left_mul(&y)?.try_sub(&eta.left_mul(&(&x - &y.scale(&Scalar::h())))?)?;
        let t2 = eta.left_mul(&gp(alg, "y", -1).scale(&Scalar::int(2)))?;
        Ok([t1, t2])
    }

    /// `ξ = dx`, `η = dy` in the frame calculus.
    pub fn xy_in_frame(&self) -> Result<[Form; 2]> {
        let alg = self.frame.algebra();
        Ok([Form::d_of(&self.frame, &g(alg, "x"))?, Form::d_of(&self.frame, &g(alg, "y"))?])
    }

    /// Rewrite a `ξ, η` form in the frame calculus.
    pub fn to_frame(&self, w: &Form) -> Result<Form> {
        let images = self.xy_in_frame()?;
        let mut out = Form::zero(&self.frame, 1);
        for (c, a) in w.terms() {
            out = out.try_add(&images[*c].right_mul(a)?)?;
        }
        Ok(out)
    }

    /// `Λ(θ^a⊗θ^b)` for `Λ` given on `ξ, η`.
    pub fn transported_matrix(&self, b: &BilinearForm) -> Result<Vec<Vec<AlgebraElement>>> {
        let t = self.theta_in_xy()?;
        let mut out = Vec::new();
        for ta in &t {
            let mut row = Vec::new();
            for tb in &t {
                row.push(b.eval(&Tensor::of_forms(ta, tb)?)?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

impl Default for ExtBasis {
    fn default() -> Self {
        ExtBasis::new()
    }
}

/// Frame derivation `e_a` of a frame calculus.
pub fn frame_derivation(calc: &Arc<Calculus>, a: usize) -> Result<Derivation> {
    calc.frame_derivations().and_then(|e| e.get(a).cloned()).ok_or_else(|| Error::NotFrame(calc.name().into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_sigma() -> BraidMap {
        BraidMap::wess_zumino(&Calculus::plane(), &Scalar::h())
    }

    #[test]
    fn sigma_table() {
        let s = plane_sigma();
        let c = s.calculus().clone();
        let out = s.apply(&Tensor::basis(&c, &[0, 1]), 0).unwrap();
        assert_eq!(out.to_string(), "eta(x)xi + eta(x)eta*(h)");
        let out = s.apply(&Tensor::basis(&c, &[1, 1]), 0).unwrap();
        assert_eq!(out.to_string(), "eta(x)eta");
        assert!(matches!(s.apply(&Tensor::basis(&c, &[0, 1]), 1), Err(Error::SlotOutOfRange { .. })));
    }

    #[test]
    fn braid_properties() {
        let s = plane_sigma();
        assert!(s.square_defects().unwrap().iter().all(|(_, t)| t.is_zero()));
        assert!(s.braid_defects().unwrap().iter().all(|(_, t)| t.is_zero()));
        assert!(s.pi_defects().unwrap().iter().all(|(_, t)| t.is_zero()));
        for (l, t) in s.bimodule_defects().unwrap() {
            assert!(t.is_zero(), "{l}: {t}");
        }
        let id = [
            [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
            [Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
            [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        assert!(ybe_defect(&id).iter().flatten().all(|x| x.is_zero()));
        assert!(ybe_defect(&rhat(&Scalar::h(), &Scalar::hp())).iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn plane_connection_is_torsion_free() {
        for (mu, rho) in [(0, 0), (1, 0), (0, 1), (3, -2)] {
            let d = Connection::plane(&Scalar::int(mu), &Scalar::int(rho)).unwrap();
            for a in 0..2 {
                let t = d.torsion(&Form::cogen(d.calculus(), a)).unwrap();
                assert!(t.is_zero(), "{t}");
            }
            for (l, t) in d.leibniz_defects().unwrap() {
                assert!(t.is_zero(), "{l}: {t}");
            }
        }
    }

    #[test]
    fn levicivita() {
        let d = Connection::ext_levicivita().unwrap();
        let c = d.calculus().clone();
        let t11 = d.extend(&Tensor::basis(&c, &[0, 0])).unwrap();
        let expected =
            Tensor::basis(&c, &[0, 1, 0]).try_add(&Tensor::basis(&c, &[0, 0, 1])).unwrap().scale(&Scalar::int(-1));
        assert_eq!(t11, expected);
        let r = riemann(&d).unwrap();
        let g = BilinearForm::identity(&c);
        assert_eq!(lower(&r, &g).unwrap().get(0, 1, 0, 1), &Scalar::int(-1));
        let ric = ricci(&r, &g).unwrap();
        assert_eq!(ric, vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]]);
        assert!(g.compat_defects(&d).unwrap().iter().all(|(_, f)| f.is_zero()));
        for a in 0..2 {
            assert!(d.torsion(&Form::cogen(&c, a)).unwrap().is_zero());
        }
    }

    #[test]
    fn unique_solution() {
        let c = Calculus::ext2();
        let dt: Vec<Form> = (0..2).map(|a| Form::cogen(&c, a).d().unwrap()).collect();
        let (sol, omega) = solve_frame_connections(&c, &BraidMap::flip(&c), &BilinearForm::identity(&c), &dt).unwrap();
        assert!(sol.is_unique());
        let lc = Connection::ext_levicivita().unwrap();
        let found = Connection::frame(&c, BraidMap::flip(&c), &omega.unwrap()).unwrap();
        assert_eq!(found.values(), lc.values());
    }

    #[test]
    fn theta_basis_matrices() {
        let gt = in_theta_basis(&g_matrix());
        let h2 = Scalar::h() * Scalar::ratio(1, 2);
        assert_eq!(gt[0][0], Scalar::one() - Scalar::i() * h2.clone());
        assert_eq!(gt[0][1], h2);
    }

    #[test]
    fn skew_derivative_basics() {
        let sd = SkewDerivative::new().unwrap();
        let alg = sd.calculus().algebra().clone();
        assert!(sd.apply(0, &g(&alg, "x")).unwrap().is_one_element());
        assert!(sd.apply(1, &g(&alg, "y")).unwrap().is_one_element());
        assert!(sd.apply(0, &AlgebraElement::one(&alg)).unwrap().is_zero());
    }

    trait IsOne {
        fn is_one_element(&self) -> bool;
    }

    impl IsOne for AlgebraElement {
        fn is_one_element(&self) -> bool {
            self.as_scalar().map(|s| s.is_one()).unwrap_or(false)
        }
    }

    #[test]
    fn invalid_n() {
        assert!(matches!(varpi(VarpiCase::Integer, 1), Err(Error::InvalidN(1))));
        assert!(matches!(varpi(VarpiCase::Half, 4), Err(Error::InvalidN(4))));
    }
}
