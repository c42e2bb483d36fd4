//! The commutative limit: Poisson structure, vector fields, Killing analysis
//! and the involution of the half-plane.

use rand::Rng;

use super::{all_zero, job, Config, Job};
use crate::algebra::{g, uv_w, AlgebraElement, Monomial, Presentation, Terms};
use crate::climit::{
    classical_limit, conformal_curvature, constant, frame, half_plane_metric, killing_defect, killing_fields, lift,
    limit_fields, metric_of, poisson, poisson_formula, poisson_reversed, u, uv_derivation, v, v_pow, w, DiffeoMap,
    Metric, OneForm, VectorField,
};
use crate::error::{Error, Result};
use crate::par::{run_indexed, sample_rng};
use crate::report::Check;
use crate::scalar::Scalar;

fn field_items(label: &str, x: &VectorField) -> Vec<(String, AlgebraElement)> {
    vec![(format!("{label} d_u"), x.au.clone()), (format!("{label} d_v"), x.av.clone())]
}

fn form_items(label: &str, w: &OneForm) -> Vec<(String, AlgebraElement)> {
    vec![(format!("{label} du"), w.du.clone()), (format!("{label} dv"), w.dv.clone())]
}

fn metric_items(m: &Metric) -> Vec<(String, AlgebraElement)> {
    (0..2).flat_map(|a| (0..2).map(move |b| (format!("({a},{b})"), m[a][b].clone()))).collect()
}

fn field_eq(id: &str, eq: &str, x: &VectorField, y: &VectorField) -> Result<Check> {
    Ok(all_zero(id, eq, &field_items("", &x.try_sub(y)?)))
}

fn form_eq(id: &str, eq: &str, x: &OneForm, y: &OneForm) -> Result<Check> {
    Ok(all_zero(id, eq, &form_items("", &x.try_sub(y)?)))
}

/// `c ũ^a ṽ^b` with `0 ≤ a ≤ 2`, `|b| ≤ 2` and a small nonzero integer `c`.
fn random_monomial(rng: &mut impl Rng) -> AlgebraElement {
    let a = rng.random_range(0..=2);
    let b = rng.random_range(-2..=2);
    let mut c = rng.random_range(-3i64..=2);
    if c >= 0 {
        c += 1;
    }
    let mut terms = Terms::new();
    terms.insert(Monomial([a, b].into_iter().collect()), Scalar::int(c));
    AlgebraElement::from_terms(&crate::climit::classical_uv(), terms)
}

pub(crate) fn jobs() -> Vec<Job> {
    vec![
        job("climit.limit", "classical limit of normal-ordered elements", |_| limit_checks()),
        job("climit.derivations", "the fields are limits of the derivations", |cfg: &Config| derivation_checks(cfg)),
        job("climit.poisson", "Poisson structure of the half-plane", |_| {
            let (uu, vv) = (u(), v());
            let u2 = &uu * &uu;
            Ok(vec![
                Check::equal("climit.poisson.u-v", "{u, v} = -2v", &poisson(&uu, &vv)?, &vv.scale(&Scalar::int(-2))),
                Check::zero("climit.poisson.u-u", "{u, u} = 0", &poisson(&uu, &uu)?),
                Check::equal(
                    "climit.poisson.u2-v",
                    "{u^2, v} = -4uv",
                    &poisson(&u2, &vv)?,
                    &(&uu * &vv).scale(&Scalar::int(-4)),
                ),
            ])
        }),
        job("climit.bracket", "Poisson bracket identities", |cfg: &Config| bracket_checks(cfg)),
        job("climit.fields", "Lie algebra of the limit fields", |_| {
            let [x1, x2, x3] = limit_fields();
            Ok(vec![
                field_eq("climit.fields.x1-x2", "[X1, X2] = X1", &x1.commutator(&x2)?, &x1)?,
                field_eq("climit.fields.x2-x3", "[X2, X3] = X3", &x2.commutator(&x3)?, &x3)?,
                field_eq("climit.fields.x3-x1", "[X3, X1] = X2", &x3.commutator(&x1)?, &x2)?,
                all_zero("climit.fields.self", "[X, X] = 0", &field_items("[X3, X3]", &x3.commutator(&x3)?)),
            ])
        }),
        job("climit.killing", "Killing fields of the half-plane", |_| {
            let m = half_plane_metric();
            let mut out = Vec::new();
            for (i, k) in killing_fields().iter().enumerate() {
                out.push(all_zero(
                    &format!("climit.killing.prime-{}", i + 1),
                    "L_X' g = 0",
                    &metric_items(&killing_defect(k, &m)?),
                ));
            }
            for (i, x) in limit_fields().iter().enumerate() {
                out.push(super::some_nonzero(
                    &format!("climit.killing.limit-{}", i + 1),
                    "L_X g != 0",
                    &metric_items(&killing_defect(x, &m)?),
                ));
            }
            Ok(out)
        }),
        job("climit.phi", "the involution of the half-plane", |_| phi_checks()),
        job("climit.curvature", "Gaussian curvature of the half-plane", |_| {
            Ok(vec![Check::equal(
                "climit.curvature.gaussian",
                "K = -1",
                &conformal_curvature(&v_pow(-2))?,
                &constant(Scalar::int(-1)),
            )])
        }),
    ]
}

fn limit_checks() -> Result<Vec<Check>> {
    let p = Presentation::uv();
    let (pu, pv) = (g(&p, "u"), g(&p, "v"));
    let uv = &u() * &v();
    let lambda1 = pv.scale(&(Scalar::ratio(1, 2) * Scalar::h().inverse()?));
    let singular = classical_limit(&lambda1);
    Ok(vec![
        Check::equal("climit.limit.u-v", "lim uv = uv", &classical_limit(&(&pu * &pv))?, &uv),
        Check::equal("climit.limit.v-u", "lim vu = uv", &classical_limit(&(&pv * &pu))?, &uv),
        Check::equal("climit.limit.w", "lim w = -(u^2 + 1)/2v", &classical_limit(&uv_w())?, &w()),
        Check::truth(
            "climit.limit.singular",
            "lim v/2h is singular",
            matches!(singular, Err(Error::SingularLimit(_))),
            match &singular {
                Ok(a) => a.to_string(),
                Err(e) => e.to_string(),
            },
            "singular limit",
        ),
    ])
}

fn derivation_checks(cfg: &Config) -> Result<Vec<Check>> {
    let p = Presentation::uv();
    let gens = [("u", g(&p, "u"), u()), ("v", g(&p, "v"), v()), ("w", uv_w(), w())];
    let fields = limit_fields();
    let mut out = Vec::new();
    for (a, x) in fields.iter().enumerate() {
        for (name, q, c) in &gens {
            out.push(Check::equal(
                &format!("climit.derivations.e{}-{name}", a + 1),
                "lim e_i f = X_i f",
                &classical_limit(&uv_derivation(a, q)?)?,
                &x.apply(c)?,
            ));
        }
    }
    let samples = run_indexed(cfg.exec, 50, |i| -> Result<Vec<(String, AlgebraElement)>> {
        let f = random_monomial(&mut sample_rng(cfg.seed ^ 0x11a1, i));
        let fl = lift(&f)?;
        (0..3)
            .map(|a| {
                Ok((
                    format!("e{} ({f})", a + 1),
                    classical_limit(&uv_derivation(a, &fl)?)?.try_sub(&fields[a].apply(&f)?)?,
                ))
            })
            .collect()
    });
    let mut items = Vec::new();
    for s in samples {
        items.extend(s?);
    }
    out.push(all_zero("climit.derivations.monomials", "lim e_i f = X_i f", &items));
    Ok(out)
}

fn bracket_checks(cfg: &Config) -> Result<Vec<Check>> {
    type Items = Vec<(String, AlgebraElement)>;
    let samples = run_indexed(cfg.exec, 100, |i| -> Result<[(String, AlgebraElement); 5]> {
        let mut rng = sample_rng(cfg.seed ^ 0x9015, i);
        let (f, gg, k) = (random_monomial(&mut rng), random_monomial(&mut rng), random_monomial(&mut rng));
        let label = format!("({f}, {gg}, {k})");
        let fg = poisson(&f, &gg)?;
        let jacobi =
            poisson(&f, &poisson(&gg, &k)?)?.try_add(&poisson(&gg, &poisson(&k, &f)?)?)?.try_add(&poisson(&k, &fg)?)?;
        let anti = fg.try_add(&poisson(&gg, &f)?)?;
        let leibniz =
            poisson(&f, &gg.try_mul(&k)?)?.try_sub(&fg.try_mul(&k)?)?.try_sub(&gg.try_mul(&poisson(&f, &k)?)?)?;
        let formula = fg.try_sub(&poisson_formula(&f, &gg)?)?;
        let ordering = fg.try_sub(&poisson_reversed(&f, &gg)?)?;
        Ok([
            (label.clone(), jacobi),
            (label.clone(), anti),
            (label.clone(), leibniz),
            (label.clone(), formula),
            (label, ordering),
        ])
    });
    let mut cols: [Items; 5] = Default::default();
    for s in samples {
        for (col, item) in cols.iter_mut().zip(s?) {
            col.push(item);
        }
    }
    let [jacobi, anti, leibniz, formula, ordering] = cols;
    Ok(vec![
        all_zero("climit.bracket.jacobi", "Jacobi identity", &jacobi),
        all_zero("climit.bracket.antisymmetry", "{f, g} = -{g, f}", &anti),
        all_zero("climit.bracket.leibniz", "{f, gk} = {f, g}k + g{f, k}", &leibniz),
        all_zero("climit.bracket.formula", "{f, g} = -2v(f_u g_v - f_v g_u)", &formula),
        all_zero("climit.bracket.ordering", "bracket independent of lift ordering", &ordering),
    ])
}

fn phi_checks() -> Result<Vec<Check>> {
    let phi = DiffeoMap::phi();
    let (uu, vv) = (u(), v());
    let zero = constant(Scalar::zero());
    let [rt_u, rt_v] = phi.round_trip()?;
    let mut out = vec![
        all_zero(
            "climit.phi.involution",
            "phi o phi = 1",
            &[("u".to_string(), rt_u.try_sub(&uu)?), ("v".to_string(), rt_v.try_sub(&vv)?)],
        ),
        field_eq(
            "climit.phi.push-du",
            "phi_* d_u = v d_u",
            &phi.pushforward(&VectorField::new(constant(Scalar::one()), zero.clone()))?,
            &VectorField::new(vv.clone(), zero.clone()),
        )?,
        field_eq(
            "climit.phi.push-dv",
            "phi_* d_v = -uv d_u - v^2 d_v",
            &phi.pushforward(&VectorField::new(zero.clone(), constant(Scalar::one())))?,
            &VectorField::new(-(&uu * &vv), -(&vv * &vv)),
        )?,
    ];
    for (i, (x, xp)) in limit_fields().iter().zip(killing_fields().iter()).enumerate() {
        out.push(field_eq(&format!("climit.phi.push-x{}", i + 1), "phi_* X_i = X'_i", &phi.pushforward(x)?, xp)?);
    }
    let [t1, t2] = frame();
    let p1 = phi.pullback_form(&t1)?;
    let p2 = phi.pullback_form(&t2)?;
    let expected1 = t1.scale_by(&vv)?.try_add(&t2.scale_by(&uu)?)?;
    let expected2 = t2.scale_by(&constant(Scalar::int(-1)))?;
    out.push(form_eq("climit.phi.frame-1", "phi* t1 = v t1 + u t2", &p1, &expected1)?);
    out.push(form_eq("climit.phi.frame-2", "phi* t2 = -t2", &p2, &expected2)?);
    let pulled = metric_of(&[p1, p2])?;
    for (i, x) in limit_fields().iter().enumerate() {
        out.push(all_zero(
            &format!("climit.phi.killing-x{}", i + 1),
            "X_i Killing for the pulled-back metric",
            &metric_items(&killing_defect(x, &pulled)?),
        ));
    }
    let lhs = poisson(&phi.pullback(&uu)?, &phi.pullback(&vv)?)?;
    let rhs = phi.pullback(&poisson(&uu, &vv)?)?;
    out.push(Check::nonzero("climit.phi.not-symplectic", "{phi u, phi v} - phi{u, v} != 0", &lhs.try_sub(&rhs)?));
    Ok(out)
}
