//! The quantum group `GL_h(2)`: determinant, coaction and symplectic group.

use super::engine::{confluence_jobs, random_word};
use super::{all_zero, demote, job, mat_text, Config, Job};
use crate::algebra::{g, AlgebraElement};
use crate::error::Result;
use crate::par::{run_indexed, sample_rng};
use crate::qgroup::{
    coaction_defect, delta, delta_alt, determinant_commutators, identity_coaction_defect, identity_symplectic,
    kappa_covariance_defect, lambda_matrix, presentation, symplectic_defects, tensor_presentation,
};
use crate::report::Check;
use crate::scalar::Scalar;

/// `lhs − rhs` of the six defining relations.
fn relations() -> Result<Vec<(&'static str, AlgebraElement)>> {
    let p = presentation();
    let [a, b, c, d] = ["A", "B", "C", "D"].map(|n| g(&p, n));
    let h = Scalar::h();
    let dl = delta();
    let m = |x: &AlgebraElement, y: &AlgebraElement| x * y;
    let comm = |x: &AlgebraElement, y: &AlgebraElement| x.commutator(y);
    Ok(vec![
        ("AB", comm(&a, &b)? - (dl.scale(&h) - m(&a, &a).scale(&h))),
        ("AC", comm(&a, &c)? - m(&c, &c).scale(&h)),
        ("AD", comm(&a, &d)? - (m(&c, &d).scale(&h) - m(&c, &a).scale(&h))),
        ("BC", comm(&b, &c)? - (m(&c, &d).scale(&h) + m(&a, &c).scale(&h))),
        ("BD", comm(&b, &d)? - (m(&d, &d).scale(&h) - dl.scale(&h))),
        ("CD", comm(&c, &d)? + m(&c, &c).scale(&h)),
    ])
}

pub(crate) fn jobs() -> Vec<Job> {
    let mut jobs = vec![
        job("qgroup.determinant", "quantum determinant is central", |_| {
            let mut out = vec![all_zero("qgroup.determinant.central", "[delta, T] = 0", &determinant_commutators()?)];
            let dl = delta();
            out.push(Check::zero("qgroup.determinant.self", "[delta, delta] = 0", &dl.commutator(&dl)?));
            out.push(Check::equal(
                "qgroup.determinant.expressions",
                "AD - CB - hCD = DA - CB - hCA",
                &dl,
                &delta_alt(),
            ));
            Ok(out)
        }),
        job("qgroup.relations", "defining relations", |cfg: &Config| {
            let p = presentation();
            let rels = relations()?;
            let mut items: Vec<(String, AlgebraElement)> =
                rels.iter().map(|(n, r)| (n.to_string(), r.clone())).collect();
            let sandwiched = run_indexed(cfg.exec, 50, |i| -> Result<Vec<(String, AlgebraElement)>> {
                let mut rng = sample_rng(cfg.seed ^ 0x9a9a, i);
                let l = AlgebraElement::normalize(&p, &Scalar::one(), &random_word(&mut rng, &p, 2))?;
                let r = AlgebraElement::normalize(&p, &Scalar::one(), &random_word(&mut rng, &p, 2))?;
                rels.iter().map(|(n, rel)| Ok((format!("{l} * {n} * {r}"), l.try_mul(rel)?.try_mul(&r)?))).collect()
            });
            for s in sandwiched {
                items.extend(s?);
            }
            Ok(vec![all_zero("qgroup.relations", "relations hold in the normal form", &items)])
        }),
        job("qgroup.coaction", "coaction on the plane", |_| {
            let (k, kd) = kappa_covariance_defect()?;
            let kappa = Check::reported("qgroup.coaction.kappa", "kappa' - delta kappa", &k, "delta kappa", &kd);
            Ok(vec![
                Check::zero("qgroup.coaction.plane", "x'y' - y'x' = h y'^2", &coaction_defect()?),
                Check::zero(
                    "qgroup.coaction.identity",
                    "identity coaction preserves the plane",
                    &identity_coaction_defect()?,
                ),
                if kd.is_zero() { Check::zero("qgroup.coaction.kappa", "kappa' - delta kappa", &kd) } else { kappa },
            ])
        }),
        job("qgroup.symplectic", "symplectic group", |_| {
            let d = symplectic_defects()?;
            let items: Vec<(String, AlgebraElement)> = (0..2)
                .flat_map(|a| (0..2).map(move |b| (a, b)))
                .map(|(a, b)| (format!("({a},{b})"), d[a][b].clone()))
                .collect();
            let id = identity_symplectic();
            let lam = lambda_matrix();
            Ok(vec![
                all_zero("qgroup.symplectic.entries", "T Lambda T^t = delta Lambda", &items),
                demote(Check::truth(
                    "qgroup.symplectic.identity",
                    "identity T reproduces Lambda",
                    id == lam,
                    mat_text(&id),
                    mat_text(&lam),
                )),
            ])
        }),
    ];
    jobs.extend(confluence_jobs("glh2", presentation));
    jobs.extend(confluence_jobs("glh2-plane", tensor_presentation));
    jobs
}
