//! The plane calculus, κ, and the braid map.

use std::sync::Arc;

use super::engine::{confluence_jobs, random_plane_poly};
use super::{all_zero, job, Config, Job};
use crate::algebra::{g, AlgebraElement, Presentation};
use crate::calculus::{rhat, Calculus, Form, Tensor};
use crate::error::Result;
use crate::geometry::{kappa, ybe_defect, BraidMap};
use crate::par::{run_indexed, sample_rng};
use crate::report::Check;
use crate::scalar::Scalar;

/// `Σ c_i · a_i` with right coefficients.
pub(crate) fn rform(calc: &Arc<Calculus>, terms: &[(usize, AlgebraElement)]) -> Result<Form> {
    let mut out = Form::zero(calc, 1);
    for (c, a) in terms {
        out = out.try_add(&Form::cogen(calc, *c).right_mul(a)?)?;
    }
    Ok(out)
}

/// `Σ c · basis(key)` with scalar coefficients.
pub(crate) fn tsum(calc: &Arc<Calculus>, terms: &[(Scalar, &[usize])]) -> Result<Tensor> {
    let rank = terms.first().map(|t| t.1.len()).unwrap_or(2);
    let mut out = Tensor::zero(calc, &vec![1; rank]);
    for (c, key) in terms {
        out = out.try_add(&Tensor::basis(calc, key).scale(c))?;
    }
    Ok(out)
}

pub(crate) fn calculus_jobs() -> Vec<Job> {
    let mut jobs = vec![
        job("plane.swap", "commutation of coordinates with differentials", |_| {
            let c = Calculus::plane();
            let a = c.algebra().clone();
            let (x, y) = (g(&a, "x"), g(&a, "y"));
            let h = Scalar::h();
            let xi = Form::cogen(&c, 0);
            let eta = Form::cogen(&c, 1);
            let xxi = rform(&c, &[(0, &x - &y.scale(&h)), (1, &x.scale(&h) + &y.scale(&h.pow(2)))])?;
            let xeta = rform(&c, &[(1, &x + &y.scale(&h))])?;
            let yxi = rform(&c, &[(0, y.clone()), (1, -y.scale(&h))])?;
            let yeta = rform(&c, &[(1, y.clone())])?;
            Ok(vec![
                Check::equal("plane.swap.x-xi", "x xi", &xi.left_mul(&x)?, &xxi),
                Check::equal("plane.swap.x-eta", "x eta", &eta.left_mul(&x)?, &xeta),
                Check::equal("plane.swap.y-xi", "y xi", &xi.left_mul(&y)?, &yxi),
                Check::equal("plane.swap.y-eta", "y eta", &eta.left_mul(&y)?, &yeta),
            ])
        }),
        job("plane.wedge", "exterior products of differentials", |_| {
            let c = Calculus::plane();
            let xi = Form::cogen(&c, 0);
            let eta = Form::cogen(&c, 1);
            let xe = xi.wedge(&eta)?;
            Ok(vec![
                Check::equal("plane.wedge.xi-xi", "xi^2 = h xi eta", &xi.wedge(&xi)?, &xe.scale(&Scalar::h())),
                Check::equal("plane.wedge.xi-eta", "xi eta = -eta xi", &xe, &eta.wedge(&xi)?.scale(&Scalar::int(-1))),
                Check::zero("plane.wedge.eta-eta", "eta^2 = 0", &eta.wedge(&eta)?),
            ])
        }),
        job("plane.consistency", "calculus relations compatible with the algebra", |_| {
            let calcs = [
                Calculus::plane(),
                Calculus::plane2(),
                Calculus::ext_xy(),
                Calculus::ext2(),
                Calculus::ext3(),
                Calculus::qgroup_plane(),
            ];
            calcs
                .iter()
                .map(|c| {
                    let d = c.consistency_defects()?;
                    let text: Vec<String> = d.iter().map(|(l, v)| format!("{l}: {v}")).collect();
                    Ok(Check::truth(
                        &format!("plane.consistency.{}", c.name()),
                        "calculus relations compatible with the algebra",
                        d.is_empty(),
                        if text.is_empty() { "consistent".to_string() } else { text.join("; ") },
                        "consistent",
                    ))
                })
                .collect()
        }),
        job("plane.d", "d^2 = 0 and the Leibniz rule", |cfg: &Config| {
            let c = Calculus::plane();
            let a = c.algebra().clone();
            let samples = run_indexed(cfg.exec, 50, |i| -> Result<((String, Form), (String, Form))> {
                let mut rng = sample_rng(cfg.seed ^ 0xd0d0, i);
                let f = random_plane_poly(&mut rng, &a, 4)?;
                let k = random_plane_poly(&mut rng, &a, 3)?;
                let dd = Form::d_of(&c, &f)?.d()?;
                let lhs = Form::d_of(&c, &f.try_mul(&k)?)?;
                let rhs = Form::d_of(&c, &f)?.right_mul(&k)?.try_add(&Form::d_of(&c, &k)?.left_mul(&f)?)?;
                Ok(((format!("d(d({f}))"), dd), (format!("d(({f})({k}))"), lhs.try_sub(&rhs)?)))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            let (dd, leib): (Vec<_>, Vec<_>) = samples.into_iter().unzip();
            Ok(vec![
                all_zero("plane.d.squared", "d^2 = 0", &dd),
                all_zero("plane.d.leibniz", "d(fg) = (df)g + f dg", &leib),
            ])
        }),
        job("plane.kappa", "properties of kappa", |_| kappa_checks()),
    ];
    jobs.extend(confluence_jobs("plane", Presentation::plane));
    jobs.extend(confluence_jobs("plane2", Presentation::plane2));
    jobs
}

fn kappa_checks() -> Result<Vec<Check>> {
    let c = Calculus::plane();
    let a = c.algebra().clone();
    let k = kappa(&c)?;
    let xi = Form::cogen(&c, 0);
    let eta = Form::cogen(&c, 1);
    let sigma = BraidMap::wess_zumino(&c, &Scalar::h());
    let mut out = Vec::new();
    for name in ["x", "y"] {
        let f = g(&a, name);
        out.push(Check::equal(
            &format!("plane.kappa.commutes-{name}"),
            "kappa central",
            &k.left_mul(&f)?,
            &k.right_mul(&f)?,
        ));
    }
    for (name, w) in [("xi", &xi), ("eta", &eta)] {
        out.push(Check::equal(
            &format!("plane.kappa.anticommutes-{name}"),
            "kappa anticommutes with differentials",
            &w.wedge(&k)?,
            &k.wedge(w)?.scale(&Scalar::int(-1)),
        ));
    }
    out.push(Check::zero("plane.kappa.square", "kappa^2 = 0", &k.wedge(&k)?));
    for (name, w) in [("xi", &xi), ("eta", &eta)] {
        out.push(Check::equal(
            &format!("plane.kappa.sigma-{name}-kappa"),
            "sigma exchanges kappa",
            &sigma.apply(&Tensor::of_forms(w, &k)?, 0)?,
            &Tensor::of_forms(&k, w)?,
        ));
        out.push(Check::equal(
            &format!("plane.kappa.sigma-kappa-{name}"),
            "sigma exchanges kappa",
            &sigma.apply(&Tensor::of_forms(&k, w)?, 0)?,
            &Tensor::of_forms(w, &k)?,
        ));
    }
    let kk = Tensor::of_forms(&k, &k)?;
    out.push(Check::equal("plane.kappa.sigma-kappa-kappa", "sigma exchanges kappa", &sigma.apply(&kk, 0)?, &kk));
    Ok(out)
}

fn identity4() -> [[Scalar; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Scalar::one() } else { Scalar::zero() }))
}

fn ybe_check(id: &str, r: &[[Scalar; 4]; 4]) -> Check {
    let d = ybe_defect(r);
    let items: Vec<(String, Scalar)> = d
        .into_iter()
        .enumerate()
        .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, v)| (format!("({i},{j})"), v)))
        .collect();
    all_zero(id, "quantum Yang-Baxter equation", &items)
}

fn braid_checks(prefix: &str, s: &BraidMap, bimodule: bool) -> Result<Vec<Check>> {
    let lab2 = |v: Vec<([usize; 2], Tensor)>| v.into_iter().map(|(k, t)| (format!("{k:?}"), t)).collect::<Vec<_>>();
    let mut out = vec![
        all_zero(&format!("{prefix}.square"), "sigma^2 = 1", &lab2(s.square_defects()?)),
        all_zero(
            &format!("{prefix}.braid"),
            "braid relation",
            &s.braid_defects()?.into_iter().map(|(k, t)| (format!("{k:?}"), t)).collect::<Vec<_>>(),
        ),
        all_zero(&format!("{prefix}.pi"), "pi o (sigma + 1) = 0", &lab2(s.pi_defects()?)),
    ];
    if bimodule {
        out.push(all_zero(&format!("{prefix}.bilinear"), "sigma is bilinear", &s.bimodule_defects()?));
    }
    Ok(out)
}

pub(crate) fn sigma_jobs() -> Vec<Job> {
    vec![
        job("sigma.ybe", "quantum Yang-Baxter equation", |_| {
            let h = Scalar::h();
            Ok(vec![
                ybe_check("sigma.ybe.one-parameter", &rhat(&h, &h)),
                ybe_check("sigma.ybe.two-parameter", &rhat(&h, &Scalar::hp())),
                ybe_check("sigma.ybe.identity", &identity4()),
            ])
        }),
        job("sigma.plane", "braid map of the plane", |_| {
            let c = Calculus::plane();
            let s = BraidMap::wess_zumino(&c, &Scalar::h());
            let mut out = braid_checks("sigma.plane", &s, true)?;
            let h = Scalar::h();
            let one = Scalar::one();
            let table: [(&str, [usize; 2], Tensor); 4] = [
                (
                    "xi-xi",
                    [0, 0],
                    tsum(&c, &[(one.clone(), &[0, 0]), (-&h, &[0, 1]), (h.clone(), &[1, 0]), (h.pow(2), &[1, 1])])?,
                ),
                ("xi-eta", [0, 1], tsum(&c, &[(one.clone(), &[1, 0]), (h.clone(), &[1, 1])])?),
                ("eta-xi", [1, 0], tsum(&c, &[(one.clone(), &[0, 1]), (-&h, &[1, 1])])?),
                ("eta-eta", [1, 1], tsum(&c, &[(one, &[1, 1])])?),
            ];
            for (name, key, expected) in table {
                out.push(Check::equal(
                    &format!("sigma.plane.table.{name}"),
                    "sigma transforms as R-hat",
                    &s.apply(&Tensor::basis(&c, &key), 0)?,
                    &expected,
                ));
            }
            Ok(out)
        }),
        job("sigma.plane2", "braid map of the two-parameter plane", |_| {
            let c = Calculus::plane2();
            braid_checks("sigma.plane2", &BraidMap::wess_zumino(&c, &Scalar::hp()), true)
        }),
        job("sigma.flip", "flip on the extended frames", |_| {
            let mut out = braid_checks("sigma.flip.ext2", &BraidMap::flip(&Calculus::ext2()), true)?;
            out.extend(braid_checks("sigma.flip.ext3", &BraidMap::flip(&Calculus::ext3()), true)?);
            Ok(out)
        }),
    ]
}
