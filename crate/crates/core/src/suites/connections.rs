//! Bimodule connections on the plane, the two-parameter families and the
//! symplectic structure.

use rand::Rng;

use super::engine::random_plane_poly;
use super::{all_zero, claim_zero, demote, job, mat_text, some_nonzero, Config, Job};
use crate::algebra::{g, AlgebraElement};
use crate::calculus::{Calculus, Form, Tensor};
use crate::error::{Error, Result};
use crate::geometry::{
    g_matrix, g_prime_matrix, hermitian_matrix, in_theta_basis, j_action, j_apply, kappa, lambda_matrix,
    omega_expected, theta_hat, varpi, BilinearForm, BraidMap, Connection, Mat2, SkewDerivative, VarpiCase,
};
use crate::par::{run_indexed, sample_rng};
use crate::report::Check;
use crate::scalar::Scalar;

const XI: [&str; 2] = ["xi", "eta"];

fn param_label(mu: &Scalar, rho: &Scalar) -> String {
    format!("mu={mu}, rho={rho}")
}

/// The corners `(0,0)`, `(1,0)`, `(0,1)` fix any affine function of `(μ, ρ)`;
/// seeded rationals are added on top.
fn parameter_points(cfg: &Config, extra: usize) -> Vec<(Scalar, Scalar)> {
    let mut pts =
        vec![(Scalar::zero(), Scalar::zero()), (Scalar::one(), Scalar::zero()), (Scalar::zero(), Scalar::one())];
    let mut rng = sample_rng(cfg.seed ^ 0x7a7a, 0);
    for _ in 0..extra {
        let mut r = || Scalar::ratio(rng.random_range(-9i64..=9), rng.random_range(1i64..=5));
        pts.push((r(), r()));
    }
    pts
}

/// Values `μ = 0, 1, 2` fix any polynomial of degree at most two in `μ`.
fn mu_points() -> Vec<Scalar> {
    (0..3).map(Scalar::int).collect()
}

fn torsion_items(conn: &Connection, label: &str) -> Result<Vec<(String, Form)>> {
    (0..conn.calculus().rank())
        .map(|a| {
            Ok((
                format!("{label}, {}", conn.calculus().cogenerators()[a]),
                conn.torsion(&Form::cogen(conn.calculus(), a))?,
            ))
        })
        .collect()
}

pub(crate) fn connection_jobs() -> Vec<Job> {
    vec![
        job("connection.torsion", "torsion-free family", |cfg: &Config| {
            let mut items = Vec::new();
            for (mu, rho) in parameter_points(cfg, 5) {
                items.extend(torsion_items(&Connection::plane(&mu, &rho)?, &param_label(&mu, &rho))?);
            }
            Ok(vec![all_zero("connection.torsion", "Theta(xi) = Theta(eta) = 0", &items)])
        }),
        job("connection.leibniz", "left and twisted right Leibniz rules", |cfg: &Config| {
            let mut items = Vec::new();
            for (mu, rho) in parameter_points(cfg, 0) {
                let l = param_label(&mu, &rho);
                items.extend(
                    Connection::plane(&mu, &rho)?.leibniz_defects()?.into_iter().map(|(k, t)| (format!("{l}, {k}"), t)),
                );
            }
            Ok(vec![all_zero("connection.leibniz", "D(f xi) = df (x) xi + f D xi", &items)])
        }),
        job("connection.curvature", "curvature of the mu family", |_| {
            let mut items = Vec::new();
            for mu in mu_points() {
                let conn = Connection::plane(&mu, &Scalar::zero())?;
                let expected = omega_expected(&mu)?;
                for (a, name) in XI.iter().enumerate() {
                    let r = conn.curvature(&Form::cogen(conn.calculus(), a))?;
                    items.push((format!("mu={mu}, {name}"), r.try_add(&expected[a])?));
                }
            }
            Ok(vec![all_zero("connection.curvature", "pi12 D^2 xi^a = -Omega^a_b (x) xi^b", &items)])
        }),
        job("connection.kappa", "second covariant derivative of kappa", |_| {
            let mut curv = Vec::new();
            let mut full = Vec::new();
            for mu in mu_points() {
                let conn = Connection::plane(&mu, &Scalar::zero())?;
                let k = kappa(conn.calculus())?;
                curv.push((format!("mu={mu}"), conn.curvature(&k)?));
                full.push((format!("mu={mu}"), conn.square(&k)?));
            }
            let mut rho_items = Vec::new();
            for (mu, rho) in [(Scalar::zero(), Scalar::one()), (Scalar::one(), Scalar::one())] {
                let conn = Connection::plane(&mu, &rho)?;
                let k = kappa(conn.calculus())?;
                rho_items.push((param_label(&mu, &rho), conn.square(&k)?));
            }
            Ok(vec![
                all_zero("connection.kappa.curvature", "pi12 D^2 kappa = 0", &curv),
                all_zero("connection.kappa.square", "D^2 kappa = 0", &full),
                claim_zero("connection.kappa.square-rho", "D^2 kappa = 0 with rho", &rho_items),
            ])
        }),
        job("connection.varpi", "two-parameter families", |_| varpi_checks()),
    ]
}

const VARPI_CASES: [(VarpiCase, i64, &str); 5] = [
    (VarpiCase::Integer, 2, "nh.2"),
    (VarpiCase::Integer, 3, "nh.3"),
    (VarpiCase::Integer, 4, "nh.4"),
    (VarpiCase::Half, 3, "half.3"),
    (VarpiCase::Half, 5, "half.5"),
];

fn varpi_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (case, n, tag) in VARPI_CASES {
        let id = |s: &str| format!("connection.varpi.{tag}.{s}");
        let (calc, w) = varpi(case, n)?;
        out.push(demote(Check::zero(&id("pi"), "pi varpi = 0", &w.pi(0)?)));
        let mut comm = Vec::new();
        for name in ["x", "y"] {
            let f = g(calc.algebra(), name);
            comm.push((name.to_string(), w.left_mul(&f)?.try_sub(&w.right_mul(&f)?)?));
        }
        out.push(claim_zero(&id("central"), "x^a varpi = varpi x^a", &comm));
        let points: Vec<(Scalar, Scalar)> = match case {
            VarpiCase::Integer => {
                vec![(Scalar::zero(), Scalar::zero()), (Scalar::one(), Scalar::zero()), (Scalar::zero(), Scalar::one())]
            }
            VarpiCase::Half => vec![(Scalar::zero(), Scalar::zero()), (Scalar::one(), Scalar::zero())],
        };
        let mut tors = Vec::new();
        for (mu, rho) in points {
            let conn = Connection::plane2(case, n, &mu, &rho)?;
            tors.extend(torsion_items(&conn, &param_label(&mu, &rho))?);
        }
        out.push(claim_zero(&id("torsion"), "two-parameter family torsion-free", &tors));
    }
    let rejected = [(VarpiCase::Integer, 1), (VarpiCase::Half, 4)]
        .iter()
        .all(|(c, n)| matches!(varpi(*c, *n), Err(Error::InvalidN(m)) if m == *n));
    out.push(Check::truth(
        "connection.varpi.invalid-n",
        "n out of range rejected",
        rejected,
        "n=1 and n=4/2 rejected",
        "rejected",
    ));
    Ok(out)
}

fn mat_equal(id: &str, eq: &str, lhs: &Mat2, rhs: &Mat2) -> Check {
    Check::truth(id, eq, lhs == rhs, mat_text(lhs), mat_text(rhs))
}

fn half_h(sign: i64) -> Scalar {
    Scalar::ratio(sign, 2) * Scalar::h()
}

fn half_ih(sign: i64) -> Scalar {
    Scalar::i() * half_h(sign)
}

pub(crate) fn symplectic_jobs() -> Vec<Job> {
    vec![
        job("symplectic.compat", "compatibility with the connection", |_| {
            let mut lam = Vec::new();
            for mu in mu_points() {
                let conn = Connection::plane(&mu, &Scalar::zero())?;
                let l = BilinearForm::lambda(conn.calculus());
                lam.extend(l.compat_defects(&conn)?.into_iter().map(|(k, f)| (format!("mu={mu}, {k:?}"), f)));
            }
            let conn = Connection::plane(&Scalar::zero(), &Scalar::one())?;
            let rho: Vec<_> = BilinearForm::lambda(conn.calculus())
                .compat_defects(&conn)?
                .into_iter()
                .map(|(k, f)| (format!("rho=1, {k:?}"), f))
                .collect();
            let mut out = vec![
                all_zero("symplectic.compat.lambda", "(1 (x) Lambda) D = 0", &lam),
                claim_zero("symplectic.compat.lambda-rho", "(1 (x) Lambda) D = 0 with rho", &rho),
            ];
            for (name, ctor) in
                [("g", BilinearForm::metric_g as fn(&_) -> _), ("g-prime", BilinearForm::metric_g_prime)]
            {
                let mut items = Vec::new();
                for mu in mu_points() {
                    let conn = Connection::plane(&mu, &Scalar::zero())?;
                    items.extend(
                        ctor(conn.calculus())
                            .compat_defects(&conn)?
                            .into_iter()
                            .map(|(k, f)| (format!("mu={mu}, {k:?}"), f)),
                    );
                }
                out.push(some_nonzero(&format!("symplectic.compat.{name}"), "metric not compatible", &items));
            }
            Ok(out)
        }),
        job("symplectic.triples", "(1 (x) Lambda) sigma12 sigma23", |_| triple_checks()),
        job("symplectic.sigma", "invariance under sigma", |_| {
            let c = Calculus::plane();
            let s = BraidMap::wess_zumino(&c, &Scalar::h());
            let lab = |v: Vec<([usize; 2], AlgebraElement)>| {
                v.into_iter().map(|(k, e)| (format!("{k:?}"), e)).collect::<Vec<_>>()
            };
            let l = BilinearForm::lambda(&c);
            let gm = BilinearForm::metric_g(&c);
            let gpm = BilinearForm::metric_g_prime(&c);
            let mut out = vec![
                all_zero("symplectic.sigma.lambda", "Lambda o sigma = -Lambda", &lab(l.sigma_defects(&s, -1)?)),
                all_zero("symplectic.sigma.g", "g o sigma = g", &lab(gm.sigma_defects(&s, 1)?)),
                all_zero("symplectic.sigma.g-prime", "g' o sigma = g'", &lab(gpm.sigma_defects(&s, 1)?)),
            ];
            for (name, b) in [("lambda", &l), ("g", &gm), ("g-prime", &gpm)] {
                let det = b.determinant().unwrap_or_else(Scalar::zero);
                out.push(Check::nonzero(&format!("symplectic.nondegenerate.{name}"), "nondegenerate", &det));
            }
            Ok(out)
        }),
        job("symplectic.complex", "complex structure", |_| complex_checks()),
        job("symplectic.skew-derivative", "skew derivatives", |cfg: &Config| skew_checks(cfg)),
    ]
}

fn triple_checks() -> Result<Vec<Check>> {
    let c = Calculus::plane();
    let s = BraidMap::wess_zumino(&c, &Scalar::h());
    let l = BilinearForm::lambda(&c);
    let xi = Form::cogen(&c, 0);
    let eta = Form::cogen(&c, 1);
    let zero = Form::zero(&c, 1);
    let neg = |f: &Form| f.scale(&Scalar::int(-1));
    let expected = [
        ([0, 0, 0], xi.scale(&Scalar::h())),
        ([0, 0, 1], eta.scale(&Scalar::h())),
        ([0, 1, 0], xi.clone()),
        ([0, 1, 1], eta.clone()),
        ([1, 0, 0], neg(&xi)),
        ([1, 0, 1], neg(&eta)),
        ([1, 1, 0], zero.clone()),
        ([1, 1, 1], zero),
    ];
    expected
        .into_iter()
        .map(|(key, rhs)| {
            let t = s.apply(&s.apply(&Tensor::basis(&c, &key), 1)?, 0)?;
            let lhs = l.contract_tail(&t)?;
            let name: Vec<&str> = key.iter().map(|&k| XI[k]).collect();
            Ok(Check::equal(
                &format!("symplectic.triple.{}", name.join("-")),
                "(1 (x) Lambda) sigma12 sigma23",
                &lhs,
                &rhs,
            ))
        })
        .collect()
}

fn complex_checks() -> Result<Vec<Check>> {
    let j = j_action();
    let l = lambda_matrix();
    let gm = g_matrix();
    let gpm = g_prime_matrix();
    let build = |f: &dyn Fn(usize, usize) -> Scalar| -> Mat2 { [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]] };
    let mut out = Vec::new();
    let basis = [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]];
    let jj: Vec<bool> = basis.iter().map(|e| j_apply(&j_apply(e)) == [-&e[0], -&e[1]]).collect();
    out.push(Check::truth(
        "symplectic.complex.j-squared",
        "J^2 = -1",
        jj.iter().all(|b| *b),
        format!("{jj:?}"),
        "[true, true]",
    ));
    out.push(mat_equal(
        "symplectic.complex.g-lambda",
        "g(J a (x) b) = Lambda(a (x) b)",
        &build(&|a, b| &j[a] * &gm[a][b]),
        &l,
    ));
    out.push(mat_equal(
        "symplectic.complex.g-prime-lambda",
        "g'(a (x) b) = Lambda(a (x) J b)",
        &gpm,
        &build(&|a, b| &l[a][b] * &j[b]),
    ));
    out.push(mat_equal(
        "symplectic.complex.g-g-prime",
        "g(J a (x) J b) = g'(a (x) b)",
        &build(&|a, b| &(&j[a] * &j[b]) * &gm[a][b]),
        &gpm,
    ));
    let th = theta_hat();
    let j1 = j_apply(&th[0]);
    let j2 = j_apply(&th[1]);
    out.push(Check::truth(
        "symplectic.complex.j-theta1",
        "J theta1 = theta2",
        j1 == th[1],
        mat_text(std::slice::from_ref(&j1)),
        mat_text(std::slice::from_ref(&th[1])),
    ));
    let m1 = [-&th[0][0], -&th[0][1]];
    out.push(Check::truth(
        "symplectic.complex.j-theta2",
        "J theta2 = -theta1",
        j2 == m1,
        mat_text(std::slice::from_ref(&j2)),
        mat_text(&[m1]),
    ));
    let one = Scalar::one;
    let g_theta = [[one() - half_ih(1), half_h(1)], [half_h(1), one() + half_ih(1)]];
    let gp_theta = [[one() + half_ih(1), half_h(-1)], [half_h(-1), one() - half_ih(1)]];
    let l_theta = [[half_h(1), one() + half_ih(1)], [Scalar::int(-1) + half_ih(1), half_h(-1)]];
    out.push(mat_equal("symplectic.theta-basis.g", "g in the theta basis", &in_theta_basis(&gm), &g_theta));
    out.push(mat_equal("symplectic.theta-basis.g-prime", "g' in the theta basis", &in_theta_basis(&gpm), &gp_theta));
    out.push(mat_equal("symplectic.theta-basis.lambda", "Lambda in the theta basis", &in_theta_basis(&l), &l_theta));
    let ht = in_theta_basis(&hermitian_matrix());
    let lim: Vec<Vec<Scalar>> =
        ht.iter().map(|r| r.iter().map(|e| e.limit_at_zero()).collect::<Result<_>>()).collect::<Result<_>>()?;
    let adjoint: Vec<Vec<Scalar>> = (0..2).map(|a| (0..2).map(|b| lim[b][a].conj()).collect()).collect();
    out.push(Check::truth(
        "symplectic.hermitian.limit",
        "H = g' + i Lambda Hermitian as h -> 0",
        lim == adjoint,
        mat_text(&lim),
        mat_text(&adjoint),
    ));
    let id = vec![vec![one(), Scalar::zero()], vec![Scalar::zero(), one()]];
    out.push(Check::truth(
        "symplectic.hermitian.identity",
        "H -> identity as h -> 0",
        lim == id,
        mat_text(&lim),
        mat_text(&id),
    ));
    Ok(out)
}

fn skew_checks(cfg: &Config) -> Result<Vec<Check>> {
    let sd = SkewDerivative::new()?;
    let alg = sd.calculus().algebra().clone();
    let one = AlgebraElement::one(&alg);
    let mut out = vec![
        Check::equal("symplectic.skew.d1-x", "d_1 x = 1", &sd.apply(0, &g(&alg, "x"))?, &one),
        Check::equal("symplectic.skew.d2-y", "d_2 y = 1", &sd.apply(1, &g(&alg, "y"))?, &one),
        Check::zero("symplectic.skew.d1-one", "d_1 1 = 0", &sd.apply(0, &one)?),
    ];
    let items = run_indexed(cfg.exec, 200, |i| -> Result<Vec<(String, AlgebraElement)>> {
        let mut rng = sample_rng(cfg.seed ^ 0x5eed, i);
        let f = random_plane_poly(&mut rng, &alg, 4)?;
        let mut v = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                v.push((format!("a={a}, b={b}, f={f}"), sd.exchange_defect(a, b, &f)?));
            }
        }
        Ok(v)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?
    .into_iter()
    .flatten()
    .collect::<Vec<_>>();
    out.push(all_zero("symplectic.skew.exchange", "Wess-Zumino exchange relation", &items));
    Ok(out)
}
