//! The extended plane: frames, metric, connections, and the three-calculus.

use std::sync::Arc;

use super::engine::{confluence_jobs, random_ext_element};
use super::plane::tsum;
use super::{all_zero, claim_zero, demote, job, mat_text, Config, Job};
use crate::algebra::{embed_uv, g, gp, s, uv_images, uv_w, AlgebraElement, Presentation};
use crate::calculus::{lambdas, Calculus, Derivation, Form, Tensor};
use crate::climit::uv_derivation;
use crate::error::Result;
use crate::geometry::{
    antisymmetrizer, frame_derivation, lower, ricci, ricci_half_contraction, riemann, solve_frame_connections, Array4,
    BilinearForm, BraidMap, Connection, ExtBasis, FrameData,
};
use crate::par::{run_indexed, sample_rng};
use crate::report::Check;
use crate::scalar::Scalar;

/// `u`, `v`, `w` and `v⁻¹` in the extended plane.
fn uvw() -> Result<[AlgebraElement; 4]> {
    let e = Presentation::ext();
    let (u, v) = uv_images();
    Ok([u, v, embed_uv(&uv_w())?, gp(&e, "y", 2)])
}

fn frame_sum(calc: &Arc<Calculus>, terms: &[(usize, AlgebraElement)]) -> Result<Form> {
    let mut out = Form::zero(calc, 1);
    for (c, a) in terms {
        out = out.try_add(&Form::cogen(calc, *c).right_mul(a)?)?;
    }
    Ok(out)
}

fn theta12(calc: &Arc<Calculus>) -> Result<Form> {
    Form::cogen(calc, 0).wedge(&Form::cogen(calc, 1))
}

fn random_elements(cfg: &Config, salt: u64, n: usize) -> Result<Vec<AlgebraElement>> {
    run_indexed(cfg.exec, n, |i| random_ext_element(&mut sample_rng(cfg.seed ^ salt, i))).into_iter().collect()
}

fn scalar_el(c: Scalar) -> AlgebraElement {
    s(&Presentation::ext(), c)
}

pub(crate) fn extended_jobs() -> Vec<Job> {
    let mut jobs = vec![
        job("extended.frame", "the frame of the extended plane", |cfg: &Config| frame_checks(cfg)),
        job("extended.dirac", "Dirac operator", |cfg: &Config| dirac_checks(cfg)),
        job("extended.metric", "metric components", |_| metric_checks()),
        job("extended.flat", "flat connection", |_| {
            let d = Connection::ext_flat()?;
            let c = d.calculus().clone();
            let t12 = theta12(&c)?;
            let curv: Vec<(String, Tensor)> = (0..2)
                .map(|a| Ok((format!("t{}", a + 1), d.curvature(&Form::cogen(&c, a))?)))
                .collect::<Result<_>>()?;
            let compat = label_forms(BilinearForm::identity(&c).compat_defects(&d)?);
            Ok(vec![
                Check::equal(
                    "extended.flat.torsion-1",
                    "Theta^1 = -t1 t2",
                    &d.torsion(&Form::cogen(&c, 0))?,
                    &t12.scale(&Scalar::int(-1)),
                ),
                Check::zero("extended.flat.torsion-2", "Theta^2 = 0", &d.torsion(&Form::cogen(&c, 1))?),
                all_zero("extended.flat.curvature", "flat", &curv),
                all_zero("extended.flat.compat", "metric-compatible", &compat),
            ])
        }),
        job("extended.levicivita", "the torsion-free metric connection", |_| levicivita_checks()),
        job("extended.solver", "constant-coefficient connections", |_| solver_checks()),
        job("extended.symplectic", "compatibility with Lambda", |_| {
            let d = Connection::ext_levicivita()?;
            let c = d.calculus().clone();
            let frame = label_forms(BilinearForm::lambda_frame(&c).compat_defects(&d)?);
            let eb = ExtBasis::new();
            let m = eb.transported_matrix(&BilinearForm::lambda(&eb.xy))?;
            let text = mat_text(&m);
            let transported = BilinearForm::new(&c, m, crate::geometry::Symmetry::General);
            let tr = label_forms(transported.compat_defects(&d)?);
            let mut t =
                claim_zero("extended.symplectic.transported", "D Lambda = 0 with Lambda from the xi, eta basis", &tr);
            t.lhs = format!("Lambda(t^a (x) t^b) = {text}; {}", t.lhs);
            Ok(vec![all_zero("extended.symplectic.frame", "D Lambda = 0", &frame), t])
        }),
        job("extended.stehbein", "frame consistency conditions", |_| {
            let mut out = stehbein_checks("extended.stehbein.two", &FrameData::extended(), Some(&Calculus::ext2()))?;
            let l1 = lambdas()[0].clone();
            let abelian = FrameData::lie(vec![l1.clone(), l1.try_mul(&l1)?], vec![vec![vec![Scalar::zero(); 2]; 2]; 2]);
            out.extend(stehbein_checks("extended.stehbein.abelian", &abelian, None)?);
            Ok(out)
        }),
        job("extended.d", "d^2 = 0 and the Leibniz rule on the frames", |cfg: &Config| {
            let fs = random_elements(cfg, 0xddee, 40)?;
            let mut dd = Vec::new();
            let mut leib = Vec::new();
            for calc in [Calculus::ext2(), Calculus::ext3(), Calculus::ext_xy()] {
                for (i, pair) in fs.chunks(2).enumerate() {
                    let (f, k) = (&pair[0], &pair[1]);
                    dd.push((format!("{} #{i}", calc.name()), Form::d_of(&calc, f)?.d()?));
                    let lhs = Form::d_of(&calc, &f.try_mul(k)?)?;
                    let rhs = Form::d_of(&calc, f)?.right_mul(k)?.try_add(&Form::d_of(&calc, k)?.left_mul(f)?)?;
                    leib.push((format!("{} #{i}", calc.name()), lhs.try_sub(&rhs)?));
                }
            }
            Ok(vec![
                all_zero("extended.d.squared", "d^2 = 0", &dd),
                all_zero("extended.d.leibniz", "d(fg) = (df)g + f dg", &leib),
            ])
        }),
    ];
    jobs.extend(confluence_jobs("ext", Presentation::ext));
    jobs.extend(confluence_jobs("uv", Presentation::uv));
    jobs
}

fn label_forms(v: Vec<([usize; 2], Form)>) -> Vec<(String, Form)> {
    v.into_iter().map(|(k, f)| (format!("({},{})", k[0] + 1, k[1] + 1), f)).collect()
}

fn frame_checks(cfg: &Config) -> Result<Vec<Check>> {
    let c = Calculus::ext2();
    let t1 = Form::cogen(&c, 0);
    let t2 = Form::cogen(&c, 1);
    let mut out = Vec::new();
    let fs = random_elements(cfg, 0xce47, 50)?;
    let mut central = Vec::new();
    for calc in [Calculus::ext2(), Calculus::ext3()] {
        for (i, f) in fs.iter().enumerate() {
            for a in 0..calc.rank() {
                central.push((format!("{} t{} #{i}", calc.name(), a + 1), Form::cogen(&calc, a).commutator_with(f)?));
            }
        }
    }
    out.push(all_zero("extended.frame.central", "f t^a = t^a f", &central));
    out.push(Check::zero("extended.frame.wedge-11", "t1 t1 = 0", &t1.wedge(&t1)?));
    out.push(Check::zero("extended.frame.wedge-22", "t2 t2 = 0", &t2.wedge(&t2)?));
    out.push(Check::zero("extended.frame.wedge-12", "t1 t2 + t2 t1 = 0", &t1.wedge(&t2)?.try_add(&t2.wedge(&t1)?)?));
    let mut dual = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let v = Form::cogen(&c, a).evaluate(&frame_derivation(&c, b)?)?;
            let expected = scalar_el(if a == b { Scalar::one() } else { Scalar::zero() });
            dual.push((format!("t{}(e{})", a + 1, b + 1), v.try_sub(&expected)?));
        }
    }
    out.push(all_zero("extended.frame.duality", "t^a(e_b) = delta^a_b", &dual));
    let [l1, l2, _] = lambdas();
    out.push(Check::equal("extended.frame.lie-algebra", "[lambda1, lambda2] = lambda1", &l1.commutator(&l2)?, &l1));
    out.push(Check::equal("extended.frame.d-theta1", "d t1 = -t1 t2", &t1.d()?, &theta12(&c)?.scale(&Scalar::int(-1))));
    out.push(Check::zero("extended.frame.d-theta2", "d t2 = 0", &t2.d()?));
    let [u, v, _, vinv] = uvw()?;
    out.push(Check::equal("extended.frame.theta1-uv", "t1 = v^-1 du", &Form::d_of(&c, &u)?.left_mul(&vinv)?, &t1));
    out.push(Check::equal(
        "extended.frame.theta2-uv",
        "t2 = -v^-1 dv",
        &Form::d_of(&c, &v)?.left_mul(&vinv)?.scale(&Scalar::int(-1)),
        &t2,
    ));
    Ok(out)
}

fn dirac_checks(cfg: &Config) -> Result<Vec<Check>> {
    let c = Calculus::ext2();
    let ls = lambdas();
    let theta = frame_sum(&c, &[(0, -&ls[0]), (1, -&ls[1])])?;
    let fs = random_elements(cfg, 0xd1ac, 100)?;
    let items: Vec<(String, Form)> = fs
        .iter()
        .map(|f| Ok((f.to_string(), Form::d_of(&c, f)?.try_add(&theta.commutator_with(f)?.scale(&Scalar::int(-1)))?)))
        .collect::<Result<_>>()?;
    let [u, v, _, vinv] = uvw()?;
    let coef = Scalar::ratio(-1, 2) * Scalar::h().inverse()?;
    let uv_form = Form::d_of(&c, &u)?.try_sub(&Form::d_of(&c, &v)?.left_mul(&u.try_mul(&vinv)?)?)?.scale(&coef);
    let eb = ExtBasis::new();
    let e = Presentation::ext();
    let (x, y) = (g(&e, "x"), g(&e, "y"));
    let xi = Form::cogen(&eb.xy, 0);
    let eta = Form::cogen(&eb.xy, 1);
    let xy_form = xi
        .left_mul(&gp(&e, "y", -1))?
        .try_add(&eta.left_mul(&(&x - &y.scale(&Scalar::h())).try_mul(&gp(&e, "y", -2))?)?)?
        .scale(&coef);
    let xy_frame = eb.to_frame(&xy_form)?;
    let xy_items: Vec<(String, Form)> = fs
        .iter()
        .take(20)
        .map(|f| Ok((f.to_string(), Form::d_of(&c, f)?.try_sub(&xy_frame.commutator_with(f)?)?)))
        .collect::<Result<_>>()?;
    Ok(vec![
        all_zero("extended.dirac.d", "df = [f, theta]", &items),
        Check::zero("extended.dirac.flat", "d theta + theta^2 = 0", &theta.d()?.try_add(&theta.wedge(&theta)?)?),
        Check::equal("extended.dirac.uv", "theta = -(du - u v^-1 dv)/2h", &uv_form, &theta),
        demote(Check::equal("extended.dirac.xy", "theta in the xi, eta basis", &xy_frame, &theta)),
        all_zero("extended.dirac.xy-d", "df = [f, theta] for the xi, eta expression", &xy_items),
        Check::zero(
            "extended.dirac.xy-flat",
            "d theta + theta^2 = 0 for the xi, eta expression",
            &xy_frame.d()?.try_add(&xy_frame.wedge(&xy_frame)?)?,
        ),
    ])
}

fn metric_checks() -> Result<Vec<Check>> {
    let eb = ExtBasis::new();
    let c = eb.frame.clone();
    let gm = BilinearForm::identity(&c);
    let e = Presentation::ext();
    let (x, y) = (g(&e, "x"), g(&e, "y"));
    let q = |a: &AlgebraElement| a.scale(&Scalar::ratio(1, 4));
    let [xi, eta] = eb.xy_in_frame()?;
    let mut out = Vec::new();
    let expected = [
        ("xi-xi", &xi, &xi, gp(&e, "y", -2).try_add(&q(&(&x * &x)))?),
        ("xi-eta", &xi, &eta, q(&(&x * &y))),
        ("eta-xi", &eta, &xi, q(&(&y * &x))),
        ("eta-eta", &eta, &eta, q(&(&y * &y))),
    ];
    for (name, a, b, rhs) in expected {
        out.push(Check::equal(
            &format!("extended.metric.{name}"),
            "g on xi, eta",
            &gm.eval(&Tensor::of_forms(a, b)?)?,
            &rhs,
        ));
    }
    let [u, v, _, _] = uvw()?;
    let du = Form::d_of(&c, &u)?;
    let dv = Form::d_of(&c, &v)?;
    let v2 = v.try_mul(&v)?;
    let zero = AlgebraElement::zero(&e);
    for (name, a, b, rhs) in
        [("du-du", &du, &du, &v2), ("du-dv", &du, &dv, &zero), ("dv-du", &dv, &du, &zero), ("dv-dv", &dv, &dv, &v2)]
    {
        out.push(Check::equal(
            &format!("extended.metric.{name}"),
            "g on du, dv",
            &gm.eval(&Tensor::of_forms(a, b)?)?,
            rhs,
        ));
    }
    let t1 = Form::cogen(&c, 0);
    let t2 = Form::cogen(&c, 1);
    let xi_expected = frame_sum(&c, &[(0, gp(&e, "y", -1)), (1, x.scale(&Scalar::ratio(1, 2)))])?;
    let eta_expected = t2.right_mul(&y.scale(&Scalar::ratio(1, 2)))?;
    out.push(Check::equal("extended.basis.xi", "2 xi = 2 y^-1 t1 + x t2", &xi, &xi_expected));
    out.push(Check::equal("extended.basis.eta", "2 eta = y t2", &eta, &eta_expected));
    let [b1, b2] = eb.theta_in_xy()?;
    out.push(Check::equal("extended.basis.theta1", "t1 = y xi - (x - hy) eta", &eb.to_frame(&b1)?, &t1));
    out.push(Check::equal("extended.basis.theta2", "t2 = 2 y^-1 eta", &eb.to_frame(&b2)?, &t2));
    Ok(out)
}

fn levicivita_checks() -> Result<Vec<Check>> {
    let d = Connection::ext_levicivita()?;
    let c = d.calculus().clone();
    let gm = BilinearForm::identity(&c);
    let mut out = Vec::new();
    let tors: Vec<(String, Form)> =
        (0..2).map(|a| Ok((format!("t{}", a + 1), d.torsion(&Form::cogen(&c, a))?))).collect::<Result<_>>()?;
    out.push(all_zero("extended.levicivita.torsion", "torsion-free", &tors));
    out.push(all_zero("extended.levicivita.compat", "metric-compatible", &label_forms(gm.compat_defects(&d)?)));
    out.push(all_zero("extended.levicivita.leibniz", "Leibniz rules", &d.leibniz_defects()?));
    let k = Key2::new(&c);
    let r1 = k.basis21(0, 1);
    let r2 = k.basis21(0, 0).scale(&Scalar::int(-1));
    out.push(Check::equal(
        "extended.levicivita.curvature-1",
        "pi12 D^2 t1 = t1 t2 (x) t2",
        &d.curvature(&Form::cogen(&c, 0))?,
        &r1,
    ));
    out.push(Check::equal(
        "extended.levicivita.curvature-2",
        "pi12 D^2 t2 = -t1 t2 (x) t1",
        &d.curvature(&Form::cogen(&c, 1))?,
        &r2,
    ));
    let r = riemann(&d)?;
    let rl = lower(&r, &gm)?;
    out.push(Check::equal("extended.levicivita.gaussian", "R_1212 = -1", rl.get(0, 1, 0, 1), &Scalar::int(-1)));
    let ric = ricci(&r, &gm)?;
    let id = vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]];
    out.push(Check::truth("extended.levicivita.ricci", "R^a_b = delta^a_b", ric == id, mat_text(&ric), mat_text(&id)));
    let half = ricci_half_contraction(&r, &gm)?;
    out.push(demote(Check::truth(
        "extended.levicivita.ricci-half",
        "R^a_b = delta^a_b from the half contraction",
        half == id,
        mat_text(&half),
        mat_text(&id),
    )));
    out.push(riemann_symmetries(&rl));
    Ok(out)
}

/// Basis tensors with a 2-form slot followed by a 1-form slot.
struct Key2 {
    calc: Arc<Calculus>,
}

impl Key2 {
    fn new(calc: &Arc<Calculus>) -> Key2 {
        Key2 { calc: calc.clone() }
    }

    fn basis21(&self, two: usize, one: usize) -> Tensor {
        let mut terms = std::collections::BTreeMap::new();
        terms.insert([two, one].into_iter().collect(), AlgebraElement::one(self.calc.algebra()));
        Tensor::from_terms(&self.calc, &[2, 1], terms)
    }
}

fn riemann_symmetries(r: &Array4) -> Check {
    let n = r.dim();
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = r.get(a, b, c, d);
                    let ok =
                        *v == -r.get(a, b, d, c).clone() && *v == -r.get(b, a, c, d).clone() && v == r.get(c, d, a, b);
                    if !ok {
                        bad.push(format!("R_{}{}{}{} = {v}", a + 1, b + 1, c + 1, d + 1));
                    }
                }
            }
        }
    }
    Check::truth(
        "extended.levicivita.riemann-symmetries",
        "R_abcd = -R_abdc = -R_bacd = R_cdab",
        bad.is_empty(),
        if bad.is_empty() { "all symmetries hold".to_string() } else { bad.join("; ") },
        "all symmetries hold",
    )
}

fn solver_checks() -> Result<Vec<Check>> {
    let c = Calculus::ext2();
    let sigma = BraidMap::flip(&c);
    let gm = BilinearForm::identity(&c);
    let dt: Vec<Form> = (0..2).map(|a| Form::cogen(&c, a).d()).collect::<Result<_>>()?;
    let (sol, omega) = solve_frame_connections(&c, &sigma, &gm, &dt)?;
    let mut out = vec![Check::truth(
        "extended.solver.unique",
        "unique constant-coefficient solution",
        sol.is_unique(),
        format!("unknowns {}, rank {}, consistent {}", sol.unknowns, sol.rank, sol.consistent),
        format!("unknowns {0}, rank {0}, consistent true", sol.unknowns),
    )];
    let lc = Connection::ext_levicivita()?;
    let found = match omega {
        Some(om) => Connection::frame(&c, sigma.clone(), &om)?,
        None => return Ok(out),
    };
    let diffs: Vec<(String, Tensor)> = (0..2)
        .map(|a| Ok((format!("t{}", a + 1), found.values()[a].try_sub(&lc.values()[a])?)))
        .collect::<Result<_>>()?;
    out.push(all_zero("extended.solver.levicivita", "solution is D t1 = -t1 (x) t2, D t2 = t1 (x) t1", &diffs));
    let flat = vec![Form::zero(&c, 2); 2];
    let (sol0, omega0) = solve_frame_connections(&c, &sigma, &gm, &flat)?;
    let zero_ok =
        sol0.consistent && omega0.as_ref().map(|o| o.iter().flatten().flatten().all(|s| s.is_zero())).unwrap_or(false);
    out.push(Check::truth(
        "extended.solver.flat",
        "zero connection solves the C = 0 system",
        zero_ok,
        format!("nullity {:?}", sol0.nullity()),
        "zero solution",
    ));
    Ok(out)
}

fn stehbein_checks(prefix: &str, fd: &FrameData, calc: Option<&Arc<Calculus>>) -> Result<Vec<Check>> {
    let quad: Vec<(String, AlgebraElement)> = fd
        .quadratic_defects()?
        .into_iter()
        .enumerate()
        .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, e)| (format!("({},{})", i + 1, j + 1), e)))
        .collect();
    let idem = fd.idempotency_defect();
    let (cd, kd) = fd.projection_defects()?;
    let mut out = vec![
        all_zero(&format!("{prefix}.quadratic"), "2 lambda lambda P - lambda F - K = 0", &quad),
        Check::truth(&format!("{prefix}.idempotent"), "P^2 = P", idem.is_zero(), format!("{idem:?}"), "0"),
        all_zero(
            &format!("{prefix}.projection-c"),
            "P C = C",
            &cd.into_iter().enumerate().map(|(i, s)| (i.to_string(), s)).collect::<Vec<_>>(),
        ),
        all_zero(
            &format!("{prefix}.projection-k"),
            "P K = K",
            &kd.into_iter().enumerate().map(|(i, s)| (i.to_string(), s)).collect::<Vec<_>>(),
        ),
    ];
    if let Some(calc) = calc {
        let dt: Vec<(String, Form)> =
            fd.dtheta_defects(calc)?.into_iter().enumerate().map(|(i, f)| (format!("t{}", i + 1), f)).collect();
        out.push(all_zero(&format!("{prefix}.dtheta"), "d t^i = -C^i_jk t^j t^k / 2", &dt));
        let bp = fd.braid_projection_defect(&BraidMap::flip(calc));
        out.push(Check::truth(
            &format!("{prefix}.braid-projection"),
            "(S + 1) P = 0",
            bp.is_zero(),
            format!("{bp:?}"),
            "0",
        ));
    }
    let p_ok = fd.p == antisymmetrizer(fd.dim());
    out.push(Check::truth(&format!("{prefix}.antisymmetrizer"), "P is the antisymmetrizer", p_ok, p_ok, true));
    Ok(out)
}

pub(crate) fn three_jobs() -> Vec<Job> {
    vec![
        job("three.lie", "Lie algebra of the lambdas and the derivations", |cfg: &Config| {
            let [l1, l2, l3] = lambdas();
            let mut out = vec![
                Check::equal("three.lie.lambda-12", "[lambda1, lambda2] = lambda1", &l1.commutator(&l2)?, &l1),
                Check::equal("three.lie.lambda-23", "[lambda2, lambda3] = lambda3", &l2.commutator(&l3)?, &l3),
                Check::equal("three.lie.lambda-31", "[lambda3, lambda1] = lambda2", &l3.commutator(&l1)?, &l2),
            ];
            let es = lambdas().map(Derivation::Inner);
            let fs = random_elements(cfg, 0x11e, 30)?;
            for (i, j, k, name) in [(0, 1, 0, "12"), (1, 2, 2, "23"), (2, 0, 1, "31")] {
                let items: Vec<(String, AlgebraElement)> = fs
                    .iter()
                    .map(|f| {
                        let lhs = es[i].apply(&es[j].apply(f)?)?.try_sub(&es[j].apply(&es[i].apply(f)?)?)?;
                        Ok((f.to_string(), lhs.try_sub(&es[k].apply(f)?)?))
                    })
                    .collect::<Result<_>>()?;
                out.push(all_zero(&format!("three.lie.derivation-{name}"), "[e_i, e_j] = e_k", &items));
            }
            Ok(out)
        }),
        job("three.action", "action of the derivations on u, v, w", |_| {
            let p = Presentation::uv();
            let (u, v, w) = (g(&p, "u"), g(&p, "v"), uv_w());
            let z = AlgebraElement::zero(&p);
            let table = [
                [(&u, v.clone()), (&v, z.clone()), (&w, -&u)],
                [(&u, z.clone()), (&v, -&v), (&w, w.clone())],
                [(&u, -&w), (&v, u.clone()), (&w, z)],
            ];
            let names = ["u", "v", "w"];
            let mut out = Vec::new();
            for (a, row) in table.iter().enumerate() {
                for (b, (f, rhs)) in row.iter().enumerate() {
                    out.push(Check::equal(
                        &format!("three.action.e{}-{}", a + 1, names[b]),
                        "action table",
                        &uv_derivation(a, f)?,
                        rhs,
                    ));
                }
            }
            Ok(out)
        }),
        job("three.differentials", "du, dv, dw in the three-calculus", |_| differential_checks()),
        job("three.stehbein", "frame consistency conditions", |_| {
            stehbein_checks("three.stehbein", &FrameData::three(), Some(&Calculus::ext3()))
        }),
        job("three.lie-derivative", "Lie derivatives of the frame and metric", |_| lie_checks()),
    ]
}

fn differential_checks() -> Result<Vec<Check>> {
    let c = Calculus::ext3();
    let [u, v, w, _] = uvw()?;
    let (du, dv, dw) = (Form::d_of(&c, &u)?, Form::d_of(&c, &v)?, Form::d_of(&c, &w)?);
    let h2 = Scalar::int(2) * Scalar::h();
    let t = |i: usize, a: &AlgebraElement| Form::cogen(&c, i).right_mul(a);
    let mut out = vec![
        Check::equal("three.d.u", "du = v t1 - w t3", &du, &t(0, &v)?.try_sub(&t(2, &w)?)?),
        Check::equal("three.d.v", "dv = -v t2 + u t3", &dv, &t(2, &u)?.try_sub(&t(1, &v)?)?),
        Check::equal("three.d.w", "dw = -u t1 + w t2", &dw, &t(1, &w)?.try_sub(&t(0, &u)?)?),
    ];
    let comm = |f: &AlgebraElement, w: &Form| w.commutator_with(f);
    let relations = [
        (
            "u-du",
            "u du - du u = -2h du - 4h w t3",
            comm(&u, &du)?,
            du.scale(&-h2.clone()).try_sub(&t(2, &w)?.scale(&(Scalar::int(4) * Scalar::h())))?,
        ),
        ("v-du", "v du - du v = 2h u t3", comm(&v, &du)?, t(2, &u)?.scale(&h2)),
        (
            "u-dv",
            "u dv - dv u = -2h dv + 2h u t3",
            comm(&u, &dv)?,
            dv.scale(&-h2.clone()).try_add(&t(2, &u)?.scale(&h2))?,
        ),
        ("v-dv", "v dv - dv v = 2h v t3", comm(&v, &dv)?, t(2, &v)?.scale(&h2)),
    ];
    for (name, eq, lhs, rhs) in relations {
        out.push(Check::equal(&format!("three.module.{name}"), eq, &lhs, &rhs));
    }
    let uv = u.try_mul(&v)?;
    let cubic1 = dv
        .left_mul(&uv)?
        .try_sub(&dv.left_mul(&u)?.right_mul(&v)?)?
        .try_sub(&du.left_mul(&v)?.right_mul(&v)?)?
        .try_add(&du.right_mul(&v.try_mul(&v)?)?)?;
    let cubic2 = du
        .left_mul(&v.try_mul(&u)?)?
        .try_sub(&du.left_mul(&v)?.right_mul(&u)?)?
        .try_add(&du.left_mul(&v)?.scale(&h2))?
        .try_add(&dv.left_mul(&v)?.right_mul(&w)?.scale(&Scalar::int(2)))?
        .try_sub(&dv.right_mul(&v.try_mul(&w)?)?.scale(&Scalar::int(2)))?;
    out.push(Check::zero("three.cubic.1", "uv dv - u dv v = v du v - du v^2", &cubic1));
    out.push(Check::zero("three.cubic.2", "v u du - v du u + 2h v du + 2 v dv w - 2 dv v w = 0", &cubic2));
    out.push(Check::equal("three.inversion.1", "[w, du] = 2h u t1", &comm(&w, &du)?, &t(0, &u)?.scale(&h2)));
    out.push(Check::equal("three.inversion.2", "[u, dv] = 2h v t2", &comm(&u, &dv)?, &t(1, &v)?.scale(&h2)));
    out.push(Check::equal("three.inversion.3", "[v, du] = 2h u t3", &comm(&v, &du)?, &t(2, &u)?.scale(&h2)));
    Ok(out)
}

fn lie_checks() -> Result<Vec<Check>> {
    let c = Calculus::ext2();
    let es = lambdas().map(Derivation::Inner);
    let [u, _, w, vinv] = uvw()?;
    let t1 = Form::cogen(&c, 0);
    let t2 = Form::cogen(&c, 1);
    let zero = Form::zero(&c, 1);
    let neg = |f: &Form| f.scale(&Scalar::int(-1));
    let table = [
        (0, 0, neg(&t2)),
        (0, 1, zero.clone()),
        (1, 0, t1.clone()),
        (1, 1, zero),
        (2, 0, neg(&t2.right_mul(&vinv.try_mul(&w)?)?)),
        (2, 1, neg(&t2.right_mul(&vinv.try_mul(&u)?)?.try_add(&t1)?)),
    ];
    let mut out = Vec::new();
    for (a, b, rhs) in table {
        out.push(Check::equal(
            &format!("three.lie-derivative.L{}-t{}", a + 1, b + 1),
            "L_a t^b table",
            &Form::cogen(&c, b).lie(&es[a])?,
            &rhs,
        ));
    }
    let one = Scalar::one();
    let gt = tsum(&c, &[(one.clone(), &[0, 0]), (one.clone(), &[1, 1])])?;
    let sym = tsum(&c, &[(one.clone(), &[0, 1]), (one.clone(), &[1, 0])])?;
    let e = Presentation::ext();
    let l3 = sym
        .right_mul(&AlgebraElement::one(&e).try_add(&vinv.try_mul(&w)?)?)?
        .scale(&Scalar::int(-1))
        .try_sub(&Tensor::basis(&c, &[1, 1]).right_mul(&vinv.try_mul(&u)?.scale(&Scalar::int(2)))?)?;
    let expected = [sym.scale(&Scalar::int(-1)), Tensor::basis(&c, &[0, 0]).scale(&Scalar::int(2)), l3];
    for (a, rhs) in expected.iter().enumerate() {
        let lhs = gt.lie(&es[a])?;
        out.push(Check::equal(&format!("three.killing.L{}-g", a + 1), "L_a g", &lhs, rhs));
        out.push(Check::nonzero(&format!("three.killing.e{}-not-killing", a + 1), "e_a is not Killing", &lhs));
    }
    Ok(out)
}
