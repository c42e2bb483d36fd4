//! Randomized engine-health checks and random element generators.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{all_zero, job, Config, Job};
use crate::algebra::{AlgebraElement, Presentation};
use crate::error::Result;
use crate::par::{run_indexed, sample_rng};
use crate::scalar::Scalar;

/// A random word of length `1..=max_len`, with inverse letters for invertible generators.
pub fn random_word(rng: &mut ChaCha8Rng, alg: &Presentation, max_len: usize) -> Vec<(usize, i32)> {
    let len = rng.random_range(1..=max_len);
    (0..len)
        .map(|_| {
            let g = rng.random_range(0..alg.ngens());
            let e = if alg.is_invertible(g) && rng.random_bool(0.5) { -1 } else { 1 };
            (g, e)
        })
        .collect()
}

/// `Σ c_{ij} x^i y^j` with `i + j ≤ max_deg` and small integer coefficients.
pub fn random_plane_poly(rng: &mut ChaCha8Rng, alg: &Arc<Presentation>, max_deg: i32) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(alg);
    for i in 0..=max_deg {
        for j in 0..=(max_deg - i) {
            if rng.random_bool(0.4) {
                let c = rng.random_range(-3i64..=3);
                let word: Vec<(usize, i32)> = [(0, i), (1, j)].into_iter().filter(|(_, e)| *e != 0).collect();
                out = out.try_add(&AlgebraElement::normalize(alg, &Scalar::int(c), &word)?)?;
            }
        }
    }
    Ok(out)
}

/// A random Laurent element `Σ c x^i y^j` of the extended plane, `0 ≤ i ≤ 2`, `|j| ≤ 2`.
pub fn random_ext_element(rng: &mut ChaCha8Rng) -> Result<AlgebraElement> {
    let e = Presentation::ext();
    let mut out = AlgebraElement::zero(&e);
    for _ in 0..rng.random_range(1..=3) {
        let i = rng.random_range(0..=2);
        let j = rng.random_range(-2..=2);
        let c = Scalar::ratio(rng.random_range(-4i64..=4), rng.random_range(1i64..=3));
        let word: Vec<(usize, i32)> = [(0, i), (1, j)].into_iter().filter(|(_, e)| *e != 0).collect();
        out = out.try_add(&AlgebraElement::normalize(&e, &c, &word)?)?;
    }
    Ok(out)
}

const WORDS: usize = 1000;

/// Left and right folding of 1000 random words agree, and products of three
/// random words associate.
pub(crate) fn confluence_jobs(tag: &'static str, alg: fn() -> Arc<Presentation>) -> Vec<Job> {
    let fold_id = format!("engine.{tag}.fold-order");
    let assoc_id = format!("engine.{tag}.associativity");
    vec![
        job(fold_id.clone(), "normal form independent of reduction order", move |cfg: &Config| {
            let p = alg();
            let salt = salt(tag);
            let items = run_indexed(cfg.exec, WORDS, |i| -> Result<(String, AlgebraElement)> {
                let mut rng = sample_rng(cfg.seed ^ salt, i);
                let w = random_word(&mut rng, &p, 6);
                let l = AlgebraElement::normalize(&p, &Scalar::one(), &w)?;
                let r = AlgebraElement::normalize_from_right(&p, &Scalar::one(), &w)?;
                Ok((format!("{w:?}"), l.try_sub(&r)?))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            Ok(vec![all_zero(&fold_id, "normal form independent of reduction order", &items)])
        }),
        job(assoc_id.clone(), "associativity", move |cfg: &Config| {
            let p = alg();
            let salt = salt(tag) ^ 0x5151;
            let items = run_indexed(cfg.exec, WORDS, |i| -> Result<(String, AlgebraElement)> {
                let mut rng = sample_rng(cfg.seed ^ salt, i);
                let [a, b, c] = [0, 1, 2].map(|_| random_word(&mut rng, &p, 2));
                let n = |w: &[(usize, i32)]| AlgebraElement::normalize(&p, &Scalar::one(), w);
                let (a, b, c) = (n(&a)?, n(&b)?, n(&c)?);
                let d = a.try_mul(&b)?.try_mul(&c)?.try_sub(&a.try_mul(&b.try_mul(&c)?)?)?;
                Ok((format!("sample {i}"), d))
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            Ok(vec![all_zero(&assoc_id, "associativity", &items)])
        }),
    ]
}

fn salt(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}
