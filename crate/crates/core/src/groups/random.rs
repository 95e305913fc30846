use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{AlgebraElement, GroupElement, GroupSpec};
use crate::error::{Error, Result};

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction, radius uniform in [0, scale].
pub fn algebra_element_rng<R: Rng>(spec: &GroupSpec, scale: f64, rng: &mut R) -> Result<AlgebraElement> {
    if !(scale >= 0.0) || !scale.is_finite() {
        return Err(Error::InvalidParameter(format!("scale {scale}")));
    }
    let mut v: Vec<f64> = (0..spec.dim()).map(|_| rng.sample(StandardNormal)).collect();
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r = scale * rng.random::<f64>();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x *= r / n);
    }
    spec.from_coords(&v)
}

pub fn random_algebra_element(spec: &GroupSpec, scale: f64, seed: u64) -> Result<AlgebraElement> {
    algebra_element_rng(spec, scale, &mut rng(seed))
}

#[derive(Clone, Debug)]
pub struct RandomWord {
    pub word: Vec<AlgebraElement>,
    pub element: GroupElement,
}

/// Product of one to three exponentials, each factor of norm at most `scale`.
pub fn group_element_rng<R: Rng>(spec: &GroupSpec, scale: f64, rng: &mut R) -> Result<RandomWord> {
    let len = rng.random_range(1..=3);
    word_rng(spec, scale, len, rng)
}

pub(crate) fn word_rng<R: Rng>(spec: &GroupSpec, scale: f64, len: usize, rng: &mut R) -> Result<RandomWord> {
    let word = (0..len).map(|_| algebra_element_rng(spec, scale, rng)).collect::<Result<Vec<_>>>()?;
    let element = spec.exp_word(&word)?;
    Ok(RandomWord { word, element })
}

pub fn random_group_element(spec: &GroupSpec, scale: f64, seed: u64) -> Result<RandomWord> {
    group_element_rng(spec, scale, &mut rng(seed))
}

/// Word of exactly `len` factors.
pub fn random_word<R: Rng>(spec: &GroupSpec, scale: f64, len: usize, rng: &mut R) -> Result<RandomWord> {
    word_rng(spec, scale, len, rng)
}
