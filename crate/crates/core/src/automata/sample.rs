//! Uniform random generation by walking a count table backwards.

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dp::{count_dp, CountTable};
use super::{transitions, AutomatonError, Layer, ModelId, PathWord, Step};

/// Draws words of `n` steps ending at `end_level`, uniformly over all such words.
#[derive(Debug, Clone)]
pub struct Sampler {
    model: ModelId,
    n: usize,
    end_level: usize,
    table: CountTable,
}

impl Sampler {
    pub fn new(model: ModelId, n: usize, end_level: usize) -> Result<Self, AutomatonError> {
        let table = count_dp(model, n.max(end_level));
        let sampler = Sampler {
            model,
            n,
            end_level,
            table,
        };
        if sampler.support_size().is_zero() {
            return Err(AutomatonError::EmptySupport {
                model,
                n,
                end_level,
            });
        }
        Ok(sampler)
    }

    pub fn support_size(&self) -> BigUint {
        self.table
            .level_total(self.n, self.end_level)
            .unwrap_or_default()
    }

    fn count(&self, n: usize, level: usize, layer: Layer) -> BigUint {
        self.table.get(n, level, layer).cloned().unwrap_or_default()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PathWord {
        let layers = self.model.layers();
        let weights: Vec<BigUint> = layers
            .iter()
            .map(|&l| self.count(self.n, self.end_level, l))
            .collect();
        let mut layer = layers[pick(rng, &weights)];
        let mut level = self.end_level;
        let mut steps: Vec<Step> = Vec::with_capacity(self.n);

        for m in (1..=self.n).rev() {
            // Predecessor states one step earlier, weighted by how many prefixes reach them.
            let mut candidates: Vec<(usize, Layer, Step)> = Vec::new();
            let mut weights = Vec::new();
            for prev_level in 0..self.table.exact_levels(m - 1) {
                for &prev_layer in layers {
                    let w = self.count(m - 1, prev_level, prev_layer);
                    if w.is_zero() {
                        continue;
                    }
                    let cap = level.max(prev_level);
                    let edges = transitions(self.model, prev_level, prev_layer, cap)
                        .expect("layers come from the model");
                    for t in edges {
                        if t.level == level && t.layer == layer {
                            candidates.push((prev_level, prev_layer, t.step));
                            weights.push(w.clone());
                        }
                    }
                }
            }
            let (prev_level, prev_layer, step) = candidates[pick(rng, &weights)];
            steps.push(step);
            level = prev_level;
            layer = prev_layer;
        }
        steps.reverse();
        PathWord::new(self.model, steps).expect("backward walk follows transitions")
    }
}

/// Index chosen with probability proportional to its weight.
fn pick<R: Rng + ?Sized>(rng: &mut R, weights: &[BigUint]) -> usize {
    let total: BigUint = weights.iter().sum();
    assert!(!total.is_zero(), "no predecessor carries weight");
    let mut r = rng.gen_biguint_below(&total);
    for (i, w) in weights.iter().enumerate() {
        if &r < w {
            return i;
        }
        r -= w;
    }
    unreachable!("r < total")
}

/// One uniform draw, deterministic in `seed`.
pub fn sample_uniform(
    model: ModelId,
    n: usize,
    end_level: usize,
    seed: u64,
) -> Result<PathWord, AutomatonError> {
    let sampler = Sampler::new(model, n, end_level)?;
    Ok(sampler.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_support() {
        for seed in 0..5 {
            let w = sample_uniform(ModelId::DapLr, 2, 0, seed).unwrap();
            assert_eq!(w.to_string(), "UD1");
        }
    }

    #[test]
    fn four_step_returns() {
        let w = sample_uniform(ModelId::DapLr, 4, 0, 1).unwrap();
        assert!(["UUUD3", "UD1UD1"].contains(&w.to_string().as_str()));
    }

    #[test]
    fn deterministic_under_seed() {
        let a = sample_uniform(ModelId::SkewSolved, 9, 1, 42).unwrap();
        let b = sample_uniform(ModelId::SkewSolved, 9, 1, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.len(), a.end_level()), (9, 1));
    }

    #[test]
    fn empty_support() {
        assert_eq!(
            Sampler::new(ModelId::DapLr, 1, 0).unwrap_err(),
            AutomatonError::EmptySupport {
                model: ModelId::DapLr,
                n: 1,
                end_level: 0
            }
        );
    }

    #[test]
    fn dap_rl_high_end_level() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sampler = Sampler::new(ModelId::DapRl, 3, 7).unwrap();
        for _ in 0..20 {
            let w = sampler.sample(&mut rng);
            assert_eq!((w.len(), w.end_level()), (3, 7));
        }
    }
}
