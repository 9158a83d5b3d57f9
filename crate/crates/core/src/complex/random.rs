//! Seeded random filtered complexes for property tests.
//!
//! Degrees are filled bottom-up. A column of `D_k` is a random element of
//! `ker D_{k-1}` supported on generators of strictly smaller filtration, so
//! `∂² = 0` and monotonicity hold by construction. Filtrations are small
//! integers, which makes ties common and keeps every value dyadic.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{from_matrices, FilteredComplex, Generator};
use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomComplexParams {
    /// Exact number of generators.
    pub generators: usize,
    /// Generators are spread over degrees `0..degrees`.
    pub degrees: usize,
    /// Probability (in percent) that an eligible column is left zero.
    pub zero_column_percent: u32,
}

impl RandomComplexParams {
    pub fn new(generators: usize, degrees: usize) -> Self {
        RandomComplexParams {
            generators,
            degrees: degrees.max(1),
            zero_column_percent: 25,
        }
    }
}

pub fn random_complex(seed: u64, params: RandomComplexParams) -> FilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.generators;
    if n == 0 {
        return FilteredComplex::zero();
    }
    let max_value = (2 * n) as i64;
    let mut per_degree: BTreeMap<i32, Vec<Generator>> = BTreeMap::new();
    for i in 0..n {
        let degree = rng.gen_range(0..params.degrees) as i32;
        let filtration = rng.gen_range(0..=max_value) as f64;
        per_degree.entry(degree).or_default().push(Generator {
            name: format!("g{i}"),
            degree,
            filtration,
        });
    }

    let mut boundaries: BTreeMap<i32, BitMatrix> = BTreeMap::new();
    for (&k, gens) in &per_degree {
        let lower = per_degree.get(&(k - 1)).map(Vec::as_slice).unwrap_or(&[]);
        let lower_d = boundaries.get(&(k - 1));
        let mut columns = Vec::with_capacity(gens.len());
        for g in gens {
            let eligible: Vec<usize> = (0..lower.len())
                .filter(|&i| lower[i].filtration < g.filtration)
                .collect();
            let skip = rng.gen_range(0..100) < params.zero_column_percent;
            let col = if eligible.is_empty() || skip {
                BitVec::zeros(lower.len())
            } else {
                random_cycle(&mut rng, lower.len(), &eligible, lower_d)
            };
            columns.push(col);
        }
        let m = BitMatrix::from_columns(lower.len(), columns).expect("column lengths agree");
        boundaries.insert(k, m);
    }

    let generators = per_degree.into_values().flatten().collect();
    from_matrices(generators, boundaries)
        .expect("random complexes are well formed")
        .validated()
        .expect("random complexes satisfy the axioms by construction")
}

/// A random nonzero vector of `ker D` supported on `eligible`, or zero if none exists.
fn random_cycle(
    rng: &mut ChaCha8Rng,
    len: usize,
    eligible: &[usize],
    lower_d: Option<&BitMatrix>,
) -> BitVec {
    let basis: Vec<BitVec> = match lower_d {
        Some(d) => {
            let restricted = BitMatrix::from_columns(
                d.rows(),
                eligible.iter().map(|&i| d.column(i).clone()).collect(),
            )
            .expect("restriction keeps row count");
            restricted
                .kernel_basis()
                .into_iter()
                .map(|k| BitVec::from_indices(len, k.ones().map(|t| eligible[t])))
                .collect()
        }
        None => eligible.iter().map(|&i| BitVec::unit(len, i)).collect(),
    };
    if basis.is_empty() {
        return BitVec::zeros(len);
    }
    for _ in 0..8 {
        let mut v = BitVec::zeros(len);
        for b in &basis {
            if rng.gen_bool(0.5) {
                v.xor_assign(b);
            }
        }
        if !v.is_zero() {
            return v;
        }
    }
    basis[rng.gen_range(0..basis.len())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..200 {
            let p = RandomComplexParams::new(12, 4);
            let a = random_complex(seed, p);
            assert_eq!(a, random_complex(seed, p));
            assert!(a.validate().is_ok());
            assert_eq!(a.num_generators(), 12);
        }
    }

    #[test]
    fn size_zero_is_zero_complex() {
        assert!(random_complex(7, RandomComplexParams::new(0, 3)).is_zero());
    }

    #[test]
    fn boundaries_are_not_all_trivial() {
        let nonzero = (0..50)
            .filter(|&s| {
                let c = random_complex(s, RandomComplexParams::new(10, 3));
                let any = c.degrees().any(|k| !c.boundary(k).is_zero());
                any
            })
            .count();
        assert!(
            nonzero > 25,
            "only {nonzero} of 50 complexes had a nonzero boundary"
        );
    }
}
