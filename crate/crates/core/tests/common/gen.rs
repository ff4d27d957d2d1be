//! Seeded random formulas and models.

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relsem::kripke::WorldSet;
use relsem::{Formula, Frame, Model};
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A formula with exactly `size` nodes (even sizes round down).
pub fn formula_of_size(rng: &mut impl Rng, atoms: &[&str], size: usize) -> Formula {
    if size < 3 {
        let pick = rng.gen_range(0..=atoms.len());
        return match atoms.get(pick) {
            Some(a) => Formula::atom(a),
            None => Formula::Bottom,
        };
    }
    let inner = size - 1;
    let left = rng.gen_range(1..inner);
    let l = formula_of_size(rng, atoms, left);
    let r = formula_of_size(rng, atoms, inner - left);
    if rng.gen_bool(0.5) {
        Formula::and(l, r)
    } else {
        Formula::imp(l, r)
    }
}

/// `count` formulas with sizes drawn uniformly from `1..=max_size`.
pub fn formula_corpus(seed: u64, count: usize, atoms: &[&str], max_size: usize) -> Vec<Formula> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            formula_of_size(&mut rng, atoms, size)
        })
        .collect()
}

pub fn random_frame(rng: &mut impl Rng, n: usize) -> Frame {
    let mask = rng.gen_range(0..1u64 << (n * n));
    Frame::from_relation_mask(n, mask)
}

/// A model on `n` worlds with an arbitrary valuation of `atoms`.
pub fn random_model(rng: &mut impl Rng, n: usize, atoms: &[&str]) -> Model {
    let frame = random_frame(rng, n);
    let valuation: BTreeMap<Arc<str>, WorldSet> = atoms
        .iter()
        .map(|a| {
            (
                Arc::from(*a),
                WorldSet::from_mask(n, rng.gen_range(0..1u64 << n)),
            )
        })
        .collect();
    Model::new(frame, valuation).unwrap()
}

/// Proptest strategy for formulas over `atoms` with at most `depth` levels.
pub fn formula_strategy(
    atoms: &'static [&'static str],
    depth: u32,
) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Bottom),
        4 => proptest::sample::select(atoms).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::imp(l, r)),
        ]
    })
}

/// Proptest strategy for a frame on `1..=max_n` worlds.
pub fn frame_strategy(max_n: usize) -> impl Strategy<Value = Frame> {
    (1..=max_n).prop_flat_map(|n| {
        (0..1u64 << (n * n)).prop_map(move |mask| Frame::from_relation_mask(n, mask))
    })
}

/// A frame together with two subsets of its worlds.
pub fn frame_and_sets(max_n: usize) -> impl Strategy<Value = (Frame, WorldSet, WorldSet)> {
    frame_strategy(max_n).prop_flat_map(|fr| {
        let n = fr.size();
        (Just(fr), 0..1u64 << n, 0..1u64 << n)
            .prop_map(move |(fr, x, y)| (fr, WorldSet::from_mask(n, x), WorldSet::from_mask(n, y)))
    })
}

/// A model on `1..=max_n` worlds with arbitrary values for `atoms`.
pub fn model_strategy(
    max_n: usize,
    atoms: &'static [&'static str],
) -> impl Strategy<Value = Model> {
    frame_strategy(max_n).prop_flat_map(move |fr| {
        let n = fr.size();
        let vals = proptest::collection::vec(0..1u64 << n, atoms.len());
        (Just(fr), vals).prop_map(move |(fr, vals)| {
            let valuation = atoms
                .iter()
                .zip(vals)
                .map(|(a, m)| (Arc::from(*a), WorldSet::from_mask(n, m)))
                .collect();
            Model::new(fr, valuation).unwrap()
        })
    })
}
