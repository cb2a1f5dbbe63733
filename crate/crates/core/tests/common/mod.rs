#![allow(dead_code)]

use nilgraph::group::{FiniteGroup, GeneratorSystem};
use nilgraph::linalg::{q_frac, Q};
use nilgraph::perm::Permutation;
use nilgraph::schreier::{build_schreier, SchreierGraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random permutation of order at least 3.
pub fn random_label<R: Rng>(degree: usize, rng: &mut R) -> Permutation {
    loop {
        let mut images: Vec<usize> = (0..degree).collect();
        images.shuffle(rng);
        let p = Permutation::from_images(images).unwrap();
        if p.order() >= 3 {
            return p;
        }
    }
}

/// A random Schreier graph of a permutation group of order at most 200,
/// relative to a subgroup generated by up to two random elements.
pub fn random_graph<R: Rng>(rng: &mut R) -> Option<SchreierGraph> {
    let degree = rng.random_range(4..=6);
    let k = rng.random_range(1..=2);
    let mut entries = Vec::new();
    for i in 0..k {
        entries.push((format!("z{}", i + 1), random_label(degree, rng)));
    }
    let labels = GeneratorSystem::new(entries).ok()?;
    let group = labels.generate(200).ok()?;
    let h = random_subgroup(&group, rng);
    build_schreier(&group, &h, &labels, None).ok()
}

pub fn random_subgroup<R: Rng>(group: &FiniteGroup, rng: &mut R) -> Vec<Permutation> {
    let count = rng.random_range(0..=2);
    (0..count)
        .map(|_| group.elements()[rng.random_range(0..group.order())].clone())
        .collect()
}

pub fn random_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<Q> {
    (0..n)
        .map(|_| q_frac(rng.random_range(-5..=5), rng.random_range(1..=3)))
        .collect()
}
