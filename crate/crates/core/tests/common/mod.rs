//! Random contexts and brute-force definability oracles shared by the
//! integration tests. The oracles read incidence bits directly and never
//! call the derivation operators under test.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use granule_core::bitset::ObjectSet;
use granule_core::context::{make_cn_context, CompoundContext, FormalContext};
use rand::rngs::StdRng;
use rand::Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

pub fn objs(n: usize, one_based: &[usize]) -> ObjectSet {
    ObjectSet::from_one_based(n, one_based.iter().copied())
}

/// A context with `n` objects and `m` attributes, each cell set with
/// probability `density`.
pub fn random_context(rng: &mut StdRng, n: usize, m: usize, density: f64) -> FormalContext {
    let rows: Vec<Vec<bool>> = (0..n).map(|_| (0..m).map(|_| rng.gen_bool(density)).collect()).collect();
    FormalContext::new(
        (1..=n).map(|i| i.to_string()).collect(),
        (1..=m).map(|j| format!("a{j}")).collect(),
        rows,
    )
    .expect("valid random context")
}

pub fn random_b_block(rng: &mut StdRng, n: usize, m: usize, density: f64) -> FormalContext {
    let rows: Vec<Vec<bool>> = (0..n).map(|_| (0..m).map(|_| rng.gen_bool(density)).collect()).collect();
    FormalContext::new(
        (1..=n).map(|i| i.to_string()).collect(),
        (1..=m).map(|j| format!("b{j}")).collect(),
        rows,
    )
    .expect("valid random block")
}

pub const DENSITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// One member of the small random family: up to 6 objects, 6 A-attributes
/// and 5 B-attributes.
pub struct Family {
    pub ctx: FormalContext,
    pub three_way: CompoundContext,
    pub cn: CompoundContext,
}

pub fn random_family(rng: &mut StdRng) -> Family {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=6);
    let k = rng.gen_range(1..=5);
    let density = DENSITIES[rng.gen_range(0..3)];
    let ctx = random_context(rng, n, m, density);
    let b_density = DENSITIES[rng.gen_range(0..3)];
    let b = random_b_block(rng, n, k, b_density);
    let three_way = ctx.appose_negation();
    let cn = make_cn_context(ctx.clone(), b).expect("same objects");
    Family { ctx, three_way, cn }
}

/// Every object subset of an `n`-object universe.
pub fn all_subsets(n: usize) -> impl Iterator<Item = ObjectSet> {
    (0..(1u64 << n)).map(move |m| ObjectSet::from_mask(n, m))
}

/// Column masks read directly off the incidence relation.
pub fn columns(ctx: &FormalContext) -> Vec<u64> {
    (0..ctx.n_attributes())
        .map(|a| (0..ctx.n_objects()).filter(|&o| ctx.incident(o, a)).fold(0u64, |acc, o| acc | 1 << o))
        .collect()
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Evaluations of every conjunction over a nonempty subset of `cols`.
pub fn conj_sets(cols: &[u64], n: usize) -> BTreeSet<u64> {
    (1u64..(1 << cols.len()))
        .map(|s| (0..cols.len()).filter(|i| s >> i & 1 == 1).fold(full(n), |acc, i| acc & cols[i]))
        .collect()
}

/// Evaluations of every disjunction over a nonempty subset of `cols`.
pub fn disj_sets(cols: &[u64]) -> BTreeSet<u64> {
    (1u64..(1 << cols.len()))
        .map(|s| (0..cols.len()).filter(|i| s >> i & 1 == 1).fold(0, |acc, i| acc | cols[i]))
        .collect()
}

pub fn wedge_sets(ctx: &FormalContext) -> BTreeSet<u64> {
    conj_sets(&columns(ctx), ctx.n_objects())
}

pub fn vee_sets(ctx: &FormalContext) -> BTreeSet<u64> {
    disj_sets(&columns(ctx))
}

/// Conjunctions over attributes and their negations.
pub fn three_way_sets(ctx: &FormalContext) -> BTreeSet<u64> {
    let n = ctx.n_objects();
    let cols = columns(ctx);
    let literals: Vec<u64> = cols.iter().copied().chain(cols.iter().map(|c| !c & full(n))).collect();
    conj_sets(&literals, n)
}

/// `∧C ∧ (∨D)` over nonempty `C ⊆ A` and nonempty `D ⊆ B`.
pub fn cn_sets(cctx: &CompoundContext) -> BTreeSet<u64> {
    let n = cctx.n_objects();
    let conj = conj_sets(&columns(cctx.a_block()), n);
    let disj = disj_sets(&columns(cctx.b_block()));
    conj.iter().flat_map(|c| disj.iter().map(move |d| c & d)).collect()
}

pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Inclusion-maximal members of `sets`.
pub fn maximal(sets: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    let v: Vec<u64> = sets.into_iter().collect();
    v.iter().copied().filter(|&s| !v.iter().any(|&t| t != s && is_subset(s, t))).collect()
}

/// Inclusion-minimal members of `sets`.
pub fn minimal(sets: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    let v: Vec<u64> = sets.into_iter().collect();
    v.iter().copied().filter(|&s| !v.iter().any(|&t| t != s && is_subset(t, s))).collect()
}
