//! Enumeration of inclusion-minimal covering unions.
//!
//! Given candidate object sets (attribute extents) and a target set, find every
//! union of candidates that contains the target and is inclusion-minimal among
//! all such achievable unions. This is the search behind the lower
//! approximations of conjunctive granules and the upper approximations of
//! disjunctive ones.
//!
//! The search is a depth-first branch and bound. At every node it picks the
//! uncovered target element with the fewest admissible candidates and
//! branches over those candidates (largest new coverage first). A candidate
//! tried in one branch is excluded from its later siblings, so every
//! candidate subset is explored at most once. A partial union that already
//! contains a recorded cover can only lead to that cover or to something
//! larger, so it is cut.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bitset::{AttributeSet, ObjectSet};

/// Candidate count above which [`enumerate_minimal_covers_exhaustive`] refuses.
pub const EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("{0} candidates exceed the exhaustive search limit of {EXHAUSTIVE_LIMIT}")]
    TooManyCandidates(usize),
    #[error("candidate id {0} appears twice")]
    DuplicateCandidate(usize),
}

/// One cover-search instance.
#[derive(Debug, Clone)]
pub struct CoverProblem {
    candidates: Vec<(usize, ObjectSet)>,
    target: ObjectSet,
    id_universe: usize,
}

/// A minimal covering union and the largest candidate set producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub ids: AttributeSet,
    pub union: ObjectSet,
}

impl CoverProblem {
    /// `id_universe` bounds the candidate ids (normally the attribute count).
    pub fn new(
        id_universe: usize,
        candidates: Vec<(usize, ObjectSet)>,
        target: ObjectSet,
    ) -> Result<Self, CoverError> {
        let mut seen = vec![false; id_universe];
        for (id, _) in &candidates {
            assert!(*id < id_universe, "candidate id {id} out of range");
            if std::mem::replace(&mut seen[*id], true) {
                return Err(CoverError::DuplicateCandidate(*id));
            }
        }
        Ok(Self {
            candidates,
            target,
            id_universe,
        })
    }

    /// Keeps only the candidates that meet the target.
    pub fn with_intersecting(
        id_universe: usize,
        candidates: impl IntoIterator<Item = (usize, ObjectSet)>,
        target: ObjectSet,
    ) -> Self {
        let candidates = candidates
            .into_iter()
            .filter(|(_, ext)| ext.intersects(&target))
            .collect();
        Self::new(id_universe, candidates, target).expect("caller supplies unique ids")
    }

    pub fn target(&self) -> &ObjectSet {
        &self.target
    }

    pub fn candidates(&self) -> &[(usize, ObjectSet)] {
        &self.candidates
    }

    /// All candidates whose extent lies inside `union`.
    fn producing_ids(&self, union: &ObjectSet) -> AttributeSet {
        AttributeSet::from_indices(
            self.id_universe,
            self.candidates
                .iter()
                .filter(|(_, ext)| ext.is_subset(union))
                .map(|(id, _)| *id),
        )
    }

    fn finish(&self, unions: Vec<ObjectSet>) -> Vec<Cover> {
        let mut minimal = minimal_sets(unions);
        minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp_members(b)));
        minimal
            .into_iter()
            .map(|union| Cover {
                ids: self.producing_ids(&union),
                union,
            })
            .collect()
    }
}

/// Keeps the inclusion-minimal members of `sets`, without duplicates.
pub(crate) fn minimal_sets(mut sets: Vec<ObjectSet>) -> Vec<ObjectSet> {
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    let mut out: Vec<ObjectSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| m.is_subset(&s)) {
            out.push(s);
        }
    }
    out
}

fn empty_cover(problem: &CoverProblem) -> Cover {
    Cover {
        ids: AttributeSet::empty(problem.id_universe),
        union: ObjectSet::empty(problem.target.universe()),
    }
}

/// Every inclusion-minimal achievable union containing the target.
///
/// An empty target is covered by the empty candidate set; the single result
/// then has no ids and an empty union.
pub fn enumerate_minimal_covers(problem: &CoverProblem) -> Vec<Cover> {
    let n = problem.target.universe();
    if problem.target.is_empty() {
        return vec![empty_cover(problem)];
    }
    let mut search = Search {
        candidates: &problem.candidates,
        target: &problem.target,
        found: Vec::new(),
    };
    let mut excluded = vec![false; problem.candidates.len()];
    search.descend(ObjectSet::empty(n), &mut excluded);
    problem.finish(search.found)
}

struct Search<'a> {
    candidates: &'a [(usize, ObjectSet)],
    target: &'a ObjectSet,
    found: Vec<ObjectSet>,
}

impl Search<'_> {
    fn descend(&mut self, union: ObjectSet, excluded: &mut [bool]) {
        if self.found.iter().any(|f| f.is_subset(&union)) {
            return;
        }
        let missing = self.target.difference(&union);
        if missing.is_empty() {
            self.found.push(union);
            return;
        }

        // Branch on the uncovered element with the fewest options.
        let mut best: Option<Vec<usize>> = None;
        for e in missing.iter() {
            let options: Vec<usize> = (0..self.candidates.len())
                .filter(|&c| !excluded[c] && self.candidates[c].1.contains(e))
                .collect();
            if options.is_empty() {
                return;
            }
            if best.as_ref().is_none_or(|b| options.len() < b.len()) {
                best = Some(options);
            }
        }
        let mut options = best.expect("missing is nonempty");
        options.sort_by_key(|&c| {
            std::cmp::Reverse(self.candidates[c].1.intersection(&missing).len())
        });

        let mut newly_excluded = Vec::with_capacity(options.len());
        for c in options {
            let next = union.union(&self.candidates[c].1);
            self.descend(next, excluded);
            excluded[c] = true;
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            excluded[c] = false;
        }
    }
}

/// The same result as [`enumerate_minimal_covers`], computed by visiting
/// every candidate subset. Bounded by [`EXHAUSTIVE_LIMIT`].
pub fn enumerate_minimal_covers_exhaustive(problem: &CoverProblem) -> Result<Vec<Cover>, CoverError> {
    let k = problem.candidates.len();
    if k > EXHAUSTIVE_LIMIT {
        return Err(CoverError::TooManyCandidates(k));
    }
    if problem.target.is_empty() {
        return Ok(vec![empty_cover(problem)]);
    }
    let n = problem.target.universe();
    let mut unions: BTreeMap<ObjectSet, ()> = BTreeMap::new();
    for mask in 0u32..(1 << k) {
        let mut union = ObjectSet::empty(n);
        for (i, (_, ext)) in problem.candidates.iter().enumerate() {
            if mask >> i & 1 == 1 {
                union.union_with(ext);
            }
        }
        if union.is_superset(&problem.target) {
            unions.insert(union, ());
        }
    }
    Ok(problem.finish(unions.into_keys().collect()))
}
