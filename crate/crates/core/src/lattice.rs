//! Concept enumeration and lattice order.
//!
//! Formal, object-oriented and three-way concepts come from one NextClosure
//! routine over attribute subsets; the latter two reuse it on a derived
//! context. Common-and-necessary concepts are found by checking candidate
//! extents directly.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::{CompoundContext, Flavor, FormalContext};
use crate::derivation::{
    attribute_closure, cn_extent, cn_intent, extent, intent, necessity, possibility, require, CnIntent,
    DerivationError,
};

/// Largest attribute count enumerated without `Guard::Force`.
pub const ATTRIBUTE_LIMIT: usize = 30;
/// Largest object count for common-and-necessary enumeration without `Guard::Force`.
pub const OBJECT_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("{what} count {size} exceeds the limit of {limit}; pass --force to enumerate anyway")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("cannot combine a {left} concept with a {right} concept")]
    SystemMismatch { left: ConceptSystem, right: ConceptSystem },
    #[error("{0} concepts have no lattice operations here")]
    Unsupported(ConceptSystem),
    #[error("concept does not belong to this context")]
    ContextMismatch,
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

/// Whether the size limits apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Guard {
    #[default]
    Enforce,
    Force,
}

impl Guard {
    fn check(self, what: &'static str, size: usize, limit: usize) -> Result<(), LatticeError> {
        if self == Guard::Enforce && size > limit {
            return Err(LatticeError::TooLarge { what, size, limit });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConceptSystem {
    Formal,
    ObjectOriented,
    ThreeWayObject,
    CommonNecessary,
}

impl ConceptSystem {
    pub fn as_str(self) -> &'static str {
        match self {
            ConceptSystem::Formal => "formal",
            ConceptSystem::ObjectOriented => "object_oriented",
            ConceptSystem::ThreeWayObject => "three_way_object",
            ConceptSystem::CommonNecessary => "common_necessary",
        }
    }
}

impl fmt::Display for ConceptSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An extent with a plain attribute-set intent. Three-way intents range over
/// the joined `A ∪ B` columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
    pub system: ConceptSystem,
}

/// A common-and-necessary concept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnConcept {
    pub extent: ObjectSet,
    pub intent: CnIntent,
}

/// All concepts of one system, canonically ordered, with the cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    system: ConceptSystem,
    concepts: Vec<Concept>,
    /// `(upper, lower)` index pairs, sorted.
    covers: Vec<(usize, usize)>,
}

impl ConceptLattice {
    fn build(system: ConceptSystem, mut concepts: Vec<Concept>) -> Self {
        concepts.sort_by(|a, b| a.extent.cmp_canonical(&b.extent));
        let covers = cover_edges(&concepts);
        ConceptLattice { system, concepts, covers }
    }

    pub fn system(&self) -> ConceptSystem {
        self.system
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// The concept with the largest extent.
    pub fn top(&self) -> &Concept {
        &self.concepts[0]
    }

    /// The concept with the smallest extent.
    pub fn bottom(&self) -> &Concept {
        self.concepts.last().expect("a lattice is never empty")
    }

    pub fn index_of_extent(&self, extent: &ObjectSet) -> Option<usize> {
        self.concepts.iter().position(|c| &c.extent == extent)
    }

    pub fn upper_covers(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |(_, l)| *l == index).map(|(u, _)| *u)
    }

    pub fn lower_covers(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |(u, _)| *u == index).map(|(_, l)| *l)
    }
}

/// Cover pairs of the extent-inclusion order on canonically sorted concepts.
fn cover_edges(concepts: &[Concept]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (lo, c) in concepts.iter().enumerate() {
        // Larger extents come first, so walking upwards from `lo` visits
        // candidates from the smallest superset outwards.
        let mut uppers: Vec<usize> = Vec::new();
        for up in (0..lo).rev() {
            let e = &concepts[up].extent;
            if c.extent.is_proper_subset(e) && !uppers.iter().any(|&k| concepts[k].extent.is_subset(e)) {
                uppers.push(up);
            }
        }
        edges.extend(uppers.into_iter().map(|u| (u, lo)));
    }
    edges.sort_unstable();
    edges
}

/// Every closed attribute set of `ctx`, in lectic order.
fn next_closure(ctx: &FormalContext) -> Vec<AttributeSet> {
    let m = ctx.n_attributes();
    let mut current = attribute_closure(ctx, &ctx.no_attributes());
    let mut out = vec![current.clone()];
    'outer: loop {
        for i in (0..m).rev() {
            if current.contains(i) {
                current.remove(i);
                continue;
            }
            let mut seed = current.clone();
            seed.insert(i);
            let next = attribute_closure(ctx, &seed);
            // Accept when closing adds nothing below `i`.
            if next.difference(&current).iter().all(|k| k >= i) {
                current = next;
                out.push(current.clone());
                continue 'outer;
            }
        }
        break;
    }
    out
}

/// All formal concepts of `ctx`.
pub fn enumerate_formal(ctx: &FormalContext, guard: Guard) -> Result<ConceptLattice, LatticeError> {
    guard.check("attribute", ctx.n_attributes(), ATTRIBUTE_LIMIT)?;
    Ok(formal_unchecked(ctx, ConceptSystem::Formal))
}

fn formal_unchecked(ctx: &FormalContext, system: ConceptSystem) -> ConceptLattice {
    let concepts = next_closure(ctx)
        .into_iter()
        .map(|b| Concept { extent: extent(ctx, &b), intent: b, system })
        .collect();
    ConceptLattice::build(system, concepts)
}

/// All object-oriented concepts, read off the formal concepts of the
/// complement context with extents complemented.
pub fn enumerate_object_oriented(ctx: &FormalContext, guard: Guard) -> Result<ConceptLattice, LatticeError> {
    guard.check("attribute", ctx.n_attributes(), ATTRIBUTE_LIMIT)?;
    let comp = ctx.complement_bits();
    let concepts = next_closure(&comp)
        .into_iter()
        .map(|b| Concept {
            extent: extent(&comp, &b).complement(),
            intent: b,
            system: ConceptSystem::ObjectOriented,
        })
        .collect();
    Ok(ConceptLattice::build(ConceptSystem::ObjectOriented, concepts))
}

/// All object-induced three-way concepts of a plain context.
pub fn enumerate_three_way(ctx: &FormalContext, guard: Guard) -> Result<ConceptLattice, LatticeError> {
    enumerate_three_way_compound(&ctx.appose_negation(), guard)
}

/// All object-induced three-way concepts; intents index the joined columns.
pub fn enumerate_three_way_compound(cctx: &CompoundContext, guard: Guard) -> Result<ConceptLattice, LatticeError> {
    require(cctx, Flavor::ThreeWay)?;
    guard.check("joined attribute", cctx.joined().n_attributes(), ATTRIBUTE_LIMIT)?;
    Ok(formal_unchecked(cctx.joined(), ConceptSystem::ThreeWayObject))
}

/// All common-and-necessary concepts, canonically ordered.
///
/// Every such extent has the shape `extent_A(C) ∩ possibility_B(D)`, so only
/// intersections of a formal A-extent with a union of B-extents are tested.
pub fn enumerate_cn(cctx: &CompoundContext, guard: Guard) -> Result<Vec<CnConcept>, LatticeError> {
    require(cctx, Flavor::CommonNecessary)?;
    guard.check("object", cctx.n_objects(), OBJECT_LIMIT)?;
    let a_extents: Vec<ObjectSet> = next_closure(cctx.a_block())
        .iter()
        .map(|c| extent(cctx.a_block(), c))
        .collect();
    let b_unions = enumerate_object_oriented(cctx.b_block(), Guard::Force)?;

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in &a_extents {
        for b in b_unions.concepts() {
            let x = a.intersection(&b.extent);
            if x.is_empty() || !seen.insert(x.clone()) {
                continue;
            }
            let i = cn_intent(cctx, &x)?;
            if cn_extent(cctx, &i)? == x {
                out.push(CnConcept { extent: x, intent: i });
            }
        }
    }
    out.sort_by(|a, b| a.extent.cmp_canonical(&b.extent));
    Ok(out)
}

/// The same list as [`enumerate_cn`], found by testing every nonempty
/// object subset.
pub fn enumerate_cn_exhaustive(cctx: &CompoundContext, guard: Guard) -> Result<Vec<CnConcept>, LatticeError> {
    require(cctx, Flavor::CommonNecessary)?;
    guard.check("object", cctx.n_objects(), OBJECT_LIMIT)?;
    let n = cctx.n_objects();
    assert!(n < 64, "exhaustive enumeration needs fewer than 64 objects");
    let mut out = Vec::new();
    for mask in 1..(1u64 << n) {
        let x = ObjectSet::from_mask(n, mask);
        let i = cn_intent(cctx, &x)?;
        if cn_extent(cctx, &i)? == x {
            out.push(CnConcept { extent: x, intent: i });
        }
    }
    out.sort_by(|a, b| a.extent.cmp_canonical(&b.extent));
    Ok(out)
}

fn check_pair(ctx: &FormalContext, c1: &Concept, c2: &Concept) -> Result<(), LatticeError> {
    if c1.system != c2.system {
        return Err(LatticeError::SystemMismatch { left: c1.system, right: c2.system });
    }
    if c1.system == ConceptSystem::CommonNecessary {
        return Err(LatticeError::Unsupported(c1.system));
    }
    for c in [c1, c2] {
        if c.extent.universe() != ctx.n_objects() || c.intent.universe() != ctx.n_attributes() {
            return Err(LatticeError::ContextMismatch);
        }
    }
    Ok(())
}

/// Extent inclusion. Formal and three-way intents shrink as extents grow;
/// object-oriented intents grow with them.
pub fn leq(c1: &Concept, c2: &Concept) -> Result<bool, LatticeError> {
    if c1.system != c2.system {
        return Err(LatticeError::SystemMismatch { left: c1.system, right: c2.system });
    }
    if c1.extent.universe() != c2.extent.universe() || c1.intent.universe() != c2.intent.universe() {
        return Err(LatticeError::ContextMismatch);
    }
    Ok(c1.extent.is_subset(&c2.extent))
}

/// Greatest lower bound. `ctx` is the context the concepts were read from:
/// the plain context for formal and object-oriented concepts, the joined
/// context for three-way ones.
pub fn meet(ctx: &FormalContext, c1: &Concept, c2: &Concept) -> Result<Concept, LatticeError> {
    check_pair(ctx, c1, c2)?;
    let system = c1.system;
    Ok(match system {
        ConceptSystem::ObjectOriented => {
            let b = c1.intent.intersection(&c2.intent);
            Concept { extent: possibility(ctx, &b), intent: b, system }
        }
        _ => {
            let x = c1.extent.intersection(&c2.extent);
            Concept { intent: intent(ctx, &x), extent: x, system }
        }
    })
}

/// Least upper bound; `ctx` as for [`meet`].
pub fn join(ctx: &FormalContext, c1: &Concept, c2: &Concept) -> Result<Concept, LatticeError> {
    check_pair(ctx, c1, c2)?;
    let system = c1.system;
    Ok(match system {
        ConceptSystem::ObjectOriented => {
            let x = c1.extent.union(&c2.extent);
            Concept { intent: necessity(ctx, &x), extent: x, system }
        }
        _ => {
            let b = c1.intent.intersection(&c2.intent);
            Concept { extent: extent(ctx, &b), intent: b, system }
        }
    })
}
