//! Concept-forming operators.
//!
//! * [`intent`] / [`extent`]: the Galois pair of a formal context.
//! * [`compound_intent`] / [`compound_extent`]: the same pair over the
//!   flattened columns of a three-way compound context.
//! * [`possibility`] / [`necessity`]: the object-oriented pair.
//! * [`cn_intent`] / [`cn_extent`]: the common-and-necessary pair.
//!
//! All operators are total: the empty set has the full opposite set as its
//! intent/extent, and an empty possibility is empty.

use std::cmp::Ordering;

use thiserror::Error;

use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::{CompoundContext, Flavor, FormalContext};
use crate::cover::{enumerate_minimal_covers, CoverProblem};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum DerivationError {
    #[error("operation needs a {expected} compound context, got {found}")]
    FlavorMismatch { expected: Flavor, found: Flavor },
    #[error("the common-and-necessary intent of the empty set is undefined")]
    EmptyGranule,
}

pub(crate) fn require(cctx: &CompoundContext, expected: Flavor) -> Result<(), DerivationError> {
    if cctx.flavor() == expected {
        Ok(())
    } else {
        Err(DerivationError::FlavorMismatch {
            expected,
            found: cctx.flavor(),
        })
    }
}

/// Attributes shared by every object of `objects`.
pub fn intent(ctx: &FormalContext, objects: &ObjectSet) -> AttributeSet {
    assert_eq!(objects.universe(), ctx.n_objects());
    let mut out = ctx.all_attributes();
    for x in objects.iter() {
        out.intersect_with(ctx.row(x));
    }
    out
}

/// Objects having every attribute of `attributes`.
pub fn extent(ctx: &FormalContext, attributes: &AttributeSet) -> ObjectSet {
    assert_eq!(attributes.universe(), ctx.n_attributes());
    let mut out = ctx.all_objects();
    for a in attributes.iter() {
        out.intersect_with(ctx.column(a));
    }
    out
}

/// `extent(intent(X))`.
pub fn object_closure(ctx: &FormalContext, objects: &ObjectSet) -> ObjectSet {
    extent(ctx, &intent(ctx, objects))
}

/// `intent(extent(B))`.
pub fn attribute_closure(ctx: &FormalContext, attributes: &AttributeSet) -> AttributeSet {
    intent(ctx, &extent(ctx, attributes))
}

/// Intent over `A ∪ B` of a three-way compound context (B indices follow A).
pub fn compound_intent(cctx: &CompoundContext, objects: &ObjectSet) -> Result<AttributeSet, DerivationError> {
    require(cctx, Flavor::ThreeWay)?;
    Ok(intent(cctx.joined(), objects))
}

pub fn compound_extent(cctx: &CompoundContext, attributes: &AttributeSet) -> Result<ObjectSet, DerivationError> {
    require(cctx, Flavor::ThreeWay)?;
    Ok(extent(cctx.joined(), attributes))
}

/// Objects having at least one attribute of `attributes`.
pub fn possibility(ctx: &FormalContext, attributes: &AttributeSet) -> ObjectSet {
    assert_eq!(attributes.universe(), ctx.n_attributes());
    let mut out = ctx.no_objects();
    for a in attributes.iter() {
        out.union_with(ctx.column(a));
    }
    out
}

/// Attributes whose whole extent lies inside `objects`.
pub fn necessity(ctx: &FormalContext, objects: &ObjectSet) -> AttributeSet {
    assert_eq!(objects.universe(), ctx.n_objects());
    AttributeSet::from_indices(
        ctx.n_attributes(),
        (0..ctx.n_attributes()).filter(|&a| ctx.column(a).is_subset(objects)),
    )
}

/// A common-and-necessary intent: a conjunctive A-part and a disjunctive
/// B-part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnIntent {
    pub a_part: AttributeSet,
    pub b_part: AttributeSet,
}

impl CnIntent {
    /// False when no union of B-extents could cover the granule.
    pub fn has_b_cover(&self) -> bool {
        !self.b_part.is_empty()
    }
}

/// `extent_A(a_part) ∩ possibility_B(b_part)`.
pub fn cn_extent(cctx: &CompoundContext, intent_: &CnIntent) -> Result<ObjectSet, DerivationError> {
    require(cctx, Flavor::CommonNecessary)?;
    let mut out = extent(cctx.a_block(), &intent_.a_part);
    out.intersect_with(&possibility(cctx.b_block(), &intent_.b_part));
    Ok(out)
}

/// The canonical common-and-necessary intent of a nonempty granule.
///
/// The A-part is every A-attribute shared by the granule. For the B-part,
/// every inclusion-minimal union `Y` of nonempty B-extents containing the
/// granule is a candidate; the chosen `Y` minimises `|extent_A(a_part) ∩ Y|`,
/// then `|Y|`, then the membership vector. The B-part is every B-attribute
/// with a nonempty extent inside the chosen `Y`. If no union covers the
/// granule the B-part is empty.
pub fn cn_intent(cctx: &CompoundContext, objects: &ObjectSet) -> Result<CnIntent, DerivationError> {
    require(cctx, Flavor::CommonNecessary)?;
    if objects.is_empty() {
        return Err(DerivationError::EmptyGranule);
    }
    let a_part = intent(cctx.a_block(), objects);
    let common = extent(cctx.a_block(), &a_part);

    let b = cctx.b_block();
    let problem = CoverProblem::with_intersecting(
        b.n_attributes(),
        (0..b.n_attributes()).map(|k| (k, b.column(k).clone())),
        objects.clone(),
    );
    let best = enumerate_minimal_covers(&problem)
        .into_iter()
        .map(|c| c.union)
        .min_by(|y1, y2| rank_cover(&common, y1, y2));

    let b_part = match best {
        Some(y) => AttributeSet::from_indices(
            b.n_attributes(),
            (0..b.n_attributes()).filter(|&k| !b.column(k).is_empty() && b.column(k).is_subset(&y)),
        ),
        None => b.no_attributes(),
    };
    Ok(CnIntent { a_part, b_part })
}

fn rank_cover(common: &ObjectSet, y1: &ObjectSet, y2: &ObjectSet) -> Ordering {
    common
        .intersection(y1)
        .len()
        .cmp(&common.intersection(y2).len())
        .then_with(|| y1.len().cmp(&y2.len()))
        .then_with(|| y1.cmp_membership_vector(y2))
}
