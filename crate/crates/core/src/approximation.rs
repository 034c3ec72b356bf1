//! Approaching descriptions: the definable granules nearest to one that is
//! not definable.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::{CompoundContext, Flavor, FormalContext};
use crate::cover::{enumerate_minimal_covers, minimal_sets, CoverProblem};
use crate::definability::{
    is_cn_definable, is_three_way_definable, is_vee_definable, is_wedge_definable, DefinabilityError, Mode, Reason,
};
use crate::derivation::{cn_extent, cn_intent, compound_extent, compound_intent, extent, intent, necessity, possibility, require};
use crate::formula::{evaluate, Description, Scope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Upper,
    Lower,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "upper" => Ok(Direction::Upper),
            "lower" => Ok(Direction::Lower),
            other => Err(format!("unknown direction `{other}`")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApproximationError {
    #[error("not applicable: {0}")]
    Inapplicable(Reason),
    #[error("no lower approximation is defined in mode {0}")]
    Unsupported(Mode),
    #[error(transparent)]
    Definability(#[from] DefinabilityError),
}

impl From<crate::derivation::DerivationError> for ApproximationError {
    fn from(e: crate::derivation::DerivationError) -> Self {
        ApproximationError::Definability(e.into())
    }
}

/// The nearest definable granules on one side of a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub direction: Direction,
    pub mode: Mode,
    /// Canonically ordered. A granule without a description is the empty
    /// set standing in for "nothing definable".
    pub granules: Vec<(ObjectSet, Option<Description>)>,
    /// The target itself is definable in this mode.
    pub exact: bool,
}

impl Approximation {
    fn new(
        scope: Scope<'_>,
        direction: Direction,
        mode: Mode,
        mut granules: Vec<(ObjectSet, Option<Description>)>,
        exact: bool,
    ) -> Self {
        for (g, d) in &granules {
            if let Some(d) = d {
                let got = evaluate(scope, d).expect("synthesised atoms belong to the context");
                assert_eq!(&got, g, "approximation description does not evaluate to its granule");
            }
        }
        granules.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        granules.dedup_by(|a, b| a.0 == b.0);
        Approximation { direction, mode, granules, exact }
    }
}

fn inapplicable<T>(reason: Reason) -> Result<T, ApproximationError> {
    Err(ApproximationError::Inapplicable(reason))
}

/// The smallest ∧-definable granule containing `X`.
pub fn upper_wedge(ctx: &FormalContext, x: &ObjectSet) -> Result<Approximation, ApproximationError> {
    let b = intent(ctx, x);
    if b.is_empty() {
        return inapplicable(Reason::EmptyIntent);
    }
    let g = extent(ctx, &b);
    let exact = &g == x;
    let d = Description::conj_of(&b).expect("nonempty intent");
    Ok(Approximation::new(Scope::Formal(ctx), Direction::Upper, Mode::Wedge, vec![(g, Some(d))], exact))
}

/// Maximal definable strict subsets of `x`, found as complements of the
/// minimal covering unions over the complemented columns of `ctx`.
///
/// `describe` turns the attribute ids of one cover into a description.
fn strict_lower(
    ctx: &FormalContext,
    x: &ObjectSet,
    definable: bool,
    describe: impl Fn(&AttributeSet) -> Description,
) -> Result<Vec<(ObjectSet, Option<Description>)>, ApproximationError> {
    if x.is_full() {
        return inapplicable(Reason::FullGranule);
    }
    if x.is_empty() {
        return Ok(Vec::new());
    }
    let m = ctx.n_attributes();
    let candidates: Vec<(usize, ObjectSet)> = (0..m).map(|a| (a, ctx.column(a).complement())).collect();
    let outside = x.complement();

    let covers: Vec<(ObjectSet, AttributeSet)> = if !definable {
        let p = CoverProblem::with_intersecting(m, candidates, outside);
        enumerate_minimal_covers(&p).into_iter().map(|c| (c.union, c.ids)).collect()
    } else {
        // `U \ X` itself is achievable, so push out one more object at a time.
        let mut unions = Vec::new();
        for z in x.iter() {
            let mut target = outside.clone();
            target.insert(z);
            let p = CoverProblem::with_intersecting(m, candidates.iter().cloned(), target);
            unions.extend(enumerate_minimal_covers(&p).into_iter().map(|c| c.union));
        }
        minimal_sets(unions)
            .into_iter()
            .map(|y| {
                let ids = AttributeSet::from_indices(
                    m,
                    candidates.iter().filter(|(_, c)| !c.is_empty() && c.is_subset(&y)).map(|(a, _)| *a),
                );
                (y, ids)
            })
            .collect()
    };

    if covers.is_empty() {
        // Had the empty set been definable, the full union would cover.
        return Ok(vec![(ctx.no_objects(), None)]);
    }
    Ok(covers.into_iter().map(|(y, ids)| (y.complement(), Some(describe(&ids)))).collect())
}

/// The largest ∧-definable granules strictly inside `X`.
pub fn lower_wedge(ctx: &FormalContext, x: &ObjectSet) -> Result<Approximation, ApproximationError> {
    let exact = is_wedge_definable(ctx, x).is_definable();
    let granules = strict_lower(ctx, x, exact, |ids| Description::conj_of(ids).expect("nonempty cover"))?;
    Ok(Approximation::new(Scope::Formal(ctx), Direction::Lower, Mode::Wedge, granules, exact))
}

/// The smallest three-way definable granule containing `X`.
pub fn upper_three_way(cctx: &CompoundContext, x: &ObjectSet) -> Result<Approximation, ApproximationError> {
    require(cctx, Flavor::ThreeWay)?;
    let c = compound_intent(cctx, x)?;
    if c.is_empty() {
        return inapplicable(Reason::EmptyIntent);
    }
    let g = compound_extent(cctx, &c)?;
    let exact = &g == x;
    let d = Description::three_way_conj_of(cctx, &c).expect("nonempty intent");
    Ok(Approximation::new(Scope::Compound(cctx), Direction::Upper, Mode::ThreeWay, vec![(g, Some(d))], exact))
}

/// The largest three-way definable granules strictly inside `X`.
pub fn lower_three_way(cctx: &CompoundContext, x: &ObjectSet) -> Result<Approximation, ApproximationError> {
    let exact = is_three_way_definable(cctx, x)?.is_definable();
    let granules = strict_lower(cctx.joined(), x, exact, |ids| {
        Description::three_way_conj_of(cctx, ids).expect("nonempty cover")
    })?;
    Ok(Approximation::new(Scope::Compound(cctx), Direction::Lower, Mode::ThreeWay, granules, exact))
}

/// The largest ∨-definable granule inside `X`: the union of every attribute
/// extent that fits.
pub fn lower_vee(ctx: &FormalContext, x: &ObjectSet) -> Result<Approximation, ApproximationError> {
    let b = necessity(ctx, x);
    let granule = if b.is_empty() {
        (ctx.no_objects(), None)
    } else {
        (possibility(ctx, &b), Some(Description::disj_of(&b).expect("nonempty")))
    };
    let exact = &granule.0 == x && granule.1.is_some();
    Ok(Approximation::new(Scope::Formal(ctx), Direction::Lower, Mode::Vee, vec![granule], exact))
}

/// The smallest ∨-definable granules containing `X`, one per
/// inclusion-minimal union of attribute extents.
pub fn upper_vee(ctx: &FormalContext, x: &ObjectSet) -> Result<Approximation, ApproximationError> {
    if x.is_empty() {
        return inapplicable(Reason::EmptyGranule);
    }
    let m = ctx.n_attributes();
    let p = CoverProblem::with_intersecting(m, (0..m).map(|a| (a, ctx.column(a).clone())), x.clone());
    let covers = enumerate_minimal_covers(&p);
    if covers.is_empty() {
        return inapplicable(Reason::Uncoverable);
    }
    let exact = is_vee_definable(ctx, x).is_definable();
    let granules = covers
        .into_iter()
        .map(|c| (c.union, Some(Description::disj_of(&c.ids).expect("nonempty cover"))))
        .collect();
    Ok(Approximation::new(Scope::Formal(ctx), Direction::Upper, Mode::Vee, granules, exact))
}

/// The common-and-necessary closure of `X`: the smallest definable granule
/// containing it, by cardinality and by inclusion.
pub fn upper_cn(cctx: &CompoundContext, x: &ObjectSet) -> Result<Approximation, ApproximationError> {
    require(cctx, Flavor::CommonNecessary)?;
    let i = cn_intent(cctx, x)?;
    if i.a_part.is_empty() {
        return inapplicable(Reason::EmptyAPart);
    }
    if !i.has_b_cover() {
        return inapplicable(Reason::NoBCover);
    }
    let g = cn_extent(cctx, &i)?;
    let exact = is_cn_definable(cctx, x)?.is_definable();
    let d = Description::conj_disj_of(&i.a_part, &i.b_part).expect("both parts nonempty");
    Ok(Approximation::new(Scope::Compound(cctx), Direction::Upper, Mode::Cn, vec![(g, Some(d))], exact))
}

/// Dispatches on mode and direction; scopes as for
/// [`define`](crate::definability::define).
pub fn approximate(
    scope: Scope<'_>,
    mode: Mode,
    direction: Direction,
    x: &ObjectSet,
) -> Result<Approximation, ApproximationError> {
    if x.universe() != scope.n_objects() {
        return Err(DefinabilityError::UniverseMismatch { expected: scope.n_objects(), found: x.universe() }.into());
    }
    let mismatch = |needs| Err(DefinabilityError::ScopeMismatch { mode, needs }.into());
    match (mode, direction, scope) {
        (Mode::Wedge, Direction::Upper, Scope::Formal(c)) => upper_wedge(c, x),
        (Mode::Wedge, Direction::Lower, Scope::Formal(c)) => lower_wedge(c, x),
        (Mode::Vee, Direction::Upper, Scope::Formal(c)) => upper_vee(c, x),
        (Mode::Vee, Direction::Lower, Scope::Formal(c)) => lower_vee(c, x),
        (Mode::ThreeWay, Direction::Upper, Scope::Compound(c)) => upper_three_way(c, x),
        (Mode::ThreeWay, Direction::Lower, Scope::Compound(c)) => lower_three_way(c, x),
        (Mode::Cn, Direction::Upper, Scope::Compound(c)) => upper_cn(c, x),
        (Mode::Cn, Direction::Lower, Scope::Compound(_)) => Err(ApproximationError::Unsupported(Mode::Cn)),
        (Mode::Wedge | Mode::Vee, _, _) => mismatch("plain"),
        (Mode::ThreeWay | Mode::Cn, _, _) => mismatch("compound"),
    }
}
