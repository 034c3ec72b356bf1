//! Definability of granules under the four description systems.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitset::ObjectSet;
use crate::context::{CompoundContext, Flavor, FormalContext};
use crate::derivation::{
    cn_extent, cn_intent, compound_extent, compound_intent, extent, intent, necessity, possibility, require,
    DerivationError,
};
use crate::formula::{evaluate, Atom, Block, Description, FormulaError, Scope};

/// Atom count above which [`minimal_descriptions`] refuses to search.
pub const MINIMAL_ATOM_LIMIT: usize = 20;

/// A description system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Conjunctions of attributes.
    Wedge,
    /// Conjunctions of attributes and negated attributes.
    ThreeWay,
    /// Disjunctions of attributes.
    Vee,
    /// A conjunction over A with one disjunction over B.
    Cn,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Wedge, Mode::ThreeWay, Mode::Vee, Mode::Cn];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Wedge => "wedge",
            Mode::ThreeWay => "three_way",
            Mode::Vee => "vee",
            Mode::Cn => "cn",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "wedge" | "and" => Ok(Mode::Wedge),
            "three_way" | "threeway" => Ok(Mode::ThreeWay),
            "vee" | "or" => Ok(Mode::Vee),
            "cn" | "common_necessary" => Ok(Mode::Cn),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Definable,
    Indefinable,
    Inapplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Definable => "definable",
            Status::Indefinable => "indefinable",
            Status::Inapplicable => "inapplicable",
        }
    }
}

/// Why a question has no answer in a given mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// The granule's objects share no attribute (no attribute fits inside it, for ∨).
    EmptyIntent,
    /// No union of B-extents covers the granule.
    NoBCover,
    /// The granule's objects share no A-attribute.
    EmptyAPart,
    /// An operand of a composition is not definable.
    IndefinableOperand,
    /// The granule is empty where a nonempty one is required.
    EmptyGranule,
    /// The granule is the whole universe, which has no strict lower bound to seek.
    FullGranule,
    /// Some object of the granule has no attribute at all.
    Uncoverable,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::EmptyIntent => "empty_intent",
            Reason::NoBCover => "no_b_cover",
            Reason::EmptyAPart => "empty_a_part",
            Reason::IndefinableOperand => "indefinable_operand",
            Reason::EmptyGranule => "empty_granule",
            Reason::FullGranule => "full_granule",
            Reason::Uncoverable => "uncoverable",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefinabilityError {
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("mode {mode} needs a {needs} context")]
    ScopeMismatch { mode: Mode, needs: &'static str },
    #[error("granule is over {found} objects, the context has {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("{0} atoms exceed the minimal-description search limit of {MINIMAL_ATOM_LIMIT}")]
    TooManyAtoms(usize),
}

/// The answer to one definability question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub description: Option<Description>,
    pub reason: Option<Reason>,
    /// For an indefinable granule, the closure that differs from it.
    pub witness: Option<ObjectSet>,
}

impl Verdict {
    pub fn is_definable(&self) -> bool {
        self.status == Status::Definable
    }

    pub fn inapplicable(reason: Reason) -> Self {
        Verdict { status: Status::Inapplicable, description: None, reason: Some(reason), witness: None }
    }

    fn indefinable(witness: ObjectSet) -> Self {
        Verdict { status: Status::Indefinable, description: None, reason: None, witness: Some(witness) }
    }

    /// A definable verdict, after checking that `d` really evaluates to `x`.
    fn definable(scope: Scope<'_>, d: Description, x: &ObjectSet) -> Self {
        let got = evaluate(scope, &d).expect("synthesised atoms belong to the context");
        assert_eq!(&got, x, "synthesised description does not evaluate to its granule");
        Verdict { status: Status::Definable, description: Some(d), reason: None, witness: None }
    }

    fn decide(scope: Scope<'_>, x: &ObjectSet, closure: ObjectSet, d: impl FnOnce() -> Description) -> Self {
        if &closure == x {
            Self::definable(scope, d(), x)
        } else {
            Self::indefinable(closure)
        }
    }
}

fn check_universe(n: usize, x: &ObjectSet) -> Result<(), DefinabilityError> {
    if x.universe() != n {
        return Err(DefinabilityError::UniverseMismatch { expected: n, found: x.universe() });
    }
    Ok(())
}

/// `X` is ∧-definable exactly when it is closed and its intent is nonempty.
pub fn is_wedge_definable(ctx: &FormalContext, x: &ObjectSet) -> Verdict {
    let b = intent(ctx, x);
    if b.is_empty() {
        return Verdict::inapplicable(Reason::EmptyIntent);
    }
    Verdict::decide(Scope::Formal(ctx), x, extent(ctx, &b), || {
        Description::conj_of(&b).expect("nonempty intent")
    })
}

/// Objects outside `X` that carry every attribute of `intent(X)`. `X` is
/// ∧-definable exactly when there are none.
pub fn find_covering_elements(ctx: &FormalContext, x: &ObjectSet) -> Result<ObjectSet, Reason> {
    let b = intent(ctx, x);
    if b.is_empty() {
        return Err(Reason::EmptyIntent);
    }
    let outside = x.complement();
    Ok(ObjectSet::from_indices(
        ctx.n_objects(),
        outside.iter().filter(|&y| b.is_subset(ctx.row(y))),
    ))
}

/// `X` is definable by a conjunction of attributes and negated attributes.
pub fn is_three_way_definable(cctx: &CompoundContext, x: &ObjectSet) -> Result<Verdict, DefinabilityError> {
    require(cctx, Flavor::ThreeWay)?;
    check_universe(cctx.n_objects(), x)?;
    let c = compound_intent(cctx, x)?;
    if c.is_empty() {
        return Ok(Verdict::inapplicable(Reason::EmptyIntent));
    }
    let closure = compound_extent(cctx, &c)?;
    Ok(Verdict::decide(Scope::Compound(cctx), x, closure, || {
        Description::three_way_conj_of(cctx, &c).expect("nonempty intent")
    }))
}

/// `X` is ∨-definable exactly when it is the union of the attribute extents
/// lying inside it, and there is at least one.
pub fn is_vee_definable(ctx: &FormalContext, x: &ObjectSet) -> Verdict {
    let b = necessity(ctx, x);
    if b.is_empty() {
        return Verdict::inapplicable(Reason::EmptyIntent);
    }
    Verdict::decide(Scope::Formal(ctx), x, possibility(ctx, &b), || {
        Description::disj_of(&b).expect("nonempty necessity set")
    })
}

/// [`is_vee_definable`] computed the other way round: `X` is ∨-definable
/// exactly when `U \ X` is a closed set of the complement context with a
/// nonempty intent.
pub fn is_vee_definable_by_complement(ctx: &FormalContext, x: &ObjectSet) -> Verdict {
    let comp = ctx.complement_bits();
    let rest = x.complement();
    let b = intent(&comp, &rest);
    if b.is_empty() {
        return Verdict::inapplicable(Reason::EmptyIntent);
    }
    let closure = extent(&comp, &b).complement();
    Verdict::decide(Scope::Formal(ctx), x, closure, || Description::disj_of(&b).expect("nonempty intent"))
}

/// `X` is definable by `∧C ∧ (∨D)` with `C` over A and `D` over B, both nonempty.
pub fn is_cn_definable(cctx: &CompoundContext, x: &ObjectSet) -> Result<Verdict, DefinabilityError> {
    require(cctx, Flavor::CommonNecessary)?;
    check_universe(cctx.n_objects(), x)?;
    let i = cn_intent(cctx, x)?;
    if i.a_part.is_empty() {
        return Ok(Verdict::inapplicable(Reason::EmptyAPart));
    }
    if !i.has_b_cover() {
        return Ok(Verdict::inapplicable(Reason::NoBCover));
    }
    let closure = cn_extent(cctx, &i)?;
    Ok(Verdict::decide(Scope::Compound(cctx), x, closure, || {
        Description::conj_disj_of(&i.a_part, &i.b_part).expect("both parts nonempty")
    }))
}

/// Decides `x` in `mode`. Wedge and vee read a plain context, three-way and
/// cn a compound one of the matching flavor.
pub fn define(scope: Scope<'_>, mode: Mode, x: &ObjectSet) -> Result<Verdict, DefinabilityError> {
    check_universe(scope.n_objects(), x)?;
    match (mode, scope) {
        (Mode::Wedge, Scope::Formal(ctx)) => Ok(is_wedge_definable(ctx, x)),
        (Mode::Vee, Scope::Formal(ctx)) => Ok(is_vee_definable(ctx, x)),
        (Mode::ThreeWay, Scope::Compound(c)) => is_three_way_definable(c, x),
        (Mode::Cn, Scope::Compound(c)) => is_cn_definable(c, x),
        (Mode::Wedge | Mode::Vee, _) => Err(DefinabilityError::ScopeMismatch { mode, needs: "plain" }),
        (Mode::ThreeWay | Mode::Cn, _) => Err(DefinabilityError::ScopeMismatch { mode, needs: "compound" }),
    }
}

/// A description of `X ∩ Y` from those of `X` and `Y`: the conjunction of
/// both intents. A plain scope uses ∧-descriptions, a three-way compound
/// scope uses three-way ones.
pub fn intersect_descriptions(scope: Scope<'_>, x: &ObjectSet, y: &ObjectSet) -> Result<Verdict, DefinabilityError> {
    check_universe(scope.n_objects(), x)?;
    check_universe(scope.n_objects(), y)?;
    let meet = x.intersection(y);
    match scope {
        Scope::Formal(ctx) => {
            if !(is_wedge_definable(ctx, x).is_definable() && is_wedge_definable(ctx, y).is_definable()) {
                return Ok(Verdict::inapplicable(Reason::IndefinableOperand));
            }
            let b = intent(ctx, x).union(&intent(ctx, y));
            Ok(Verdict::definable(scope, Description::conj_of(&b)?, &meet))
        }
        Scope::Compound(cctx) => {
            require(cctx, Flavor::ThreeWay)?;
            if !(is_three_way_definable(cctx, x)?.is_definable() && is_three_way_definable(cctx, y)?.is_definable()) {
                return Ok(Verdict::inapplicable(Reason::IndefinableOperand));
            }
            let c = compound_intent(cctx, x)?.union(&compound_intent(cctx, y)?);
            Ok(Verdict::definable(scope, Description::three_way_conj_of(cctx, &c)?, &meet))
        }
    }
}

/// A ∨-description of `X ∪ Y` from those of `X` and `Y`.
pub fn union_vee_descriptions(ctx: &FormalContext, x: &ObjectSet, y: &ObjectSet) -> Verdict {
    if !(is_vee_definable(ctx, x).is_definable() && is_vee_definable(ctx, y).is_definable()) {
        return Verdict::inapplicable(Reason::IndefinableOperand);
    }
    let b = necessity(ctx, x).union(&necessity(ctx, y));
    Verdict::definable(Scope::Formal(ctx), Description::disj_of(&b).expect("nonempty"), &x.union(y))
}

/// Every inclusion-minimal description of `X` in `mode`, shortest first.
/// Empty when `X` is not definable.
pub fn minimal_descriptions(scope: Scope<'_>, mode: Mode, x: &ObjectSet) -> Result<Vec<Description>, DefinabilityError> {
    let verdict = define(scope, mode, x)?;
    let Some(full) = verdict.description else {
        return Ok(Vec::new());
    };
    // Any description of X only uses atoms the closure description uses,
    // except in cn mode where B-atoms outside the chosen cover may help.
    let pool: Vec<Atom> = match (&full, scope) {
        (Description::ConjDisj { conj, .. }, Scope::Compound(cctx)) => {
            let b = cctx.b_block();
            conj.iter()
                .copied()
                .chain((0..b.n_attributes()).filter(|&k| !b.column(k).is_empty()).map(Atom::b))
                .collect()
        }
        _ => full.atoms(),
    };
    if pool.len() > MINIMAL_ATOM_LIMIT {
        return Err(DefinabilityError::TooManyAtoms(pool.len()));
    }

    let build = |mask: u32| -> Result<Description, FormulaError> {
        let chosen: Vec<Atom> = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect();
        match &full {
            Description::Conj(_) => Description::conj(chosen),
            Description::Disj(_) => Description::disj(chosen),
            Description::ConjDisj { .. } => {
                let (conj, disj): (Vec<Atom>, Vec<Atom>) = chosen.into_iter().partition(|a| a.block == Block::A);
                Description::conj_disj(conj, disj)
            }
        }
    };

    let mut hits: Vec<u32> = Vec::new();
    for mask in 1u32..(1 << pool.len()) {
        if let Ok(d) = build(mask) {
            if &evaluate(scope, &d)? == x {
                hits.push(mask);
            }
        }
    }
    hits.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u32> = Vec::new();
    for m in hits {
        if !minimal.iter().any(|&k| k & !m == 0) {
            minimal.push(m);
        }
    }

    let mut out: Vec<Description> = minimal.into_iter().map(|m| build(m).expect("built before")).collect();
    let key = |d: &Description| -> (usize, Vec<(Block, bool, usize)>) {
        (d.len(), d.atoms().iter().map(|a| (a.block, a.negated, a.index)).collect())
    };
    out.sort_by_key(key);
    Ok(out)
}
