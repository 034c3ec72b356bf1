//! Granule descriptions and their semantics.
//!
//! Descriptions are flat: a conjunction of atoms, a disjunction of atoms, or
//! a conjunction of A-atoms with one parenthesised disjunction of B-atoms.
//! Negated atoms only occur in conjunctions over a three-way compound
//! context, where `¬a_k` is read through the B-block column `k`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::{CompoundContext, Flavor, FormalContext};
use crate::derivation::{extent, possibility};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("a description needs at least one atom")]
    EmptyAtoms,
    #[error("atom `{0}` appears twice")]
    DuplicateAtom(String),
    #[error("{0}")]
    Shape(&'static str),
    #[error("atom {0} cannot be resolved in this context")]
    Unresolvable(String),
    #[error("{0} descriptions need a {1} context")]
    WrongContext(&'static str, &'static str),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    A,
    B,
}

/// One attribute reference, possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Atom {
    pub block: Block,
    pub index: usize,
    pub negated: bool,
}

impl Atom {
    pub fn a(index: usize) -> Self {
        Atom { block: Block::A, index, negated: false }
    }

    pub fn b(index: usize) -> Self {
        Atom { block: Block::B, index, negated: false }
    }

    pub fn not_a(index: usize) -> Self {
        Atom { block: Block::A, index, negated: true }
    }

    fn sort_key(&self) -> (Block, bool, usize) {
        (self.block, self.negated, self.index)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = match self.block {
            Block::A => "A",
            Block::B => "B",
        };
        let neg = if self.negated { "!" } else { "" };
        write!(f, "{neg}{block}[{}]", self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Description {
    Conj(Vec<Atom>),
    Disj(Vec<Atom>),
    ConjDisj { conj: Vec<Atom>, disj: Vec<Atom> },
}

fn canonical(mut atoms: Vec<Atom>) -> Result<Vec<Atom>, FormulaError> {
    if atoms.is_empty() {
        return Err(FormulaError::EmptyAtoms);
    }
    atoms.sort_by_key(Atom::sort_key);
    if let Some(w) = atoms.windows(2).find(|w| w[0] == w[1]) {
        return Err(FormulaError::DuplicateAtom(w[0].to_string()));
    }
    Ok(atoms)
}

impl Description {
    pub fn conj(atoms: Vec<Atom>) -> Result<Self, FormulaError> {
        let atoms = canonical(atoms)?;
        if atoms.iter().any(|a| a.negated && a.block == Block::B) {
            return Err(FormulaError::Shape("only A-block atoms can be negated"));
        }
        Ok(Description::Conj(atoms))
    }

    pub fn disj(atoms: Vec<Atom>) -> Result<Self, FormulaError> {
        let atoms = canonical(atoms)?;
        if atoms.iter().any(|a| a.negated) {
            return Err(FormulaError::Shape("disjunctions take positive atoms only"));
        }
        Ok(Description::Disj(atoms))
    }

    pub fn conj_disj(conj: Vec<Atom>, disj: Vec<Atom>) -> Result<Self, FormulaError> {
        let conj = canonical(conj)?;
        let disj = canonical(disj)?;
        if conj.iter().any(|a| a.negated || a.block != Block::A) {
            return Err(FormulaError::Shape("the conjunctive part takes positive A-block atoms"));
        }
        if disj.iter().any(|a| a.negated || a.block != Block::B) {
            return Err(FormulaError::Shape("the disjunctive part takes positive B-block atoms"));
        }
        Ok(Description::ConjDisj { conj, disj })
    }

    /// `∧B` over a plain attribute set.
    pub fn conj_of(attributes: &AttributeSet) -> Result<Self, FormulaError> {
        Self::conj(attributes.iter().map(Atom::a).collect())
    }

    /// `∨B` over a plain attribute set.
    pub fn disj_of(attributes: &AttributeSet) -> Result<Self, FormulaError> {
        Self::disj(attributes.iter().map(Atom::a).collect())
    }

    /// `∧C` over the joined `A ∪ B` columns of a three-way context: B-block
    /// columns become negated A-atoms.
    pub fn three_way_conj_of(cctx: &CompoundContext, joined: &AttributeSet) -> Result<Self, FormulaError> {
        let (a, b) = cctx.split(joined);
        Self::conj(a.iter().map(Atom::a).chain(b.iter().map(Atom::not_a)).collect())
    }

    /// `∧C ∧ (∨D)`.
    pub fn conj_disj_of(a_part: &AttributeSet, b_part: &AttributeSet) -> Result<Self, FormulaError> {
        Self::conj_disj(a_part.iter().map(Atom::a).collect(), b_part.iter().map(Atom::b).collect())
    }

    /// Every atom, conjunctive part first.
    pub fn atoms(&self) -> Vec<Atom> {
        match self {
            Description::Conj(a) | Description::Disj(a) => a.clone(),
            Description::ConjDisj { conj, disj } => conj.iter().chain(disj).copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Description::Conj(a) | Description::Disj(a) => a.len(),
            Description::ConjDisj { conj, disj } => conj.len() + disj.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The context a description is read against.
#[derive(Debug, Clone, Copy)]
pub enum Scope<'a> {
    Formal(&'a FormalContext),
    Compound(&'a CompoundContext),
}

impl<'a> From<&'a FormalContext> for Scope<'a> {
    fn from(ctx: &'a FormalContext) -> Self {
        Scope::Formal(ctx)
    }
}

impl<'a> From<&'a CompoundContext> for Scope<'a> {
    fn from(cctx: &'a CompoundContext) -> Self {
        Scope::Compound(cctx)
    }
}

impl<'a> Scope<'a> {
    pub fn n_objects(&self) -> usize {
        match self {
            Scope::Formal(c) => c.n_objects(),
            Scope::Compound(c) => c.n_objects(),
        }
    }

    pub fn objects(&self) -> &'a [String] {
        match self {
            Scope::Formal(c) => c.objects(),
            Scope::Compound(c) => c.objects(),
        }
    }

    fn flavor(&self) -> Option<Flavor> {
        match self {
            Scope::Formal(_) => None,
            Scope::Compound(c) => Some(c.flavor()),
        }
    }

    /// The column an atom selects.
    fn column(&self, atom: &Atom) -> Result<&'a ObjectSet, FormulaError> {
        let block = match (self, atom.block, atom.negated) {
            (Scope::Formal(c), Block::A, false) => *c,
            (Scope::Compound(c), Block::A, false) => c.a_block(),
            (Scope::Compound(c), Block::A, true) if c.flavor() == Flavor::ThreeWay => c.b_block(),
            (Scope::Compound(c), Block::B, false) => c.b_block(),
            _ => return Err(FormulaError::Unresolvable(atom.to_string())),
        };
        if atom.index >= block.n_attributes() {
            return Err(FormulaError::Unresolvable(atom.to_string()));
        }
        Ok(block.column(atom.index))
    }

    /// Display name of an atom (without any negation sign).
    pub fn atom_name(&self, atom: &Atom) -> Result<&'a str, FormulaError> {
        let block = match (self, atom.block) {
            (Scope::Formal(c), Block::A) => *c,
            (Scope::Compound(c), Block::A) => c.a_block(),
            (Scope::Compound(c), Block::B) => c.b_block(),
            _ => return Err(FormulaError::Unresolvable(atom.to_string())),
        };
        block
            .attributes()
            .get(atom.index)
            .map(String::as_str)
            .ok_or_else(|| FormulaError::Unresolvable(atom.to_string()))
    }

    /// Resolves an attribute name to an atom. On a three-way context a
    /// B-block name resolves to the negated A-atom it stands for.
    fn resolve(&self, name: &str) -> Option<Atom> {
        match self {
            Scope::Formal(c) => c.attribute_index(name).map(Atom::a),
            Scope::Compound(c) => {
                if let Some(i) = c.a_block().attribute_index(name) {
                    Some(Atom::a(i))
                } else {
                    let i = c.b_block().attribute_index(name)?;
                    Some(match c.flavor() {
                        Flavor::ThreeWay => Atom::not_a(i),
                        Flavor::CommonNecessary => Atom::b(i),
                    })
                }
            }
        }
    }
}

/// The semantics `m(d)`: the set of objects satisfying `d`.
pub fn evaluate(scope: Scope<'_>, d: &Description) -> Result<ObjectSet, FormulaError> {
    let n = scope.n_objects();
    let meet = |atoms: &[Atom]| -> Result<ObjectSet, FormulaError> {
        let mut out = ObjectSet::full(n);
        for a in atoms {
            out.intersect_with(scope.column(a)?);
        }
        Ok(out)
    };
    let join = |atoms: &[Atom]| -> Result<ObjectSet, FormulaError> {
        let mut out = ObjectSet::empty(n);
        for a in atoms {
            out.union_with(scope.column(a)?);
        }
        Ok(out)
    };
    match d {
        Description::Conj(atoms) => meet(atoms),
        Description::Disj(atoms) => join(atoms),
        Description::ConjDisj { conj, disj } => {
            if scope.flavor() != Some(Flavor::CommonNecessary) {
                return Err(FormulaError::WrongContext("mixed", "common-and-necessary"));
            }
            Ok(meet(conj)?.intersection(&join(disj)?))
        }
    }
}

/// Shorthand for `evaluate` on `∧B`; equals [`extent`].
pub fn evaluate_conj(ctx: &FormalContext, attributes: &AttributeSet) -> ObjectSet {
    if attributes.is_empty() {
        return ctx.all_objects();
    }
    let d = Description::conj_of(attributes).expect("nonempty attribute set");
    let out = evaluate(Scope::Formal(ctx), &d).expect("atoms come from the context");
    debug_assert_eq!(out, extent(ctx, attributes));
    out
}

/// Shorthand for `evaluate` on `∨B`; equals [`possibility`].
pub fn evaluate_disj(ctx: &FormalContext, attributes: &AttributeSet) -> ObjectSet {
    if attributes.is_empty() {
        return ctx.no_objects();
    }
    let d = Description::disj_of(attributes).expect("nonempty attribute set");
    let out = evaluate(Scope::Formal(ctx), &d).expect("atoms come from the context");
    debug_assert_eq!(out, possibility(ctx, attributes));
    out
}

/// Connective glyphs used when rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Unicode,
    Ascii,
}

impl Style {
    fn and(self) -> &'static str {
        match self {
            Style::Unicode => " ∧ ",
            Style::Ascii => " & ",
        }
    }
    fn or(self) -> &'static str {
        match self {
            Style::Unicode => " ∨ ",
            Style::Ascii => " | ",
        }
    }
    fn not(self) -> &'static str {
        match self {
            Style::Unicode => "¬",
            Style::Ascii => "!",
        }
    }
}

/// Renders `d` with attribute names from `scope`, atoms in index order.
pub fn render(scope: Scope<'_>, d: &Description, style: Style) -> Result<String, FormulaError> {
    let names = |atoms: &[Atom]| -> Result<Vec<String>, FormulaError> {
        atoms
            .iter()
            .map(|a| {
                let name = scope.atom_name(a)?;
                Ok(if a.negated { format!("{}{name}", style.not()) } else { name.to_string() })
            })
            .collect()
    };
    Ok(match d {
        Description::Conj(a) => names(a)?.join(style.and()),
        Description::Disj(a) => names(a)?.join(style.or()),
        Description::ConjDisj { conj, disj } => format!(
            "{}{}({})",
            names(conj)?.join(style.and()),
            style.and(),
            names(disj)?.join(style.or())
        ),
    })
}

/// The JSON shape of a description: positive conjuncts, disjuncts and
/// negated conjuncts by attribute name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescriptionNames {
    pub conj: Vec<String>,
    pub disj: Vec<String>,
    pub negated: Vec<String>,
}

pub fn description_names(scope: Scope<'_>, d: &Description) -> Result<DescriptionNames, FormulaError> {
    let mut out = DescriptionNames { conj: vec![], disj: vec![], negated: vec![] };
    let (conj, disj): (&[Atom], &[Atom]) = match d {
        Description::Conj(a) => (a, &[]),
        Description::Disj(a) => (&[], a),
        Description::ConjDisj { conj, disj } => (conj, disj),
    };
    for a in conj {
        let name = scope.atom_name(a)?.to_string();
        if a.negated {
            out.negated.push(name);
        } else {
            out.conj.push(name);
        }
    }
    for a in disj {
        out.disj.push(scope.atom_name(a)?.to_string());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Name(String),
    And,
    Or,
    Not,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let single = match c {
            '&' | '∧' => Some(Token::And),
            '|' | '∨' => Some(Token::Or),
            '!' | '¬' => Some(Token::Not),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            chars.next();
        } else if c.is_whitespace() {
            chars.next();
        } else {
            let mut name = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || "&|!()∧∨¬".contains(c) {
                    break;
                }
                name.push(c);
                chars.next();
            }
            out.push((pos, Token::Name(name)));
        }
    }
    Ok(out)
}

struct Parser<'s> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    scope: Scope<'s>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> FormulaError {
        FormulaError::Syntax { position: self.offset(), message: message.into() }
    }

    fn name(&mut self) -> Result<Atom, FormulaError> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Name(n))) => {
                let atom = self.scope.resolve(n).ok_or_else(|| FormulaError::UnknownAttribute(n.clone()))?;
                self.pos += 1;
                Ok(atom)
            }
            _ => Err(self.error("expected an attribute name")),
        }
    }

    fn literal(&mut self) -> Result<Atom, FormulaError> {
        if self.peek() == Some(&Token::Not) {
            self.pos += 1;
            let atom = self.name()?;
            if atom.negated || atom.block != Block::A {
                return Err(FormulaError::Shape("only A-block atoms can be negated"));
            }
            return Ok(Atom::not_a(atom.index));
        }
        self.name()
    }

    fn group(&mut self) -> Result<Vec<Atom>, FormulaError> {
        self.pos += 1; // '('
        let mut atoms = vec![self.name()?];
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            atoms.push(self.name()?);
        }
        if self.peek() != Some(&Token::Close) {
            return Err(self.error("expected `)` closing the disjunction"));
        }
        self.pos += 1;
        Ok(atoms)
    }

    fn parse(&mut self) -> Result<Description, FormulaError> {
        if self.tokens.is_empty() {
            return Err(FormulaError::EmptyAtoms);
        }
        let mut conj = Vec::new();
        let mut disj: Option<Vec<Atom>> = None;
        let mut connective: Option<Token> = None;
        loop {
            if self.peek() == Some(&Token::Open) {
                if disj.is_some() {
                    return Err(self.error("only one parenthesised disjunction is allowed"));
                }
                disj = Some(self.group()?);
            } else {
                conj.push(self.literal()?);
            }
            match self.peek() {
                None => break,
                Some(t @ (Token::And | Token::Or)) => {
                    let t = t.clone();
                    if connective.as_ref().is_some_and(|c| *c != t) {
                        return Err(self.error("mixing `&` and `|` needs parentheses around the disjunction"));
                    }
                    connective = Some(t);
                    self.pos += 1;
                }
                Some(_) => return Err(self.error("expected `&` or `|`")),
            }
        }

        match (connective, disj) {
            (Some(Token::Or), Some(_)) => Err(self.error("a parenthesised group cannot be a disjunct")),
            (Some(Token::Or), None) => Description::disj(conj),
            (_, None) => Description::conj(conj),
            (_, Some(d)) if conj.is_empty() => Description::disj(d),
            (_, Some(d)) => Description::conj_disj(conj, d),
        }
    }
}

/// Parses `a1 & a2`, `a1 | a2`, `a1 & !a3` or `a1 & (b2 | b4)`; `∧ ∨ ¬` are
/// accepted as well.
pub fn parse_description(text: &str, scope: Scope<'_>) -> Result<Description, FormulaError> {
    let tokens = tokenize(text)?;
    Parser { tokens, pos: 0, end: text.len(), scope }.parse()
}
