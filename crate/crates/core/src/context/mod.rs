//! Formal contexts `(U, A, I)` and compound contexts `(U, A, I, B, J)`.

mod cxt;
mod json;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::bitset::{AttributeSet, ObjectSet};

pub use cxt::{parse_cxt, to_cxt};
pub use json::{parse_compound_json, parse_json, to_compound_json, to_json};

/// Prefix given to complemented attribute names unless another is requested.
pub const DEFAULT_NEGATION_PREFIX: &str = "not_";

/// Serialization formats for formal contexts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Cxt,
    Json,
}

impl Format {
    /// JSON if the document opens with `{`, Burmeister otherwise.
    pub fn detect(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Cxt
        }
    }
}

/// Parses a context in either supported format.
pub fn parse_context(text: &str) -> Result<FormalContext, ContextError> {
    match Format::detect(text) {
        Format::Json => parse_json(text),
        Format::Cxt => parse_cxt(text),
    }
}

pub fn serialize_context(ctx: &FormalContext, format: Format) -> String {
    match format {
        Format::Cxt => to_cxt(ctx),
        Format::Json => to_json(ctx),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("a context needs at least one object and one attribute")]
    Empty,
    #[error("duplicate object name `{0}`")]
    DuplicateObject(String),
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("incidence has {found} {what}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("blocks do not share the same object list")]
    UniverseMismatch,
    #[error("attribute name `{0}` appears in both blocks")]
    OverlappingNames(String),
    #[error("three-way blocks must have equal width (a: {a}, b: {b})")]
    UnequalBlocks { a: usize, b: usize },
    #[error("object {object}: `{a}` and `{b}` are not complementary")]
    NotNegation { object: usize, a: String, b: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl ContextError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ContextError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A binary object x attribute incidence table with names.
///
/// Rows and columns are both kept as bit sets so that the derivation
/// operators in either direction are plain set intersections and unions.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttributeSet>,
    columns: Vec<ObjectSet>,
}

impl FormalContext {
    /// Builds a context, checking the naming and shape invariants.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self, ContextError> {
        if objects.is_empty() || attributes.is_empty() {
            return Err(ContextError::Empty);
        }
        if let Some(dup) = first_duplicate(&objects) {
            return Err(ContextError::DuplicateObject(dup));
        }
        if let Some(dup) = first_duplicate(&attributes) {
            return Err(ContextError::DuplicateAttribute(dup));
        }
        if incidence.len() != objects.len() {
            return Err(ContextError::DimensionMismatch {
                what: "rows",
                expected: objects.len(),
                found: incidence.len(),
            });
        }
        let (n, m) = (objects.len(), attributes.len());
        let mut rows = Vec::with_capacity(n);
        let mut columns = vec![ObjectSet::empty(n); m];
        for (x, row) in incidence.iter().enumerate() {
            if row.len() != m {
                return Err(ContextError::DimensionMismatch {
                    what: "columns",
                    expected: m,
                    found: row.len(),
                });
            }
            let set = AttributeSet::from_indices(m, row.iter().enumerate().filter(|(_, &b)| b).map(|(a, _)| a));
            for a in set.iter() {
                columns[a].insert(x);
            }
            rows.push(set);
        }
        Ok(Self {
            objects,
            attributes,
            rows,
            columns,
        })
    }

    /// Convenience constructor from `0`/`1` rows, mostly for fixtures.
    pub fn from_rows<S: AsRef<str>>(
        objects: &[S],
        attributes: &[S],
        rows: &[&[u8]],
    ) -> Result<Self, ContextError> {
        Self::new(
            objects.iter().map(|s| s.as_ref().to_string()).collect(),
            attributes.iter().map(|s| s.as_ref().to_string()).collect(),
            rows.iter().map(|r| r.iter().map(|&b| b != 0).collect()).collect(),
        )
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// `xI`: the attributes of one object.
    pub fn row(&self, object: usize) -> &AttributeSet {
        &self.rows[object]
    }

    /// `Ie`: the objects having one attribute.
    pub fn column(&self, attribute: usize) -> &ObjectSet {
        &self.columns[attribute]
    }

    pub fn columns(&self) -> &[ObjectSet] {
        &self.columns
    }

    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet::full(self.n_objects())
    }

    pub fn no_objects(&self) -> ObjectSet {
        ObjectSet::empty(self.n_objects())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        AttributeSet::full(self.n_attributes())
    }

    pub fn no_attributes(&self) -> AttributeSet {
        AttributeSet::empty(self.n_attributes())
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn incidence(&self) -> Vec<Vec<bool>> {
        (0..self.n_objects())
            .map(|x| (0..self.n_attributes()).map(|a| self.incident(x, a)).collect())
            .collect()
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<&str> {
        set.iter().map(|a| self.attributes[a].as_str()).collect()
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<&str> {
        set.iter().map(|x| self.objects[x].as_str()).collect()
    }

    /// `(U, B, J)` with `(x, b_k) in J` iff `(x, a_k)` not in `I`; attribute
    /// `k` is renamed to `prefix + name`.
    pub fn complement(&self, prefix: &str) -> FormalContext {
        let attributes = self
            .attributes
            .iter()
            .map(|a| format!("{prefix}{a}"))
            .collect();
        let incidence = self
            .incidence()
            .into_iter()
            .map(|row| row.into_iter().map(|b| !b).collect())
            .collect();
        FormalContext::new(self.objects.clone(), attributes, incidence)
            .expect("complement of a valid context is valid")
    }

    /// Like [`complement`](Self::complement) but keeps the attribute names.
    /// Used internally where only the bits matter.
    pub(crate) fn complement_bits(&self) -> FormalContext {
        let rows: Vec<AttributeSet> = self.rows.iter().map(|r| r.complement()).collect();
        let columns: Vec<ObjectSet> = self.columns.iter().map(|c| c.complement()).collect();
        FormalContext {
            objects: self.objects.clone(),
            attributes: self.attributes.clone(),
            rows,
            columns,
        }
    }

    /// Adjoins the negated columns: the three-way compound context.
    pub fn appose_negation(&self) -> CompoundContext {
        self.appose_negation_with_prefix(DEFAULT_NEGATION_PREFIX)
    }

    pub fn appose_negation_with_prefix(&self, prefix: &str) -> CompoundContext {
        CompoundContext::three_way(self.clone(), self.complement(prefix))
            .expect("negation apposition satisfies the three-way invariant")
    }

    /// Places `other`'s columns to the right of this context's columns.
    fn apposition(&self, other: &FormalContext) -> FormalContext {
        let attributes = self
            .attributes
            .iter()
            .chain(other.attributes.iter())
            .cloned()
            .collect();
        let incidence = self
            .incidence()
            .into_iter()
            .zip(other.incidence())
            .map(|(mut l, r)| {
                l.extend(r);
                l
            })
            .collect();
        FormalContext::new(self.objects.clone(), attributes, incidence)
            .expect("apposition of blocks with disjoint names is valid")
    }
}

impl fmt::Debug for FormalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FormalContext {}x{}", self.n_objects(), self.n_attributes())?;
        for (x, name) in self.objects.iter().enumerate() {
            let bits: String = (0..self.n_attributes())
                .map(|a| if self.incident(x, a) { 'X' } else { '.' })
                .collect();
            writeln!(f, "  {name:>8} {bits}")?;
        }
        Ok(())
    }
}

fn first_duplicate(names: &[String]) -> Option<String> {
    let mut seen = HashSet::new();
    names.iter().find(|n| !seen.insert(n.as_str())).cloned()
}

/// How the two blocks of a compound context relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// The B-block is the negation of the A-block, column by column.
    ThreeWay,
    /// Independent blocks: A holds the required attributes, B the optional ones.
    CommonNecessary,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::ThreeWay => "three_way",
            Flavor::CommonNecessary => "common_necessary",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A shared object universe with two attribute blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundContext {
    a: FormalContext,
    b: FormalContext,
    joined: FormalContext,
    flavor: Flavor,
}

impl CompoundContext {
    /// A three-way compound context; `b` must be the column-wise negation of `a`.
    pub fn three_way(a: FormalContext, b: FormalContext) -> Result<Self, ContextError> {
        check_blocks(&a, &b)?;
        if a.n_attributes() != b.n_attributes() {
            return Err(ContextError::UnequalBlocks {
                a: a.n_attributes(),
                b: b.n_attributes(),
            });
        }
        for x in 0..a.n_objects() {
            for k in 0..a.n_attributes() {
                if a.incident(x, k) == b.incident(x, k) {
                    return Err(ContextError::NotNegation {
                        object: x + 1,
                        a: a.attributes[k].clone(),
                        b: b.attributes[k].clone(),
                    });
                }
            }
        }
        Ok(Self::assemble(a, b, Flavor::ThreeWay))
    }

    /// A common-and-necessary compound context from two independent blocks
    /// over the same objects.
    pub fn common_necessary(
        primary: FormalContext,
        secondary: FormalContext,
    ) -> Result<Self, ContextError> {
        check_blocks(&primary, &secondary)?;
        Ok(Self::assemble(primary, secondary, Flavor::CommonNecessary))
    }

    pub fn new(a: FormalContext, b: FormalContext, flavor: Flavor) -> Result<Self, ContextError> {
        match flavor {
            Flavor::ThreeWay => Self::three_way(a, b),
            Flavor::CommonNecessary => Self::common_necessary(a, b),
        }
    }

    fn assemble(a: FormalContext, b: FormalContext, flavor: Flavor) -> Self {
        let joined = a.apposition(&b);
        Self {
            a,
            b,
            joined,
            flavor,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn a_block(&self) -> &FormalContext {
        &self.a
    }

    pub fn b_block(&self) -> &FormalContext {
        &self.b
    }

    /// The flattened `|A| + |B|` column context; B columns follow A columns.
    pub fn joined(&self) -> &FormalContext {
        &self.joined
    }

    pub fn objects(&self) -> &[String] {
        self.a.objects()
    }

    pub fn n_objects(&self) -> usize {
        self.a.n_objects()
    }

    pub fn all_objects(&self) -> ObjectSet {
        self.a.all_objects()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.a.object_index(name)
    }

    /// Splits an attribute set over the joined context into its A and B parts.
    pub fn split(&self, joined: &AttributeSet) -> (AttributeSet, AttributeSet) {
        let na = self.a.n_attributes();
        let a = AttributeSet::from_indices(na, joined.iter().filter(|&i| i < na));
        let b = AttributeSet::from_indices(
            self.b.n_attributes(),
            joined.iter().filter(|&i| i >= na).map(|i| i - na),
        );
        (a, b)
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(&self, a: &AttributeSet, b: &AttributeSet) -> AttributeSet {
        let na = self.a.n_attributes();
        AttributeSet::from_indices(
            self.joined.n_attributes(),
            a.iter().chain(b.iter().map(|i| i + na)),
        )
    }
}

fn check_blocks(a: &FormalContext, b: &FormalContext) -> Result<(), ContextError> {
    if a.objects != b.objects {
        return Err(ContextError::UniverseMismatch);
    }
    let names: HashSet<&str> = a.attributes.iter().map(String::as_str).collect();
    if let Some(clash) = b.attributes.iter().find(|n| names.contains(n.as_str())) {
        return Err(ContextError::OverlappingNames(clash.clone()));
    }
    Ok(())
}

/// Builds the common-and-necessary compound context from its two blocks.
pub fn make_cn_context(
    primary: FormalContext,
    secondary: FormalContext,
) -> Result<CompoundContext, ContextError> {
    CompoundContext::common_necessary(primary, secondary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_empty() {
        let r = FormalContext::new(vec![], vec!["a".into()], vec![]);
        assert_eq!(r.unwrap_err(), ContextError::Empty);
    }

    #[test]
    fn rejects_duplicates() {
        let r = FormalContext::from_rows(&["1", "1"], &["a"], &[&[1], &[0]]);
        assert_eq!(r.unwrap_err(), ContextError::DuplicateObject("1".into()));
        let r = FormalContext::from_rows(&["1"], &["a", "a"], &[&[1, 0]]);
        assert_eq!(r.unwrap_err(), ContextError::DuplicateAttribute("a".into()));
    }

    #[test]
    fn rejects_ragged_rows() {
        let r = FormalContext::from_rows(&["1", "2"], &["a", "b"], &[&[1, 0], &[1]]);
        assert!(matches!(r, Err(ContextError::DimensionMismatch { what: "columns", .. })));
    }

    #[test]
    fn permits_duplicate_patterns_and_empty_columns() {
        let ctx = FormalContext::from_rows(&["1", "2"], &["a", "b", "c"], &[&[1, 1, 0], &[1, 1, 0]]).unwrap();
        assert_eq!(ctx.column(0), ctx.column(1));
        assert!(ctx.column(2).is_empty());
    }

    #[test]
    fn complement_flips_every_cell_of_sample() {
        let ctx = fixtures::sample_context();
        let comp = ctx.complement(DEFAULT_NEGATION_PREFIX);
        assert_eq!(comp.attributes()[0], "not_a1");
        let expected: [[u8; 5]; 7] = [
            [1, 0, 0, 1, 1],
            [0, 0, 1, 1, 1],
            [0, 1, 1, 1, 1],
            [1, 1, 1, 1, 0],
            [1, 1, 1, 0, 0],
            [1, 1, 0, 0, 0],
            [0, 0, 0, 1, 1],
        ];
        for (x, row) in expected.iter().enumerate() {
            for (a, &bit) in row.iter().enumerate() {
                assert_eq!(comp.incident(x, a), bit == 1, "cell ({}, {})", x + 1, a + 1);
            }
        }
    }

    #[test]
    fn complement_is_involution_and_flips_all_ones() {
        let ctx = fixtures::sample_context();
        let twice = ctx.complement("n").complement("m");
        assert_eq!(twice.incidence(), ctx.incidence());

        let ones = FormalContext::from_rows(&["1", "2", "3"], &["a", "b", "c"], &[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]).unwrap();
        let zeros = ones.complement(DEFAULT_NEGATION_PREFIX);
        assert!(zeros.incidence().iter().flatten().all(|&b| !b));
    }

    #[test]
    fn appose_sample_adds_negated_columns() {
        let c = fixtures::sample_context().appose_negation();
        assert_eq!(c.flavor(), Flavor::ThreeWay);
        let row1: Vec<bool> = (0..10).map(|a| c.joined().incident(0, a)).collect();
        let expected = [0, 1, 1, 0, 0, 1, 0, 0, 1, 1].map(|b| b == 1);
        assert_eq!(row1, expected);
        assert_eq!(c.a_block(), &fixtures::sample_context());
    }

    #[test]
    fn appose_single_cell() {
        let ctx = FormalContext::from_rows(&["1"], &["a"], &[&[1]]).unwrap();
        let c = ctx.appose_negation();
        assert!(!c.b_block().incident(0, 0));
    }

    #[test]
    fn three_way_rejects_non_negation() {
        let a = fixtures::sample_context();
        let mut b = a.complement("n_");
        b.rows[0] = b.rows[0].complement();
        b.columns = (0..b.n_attributes())
            .map(|k| ObjectSet::from_indices(b.n_objects(), (0..b.n_objects()).filter(|&x| b.rows[x].contains(k))))
            .collect();
        assert!(matches!(CompoundContext::three_way(a, b), Err(ContextError::NotNegation { object: 1, .. })));
    }

    #[test]
    fn cn_context_keeps_blocks() {
        let c = fixtures::cn_sample();
        assert_eq!(c.flavor(), Flavor::CommonNecessary);
        assert_eq!(c.a_block().n_attributes(), 5);
        assert_eq!(c.b_block().n_attributes(), 4);
        assert_eq!(c.joined().n_attributes(), 9);
    }

    #[test]
    fn cn_context_same_table_twice_needs_distinct_names() {
        let t = fixtures::sample_context();
        assert!(matches!(make_cn_context(t.clone(), t.clone()), Err(ContextError::OverlappingNames(_))));
        let renamed = t.complement("").complement("s_");
        let c = make_cn_context(t.clone(), renamed).unwrap();
        assert_eq!(c.a_block().incidence(), c.b_block().incidence());
    }

    #[test]
    fn cn_context_rejects_mismatched_objects() {
        let a = FormalContext::from_rows(&["1", "2"], &["a"], &[&[1], &[0]]).unwrap();
        let b = FormalContext::from_rows(&["1", "3"], &["b"], &[&[1], &[0]]).unwrap();
        assert_eq!(make_cn_context(a, b).unwrap_err(), ContextError::UniverseMismatch);
    }

    #[test]
    fn split_and_join_are_inverse() {
        let c = fixtures::cn_sample();
        let joined = AttributeSet::from_indices(9, [0, 6, 8]);
        let (a, b) = c.split(&joined);
        assert_eq!(a.to_vec(), vec![0]);
        assert_eq!(b.to_vec(), vec![1, 3]);
        assert_eq!(c.join(&a, &b), joined);
    }
}
