//! Definability of object granules in formal contexts.
//!
//! A granule is a set of objects. It is definable when some formula over the
//! attributes picks out exactly that set. Four description languages are
//! supported: conjunctions (`∧`), conjunctions of attributes and negated
//! attributes (three-way), disjunctions (`∨`), and a conjunction over one
//! attribute block joined with a disjunction over another (common and
//! necessary). Granules that are not definable can be approached from above
//! or below by definable ones.
//!
//! ```
//! use granule_core::bitset::ObjectSet;
//! use granule_core::definability::is_wedge_definable;
//! use granule_core::fixtures::sample_context;
//! use granule_core::formula::{render, Scope, Style};
//!
//! let ctx = sample_context();
//! let x = ObjectSet::from_one_based(7, [2, 7]);
//! let verdict = is_wedge_definable(&ctx, &x);
//! let d = verdict.description.unwrap();
//! assert_eq!(render(Scope::from(&ctx), &d, Style::Ascii).unwrap(), "a1 & a2");
//! ```

pub mod approximation;
pub mod bitset;
pub mod cli;
pub mod context;
pub mod cover;
pub mod definability;
pub mod derivation;
pub mod fixtures;
pub mod formula;
pub mod lattice;
pub mod report;
