//! Text, JSON and DOT renderings of verdicts, approximations and lattices.

use std::fmt::Write as _;

use serde::Serialize;

use crate::approximation::Approximation;
use crate::bitset::{AttributeSet, ObjectSet};
use crate::context::FormalContext;
use crate::definability::{Status, Verdict};
use crate::formula::{description_names, render, Description, DescriptionNames, Scope, Style};
use crate::lattice::{CnConcept, ConceptLattice};

/// `{a,b,c}` with object names.
pub fn object_list(scope: Scope<'_>, x: &ObjectSet) -> String {
    let names: Vec<&str> = x.iter().map(|i| scope.objects()[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn attribute_list(ctx: &FormalContext, b: &AttributeSet) -> String {
    format!("{{{}}}", ctx.attribute_names(b).join(","))
}

#[derive(Debug, Serialize)]
pub struct DescriptionDoc {
    pub text: String,
    #[serde(flatten)]
    pub names: DescriptionNames,
}

fn description_doc(scope: Scope<'_>, d: &Description, style: Style) -> DescriptionDoc {
    DescriptionDoc {
        text: render(scope, d, style).expect("description atoms belong to the scope"),
        names: description_names(scope, d).expect("description atoms belong to the scope"),
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictDoc {
    pub status: &'static str,
    pub description: Option<DescriptionDoc>,
    pub reason: Option<&'static str>,
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<Vec<String>>,
}

pub fn verdict_doc(scope: Scope<'_>, v: &Verdict, minimal: Option<&[Description]>, style: Style) -> VerdictDoc {
    VerdictDoc {
        status: v.status.as_str(),
        description: v.description.as_ref().map(|d| description_doc(scope, d, style)),
        reason: v.reason.map(|r| r.as_str()),
        witness: v.witness.as_ref().map(ObjectSet::to_one_based),
        minimal: minimal.map(|ds| ds.iter().map(|d| render(scope, d, style).expect("in scope")).collect()),
    }
}

pub fn verdict_json(scope: Scope<'_>, v: &Verdict, minimal: Option<&[Description]>, style: Style) -> String {
    serde_json::to_string(&verdict_doc(scope, v, minimal, style)).expect("verdict serializes")
}

pub fn verdict_text(scope: Scope<'_>, x: &ObjectSet, v: &Verdict, minimal: Option<&[Description]>, style: Style) -> String {
    let mut out = format!("granule {}: {}", object_list(scope, x), v.status.as_str());
    if let Some(r) = v.reason {
        let _ = write!(out, " ({r})");
    }
    out.push('\n');
    if let Some(d) = &v.description {
        let _ = writeln!(out, "description: {}", render(scope, d, style).expect("in scope"));
    }
    if let (Status::Indefinable, Some(w)) = (v.status, &v.witness) {
        let _ = writeln!(out, "closure: {}", object_list(scope, w));
    }
    for d in minimal.unwrap_or_default() {
        let _ = writeln!(out, "minimal: {}", render(scope, d, style).expect("in scope"));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ApproximationResult {
    pub granule: Vec<usize>,
    pub description: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ApproximationDoc {
    pub direction: &'static str,
    pub mode: &'static str,
    pub exact: bool,
    pub results: Vec<ApproximationResult>,
}

pub fn approximation_doc(scope: Scope<'_>, a: &Approximation, style: Style) -> ApproximationDoc {
    ApproximationDoc {
        direction: a.direction.as_str(),
        mode: a.mode.as_str(),
        exact: a.exact,
        results: a
            .granules
            .iter()
            .map(|(g, d)| ApproximationResult {
                granule: g.to_one_based(),
                description: d.as_ref().map(|d| render(scope, d, style).expect("in scope")),
            })
            .collect(),
    }
}

pub fn approximation_json(scope: Scope<'_>, a: &Approximation, style: Style) -> String {
    serde_json::to_string(&approximation_doc(scope, a, style)).expect("approximation serializes")
}

pub fn approximation_text(scope: Scope<'_>, x: &ObjectSet, a: &Approximation, style: Style) -> String {
    let mut out = format!(
        "{} {} approximation of {}{}\n",
        a.direction,
        a.mode,
        object_list(scope, x),
        if a.exact { " (exact)" } else { "" }
    );
    for (g, d) in &a.granules {
        let text = d.as_ref().map_or_else(|| "(no description)".to_string(), |d| render(scope, d, style).expect("in scope"));
        let _ = writeln!(out, "{}  {}", object_list(scope, g), text);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ConceptDoc {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub system: &'static str,
}

/// `ctx` is the context whose attributes the intents index: the joined
/// context for three-way lattices.
pub fn lattice_json(ctx: &FormalContext, l: &ConceptLattice) -> String {
    let docs: Vec<ConceptDoc> = l
        .concepts()
        .iter()
        .map(|c| ConceptDoc {
            extent: ctx.object_names(&c.extent).into_iter().map(String::from).collect(),
            intent: ctx.attribute_names(&c.intent).into_iter().map(String::from).collect(),
            system: c.system.as_str(),
        })
        .collect();
    serde_json::to_string(&docs).expect("lattice serializes")
}

/// One line per concept, largest extent first.
pub fn lattice_text(ctx: &FormalContext, l: &ConceptLattice) -> String {
    let mut out = String::new();
    for (i, c) in l.concepts().iter().enumerate() {
        let extent: Vec<&str> = ctx.object_names(&c.extent);
        let _ = writeln!(out, "C{i}  {{{}}}  {}", extent.join(","), attribute_list(ctx, &c.intent));
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Cover diagram with the top concept first.
pub fn lattice_dot(ctx: &FormalContext, l: &ConceptLattice) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=TB;\n  node [shape=box];\n", l.system());
    for (i, c) in l.concepts().iter().enumerate() {
        let extent = ctx.object_names(&c.extent).join(",");
        let intent = ctx.attribute_names(&c.intent).join(",");
        let _ = writeln!(out, "  c{i} [label=\"{} | {}\"];", dot_escape(&extent), dot_escape(&intent));
    }
    let _ = writeln!(out, "  {{ rank=min; c0; }}");
    for &(u, lo) in l.covers() {
        let _ = writeln!(out, "  c{u} -> c{lo};");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
pub struct CnIntentDoc {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CnConceptDoc {
    pub extent: Vec<String>,
    pub intent: CnIntentDoc,
    pub system: &'static str,
}

fn names(ctx: &FormalContext, b: &AttributeSet) -> Vec<String> {
    ctx.attribute_names(b).into_iter().map(String::from).collect()
}

pub fn cn_json(a: &FormalContext, b: &FormalContext, list: &[CnConcept]) -> String {
    let docs: Vec<CnConceptDoc> = list
        .iter()
        .map(|c| CnConceptDoc {
            extent: a.object_names(&c.extent).into_iter().map(String::from).collect(),
            intent: CnIntentDoc { a: names(a, &c.intent.a_part), b: names(b, &c.intent.b_part) },
            system: "common_necessary",
        })
        .collect();
    serde_json::to_string(&docs).expect("concept list serializes")
}

pub fn cn_text(a: &FormalContext, b: &FormalContext, list: &[CnConcept]) -> String {
    let mut out = String::new();
    for (i, c) in list.iter().enumerate() {
        let extent = a.object_names(&c.extent).join(",");
        let _ = writeln!(
            out,
            "C{i}  {{{extent}}}  ({}, {})",
            attribute_list(a, &c.intent.a_part),
            attribute_list(b, &c.intent.b_part)
        );
    }
    out
}

/// Nodes only: these concepts carry no order structure.
pub fn cn_dot(a: &FormalContext, b: &FormalContext, list: &[CnConcept]) -> String {
    let mut out = String::from("digraph common_necessary {\n  node [shape=box];\n");
    for (i, c) in list.iter().enumerate() {
        let extent = a.object_names(&c.extent).join(",");
        let intent = format!(
            "{}; {}",
            a.attribute_names(&c.intent.a_part).join(","),
            b.attribute_names(&c.intent.b_part).join(",")
        );
        let _ = writeln!(out, "  c{i} [label=\"{} | {}\"];", dot_escape(&extent), dot_escape(&intent));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximation::lower_wedge;
    use crate::definability::is_wedge_definable;
    use crate::fixtures;
    use crate::lattice::{enumerate_cn, enumerate_formal, Guard};

    #[test]
    fn verdict_shapes() {
        let ctx = fixtures::sample_context();
        let s = Scope::from(&ctx);
        let x = ObjectSet::from_one_based(7, [2, 7]);
        let v = is_wedge_definable(&ctx, &x);
        assert_eq!(
            verdict_json(s, &v, None, Style::Unicode),
            r#"{"status":"definable","description":{"text":"a1 ∧ a2","conj":["a1","a2"],"disj":[],"negated":[]},"reason":null,"witness":null}"#
        );
        assert_eq!(verdict_text(s, &x, &v, None, Style::Unicode), "granule {2,7}: definable\ndescription: a1 ∧ a2\n");
        let y = ObjectSet::from_one_based(7, [1, 2]);
        let v = is_wedge_definable(&ctx, &y);
        assert_eq!(verdict_text(s, &y, &v, None, Style::Ascii), "granule {1,2}: indefinable\nclosure: {1,2,7}\n");
        assert!(verdict_json(s, &v, None, Style::Ascii).contains(r#""witness":[1,2,7]"#));
    }

    #[test]
    fn approximation_shape() {
        let ctx = fixtures::covering_sample();
        let s = Scope::from(&ctx);
        let a = lower_wedge(&ctx, &ObjectSet::from_one_based(6, [4, 5, 6])).unwrap();
        assert_eq!(
            approximation_json(s, &a, Style::Unicode),
            r#"{"direction":"lower","mode":"wedge","exact":false,"results":[{"granule":[4,5],"description":"a2 ∧ a3"},{"granule":[4,6],"description":"a2 ∧ a5"}]}"#
        );
    }

    #[test]
    fn lattice_renderings() {
        let ctx = fixtures::sample_context();
        let l = enumerate_formal(&ctx, Guard::Enforce).unwrap();
        let text = lattice_text(&ctx, &l);
        assert_eq!(text.lines().count(), 11);
        assert!(text.starts_with("C0  {1,2,3,4,5,6,7}  {}\n"));
        let dot = lattice_dot(&ctx, &l);
        assert_eq!(dot.matches("[label=").count(), 11);
        assert!(dot.contains("c0 [label=\"1,2,3,4,5,6,7 | \"]"));
        assert!(lattice_json(&ctx, &l).starts_with(r#"[{"extent":["1","2","3","4","5","6","7"],"intent":[],"system":"formal"}"#));
    }

    #[test]
    fn cn_renderings() {
        let c = fixtures::cn_sample();
        let list = enumerate_cn(&c, Guard::Enforce).unwrap();
        let text = cn_text(c.a_block(), c.b_block(), &list);
        assert!(text.contains("{2,3,7}  ({a1}, {b2,b4})"));
        assert!(cn_json(c.a_block(), c.b_block(), &list).contains(r#"{"extent":["2","3"],"intent":{"a":["a1"],"b":["b3"]}"#));
        assert_eq!(cn_dot(c.a_block(), c.b_block(), &list).matches("->").count(), 0);
    }
}
