//! Hand-checked results on the bundled sample contexts.

mod common;

use granule_core::approximation::{
    lower_three_way, lower_vee, lower_wedge, upper_cn, upper_vee, upper_wedge, Approximation, ApproximationError,
};
use granule_core::bitset::ObjectSet;
use granule_core::context::{parse_context, CompoundContext};
use granule_core::definability::{
    intersect_descriptions, is_cn_definable, is_three_way_definable, is_vee_definable, is_wedge_definable,
    minimal_descriptions, union_vee_descriptions, Mode, Reason, Status,
};
use granule_core::fixtures;
use granule_core::formula::{render, Scope, Style};
use granule_core::lattice::{enumerate_cn, enumerate_object_oriented, enumerate_three_way, Guard};

use common::{data, objs};

fn text(scope: Scope<'_>, v: &granule_core::definability::Verdict) -> Option<String> {
    v.description.as_ref().map(|d| render(scope, d, Style::Unicode).unwrap())
}

fn rows(scope: Scope<'_>, a: &Approximation) -> Vec<(Vec<usize>, Option<String>)> {
    a.granules
        .iter()
        .map(|(g, d)| (g.to_one_based(), d.as_ref().map(|d| render(scope, d, Style::Unicode).unwrap())))
        .collect()
}

fn row(set: &[usize], d: &str) -> (Vec<usize>, Option<String>) {
    (set.to_vec(), Some(d.to_string()))
}

#[test]
fn fixtures_match_data_files() {
    let read = |f: &str| parse_context(&std::fs::read_to_string(data(f)).unwrap()).unwrap();
    assert_eq!(read("sample.cxt"), fixtures::sample_context());
    assert_eq!(read("covering_sample.cxt"), fixtures::covering_sample());
    let cn = fixtures::cn_sample();
    assert_eq!(&read("cn_sample_a.cxt"), cn.a_block());
    assert_eq!(&read("cn_sample_b.cxt"), cn.b_block());
    let scores = fixtures::student_scores();
    assert_eq!(&read("scores_a.cxt"), scores.a_block());
    assert_eq!(&read("scores_b.cxt"), scores.b_block());
}

#[test]
fn wedge_verdicts() {
    let ctx = fixtures::sample_context();
    let s = Scope::from(&ctx);
    assert_eq!(text(s, &is_wedge_definable(&ctx, &objs(7, &[2, 7]))).as_deref(), Some("a1 ∧ a2"));
    assert_eq!(text(s, &is_wedge_definable(&ctx, &objs(7, &[4, 5, 6]))).as_deref(), Some("a5"));
    let v = is_wedge_definable(&ctx, &objs(7, &[1, 2]));
    assert_eq!(v.status, Status::Indefinable);
    assert_eq!(v.witness, Some(objs(7, &[1, 2, 7])));
    let v = is_wedge_definable(&ctx, &objs(7, &[1, 2, 3, 4, 5, 6, 7]));
    assert_eq!((v.status, v.reason), (Status::Inapplicable, Some(Reason::EmptyIntent)));
}

#[test]
fn shortest_wedge_descriptions() {
    let ctx = fixtures::sample_context();
    let s = Scope::from(&ctx);
    let found: Vec<String> = minimal_descriptions(s, Mode::Wedge, &objs(7, &[6]))
        .unwrap()
        .iter()
        .map(|d| render(s, d, Style::Unicode).unwrap())
        .collect();
    assert_eq!(found, ["a3 ∧ a4", "a3 ∧ a5"]);
    assert!(minimal_descriptions(s, Mode::Wedge, &objs(7, &[1, 2])).unwrap().is_empty());
}

#[test]
fn three_way_verdicts() {
    let tw = fixtures::sample_context().appose_negation();
    let s = Scope::from(&tw);
    let describe = |set: &[usize]| text(s, &is_three_way_definable(&tw, &objs(7, set)).unwrap());
    assert_eq!(describe(&[2, 7]).as_deref(), Some("a1 ∧ a2 ∧ ¬a4 ∧ ¬a5"));
    assert_eq!(describe(&[2, 3]).as_deref(), Some("a1 ∧ ¬a3 ∧ ¬a4 ∧ ¬a5"));
    assert_eq!(describe(&[2]).as_deref(), Some("a1 ∧ a2 ∧ ¬a3 ∧ ¬a4 ∧ ¬a5"));
    assert_eq!(
        is_three_way_definable(&tw, &objs(7, &[1, 2])).unwrap().status,
        Status::Indefinable
    );
}

#[test]
fn vee_verdicts() {
    let ctx = fixtures::sample_context();
    let s = Scope::from(&ctx);
    assert_eq!(text(s, &is_vee_definable(&ctx, &objs(7, &[1, 4, 5, 6, 7]))).as_deref(), Some("a3 ∨ a4 ∨ a5"));
    assert_eq!(text(s, &is_vee_definable(&ctx, &objs(7, &[1, 2, 5, 6, 7]))).as_deref(), Some("a2 ∨ a3 ∨ a4"));
    assert_eq!(
        text(s, &is_vee_definable(&ctx, &objs(7, &[1, 2, 4, 5, 6, 7]))).as_deref(),
        Some("a2 ∨ a3 ∨ a4 ∨ a5")
    );
    let v = is_vee_definable(&ctx, &objs(7, &[1, 2]));
    assert_eq!(v.reason, Some(Reason::EmptyIntent));
}

#[test]
fn cn_verdicts() {
    let cn = fixtures::cn_sample();
    let s = Scope::from(&cn);
    let describe = |c: &CompoundContext, set: &[usize]| text(s, &is_cn_definable(c, &objs(7, set)).unwrap());
    assert_eq!(describe(&cn, &[2, 3, 7]).as_deref(), Some("a1 ∧ (b2 ∨ b4)"));
    assert_eq!(describe(&cn, &[2, 3]).as_deref(), Some("a1 ∧ (b3)"));
    assert_eq!(describe(&cn, &[1, 6, 7]).as_deref(), Some("a3 ∧ (b1 ∨ b2)"));

    let scores = fixtures::student_scores();
    let v = is_cn_definable(&scores, &ObjectSet::from_indices(4, [2, 3])).unwrap();
    assert_eq!(text(Scope::from(&scores), &v).as_deref(), Some("c1 ∧ c2 ∧ c3 ∧ c4 ∧ (ec1 ∨ ec2)"));
}

#[test]
fn descriptions_compose() {
    let ctx = fixtures::sample_context();
    let s = Scope::from(&ctx);
    let v = intersect_descriptions(s, &objs(7, &[1, 2, 7]), &objs(7, &[2, 3, 7])).unwrap();
    assert_eq!(text(s, &v).as_deref(), Some("a1 ∧ a2"));
    let v = intersect_descriptions(s, &objs(7, &[1, 2]), &objs(7, &[2, 3, 7])).unwrap();
    assert_eq!(v.reason, Some(Reason::IndefinableOperand));
    let u = union_vee_descriptions(&ctx, &objs(7, &[1, 6, 7]), &objs(7, &[5, 6]));
    assert_eq!(text(s, &u).as_deref(), Some("a3 ∨ a4"));
}

#[test]
fn wedge_approximations() {
    let cov = fixtures::covering_sample();
    let s = Scope::from(&cov);
    let lower = lower_wedge(&cov, &objs(6, &[4, 5, 6])).unwrap();
    assert!(!lower.exact);
    assert_eq!(rows(s, &lower), [row(&[4, 5], "a2 ∧ a3"), row(&[4, 6], "a2 ∧ a5")]);

    let ctx = fixtures::sample_context();
    let s = Scope::from(&ctx);
    let upper = upper_wedge(&ctx, &objs(7, &[1, 2])).unwrap();
    assert_eq!(rows(s, &upper), [row(&[1, 2, 7], "a2")]);
    assert_eq!(
        lower_wedge(&ctx, &ctx.all_objects()),
        Err(ApproximationError::Inapplicable(Reason::FullGranule))
    );
}

#[test]
fn other_approximations() {
    let ctx = fixtures::sample_context();
    let s = Scope::from(&ctx);
    assert_eq!(rows(s, &upper_vee(&ctx, &objs(7, &[1, 2])).unwrap()), [row(&[1, 2, 7], "a2")]);
    assert_eq!(rows(s, &lower_vee(&ctx, &objs(7, &[1, 2, 5, 6, 7])).unwrap()), [row(&[1, 2, 5, 6, 7], "a2 ∨ a3 ∨ a4")]);

    let tw = ctx.appose_negation();
    let ts = Scope::from(&tw);
    assert_eq!(
        rows(ts, &lower_three_way(&tw, &objs(7, &[1, 2])).unwrap()),
        [row(&[1], "a2 ∧ a3 ∧ ¬a1 ∧ ¬a4 ∧ ¬a5"), row(&[2], "a1 ∧ a2 ∧ ¬a3 ∧ ¬a4 ∧ ¬a5")]
    );

    let cn = fixtures::cn_sample();
    let upper = upper_cn(&cn, &objs(7, &[2, 7])).unwrap();
    assert!(upper.exact);
    assert_eq!(rows(Scope::from(&cn), &upper), [row(&[2, 7], "a1 ∧ a2 ∧ (b2 ∨ b4)")]);
}

#[test]
fn concept_counts() {
    let ctx = fixtures::sample_context();
    assert_eq!(enumerate_object_oriented(&ctx, Guard::Enforce).unwrap().len(), 17);
    assert_eq!(enumerate_three_way(&ctx, Guard::Enforce).unwrap().len(), 28);
    let cn = enumerate_cn(&fixtures::cn_sample(), Guard::Enforce).unwrap();
    assert_eq!(cn.len(), 17);
    assert!(cn.iter().any(|c| c.extent == objs(7, &[2, 3, 7])));
}
