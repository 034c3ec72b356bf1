//! Small sample contexts used throughout the tests, the examples in the
//! README and the Python smoke test.

use crate::context::{make_cn_context, CompoundContext, FormalContext};

const SEVEN: [&str; 7] = ["1", "2", "3", "4", "5", "6", "7"];
const A5: [&str; 5] = ["a1", "a2", "a3", "a4", "a5"];

/// Seven objects, five attributes; eleven formal concepts.
pub fn sample_context() -> FormalContext {
    FormalContext::from_rows(
        &SEVEN,
        &A5,
        &[
            &[0, 1, 1, 0, 0],
            &[1, 1, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 1],
            &[0, 0, 1, 1, 1],
            &[1, 1, 1, 0, 0],
        ],
    )
    .expect("valid sample")
}

/// Frequently used (A-block) and infrequently used (B-block) attributes over
/// the same seven objects.
pub fn cn_sample() -> CompoundContext {
    let a = FormalContext::from_rows(
        &SEVEN,
        &A5,
        &[
            &[0, 1, 1, 0, 0],
            &[1, 1, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 1, 1],
            &[0, 0, 1, 1, 1],
            &[1, 1, 1, 0, 0],
        ],
    )
    .expect("valid a-block");
    let b = FormalContext::from_rows(
        &SEVEN,
        &["b1", "b2", "b3", "b4"],
        &[
            &[1, 0, 0, 0],
            &[0, 0, 1, 1],
            &[0, 0, 1, 1],
            &[0, 0, 1, 0],
            &[0, 0, 1, 0],
            &[1, 0, 0, 0],
            &[1, 1, 0, 1],
        ],
    )
    .expect("valid b-block");
    make_cn_context(a, b).expect("blocks share objects")
}

/// Compulsory courses `c1..c4` and elective courses `ec1, ec2`.
pub fn student_scores() -> CompoundContext {
    let names = ["Peter", "John", "Grace", "Jenny"];
    let compulsory = FormalContext::from_rows(
        &names,
        &["c1", "c2", "c3", "c4"],
        &[&[1, 1, 1, 1], &[1, 0, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]],
    )
    .expect("valid compulsory block");
    let elective = FormalContext::from_rows(
        &names,
        &["ec1", "ec2"],
        &[&[0, 0], &[1, 0], &[0, 1], &[1, 0]],
    )
    .expect("valid elective block");
    make_cn_context(compulsory, elective).expect("blocks share objects")
}

/// Six objects, five attributes; `{4,5,6}` has two incomparable maximal
/// definable subsets.
pub fn covering_sample() -> FormalContext {
    FormalContext::from_rows(
        &SEVEN[..6],
        &A5,
        &[
            &[1, 0, 0, 0, 0],
            &[1, 1, 0, 1, 0],
            &[1, 0, 1, 1, 1],
            &[1, 1, 1, 0, 1],
            &[1, 1, 1, 0, 0],
            &[0, 1, 0, 0, 1],
        ],
    )
    .expect("valid sample")
}
