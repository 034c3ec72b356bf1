"""Smoke test for the granule Python extension.

Build and install first, for example:

    pip install maturin
    maturin develop -m crates/python/Cargo.toml

then run ``python python/smoke_test.py`` from the repository root.
"""

from pathlib import Path

import granule

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "data"


def main() -> None:
    ctx = granule.Context.read(DATA / "sample.cxt")
    assert ctx.shape == (7, 5)
    assert ctx.intent(["2", "7"]) == ["a1", "a2"]
    assert ctx.extent(["a1"]) == ["2", "3", "7"]

    concepts = ctx.concepts()
    assert len(concepts) == 11
    assert concepts[0].extent == ctx.objects

    v = ctx.define(["2", "7"])
    assert v.definable and v.description == "a1 ∧ a2"
    v = ctx.define([0, 1])
    assert v.status == "indefinable" and v.witness == ["1", "2", "7"]
    assert ctx.define(["1", "4", "5", "6", "7"], mode="vee").description == "a3 ∨ a4 ∨ a5"
    assert ctx.define(["2"], mode="three_way").description == "a1 ∧ a2 ∧ ¬a3 ∧ ¬a4 ∧ ¬a5"
    assert ctx.minimal_descriptions(["6"], ascii=True) == ["a3 & a4", "a3 & a5"]

    upper = ctx.approximate(["1", "2"], "upper")
    assert upper.granules == [(["1", "2", "7"], "a2")] and not upper.exact
    try:
        ctx.approximate(ctx.objects, "lower")
    except granule.InapplicableError as e:
        assert str(e) == "full_granule"
    else:
        raise AssertionError("expected InapplicableError")

    covering = granule.Context.read(DATA / "covering_sample.cxt")
    lower = covering.approximate(["4", "5", "6"], "lower")
    assert lower.granules == [(["4", "5"], "a2 ∧ a3"), (["4", "6"], "a2 ∧ a5")]

    scores = granule.CompoundContext.common_necessary(
        granule.Context.read(DATA / "scores_a.cxt"),
        granule.Context.read(DATA / "scores_b.cxt"),
    )
    assert scores.flavor == "common_necessary"
    assert scores.define(["Grace", "Jenny"]).description == "c1 ∧ c2 ∧ c3 ∧ c4 ∧ (ec1 ∨ ec2)"

    assert granule.Context.parse(ctx.to_cxt()) == ctx
    assert ctx.complement().complement().incidence() == ctx.incidence()
    assert len(ctx.appose_negation().concepts()) == 28

    print("granule smoke test passed")


if __name__ == "__main__":
    main()
