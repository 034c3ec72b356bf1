use serde::{Deserialize, Serialize};

use super::{CompoundContext, ContextError, Flavor, FormalContext};

#[derive(Serialize, Deserialize)]
struct ContextDoc {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct CompoundDoc {
    objects: Vec<String>,
    a_attributes: Vec<String>,
    b_attributes: Vec<String>,
    a_incidence: Vec<Vec<u8>>,
    b_incidence: Vec<Vec<u8>>,
    flavor: FlavorTag,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "snake_case")]
enum FlavorTag {
    ThreeWay,
    CommonNecessary,
}

fn json_err(e: serde_json::Error) -> ContextError {
    ContextError::Json(format!("line {}, column {}: {e}", e.line(), e.column()))
}

fn bits(rows: Vec<Vec<u8>>) -> Result<Vec<Vec<bool>>, ContextError> {
    rows.into_iter()
        .enumerate()
        .map(|(r, row)| {
            row.into_iter()
                .enumerate()
                .map(|(c, v)| match v {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(ContextError::Json(format!(
                        "incidence[{r}][{c}] is {other}, expected 0 or 1"
                    ))),
                })
                .collect()
        })
        .collect()
}

fn numbers(ctx: &FormalContext) -> Vec<Vec<u8>> {
    ctx.incidence()
        .into_iter()
        .map(|r| r.into_iter().map(u8::from).collect())
        .collect()
}

pub fn parse_json(text: &str) -> Result<FormalContext, ContextError> {
    let doc: ContextDoc = serde_json::from_str(text).map_err(json_err)?;
    FormalContext::new(doc.objects, doc.attributes, bits(doc.incidence)?)
}

pub fn to_json(ctx: &FormalContext) -> String {
    let doc = ContextDoc {
        objects: ctx.objects().to_vec(),
        attributes: ctx.attributes().to_vec(),
        incidence: numbers(ctx),
    };
    serde_json::to_string(&doc).expect("context serializes")
}

pub fn parse_compound_json(text: &str) -> Result<CompoundContext, ContextError> {
    let doc: CompoundDoc = serde_json::from_str(text).map_err(json_err)?;
    let a = FormalContext::new(doc.objects.clone(), doc.a_attributes, bits(doc.a_incidence)?)?;
    let b = FormalContext::new(doc.objects, doc.b_attributes, bits(doc.b_incidence)?)?;
    let flavor = match doc.flavor {
        FlavorTag::ThreeWay => Flavor::ThreeWay,
        FlavorTag::CommonNecessary => Flavor::CommonNecessary,
    };
    CompoundContext::new(a, b, flavor)
}

pub fn to_compound_json(cctx: &CompoundContext) -> String {
    let doc = CompoundDoc {
        objects: cctx.objects().to_vec(),
        a_attributes: cctx.a_block().attributes().to_vec(),
        b_attributes: cctx.b_block().attributes().to_vec(),
        a_incidence: numbers(cctx.a_block()),
        b_incidence: numbers(cctx.b_block()),
        flavor: match cctx.flavor() {
            Flavor::ThreeWay => FlavorTag::ThreeWay,
            Flavor::CommonNecessary => FlavorTag::CommonNecessary,
        },
    };
    serde_json::to_string(&doc).expect("compound context serializes")
}
