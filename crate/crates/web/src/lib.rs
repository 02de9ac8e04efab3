//! wasm-bindgen wrappers used by `www/index.html`. Every function returns a
//! JSON string or throws the error text.

use ringcodes::construct::{EnumLimits, GroupSpec, Ring, RingKind};
use ringcodes::gray::GrayCtx;
use ringcodes::report::construct_report;
use ringcodes::verify::{verify_suite, TheoremId};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Tighter than the native defaults so the page stays responsive.
const WEB_MAX_CODEWORDS: u64 = 1 << 16;

fn limits() -> EnumLimits {
    EnumLimits { max_codewords: WEB_MAX_CODEWORDS, orbit_reduction: true, ..EnumLimits::default() }
}

fn err(e: impl ToString) -> JsError {
    JsError::new(&e.to_string())
}

fn spec(ring: &str, p: u32, m: u32, s: u32, e: u32, v: &str) -> Result<GroupSpec, JsError> {
    let kind: RingKind = ring.parse().map_err(err)?;
    GroupSpec::parse(kind, p, m, s, e as u64, v).map_err(err)
}

/// Full construction report: parameters, Hamming and homogeneous
/// distributions, Griesmer check, Gray image parameters.
#[wasm_bindgen]
pub fn construct(ring: &str, p: u32, m: u32, s: u32, e: u32, v: &str) -> Result<String, JsError> {
    let spec = spec(ring, p, m, s, e, v)?;
    let code = ringcodes::construct::RingCode::new(spec).map_err(err)?;
    if !code.check().star {
        return Err(err(format!("e = {e} does not satisfy condition (*)")));
    }
    let report = construct_report(&code, &limits()).map_err(err)?;
    serde_json::to_string(&report).map_err(err)
}

/// Every element of the base ring with its homogeneous weight and Gray image.
#[wasm_bindgen]
pub fn gray_table(ring: &str, p: u32, m: u32) -> Result<String, JsError> {
    let kind: RingKind = ring.parse().map_err(err)?;
    let ring = Ring::new(kind, p, m, 2).map_err(err)?;
    if ring.fields().base().size() > 16 {
        return Err(err("base ring too large to tabulate (q > 16)"));
    }
    let base = ring.fields().base();
    let ctx = GrayCtx::new(base);
    let rows: Vec<_> = ring
        .base_elements()
        .into_iter()
        .map(|a| {
            let image: Vec<String> = ctx.gray_elem(a).into_iter().map(|c| base.format_elem(c)).collect();
            json!({
                "element": ring.format_base(a),
                "unit": a.is_unit(),
                "hom_weight": ctx.hom_weight(a),
                "gray": image,
            })
        })
        .collect();
    let order: Vec<String> = ctx.order().iter().map(|&c| base.format_elem(c)).collect();
    Ok(json!({ "ring": kind.name(), "q": ctx.q(), "order": order, "rows": rows }).to_string())
}

/// Runs theorem checks (an id, a comma-separated list or "all") on one spec.
#[wasm_bindgen]
pub fn verify(ring: &str, p: u32, m: u32, s: u32, e: u32, v: &str, suite: &str) -> Result<String, JsError> {
    let spec = spec(ring, p, m, s, e, v)?;
    let ids: Vec<TheoremId> = if suite == "all" {
        TheoremId::SWEEP_DEFAULT.to_vec()
    } else {
        suite.split(',').map(|t| t.trim().parse().map_err(err)).collect::<Result<_, _>>()?
    };
    let r = verify_suite(&spec, &ids, &limits()).map_err(err)?;
    serde_json::to_string(&r).map_err(err)
}
