//! JSON report types shared by the CLI and the web demo.

use crate::construct::{
    predicted_distribution, predicted_params, EnumLimits, GroupSpec, Params, RingCode, RingKind, SpecCheck,
    WeightDistribution,
};
use crate::error::Result;
use crate::gray::{gray_code, gray_params, GrayCtx, GrayParams};
use crate::verify::{griesmer_check, GriesmerReport};
use serde::Serialize;

pub const SCHEMA: &str = "ringcodes-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecEcho {
    pub ring: RingKind,
    pub p: u32,
    pub m: u32,
    pub s: u32,
    pub e: u64,
    #[serde(rename = "V")]
    pub v: String,
    pub l: u32,
}

impl From<&GroupSpec> for SpecEcho {
    fn from(s: &GroupSpec) -> Self {
        SpecEcho { ring: s.kind, p: s.p, m: s.m, s: s.s, e: s.e, v: s.v.format_basis(), l: s.l() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraySection {
    pub params: GrayParams,
    pub distribution: WeightDistribution,
}

/// Output of `construct`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructReport {
    pub schema: &'static str,
    pub spec: SpecEcho,
    pub check: SpecCheck,
    pub predicted: Option<Params>,
    pub enumerated: Params,
    pub predicted_distribution: Option<WeightDistribution>,
    pub hamming_distribution: WeightDistribution,
    pub homogeneous_distribution: WeightDistribution,
    pub griesmer: Option<GriesmerReport>,
    /// Absent when the image exceeds the Gray symbol cap.
    pub gray: Option<GraySection>,
    pub notes: Vec<String>,
}

/// `[n, k, d]` read off an enumerated distribution. `k` is the free rank,
/// `log_(q^2)` of the number of distinct codewords, or 0 if that is not an integer.
pub fn enumerated_params(code: &RingCode, dist: &WeightDistribution) -> Params {
    let kernel = dist.get(0).max(1);
    let distinct = code.size() / kernel;
    let r = code.q() * code.q();
    let mut k = 0;
    let mut t = 1;
    while t < distinct {
        t *= r;
        k += 1;
    }
    Params { n: code.n() as u64, k: if t == distinct { k } else { 0 }, d: dist.min_nonzero().unwrap_or(0) }
}

pub fn construct_report(code: &RingCode, limits: &EnumLimits) -> Result<ConstructReport> {
    let spec = code.spec();
    let (ham, hom) = code.distributions(limits)?;
    let enumerated = enumerated_params(code, &ham);
    let mut notes = Vec::new();
    let (predicted, predicted_distribution) = if code.check().star {
        (Some(predicted_params(spec)?), Some(predicted_distribution(code)?))
    } else {
        notes.push("condition (*) fails; predictions omitted".into());
        (None, None)
    };
    let griesmer = if enumerated.k > 0 && enumerated.d > 0 {
        Some(griesmer_check(enumerated.n, enumerated.k, enumerated.d, code.q())?)
    } else {
        None
    };
    let ctx = GrayCtx::for_code(code);
    let gray = match gray_code(code, &ctx, limits) {
        Ok(fc) => Some(GraySection { params: gray_params(&fc, ctx.base()), distribution: fc.hamming_distribution() }),
        Err(e) => {
            notes.push(format!("Gray image skipped: {e}"));
            None
        }
    };
    Ok(ConstructReport {
        schema: SCHEMA,
        spec: spec.into(),
        check: code.check(),
        predicted,
        enumerated,
        predicted_distribution,
        hamming_distribution: ham,
        homogeneous_distribution: hom,
        griesmer,
        gray,
        notes,
    })
}
