use super::{ring_verdict, ring_verdict_default, Instance, TheoremId, TheoremVerdict};
use crate::construct::{validate_spec, EnumLimits, GroupSpec, Ring, RingCode, RingKind};
use crate::error::Error;
use crate::gf::poly::is_prime;
use crate::gf::Subspace;
use crate::report::SpecEcho;
use serde::Serialize;
use std::collections::BTreeMap;

/// Sweeps skip instances with `Q^2 n` above this many trace evaluations.
pub const DEFAULT_MAX_WORK: u64 = 1 << 27;
/// Gray images in a sweep are built only up to this many symbols.
pub const SWEEP_GRAY_CAP: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct SweepLimits {
    pub max_p: u32,
    pub max_m: u32,
    pub max_s: u32,
    pub max_e: Option<u64>,
    pub max_l: Option<u32>,
    pub kinds: Vec<RingKind>,
    pub theorems: Vec<TheoremId>,
    pub enum_limits: EnumLimits,
    pub max_work: u64,
    pub gray_cap: u64,
}

impl SweepLimits {
    pub fn new(max_p: u32, max_m: u32, max_s: u32) -> Self {
        SweepLimits {
            max_p,
            max_m,
            max_s,
            max_e: None,
            max_l: None,
            kinds: vec![RingKind::Dual, RingKind::Galois],
            theorems: TheoremId::SWEEP_DEFAULT.to_vec(),
            enum_limits: EnumLimits { orbit_reduction: true, ..EnumLimits::default() },
            max_work: DEFAULT_MAX_WORK,
            gray_cap: SWEEP_GRAY_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SweepEntry {
    Verdict(TheoremVerdict),
    /// A block of instances left out, e.g. over a cap.
    Skipped {
        theorem: Option<TheoremId>,
        spec: SpecEcho,
        instances: u64,
        reason: String,
    },
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremCounts {
    pub matched: u64,
    pub mismatched: u64,
    pub skipped: u64,
    pub not_applicable: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepResult {
    pub instances: u64,
    pub counts: BTreeMap<TheoremId, TheoremCounts>,
    /// Instances by number of distinct nonzero Hamming weights.
    pub weight_classes: BTreeMap<String, u64>,
    pub entries: Vec<SweepEntry>,
}

impl SweepResult {
    pub fn mismatches(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.entries.iter().filter_map(|e| match e {
            SweepEntry::Verdict(v) if !v.matched => Some(v),
            _ => None,
        })
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().next().is_none()
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.entries.iter().filter_map(|e| match e {
            SweepEntry::Verdict(v) => Some(v),
            _ => None,
        })
    }

    fn count(&mut self, id: TheoremId) -> &mut TheoremCounts {
        self.counts.entry(id).or_default()
    }

    fn push_verdict(&mut self, v: TheoremVerdict) {
        let c = self.count(v.theorem);
        if v.matched {
            c.matched += 1;
        } else {
            c.mismatched += 1;
        }
        self.entries.push(SweepEntry::Verdict(v));
    }

    fn push_outcome(&mut self, id: TheoremId, spec: &GroupSpec, out: crate::Result<TheoremVerdict>) {
        match out {
            Ok(v) => self.push_verdict(v),
            Err(Error::PreconditionNotMet(_)) | Err(Error::StarViolated { .. }) => self.count(id).not_applicable += 1,
            Err(Error::EnumerationCapExceeded(reason)) => {
                self.count(id).skipped += 1;
                self.entries.push(SweepEntry::Skipped { theorem: Some(id), spec: spec.into(), instances: 1, reason });
            }
            Err(e) => self.push_verdict(TheoremVerdict::failed(id, spec, &e)),
        }
    }

    fn skip_block(&mut self, ids: &[TheoremId], echo: SpecEcho, instances: u64, reason: String) {
        for &id in ids {
            self.count(id).skipped += instances;
        }
        self.entries.push(SweepEntry::Skipped { theorem: None, spec: echo, instances, reason });
    }
}

/// Runs the given theorems on one fully specified instance.
pub fn verify_suite(spec: &GroupSpec, ids: &[TheoremId], limits: &EnumLimits) -> crate::Result<SweepResult> {
    let check = validate_spec(spec)?;
    let ring = Ring::new(spec.kind, spec.p, spec.m, spec.s)?;
    let mut out = SweepResult { instances: 1, ..SweepResult::default() };
    let code = RingCode::with_ring(spec.clone(), check, ring.clone())?;
    let mut inst = Instance::from_code(code, *limits);
    for &id in ids {
        let verdict = if id.ring_level() { ring_verdict(id, &ring, spec) } else { inst.verdict(id) };
        out.push_outcome(id, spec, verdict);
    }
    Ok(out)
}

fn weight_class(k: usize) -> String {
    match k {
        1 => "one-weight".into(),
        2 => "two-weight".into(),
        3 => "three-weight".into(),
        k => format!("{k}-weight"),
    }
}

/// Runs every selected theorem over all admissible `(kind, p, m, s, e, V)`
/// within the limits, in a fixed order: `p, m, s`, ring kind, ring-level
/// checks, then `e`, `l` and `V` in canonical subspace order.
pub fn sweep(limits: &SweepLimits) -> SweepResult {
    let mut out = SweepResult::default();
    let spec_ids: Vec<TheoremId> = limits.theorems.iter().copied().filter(|t| !t.ring_level()).collect();
    let ring_ids: Vec<TheoremId> = limits.theorems.iter().copied().filter(|t| t.ring_level()).collect();
    for p in (2..=limits.max_p).filter(|&p| is_prime(p as u64)) {
        for m in 1..=limits.max_m {
            for s in 2..=limits.max_s {
                for &kind in &limits.kinds {
                    sweep_ring(limits, &mut out, kind, p, m, s, &spec_ids, &ring_ids);
                }
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn sweep_ring(
    limits: &SweepLimits,
    out: &mut SweepResult,
    kind: RingKind,
    p: u32,
    m: u32,
    s: u32,
    spec_ids: &[TheoremId],
    ring_ids: &[TheoremId],
) {
    let width = m * s;
    let zero = GroupSpec::new(kind, p, m, s, 1, Subspace::zero(p, width));
    let ids: Vec<TheoremId> = spec_ids.iter().copied().filter(|t| t.applies_to(kind)).collect();
    let big_q = match (p as u64).checked_pow(width) {
        Some(q) if q.saturating_mul(q) <= limits.enum_limits.max_codewords => q,
        _ => {
            let all: Vec<TheoremId> = ids.iter().chain(ring_ids).copied().collect();
            out.skip_block(
                &all,
                (&zero).into(),
                1,
                format!("Q^2 exceeds the cap of {}", limits.enum_limits.max_codewords),
            );
            return;
        }
    };
    let ring = match Ring::new(kind, p, m, s) {
        Ok(r) => r,
        Err(e) => {
            let all: Vec<TheoremId> = ids.iter().chain(ring_ids).copied().collect();
            out.skip_block(&all, (&zero).into(), 1, e.to_string());
            return;
        }
    };
    for &id in ring_ids {
        out.push_outcome(id, &zero, ring_verdict_default(id, &ring));
    }
    if ids.is_empty() {
        return;
    }
    let q = (p as u64).pow(m);
    for e in (1..big_q).filter(|e| (big_q - 1) % e == 0) {
        if limits.max_e.is_some_and(|max| e > max) {
            continue;
        }
        let spec_e = zero.with_e(e);
        if !spec_e.star() {
            let total: u64 = (0..=width).map(|l| Subspace::count_of_dim(p, width, l)).sum();
            for &id in &ids {
                out.count(id).not_applicable += total;
            }
            continue;
        }
        for l in 0..=width {
            if limits.max_l.is_some_and(|max| l > max) {
                continue;
            }
            let count = Subspace::count_of_dim(p, width, l);
            let n = (big_q - 1) * (p as u64).pow(l) / e;
            let work = (big_q * big_q) as u128 * n as u128;
            let mut block = SpecEcho::from(&spec_e);
            block.v = "*".into();
            block.l = l;
            if n > limits.enum_limits.max_length {
                out.skip_block(
                    &ids,
                    block,
                    count,
                    format!("l = {l}: n = {n} exceeds {}", limits.enum_limits.max_length),
                );
                continue;
            }
            if work > limits.max_work as u128 {
                out.skip_block(&ids, block, count, format!("l = {l}: Q^2 n = {work} exceeds {}", limits.max_work));
                continue;
            }
            let gray_ok = (big_q * big_q) as u128 * q as u128 * n as u128 <= limits.gray_cap as u128;
            for v in Subspace::all_of_dim(p, width, l) {
                let spec = GroupSpec::new(kind, p, m, s, e, v);
                let code = match validate_spec(&spec).and_then(|c| RingCode::with_ring(spec.clone(), c, ring.clone())) {
                    Ok(c) => c,
                    Err(err) => {
                        for &id in &ids {
                            out.push_outcome(id, &spec, Err(err.clone()));
                        }
                        continue;
                    }
                };
                out.instances += 1;
                let mut inst = Instance::from_code(code, limits.enum_limits);
                for &id in &ids {
                    if id == TheoremId::Thm45 && !gray_ok {
                        out.push_outcome(
                            id,
                            &spec,
                            Err(Error::EnumerationCapExceeded(format!(
                                "Gray image exceeds the sweep cap of {} symbols",
                                limits.gray_cap
                            ))),
                        );
                        continue;
                    }
                    let verdict = inst.verdict(id);
                    out.push_outcome(id, &spec, verdict);
                }
                if let Ok(d) = inst.hamming() {
                    *out.weight_classes.entry(weight_class(d.nonzero_weights().len())).or_default() += 1;
                }
            }
        }
    }
}
