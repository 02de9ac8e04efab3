//! Homogeneous weights, the Gray map `ψ(a) = (c_1 a_1 + a_2, ..., c_q a_1 + a_2)`
//! and the field codes `ψ(C)`.

use crate::construct::{validate_spec, EnumLimits, Params, Ring, RingCode, RingElem, RingKind, WeightDistribution};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem};
use crate::par::map_indexed;
use serde::Serialize;
use std::collections::HashSet;

/// Cap on the number of symbols stored for `ψ(C)`.
pub const GRAY_SYMBOL_CAP: u64 = 1 << 24;
/// Cap on `pairs × (q + 1) n` for the pairwise isometry scan.
pub const PAIR_WORK_CAP: u64 = 1 << 26;
/// Above `|C|^2 N` of this size linearity is decided by rank instead of closure.
pub const CLOSURE_WORK_CAP: u64 = 1 << 26;

/// `0, q-1, q` for zero, units and nonzero ideal elements.
pub fn hom_weight(q: u64, a: RingElem) -> u64 {
    if a.is_zero() {
        0
    } else if a.is_unit() {
        q - 1
    } else {
        q
    }
}

/// The residue field with its elements in Gray order `0, θ^0, θ^1, ...`.
#[derive(Clone)]
pub struct GrayCtx {
    base: FieldCtx,
    order: Vec<FieldElem>,
}

impl GrayCtx {
    pub fn new(base: &FieldCtx) -> Self {
        let mut order = vec![FieldElem::ZERO];
        order.extend((0..base.order() as u64).map(|i| base.theta_pow(i)));
        GrayCtx { base: base.clone(), order }
    }

    pub fn for_code(code: &RingCode) -> Self {
        Self::new(code.ring().fields().base())
    }

    pub fn q(&self) -> u64 {
        self.order.len() as u64
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn order(&self) -> &[FieldElem] {
        &self.order
    }

    pub fn hom_weight(&self, a: RingElem) -> u64 {
        hom_weight(self.q(), a)
    }

    pub fn hom_weight_vec(&self, v: &[RingElem]) -> u64 {
        v.iter().map(|&a| self.hom_weight(a)).sum()
    }

    pub fn gray_elem(&self, a: RingElem) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.order.len());
        self.gray_into(a, &mut out);
        out
    }

    fn gray_into(&self, a: RingElem, out: &mut Vec<FieldElem>) {
        let f = &self.base;
        out.extend(self.order.iter().map(|&c| f.add(f.mul(c, a.a), a.b)));
    }

    pub fn gray_vec(&self, v: &[RingElem]) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(v.len() * self.order.len());
        for &a in v {
            self.gray_into(a, &mut out);
        }
        out
    }

    fn symbol_text(&self, c: FieldElem) -> String {
        self.base.format_elem(c)
    }

    /// One-character symbols are written back to back, longer ones space-separated.
    fn word_text(&self, w: &[FieldElem]) -> String {
        let parts: Vec<String> = w.iter().map(|&c| self.symbol_text(c)).collect();
        if parts.iter().all(|s| s.len() == 1) {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }
}

/// The image `ψ(C)`, one word per `β` in canonical order.
#[derive(Clone, Debug)]
pub struct FieldCode {
    q: u64,
    len: usize,
    symbols: Vec<FieldElem>,
}

impl FieldCode {
    pub fn from_words(q: u64, len: usize, words: &[Vec<FieldElem>]) -> Self {
        FieldCode { q, len, symbols: words.iter().flatten().copied().collect() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `N = q n`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn word_count(&self) -> usize {
        if self.len == 0 {
            0
        } else {
            self.symbols.len() / self.len
        }
    }

    pub fn word(&self, i: usize) -> &[FieldElem] {
        &self.symbols[i * self.len..(i + 1) * self.len]
    }

    pub fn words(&self) -> impl Iterator<Item = &[FieldElem]> {
        self.symbols.chunks(self.len.max(1))
    }

    pub fn distinct_count(&self) -> usize {
        self.words().collect::<HashSet<_>>().len()
    }

    pub fn hamming_weight(&self, i: usize) -> u64 {
        self.word(i).iter().filter(|c| !c.is_zero()).count() as u64
    }

    pub fn hamming_distribution(&self) -> WeightDistribution {
        WeightDistribution::from_weights((0..self.word_count()).map(|i| self.hamming_weight(i)))
    }

    /// Minimum distance as the least nonzero word weight. Exact for images of
    /// linear ring codes, since `d_H(ψ(c_β), ψ(c_β')) = w_hom(c_(β-β'))`.
    pub fn min_distance(&self) -> Option<u64> {
        self.hamming_distribution().min_nonzero()
    }

    /// Closure under addition and `F_q`-scaling, checked word by word.
    pub fn closure_linear(&self, base: &FieldCtx) -> bool {
        let set: HashSet<&[FieldElem]> = self.words().collect();
        let words: Vec<&[FieldElem]> = set.iter().copied().collect();
        let add = |u: &[FieldElem], v: &[FieldElem]| -> Vec<FieldElem> {
            u.iter().zip(v).map(|(&a, &b)| base.add(a, b)).collect()
        };
        for (i, u) in words.iter().enumerate() {
            for v in &words[i..] {
                if !set.contains(add(u, v).as_slice()) {
                    return false;
                }
            }
            for c in base.elements() {
                let scaled: Vec<FieldElem> = u.iter().map(|&a| base.mul(c, a)).collect();
                if !set.contains(scaled.as_slice()) {
                    return false;
                }
            }
        }
        true
    }

    /// `F_q`-rank of the word matrix.
    pub fn rank(&self, base: &FieldCtx) -> u32 {
        let mut rows: Vec<(usize, Vec<FieldElem>)> = Vec::new();
        for w in self.words() {
            let mut w = w.to_vec();
            for (pivot, row) in &rows {
                if !w[*pivot].is_zero() {
                    let f = base.neg(w[*pivot]);
                    for (x, &r) in w.iter_mut().zip(row) {
                        *x = base.add(*x, base.mul(f, r));
                    }
                }
            }
            if let Some(pivot) = w.iter().position(|c| !c.is_zero()) {
                let inv = base.inv(w[pivot]).expect("nonzero pivot");
                for x in w.iter_mut() {
                    *x = base.mul(inv, *x);
                }
                rows.push((pivot, w));
                if rows.len() == self.len {
                    break;
                }
            }
        }
        rows.len() as u32
    }

    /// Linear iff the word set equals its span, i.e. has `q^rank` elements.
    pub fn rank_linear(&self, base: &FieldCtx) -> bool {
        let distinct = self.distinct_count() as u64;
        (self.q as u128).checked_pow(self.rank(base)) == Some(distinct as u128)
    }

    pub fn linearity(&self, base: &FieldCtx) -> (bool, LinearityRoute) {
        let n = self.distinct_count() as u64;
        if n.saturating_mul(n).saturating_mul(self.len as u64) <= CLOSURE_WORK_CAP {
            (self.closure_linear(base), LinearityRoute::Closure)
        } else {
            (self.rank_linear(base), LinearityRoute::Rank)
        }
    }

    /// Header with the Gray order, then one word per line.
    pub fn export(&self, ctx: &GrayCtx) -> String {
        let order: Vec<String> = ctx.order().iter().map(|&c| ctx.symbol_text(c)).collect();
        let mut out = format!("# gray q={} order={} N={}\n", self.q, order.join(","), self.len);
        for w in self.words() {
            out.push_str(&ctx.word_text(w));
            out.push('\n');
        }
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearityRoute {
    Closure,
    Rank,
}

fn check_symbols(code: &RingCode, q: u64) -> Result<()> {
    let symbols = code.size() as u128 * q as u128 * code.n() as u128;
    if symbols > GRAY_SYMBOL_CAP as u128 {
        return Err(Error::EnumerationCapExceeded(format!(
            "Gray image has {symbols} symbols, cap is {GRAY_SYMBOL_CAP}"
        )));
    }
    Ok(())
}

/// `ψ(C)` with words in canonical `β` order.
pub fn gray_code(code: &RingCode, ctx: &GrayCtx, limits: &EnumLimits) -> Result<FieldCode> {
    limits.check(code)?;
    check_symbols(code, ctx.q())?;
    let words =
        map_indexed(code.size() as usize, limits.workers, |i| ctx.gray_vec(&code.codeword(code.beta(i as u64))));
    Ok(FieldCode::from_words(ctx.q(), ctx.q() as usize * code.n(), &words))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayParams {
    #[serde(rename = "N")]
    pub n: u64,
    pub size: u64,
    /// `log_q` of the number of distinct words, when it is a power of `q`.
    pub log_q_size: Option<u32>,
    pub d_h: u64,
    pub linear: bool,
    pub linearity_route: LinearityRoute,
}

pub fn gray_params(fc: &FieldCode, base: &FieldCtx) -> GrayParams {
    let size = fc.distinct_count() as u64;
    let mut k = 0;
    let mut t = 1u64;
    while t < size {
        t = t.saturating_mul(fc.q());
        k += 1;
    }
    let (linear, route) = fc.linearity(base);
    GrayParams {
        n: fc.len() as u64,
        size,
        log_q_size: (t == size).then_some(k),
        d_h: fc.min_distance().unwrap_or(0),
        linear,
        linearity_route: route,
    }
}

fn div_exact(num: u128, den: u128) -> Result<u64> {
    if !num.is_multiple_of(den) {
        return Err(Error::BadParams(format!("{num}/{den} is not an integer")));
    }
    Ok((num / den) as u64)
}

/// Homogeneous weight distribution predicted for the code: two weights over
/// the dual numbers, `(q-1)p^l(Q-A)/e` on units over a Galois ring.
pub fn predicted_hom_distribution(code: &RingCode) -> Result<WeightDistribution> {
    let spec = code.spec();
    if !code.check().star {
        return Err(Error::StarViolated { e: spec.e });
    }
    let (q, big_q, pl, e) = (spec.q() as u128, spec.big_q() as u128, spec.v.size() as u128, spec.e as u128);
    let w1 = div_exact((q - 1) * big_q * pl, e)?;
    let mut d = WeightDistribution::new();
    d.add(0, 1);
    match code.ring() {
        Ring::Dual(_) => {
            let arith = code.arith();
            let (sum, cap) = (arith.size_sum as u128, arith.size_cap as u128);
            let w2 = w1 - div_exact((q - 1) * big_q * cap, e * q)?;
            d.add(w1, ((big_q - 1) * (big_q + 1 - sum)) as u64);
            d.add(w2, ((big_q - 1) * sum) as u64);
        }
        Ring::Galois(t) => {
            d.add(w1, (big_q - 1) as u64);
            for a in crate::construct::a_values(spec, t)? {
                let inner = big_q as i128 - a as i128;
                d.add(div_exact((q - 1) * pl * inner as u128, e)?, (big_q - 1) as u64);
            }
        }
    }
    Ok(d)
}

/// Whether `ψ(C)` should meet the Griesmer bound: dual numbers, `V + F_q = F_Q`
/// and `l = m(s-1)`.
pub fn thm45_hypotheses(code: &RingCode) -> bool {
    let spec = code.spec();
    spec.kind == RingKind::Dual && code.arith().contains_sum_all && spec.l() == spec.m * (spec.s - 1)
}

/// `[qn, 2s, Q(q-1)(p^l - |V ∩ F_q|/q)/e]` for the dual-number Gray image.
pub fn predicted_gray_params(code: &RingCode) -> Result<Params> {
    let spec = code.spec();
    validate_spec(spec)?;
    if spec.kind != RingKind::Dual {
        return Err(Error::BadParams("Gray-image parameters are predicted for the dual-number ring only".into()));
    }
    if !code.check().star {
        return Err(Error::StarViolated { e: spec.e });
    }
    let (q, big_q, pl, e) = (spec.q() as u128, spec.big_q() as u128, spec.v.size() as u128, spec.e as u128);
    let cap = code.arith().size_cap as u128;
    Ok(Params {
        n: div_exact((big_q - 1) * q * pl, e)?,
        k: 2 * spec.s as u64,
        d: div_exact(big_q * (q - 1) * (q * pl - cap), e * q)?,
    })
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub pairs: u64,
    pub mismatches: u64,
}

impl IsometryReport {
    pub fn ok(&self) -> bool {
        self.mismatches == 0
    }
}

fn hamming_distance(u: &[FieldElem], v: &[FieldElem]) -> u64 {
    u.iter().zip(v).filter(|(a, b)| a != b).count() as u64
}

/// `d_H(ψ(a), ψ(b)) = w_hom(a - b)` over all pairs of ring elements.
pub fn element_isometry_check(ring: &Ring, ctx: &GrayCtx) -> IsometryReport {
    let els = ring.base_elements();
    let images: Vec<Vec<FieldElem>> = els.iter().map(|&a| ctx.gray_elem(a)).collect();
    let mut r = IsometryReport::default();
    for (i, &a) in els.iter().enumerate() {
        for (j, &b) in els.iter().enumerate() {
            r.pairs += 1;
            let diff = ring.base_add(a, ring.base_neg(b));
            if hamming_distance(&images[i], &images[j]) != ctx.hom_weight(diff) {
                r.mismatches += 1;
            }
        }
    }
    r
}

/// `ψ(λu + v) = λψ(u) + ψ(v)` for every `λ ∈ F_q` and `u, v ∈ R`.
pub fn gray_linearity_check(ring: &Ring, ctx: &GrayCtx) -> bool {
    let f = ctx.base();
    let els = ring.base_elements();
    f.elements().into_iter().all(|lam| {
        let l = RingElem::new(lam, FieldElem::ZERO);
        els.iter().all(|&u| {
            let gu = ctx.gray_elem(u);
            els.iter().all(|&v| {
                let lhs = ctx.gray_elem(ring.base_add(ring.base_mul(l, u), v));
                let rhs: Vec<FieldElem> =
                    gu.iter().zip(ctx.gray_elem(v)).map(|(&x, y)| f.add(f.mul(lam, x), y)).collect();
                lhs == rhs
            })
        })
    })
}

/// Pairwise `d_H(ψ(c_β), ψ(c_β')) = w_hom(c_β - c_β')` over all codeword pairs.
pub fn codeword_isometry_check(code: &RingCode, ctx: &GrayCtx, limits: &EnumLimits) -> Result<IsometryReport> {
    limits.check(code)?;
    check_symbols(code, ctx.q())?;
    let size = code.size();
    let pairs = size * (size - 1) / 2;
    let work = pairs as u128 * (ctx.q() as u128 + 1) * code.n() as u128;
    if work > PAIR_WORK_CAP as u128 {
        return Err(Error::EnumerationCapExceeded(format!(
            "pairwise isometry needs {work} steps, cap is {PAIR_WORK_CAP}"
        )));
    }
    let ring = code.ring();
    let words: Vec<Vec<RingElem>> = (0..size).map(|i| code.codeword(code.beta(i))).collect();
    let images: Vec<Vec<FieldElem>> = words.iter().map(|w| ctx.gray_vec(w)).collect();
    let bad = map_indexed(size as usize, limits.workers, |i| {
        (i + 1..size as usize)
            .filter(|&j| {
                let hom: u64 = words[i]
                    .iter()
                    .zip(&words[j])
                    .map(|(&a, &b)| ctx.hom_weight(ring.base_add(a, ring.base_neg(b))))
                    .sum();
                hamming_distance(&images[i], &images[j]) != hom
            })
            .count() as u64
    });
    Ok(IsometryReport { pairs, mismatches: bad.into_iter().sum() })
}
