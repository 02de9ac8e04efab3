//! Trace codes `C(G) = {(Tr(β g_1), ..., Tr(β g_n)) : β ∈ R^(s)}` for
//! `G = D × (1 + V x)` over the dual numbers and `G = D × (1 + pV)` over
//! Galois rings.
//!
//! Both rings store elements as residue pairs (see [`RingElem`]), and an
//! element of `G` is `(θ^(ei), θ^(ei) v)` in either case, so the evaluation
//! loop is shared; only the relative trace differs.

mod distribution;
mod enumerate;
mod predict;

pub use distribution::WeightDistribution;
pub use enumerate::{BetaWeights, EnumLimits, DEFAULT_MAX_CODEWORDS, DEFAULT_MAX_LENGTH};
pub(crate) use predict::{a_values, gr_unit_weight};
pub use predict::{
    cor33_2_admissible, generator_matrix, predicted_distribution, predicted_distribution_cor33_2,
    predicted_distribution_dual, predicted_distribution_gr, predicted_params, scaling_relation_check,
    sub_field_elements, Params,
};

use crate::dualring::{DualElem, DualRing, DualTower};
use crate::error::{Error, Result};
use crate::galoisring::{GrElem, GrTower};
use crate::gf::{make_field, subspace_arith, FieldElem, Subspace, SubspaceArith, Tower};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    #[serde(rename = "dual")]
    Dual,
    #[serde(rename = "gr")]
    Galois,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::Dual => "dual",
            RingKind::Galois => "gr",
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dual" => Ok(RingKind::Dual),
            "gr" | "galois" => Ok(RingKind::Galois),
            _ => Err(Error::Parse(format!("unknown ring kind {s:?} (expected dual or gr)"))),
        }
    }
}

/// Residue pair `(a, b)`: `a + b x` in `F[x]/(x^2)`, or `T(a) + p T(b)` in a Galois ring.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElem {
    pub a: FieldElem,
    pub b: FieldElem,
}

impl RingElem {
    pub const ZERO: RingElem = RingElem { a: FieldElem::ZERO, b: FieldElem::ZERO };

    pub fn new(a: FieldElem, b: FieldElem) -> Self {
        RingElem { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(self) -> bool {
        !self.a.is_zero()
    }
}

impl From<DualElem> for RingElem {
    fn from(u: DualElem) -> Self {
        RingElem::new(u.a, u.b)
    }
}

impl From<GrElem> for RingElem {
    fn from(u: GrElem) -> Self {
        RingElem::new(u.t1, u.t2)
    }
}

impl From<RingElem> for DualElem {
    fn from(u: RingElem) -> Self {
        DualElem::new(u.a, u.b)
    }
}

impl From<RingElem> for GrElem {
    fn from(u: RingElem) -> Self {
        GrElem::new(u.a, u.b)
    }
}

/// The parameters `(kind, p, m, s, e, V)` of a trace code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: RingKind,
    pub p: u32,
    pub m: u32,
    pub s: u32,
    pub e: u64,
    pub v: Subspace,
}

impl GroupSpec {
    pub fn new(kind: RingKind, p: u32, m: u32, s: u32, e: u64, v: Subspace) -> Self {
        GroupSpec { kind, p, m, s, e, v }
    }

    /// Parses `V` from the basis-spec text form.
    pub fn parse(kind: RingKind, p: u32, m: u32, s: u32, e: u64, v: &str) -> Result<Self> {
        let v = Subspace::parse(v, p, m * s)?;
        Ok(Self::new(kind, p, m, s, e, v))
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    pub fn big_q(&self) -> u64 {
        (self.p as u64).pow(self.m * self.s)
    }

    /// `l = dim V`.
    pub fn l(&self) -> u32 {
        self.v.dim()
    }

    pub fn with_e(&self, e: u64) -> Self {
        GroupSpec { e, ..self.clone() }
    }

    pub fn star(&self) -> bool {
        gcd(self.e, (self.big_q() - 1) / (self.q() - 1)) == 1
    }

    pub fn label(&self) -> String {
        format!("ring={} p={} m={} s={} e={} V={}", self.kind, self.p, self.m, self.s, self.e, self.v.format_basis())
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecCheck {
    pub ok: bool,
    /// `gcd(e, (Q-1)/(q-1)) = 1`.
    pub star: bool,
    /// Whether the direct test agrees with `e | q-1 and gcd(e, s) = 1`.
    pub star_equiv_check: bool,
}

pub fn validate_spec(spec: &GroupSpec) -> Result<SpecCheck> {
    if !crate::gf::poly::is_prime(spec.p as u64) {
        return Err(Error::NonPrime(spec.p as u64));
    }
    if spec.m == 0 || spec.s < 2 {
        return Err(Error::BadParams(format!("need m >= 1 and s >= 2, got m = {}, s = {}", spec.m, spec.s)));
    }
    let total = spec.m.saturating_mul(spec.s);
    let size = (spec.p as u64).checked_pow(total).unwrap_or(u64::MAX);
    if size > crate::gf::FIELD_SIZE_CAP {
        return Err(Error::SizeCapExceeded { p: spec.p, degree: total, cap: crate::gf::FIELD_SIZE_CAP });
    }
    let big_q1 = spec.big_q() - 1;
    if spec.e == 0 || !big_q1.is_multiple_of(spec.e) {
        return Err(Error::BadDivisor { e: spec.e, q_minus_1: big_q1 });
    }
    if spec.v.p() != spec.p || spec.v.width() != total {
        return Err(Error::BadSubspace(format!(
            "V must be a subspace of F_{}^{}, got width {} over F_{}",
            spec.p,
            total,
            spec.v.width(),
            spec.v.p()
        )));
    }
    let star = spec.star();
    let alt = (spec.q() - 1).is_multiple_of(spec.e) && gcd(spec.e, spec.s as u64) == 1;
    Ok(SpecCheck { ok: true, star, star_equiv_check: star == alt })
}

/// The ring tower `R ⊆ R^(s)` of either kind.
#[derive(Clone, Debug)]
pub enum Ring {
    Dual(DualTower),
    Galois(GrTower),
}

impl Ring {
    pub fn new(kind: RingKind, p: u32, m: u32, s: u32) -> Result<Self> {
        let tower = Tower::extend(make_field(p, m)?, s)?;
        Ok(match kind {
            RingKind::Dual => Ring::Dual(DualTower::new(tower)),
            RingKind::Galois => Ring::Galois(GrTower::new(tower)?),
        })
    }

    pub fn kind(&self) -> RingKind {
        match self {
            Ring::Dual(_) => RingKind::Dual,
            Ring::Galois(_) => RingKind::Galois,
        }
    }

    pub fn fields(&self) -> &Tower {
        match self {
            Ring::Dual(t) => t.tower(),
            Ring::Galois(t) => t.fields(),
        }
    }

    /// Product in `R^(s)` (same formula for both kinds).
    pub fn ext_mul(&self, u: RingElem, v: RingElem) -> RingElem {
        let f = self.fields().ext();
        RingElem::new(f.mul(u.a, v.a), f.add(f.mul(u.a, v.b), f.mul(u.b, v.a)))
    }

    pub fn ext_add(&self, u: RingElem, v: RingElem) -> RingElem {
        match self {
            Ring::Dual(t) => t.ext().add(u.into(), v.into()).into(),
            Ring::Galois(t) => t.ext().add(u.into(), v.into()).into(),
        }
    }

    pub fn base_add(&self, u: RingElem, v: RingElem) -> RingElem {
        match self {
            Ring::Dual(t) => t.base().add(u.into(), v.into()).into(),
            Ring::Galois(t) => t.base().add(u.into(), v.into()).into(),
        }
    }

    pub fn base_neg(&self, u: RingElem) -> RingElem {
        match self {
            Ring::Dual(t) => t.base().neg(u.into()).into(),
            Ring::Galois(t) => t.base().neg(u.into()).into(),
        }
    }

    pub fn base_mul(&self, u: RingElem, v: RingElem) -> RingElem {
        let f = self.fields().base();
        RingElem::new(f.mul(u.a, v.a), f.add(f.mul(u.a, v.b), f.mul(u.b, v.a)))
    }

    pub fn embed(&self, r: RingElem) -> RingElem {
        let t = self.fields();
        RingElem::new(t.embed(r.a), t.embed(r.b))
    }

    /// Table-driven relative trace `R^(s) → R`.
    pub fn rel_trace(&self, u: RingElem) -> RingElem {
        match self {
            Ring::Dual(t) => {
                let f = t.tower();
                RingElem::new(f.trace(u.a), f.trace(u.b))
            }
            Ring::Galois(t) => t.rel_trace(u.into()).into(),
        }
    }

    /// Relative trace by its Frobenius-sum definition, using polynomial
    /// multiplication in the Galois case; an independent oracle.
    pub fn reference_trace_of_product(&self, u: RingElem, v: RingElem) -> Result<RingElem> {
        match self {
            Ring::Dual(t) => {
                let prod = t.ext().try_mul(u.into(), v.into())?;
                let mut acc = DualElem::ZERO;
                let mut x = prod;
                for _ in 0..t.tower().degree() {
                    acc = t.ext().add(acc, x);
                    x = t.sigma_q(x);
                }
                let r = |a: FieldElem| {
                    t.tower().restrict(a).ok_or_else(|| Error::IncompatibleTower("trace left the subring".into()))
                };
                Ok(RingElem::new(r(acc.a)?, r(acc.b)?))
            }
            Ring::Galois(t) => {
                let prod = t.ext().mul_additive(u.into(), v.into());
                Ok(t.rel_trace_slow(prod)?.into())
            }
        }
    }

    /// Elements of `R` in canonical order.
    pub fn base_elements(&self) -> Vec<RingElem> {
        pairs(&self.fields().base().elements())
    }

    /// Elements of `R^(s)` in canonical order.
    pub fn ext_elements(&self) -> Vec<RingElem> {
        pairs(&self.fields().ext().elements())
    }

    pub fn format_base(&self, u: RingElem) -> String {
        match self {
            Ring::Dual(t) => t.base().format(u.into()),
            Ring::Galois(t) => t.base().format(u.into()),
        }
    }

    pub fn format_ext(&self, u: RingElem) -> String {
        match self {
            Ring::Dual(t) => t.ext().format(u.into()),
            Ring::Galois(t) => t.ext().format(u.into()),
        }
    }

    pub fn parse_ext(&self, s: &str) -> Result<RingElem> {
        Ok(match self {
            Ring::Dual(t) => t.ext().parse(s)?.into(),
            Ring::Galois(t) => t.ext().parse(s)?.into(),
        })
    }

    pub fn dual_base(&self) -> Option<DualRing<'_>> {
        match self {
            Ring::Dual(t) => Some(t.base()),
            Ring::Galois(_) => None,
        }
    }
}

fn pairs(els: &[FieldElem]) -> Vec<RingElem> {
    els.iter().flat_map(|&a| els.iter().map(move |&b| RingElem::new(a, b))).collect()
}

/// `G = {θ^(ei)·(1 + v_j·x)}` (or `1 + p v_j`), ordered by `(i, j)`.
#[derive(Clone, Debug)]
pub struct EvalSet {
    d: Vec<FieldElem>,
    v: Vec<FieldElem>,
    ring: RingKind,
}

impl EvalSet {
    pub fn len(&self) -> usize {
        self.d.len() * self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The cyclic part `D = ⟨θ^e⟩` in order.
    pub fn cyclic_part(&self) -> &[FieldElem] {
        &self.d
    }

    /// Elements of `V` in basis order.
    pub fn subspace_part(&self) -> &[FieldElem] {
        &self.v
    }

    pub fn ring_kind(&self) -> RingKind {
        self.ring
    }

    pub fn element(&self, k: usize, ext: &crate::gf::FieldCtx) -> RingElem {
        let y = self.d[k / self.v.len()];
        RingElem::new(y, ext.mul(y, self.v[k % self.v.len()]))
    }

    pub fn elements(&self, ext: &crate::gf::FieldCtx) -> Vec<RingElem> {
        (0..self.len()).map(|k| self.element(k, ext)).collect()
    }
}

pub fn build_group(spec: &GroupSpec, fields: &Tower) -> Result<EvalSet> {
    validate_spec(spec)?;
    let ext = fields.ext();
    let f = (spec.big_q() - 1) / spec.e;
    let d = (0..f).map(|i| ext.theta_pow(i * spec.e)).collect();
    Ok(EvalSet { d, v: spec.v.elements(), ring: spec.kind })
}

/// A trace code together with its ring tower and evaluation set.
#[derive(Clone, Debug)]
pub struct RingCode {
    spec: GroupSpec,
    check: SpecCheck,
    ring: Ring,
    eval: EvalSet,
    arith: SubspaceArith,
}

impl RingCode {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let check = validate_spec(&spec)?;
        let ring = Ring::new(spec.kind, spec.p, spec.m, spec.s)?;
        Self::with_ring(spec, check, ring)
    }

    /// Reuses an existing ring tower (which must match `spec`).
    pub fn with_ring(spec: GroupSpec, check: SpecCheck, ring: Ring) -> Result<Self> {
        let t = ring.fields();
        if ring.kind() != spec.kind || t.base().p() != spec.p || t.base().degree() != spec.m || t.degree() != spec.s {
            return Err(Error::BadParams("ring tower does not match the spec".into()));
        }
        let eval = build_group(&spec, t)?;
        let arith = subspace_arith(&spec.v, t)?;
        Ok(RingCode { spec, check, ring, eval, arith })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn check(&self) -> SpecCheck {
        self.check
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn eval(&self) -> &EvalSet {
        &self.eval
    }

    /// `|V + F_q|`, `|V ∩ F_q|`.
    pub fn arith(&self) -> SubspaceArith {
        self.arith
    }

    pub fn n(&self) -> usize {
        self.eval.len()
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    pub fn big_q(&self) -> u64 {
        self.spec.big_q()
    }

    /// Number of codewords, `Q^2`.
    pub fn size(&self) -> u64 {
        self.big_q() * self.big_q()
    }

    /// `β` at canonical position `idx(b1)·Q + idx(b2)`.
    pub fn beta(&self, index: u64) -> RingElem {
        let ext = self.ring.fields().ext();
        let q = self.big_q();
        RingElem::new(ext.from_index((index / q) as u32), ext.from_index((index % q) as u32))
    }

    pub fn beta_index(&self, beta: RingElem) -> u64 {
        let ext = self.ring.fields().ext();
        ext.index_of(beta.a) as u64 * self.big_q() + ext.index_of(beta.b) as u64
    }

    /// `c_β = (Tr(β g_1), ..., Tr(β g_n))`.
    pub fn codeword(&self, beta: RingElem) -> Vec<RingElem> {
        let ext = self.ring.fields().ext();
        (0..self.n()).map(|k| self.ring.rel_trace(self.ring.ext_mul(beta, self.eval.element(k, ext)))).collect()
    }

    /// `c_β` through the definition-level trace and ring arithmetic.
    pub fn codeword_reference(&self, beta: RingElem) -> Result<Vec<RingElem>> {
        let ext = self.ring.fields().ext();
        (0..self.n()).map(|k| self.ring.reference_trace_of_product(beta, self.eval.element(k, ext))).collect()
    }

    /// `N_β(a) = #{g ∈ G : Tr(β g) = a}`.
    pub fn component_count(&self, beta: RingElem, a: RingElem) -> u64 {
        let q = self.q() as usize;
        self.profile(beta)[a.a.0 as usize * q + a.b.0 as usize] as u64
    }
}
