//! Closed-form parameters and weight distributions, generator matrices and
//! the `e`-scaling relation.

use super::{validate_spec, EnumLimits, GroupSpec, Ring, RingCode, RingElem, RingKind, WeightDistribution};
use crate::error::{Error, Result};
use crate::galoisring::GrTower;
use crate::gf::{make_field, subspace_arith, FieldCtx, FieldElem, Subspace, SubspaceArith, Tower};
use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

fn exact_div(num: u128, den: u128) -> Result<u64> {
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::BadParams(format!("{num}/{den} is not an integer")));
    }
    Ok((num / den) as u64)
}

fn require_star(spec: &GroupSpec) -> Result<()> {
    let check = validate_spec(spec)?;
    if !check.star {
        return Err(Error::StarViolated { e: spec.e });
    }
    Ok(())
}

fn require_kind(spec: &GroupSpec, kind: RingKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::BadParams(format!("expected a {kind} spec, got {}", spec.kind)));
    }
    Ok(())
}

struct Consts {
    q: u128,
    big_q: u128,
    pl: u128,
    e: u128,
}

impl Consts {
    fn of(spec: &GroupSpec) -> Self {
        Consts { q: spec.q() as u128, big_q: spec.big_q() as u128, pl: spec.v.size() as u128, e: spec.e as u128 }
    }

    /// `Q(q-1)p^l/(eq)`: the minimum distance, and the weight of `β ∈ M^(s) \ {0}`.
    fn d(&self) -> Result<u64> {
        exact_div(self.big_q * (self.q - 1) * self.pl, self.e * self.q)
    }

    /// Galois-ring unit weight `(q-1)p^l(Q(q+1) - qA)/(eq^2)`.
    fn gr_unit_weight(&self, a: i64) -> Result<u64> {
        let inner = self.big_q as i128 * (self.q as i128 + 1) - self.q as i128 * a as i128;
        if inner < 0 {
            return Err(Error::BadParams(format!("character sum A = {a} out of range")));
        }
        exact_div((self.q - 1) * self.pl * inner as u128, self.e * self.q * self.q)
    }
}

pub fn predicted_params(spec: &GroupSpec) -> Result<Params> {
    require_star(spec)?;
    let c = Consts::of(spec);
    Ok(Params { n: exact_div((c.big_q - 1) * c.pl, c.e)?, k: spec.s as u64, d: c.d()? })
}

fn field_tower(spec: &GroupSpec) -> Result<Tower> {
    Tower::extend(make_field(spec.p, spec.m)?, spec.s)
}

fn dual_from_arith(spec: &GroupSpec, arith: SubspaceArith) -> Result<WeightDistribution> {
    let c = Consts::of(spec);
    let sum = arith.size_sum as u128;
    let cap = arith.size_cap as u128;
    let w1 = exact_div(c.big_q * (c.q * c.q - 1) * c.pl, c.e * c.q * c.q)?;
    let w2 = w1 - exact_div(c.big_q * (c.q - 1) * cap, c.e * c.q * c.q)?;
    let w3 = c.d()?;
    let mut d = WeightDistribution::new();
    d.add(0, 1);
    d.add(w1, ((c.big_q - 1) * (c.big_q - sum)) as u64);
    d.add(w2, ((c.big_q - 1) * sum) as u64);
    d.add(w3, (c.big_q - 1) as u64);
    Ok(d)
}

/// The three-weight table for the dual-number ring, with coinciding weights merged.
pub fn predicted_distribution_dual(spec: &GroupSpec) -> Result<WeightDistribution> {
    require_kind(spec, RingKind::Dual)?;
    require_star(spec)?;
    let t = field_tower(spec)?;
    dual_from_arith(spec, subspace_arith(&spec.v, &t)?)
}

/// `U = (V + F_q)^⊥`.
fn u_space(spec: &GroupSpec, fields: &Tower) -> Subspace {
    spec.v.sum(&Subspace::subfield(fields)).dual(fields.ext())
}

/// The character sum `A` for every residue `β̄2 ∈ F_Q`, indexed by packed value.
pub(crate) fn a_values(spec: &GroupSpec, tower: &GrTower) -> Result<Vec<i64>> {
    let u = u_space(spec, tower.fields());
    (0..tower.fields().ext().size()).map(|b| tower.char_sum_a(FieldElem(b), &u)).collect()
}

/// Weight of a unit codeword with character sum `a`.
pub(crate) fn gr_unit_weight(spec: &GroupSpec, a: i64) -> Result<u64> {
    Consts::of(spec).gr_unit_weight(a)
}

fn gr_from_tower(spec: &GroupSpec, tower: &GrTower) -> Result<WeightDistribution> {
    let c = Consts::of(spec);
    let arith = subspace_arith(&spec.v, tower.fields())?;
    let w1 = c.d()?;
    let mut d = WeightDistribution::new();
    d.add(0, 1);
    d.add(w1, (c.big_q - 1) as u64);
    if arith.contains_sum_all {
        let w2 = w1 + exact_div((c.q - 1) * (c.big_q - c.q) * c.pl, c.e * c.q * c.q)?;
        d.add(w2, (c.big_q * (c.big_q - 1)) as u64);
    } else {
        for a in a_values(spec, tower)? {
            d.add(c.gr_unit_weight(a)?, (c.big_q - 1) as u64);
        }
    }
    Ok(d)
}

/// Galois-ring distribution: the closed two-weight form when `V + F_q = F_Q`,
/// otherwise the unit weights from exact character sums.
pub fn predicted_distribution_gr(spec: &GroupSpec) -> Result<WeightDistribution> {
    require_kind(spec, RingKind::Galois)?;
    require_star(spec)?;
    let tower = GrTower::new(field_tower(spec)?)?;
    gr_from_tower(spec, &tower)
}

/// Prediction for an existing code, reusing its ring tower.
pub fn predicted_distribution(code: &RingCode) -> Result<WeightDistribution> {
    let spec = code.spec();
    require_star(spec)?;
    match code.ring() {
        Ring::Dual(_) => dual_from_arith(spec, code.arith()),
        Ring::Galois(t) => gr_from_tower(spec, t),
    }
}

/// `F_{p^k} ⊆ F_Q` as `{0} ∪ ⟨θ^((Q-1)/(p^k-1))⟩`.
pub fn sub_field_elements(ext: &FieldCtx, sub_degree: u32) -> Vec<FieldElem> {
    let sub = (ext.p() as u64).pow(sub_degree);
    let step = ext.order() as u64 / (sub - 1);
    let mut out = vec![FieldElem::ZERO];
    out.extend((0..sub - 1).map(|i| ext.theta_pow(i * step)));
    out
}

/// Whether the spec meets the hypotheses of the subfield case:
/// `p | s` and `(V + F_q)^⊥ ⊆ F_{Q'}` with `Q' = q^(s/p)`.
pub fn cor33_2_admissible(spec: &GroupSpec) -> Result<bool> {
    validate_spec(spec)?;
    if spec.kind != RingKind::Galois || !spec.s.is_multiple_of(spec.p) {
        return Ok(false);
    }
    let t = field_tower(spec)?;
    let u = u_space(spec, &t);
    let qp = (spec.p as u64).pow(spec.m * spec.s / spec.p);
    Ok(u.basis().iter().all(|&x| t.ext().pow(x, qp) == x))
}

/// The printed three-weight statement for `s = p s'`, taken literally:
/// `W = (V + F_q) ∩ F_{Q'}` and `m2 = Q(Q-1)|W|/Q'`.
pub fn predicted_distribution_cor33_2(spec: &GroupSpec) -> Result<WeightDistribution> {
    require_kind(spec, RingKind::Galois)?;
    require_star(spec)?;
    if !spec.s.is_multiple_of(spec.p) {
        return Err(Error::PreconditionNotMet(format!("p = {} does not divide s = {}", spec.p, spec.s)));
    }
    if !cor33_2_admissible(spec)? {
        return Err(Error::PreconditionNotMet("(V + F_q)^⊥ is not inside F_{Q'}".into()));
    }
    let t = field_tower(spec)?;
    let sub_degree = spec.m * spec.s / spec.p;
    let u = u_space(spec, &t);
    let sum = spec.v.sum(&Subspace::subfield(&t));
    let w_size = sub_field_elements(t.ext(), sub_degree).into_iter().filter(|&y| sum.contains(y)).count() as u128;
    let c = Consts::of(spec);
    let big_qp = (spec.p as u128).pow(sub_degree);
    let units = c.big_q * (c.big_q - 1);
    let m2 = exact_div(units * w_size, big_qp)?;
    let mut d = WeightDistribution::new();
    d.add(0, 1);
    d.add(c.d()?, (c.big_q - 1) as u64);
    d.add(c.gr_unit_weight(u.size() as i64)?, m2);
    d.add(exact_div((c.q * c.q - 1) * c.big_q * c.pl, c.e * c.q * c.q)?, units as u64 - m2);
    Ok(d)
}

/// Rows `c_(θ^j)` for `j < s`, an `R`-basis of the code.
pub fn generator_matrix(code: &RingCode) -> Result<Vec<Vec<RingElem>>> {
    if !code.check().star {
        return Err(Error::StarViolated { e: code.spec().e });
    }
    let ext = code.ring().fields().ext();
    Ok((0..code.spec().s as u64).map(|j| code.codeword(RingElem::new(ext.theta_pow(j), FieldElem::ZERO))).collect())
}

impl RingCode {
    /// Plain-text generator matrix with a one-line header.
    pub fn export_generator_matrix(&self) -> Result<String> {
        let rows = generator_matrix(self)?;
        let s = self.spec();
        let mut out = format!(
            "# ring={} p={} m={} s={} e={} V={} n={}\n",
            s.kind,
            s.p,
            s.m,
            s.s,
            s.e,
            s.v.format_basis(),
            self.n()
        );
        for row in rows {
            let cells: Vec<String> = row.iter().map(|&x| self.ring().format_base(x)).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        Ok(out)
    }
}

/// Checks `w_H(c̃_β) = e·w_H(c_β)` for every `β`, where `c̃` is the code of
/// the same `V` with `e = 1`.
pub fn scaling_relation_check(spec: &GroupSpec, limits: &EnumLimits) -> Result<bool> {
    require_star(spec)?;
    if spec.e == 1 {
        return Ok(true);
    }
    let code = RingCode::new(spec.clone())?;
    let wide = RingCode::with_ring(spec.with_e(1), validate_spec(&spec.with_e(1))?, code.ring().clone())?;
    scaling_between(&code, &wide, limits)
}

pub(crate) fn scaling_between(code: &RingCode, wide: &RingCode, limits: &EnumLimits) -> Result<bool> {
    let e = code.spec().e as u32;
    let w = code.weights(limits)?;
    let wt = wide.weights(limits)?;
    Ok(w.iter().zip(&wt).all(|(a, b)| b.hamming == e * a.hamming))
}
