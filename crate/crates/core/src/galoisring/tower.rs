use super::{CycloSum, GrCtx, GrElem};
use crate::error::{Error, Result};
use crate::gf::{make_field, FieldElem, Subspace, Tower};

/// `R = GR(p^2, m) ⊆ R^(s) = GR(p^2, ms)`, sharing the residue-field tower.
///
/// The relative trace of `t1 + p t2` is `(Tr t1, C[t1] + Tr t2)` in pair form,
/// where `C[t1]` is the `p`-part of `Tr(T(t1))`, tabulated once from the
/// Frobenius-sum definition.
#[derive(Clone, Debug)]
pub struct GrTower {
    fields: Tower,
    base: GrCtx,
    ext: GrCtx,
    carry: Vec<FieldElem>,
}

impl GrTower {
    pub fn new(fields: Tower) -> Result<Self> {
        let base = GrCtx::new(fields.base().clone())?;
        let ext = GrCtx::new(fields.ext().clone())?;
        let mut t = GrTower { fields, base, ext, carry: Vec::new() };
        let carry = (0..t.fields.ext().size())
            .map(|a| t.rel_trace_slow(t.ext.teich(FieldElem(a))).map(|r| r.t2))
            .collect::<Result<_>>()?;
        t.carry = carry;
        Ok(t)
    }

    /// `GR(p^2, m) ⊆ GR(p^2, ms)` on the canonical field tower.
    pub fn extend(p: u32, m: u32, s: u32) -> Result<Self> {
        Self::new(Tower::extend(make_field(p, m)?, s)?)
    }

    pub fn fields(&self) -> &Tower {
        &self.fields
    }

    pub fn base(&self) -> &GrCtx {
        &self.base
    }

    pub fn ext(&self) -> &GrCtx {
        &self.ext
    }

    /// Teichmüller parts embed through the residue-field embedding.
    pub fn embed(&self, r: GrElem) -> GrElem {
        GrElem::new(self.fields.embed(r.t1), self.fields.embed(r.t2))
    }

    pub fn sigma_q(&self, a: GrElem) -> GrElem {
        let q = self.fields.q();
        let f = self.fields.ext();
        GrElem::new(f.pow(a.t1, q), f.pow(a.t2, q))
    }

    /// `Σ_{i<s} σ_q^i(α)`, summed in `R^(s)` and restricted to `R`.
    pub fn rel_trace_slow(&self, a: GrElem) -> Result<GrElem> {
        let mut acc = GrElem::ZERO;
        let mut x = a;
        for _ in 0..self.fields.degree() {
            acc = self.ext.add(acc, x);
            x = self.sigma_q(x);
        }
        let restrict = |v: FieldElem| {
            self.fields.restrict(v).ok_or_else(|| Error::IncompatibleTower("trace left the subring".into()))
        };
        Ok(GrElem::new(restrict(acc.t1)?, restrict(acc.t2)?))
    }

    /// Table-driven relative trace.
    pub fn rel_trace(&self, a: GrElem) -> GrElem {
        let f = self.fields.base();
        let t1 = self.fields.trace(a.t1);
        let t2 = f.add(self.carry[a.t1.0 as usize], self.fields.trace(a.t2));
        GrElem::new(t1, t2)
    }

    pub fn try_rel_trace(&self, a: GrElem) -> Result<GrElem> {
        Ok(self.rel_trace(self.ext.check(a)?))
    }

    /// `C[a]`: the `p`-part of `Tr(T(a))` for `a ∈ F_Q`.
    pub fn carry(&self, a: FieldElem) -> FieldElem {
        self.carry[a.0 as usize]
    }

    /// The unreduced sum `Σ_{z1 ∈ T^(s), z̄1 ∈ U} ζ^{Tr(z1(1 + p β2))}`.
    pub fn char_sum(&self, beta2: FieldElem, u: &Subspace) -> CycloSum {
        let f = self.fields.ext();
        let exps = u.elements().into_iter().map(|z| self.ext.abs_trace(GrElem::new(z, f.mul(z, beta2))));
        CycloSum::from_exponents(self.ext.p(), exps)
    }

    /// The character sum `A` for `β2` with residue `beta2`, over `U ⊆ F_Q`.
    pub fn char_sum_a(&self, beta2: FieldElem, u: &Subspace) -> Result<i64> {
        self.fields.ext().check(beta2)?;
        if u.p() != self.fields.ext().p() || u.width() != self.fields.ext().degree() {
            return Err(Error::BadSubspace("U does not live in F_Q".into()));
        }
        self.char_sum(beta2, u).to_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Tower;

    #[test]
    fn trace_examples() {
        let t = GrTower::extend(2, 1, 2).unwrap();
        let xi = t.ext().xi();
        assert_eq!(t.rel_trace(GrElem::ZERO), GrElem::ZERO);
        assert_eq!(t.base().to_additive(t.rel_trace(xi)), vec![3]);
        for r in t.base().elements() {
            let two_r = t.base().add(r, r);
            assert_eq!(t.rel_trace(t.embed(r)), two_r);
        }
        assert!(t.try_rel_trace(GrElem::new(FieldElem(4), FieldElem::ZERO)).is_err());
    }

    #[test]
    fn fast_trace_matches_definition() {
        for (p, m, s) in [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2), (3, 2, 2), (2, 2, 3)] {
            let t = GrTower::extend(p, m, s).unwrap();
            for a in t.ext().elements() {
                assert_eq!(t.rel_trace(a), t.rel_trace_slow(a).unwrap());
            }
        }
    }

    #[test]
    fn reduction_commutes_with_trace() {
        for (p, m, s) in [(2, 2, 2), (3, 2, 2), (2, 1, 4)] {
            let t = GrTower::extend(p, m, s).unwrap();
            for a in t.ext().elements() {
                let lhs = t.base().mod_p(t.rel_trace_slow(a).unwrap());
                assert_eq!(lhs, t.fields().trace(t.ext().mod_p(a)));
            }
        }
    }

    #[test]
    fn trace_is_r_linear_and_surjective() {
        for (p, m, s) in [(2, 1, 2), (2, 2, 2), (3, 1, 2)] {
            let t = GrTower::extend(p, m, s).unwrap();
            let mut hit = std::collections::HashSet::new();
            let ext = t.ext().elements();
            for &a in &ext {
                let ta = t.rel_trace(a);
                hit.insert(ta);
                for r in t.base().elements() {
                    assert_eq!(t.rel_trace(t.ext().mul(t.embed(r), a)), t.base().mul(r, ta));
                }
                for &b in ext.iter().step_by(5) {
                    assert_eq!(t.rel_trace(t.ext().add(a, b)), t.base().add(ta, t.rel_trace(b)));
                }
            }
            assert_eq!(hit.len() as u64, t.base().size());
        }
    }

    #[test]
    fn trace_transitivity() {
        // Z_4 ⊆ GR(4, 2) ⊆ GR(4, 4)
        let low = GrTower::extend(2, 1, 2).unwrap();
        let high = GrTower::new(Tower::extend(low.fields().ext().clone(), 2).unwrap()).unwrap();
        let full = GrTower::extend(2, 1, 4).unwrap();
        assert_eq!(high.fields().ext(), full.fields().ext());
        for a in high.ext().elements() {
            assert_eq!(low.rel_trace(high.rel_trace(a)), full.rel_trace(a));
            assert_eq!(full.base().abs_trace(full.rel_trace(a)), full.ext().abs_trace(a));
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let t = GrTower::extend(3, 1, 2).unwrap();
        let (b, e) = (t.base(), t.ext());
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(t.embed(b.add(x, y)), e.add(t.embed(x), t.embed(y)));
                assert_eq!(t.embed(b.mul(x, y)), e.mul(t.embed(x), t.embed(y)));
            }
        }
    }

    #[test]
    fn character_orthogonality() {
        for (p, m) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (2, 4)] {
            let r = GrCtx::from_params(p, m).unwrap();
            let els = r.elements();
            for &z in &els {
                let sum = CycloSum::from_exponents(p, els.iter().map(|&b| r.abs_trace(r.mul(b, z))));
                let expect = if z.is_zero() { r.size() as i64 } else { 0 };
                assert_eq!(sum.to_integer().unwrap(), expect);
            }
        }
    }

    #[test]
    fn char_sum_trivial_subspace() {
        let t = GrTower::extend(2, 1, 2).unwrap();
        let zero = Subspace::zero(2, 2);
        for b in t.fields().ext().elements() {
            assert_eq!(t.char_sum_a(b, &zero).unwrap(), 1);
        }
    }

    #[test]
    fn char_sum_over_a_subfield_is_all_or_nothing() {
        // s = p s' with U = F_2 ⊆ F_4 = F_{Q'}: A = |U| iff 1 + Tr_{Q'}^Q(β2) lies in
        // the dual of U inside F_{Q'}, which is F_2 here.
        let t = GrTower::extend(2, 1, 4).unwrap();
        let f16 = t.fields().ext();
        let mid = Tower::new(make_field(2, 2).unwrap(), f16.clone()).unwrap();
        let u = Subspace::span_in(f16, &[FieldElem::ONE]);
        let mut counts = [0usize; 2];
        for b in f16.elements() {
            let a = t.char_sum_a(b, &u).unwrap();
            let tr = mid.trace(b);
            let in_w = tr.0 < 2;
            assert_eq!(a, if in_w { 2 } else { 0 }, "β2 = {b:?}");
            counts[in_w as usize] += 1;
        }
        assert_eq!(counts, [8, 8]);
    }

    #[test]
    fn char_sum_is_integral_and_bounded() {
        for (p, m, s) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2)] {
            let t = GrTower::extend(p, m, s).unwrap();
            let f = t.fields().ext();
            let fq = Subspace::subfield(t.fields());
            let big_m = m * s;
            let mut non_integral = false;
            for dim in 0..=big_m {
                for v in Subspace::all_of_dim(p, big_m, dim) {
                    let u = v.sum(&fq).dual(f);
                    for b in f.elements() {
                        let a = t.char_sum_a(b, &u).unwrap();
                        assert!(a.unsigned_abs() <= u.size());
                        assert!(u.size() <= t.fields().big_q() / t.fields().q());
                        // outside F_q^⊥ integrality is not guaranteed
                        non_integral |= !t.char_sum(b, &v).is_integer();
                    }
                }
            }
            assert!(non_integral);
        }
    }
}
