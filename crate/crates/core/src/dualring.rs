//! The dual-number ring `F_q[x]/(x^2)` and its extension `F_Q[x]/(x^2)`.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem, Tower};
use std::fmt;

/// `a + b·x` with `x^2 = 0`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualElem {
    pub a: FieldElem,
    pub b: FieldElem,
}

impl DualElem {
    pub const ZERO: DualElem = DualElem { a: FieldElem::ZERO, b: FieldElem::ZERO };
    pub const ONE: DualElem = DualElem { a: FieldElem::ONE, b: FieldElem::ZERO };

    pub fn new(a: FieldElem, b: FieldElem) -> Self {
        DualElem { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(self) -> bool {
        !self.a.is_zero()
    }
}

/// Arithmetic in `F[x]/(x^2)` over a borrowed field context.
#[derive(Clone, Copy, Debug)]
pub struct DualRing<'a> {
    field: &'a FieldCtx,
}

impl<'a> DualRing<'a> {
    pub fn new(field: &'a FieldCtx) -> Self {
        DualRing { field }
    }

    pub fn field(&self) -> &'a FieldCtx {
        self.field
    }

    /// `q^2`.
    pub fn size(&self) -> u64 {
        let q = self.field.size() as u64;
        q * q
    }

    pub fn check(&self, u: DualElem) -> Result<DualElem> {
        self.field.check(u.a)?;
        self.field.check(u.b)?;
        Ok(u)
    }

    pub fn add(&self, u: DualElem, v: DualElem) -> DualElem {
        let f = self.field;
        DualElem::new(f.add(u.a, v.a), f.add(u.b, v.b))
    }

    pub fn neg(&self, u: DualElem) -> DualElem {
        DualElem::new(self.field.neg(u.a), self.field.neg(u.b))
    }

    pub fn sub(&self, u: DualElem, v: DualElem) -> DualElem {
        self.add(u, self.neg(v))
    }

    pub fn mul(&self, u: DualElem, v: DualElem) -> DualElem {
        let f = self.field;
        DualElem::new(f.mul(u.a, v.a), f.add(f.mul(u.a, v.b), f.mul(u.b, v.a)))
    }

    /// Checked variants reject elements outside the ring.
    pub fn try_mul(&self, u: DualElem, v: DualElem) -> Result<DualElem> {
        Ok(self.mul(self.check(u)?, self.check(v)?))
    }

    pub fn try_add(&self, u: DualElem, v: DualElem) -> Result<DualElem> {
        Ok(self.add(self.check(u)?, self.check(v)?))
    }

    /// `(a + bx)^(-1) = a^(-1) - a^(-2) b x`.
    pub fn inverse(&self, u: DualElem) -> Result<DualElem> {
        let f = self.field;
        self.check(u)?;
        let ai = f.inv(u.a).ok_or(Error::NotAUnit)?;
        Ok(DualElem::new(ai, f.neg(f.mul(f.mul(ai, ai), u.b))))
    }

    /// `u = a·(1 + v·x)` with `v = b·a^(-1)`.
    pub fn unit_decompose(&self, u: DualElem) -> Result<(FieldElem, FieldElem)> {
        let f = self.field;
        self.check(u)?;
        let ai = f.inv(u.a).ok_or(Error::NotAUnit)?;
        Ok((u.a, f.mul(u.b, ai)))
    }

    /// Coefficient-wise Frobenius `A^k + B^k x`.
    pub fn frobenius(&self, u: DualElem, k: u64) -> DualElem {
        DualElem::new(self.field.pow(u.a, k), self.field.pow(u.b, k))
    }

    /// All `q^2` elements ordered by (index of a, index of b).
    pub fn elements(&self) -> Vec<DualElem> {
        let els = self.field.elements();
        els.iter().flat_map(|&a| els.iter().map(move |&b| DualElem::new(a, b))).collect()
    }

    pub fn format(&self, u: DualElem) -> String {
        format!("{}+{}*x", self.field.format_elem(u.a), self.field.format_elem(u.b))
    }

    pub fn parse(&self, s: &str) -> Result<DualElem> {
        let s = s.trim();
        let body = s.strip_suffix("*x").ok_or_else(|| Error::Parse(format!("expected A+B*x, got {s:?}")))?;
        let (a, b) = body.split_once('+').ok_or_else(|| Error::Parse(format!("expected A+B*x, got {s:?}")))?;
        Ok(DualElem::new(self.field.parse_elem(a)?, self.field.parse_elem(b)?))
    }
}

/// `R = F_q[x]/(x^2) ⊆ R^(s) = F_Q[x]/(x^2)`.
#[derive(Clone, Debug)]
pub struct DualTower {
    tower: Tower,
}

impl DualTower {
    pub fn new(tower: Tower) -> Self {
        DualTower { tower }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn base(&self) -> DualRing<'_> {
        DualRing::new(self.tower.base())
    }

    pub fn ext(&self) -> DualRing<'_> {
        DualRing::new(self.tower.ext())
    }

    pub fn embed(&self, r: DualElem) -> DualElem {
        DualElem::new(self.tower.embed(r.a), self.tower.embed(r.b))
    }

    /// `σ_q(A + Bx) = A^q + B^q x`.
    pub fn sigma_q(&self, u: DualElem) -> DualElem {
        self.ext().frobenius(u, self.tower.q())
    }

    /// `Tr(A + Bx) = Tr_q^Q(A) + Tr_q^Q(B) x`.
    pub fn rel_trace(&self, u: DualElem) -> Result<DualElem> {
        self.ext().check(u)?;
        Ok(DualElem::new(self.tower.trace(u.a), self.tower.trace(u.b)))
    }
}

impl fmt::Display for DualElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*x", self.a.0, self.b.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn tower(p: u32, m: u32, s: u32) -> DualTower {
        DualTower::new(Tower::extend(make_field(p, m).unwrap(), s).unwrap())
    }

    #[test]
    fn multiplication_examples() {
        let f2 = make_field(2, 1).unwrap();
        let r = DualRing::new(&f2);
        let x = DualElem::new(FieldElem::ZERO, FieldElem::ONE);
        assert_eq!(r.mul(x, x), DualElem::ZERO);
        let u = DualElem::new(FieldElem::ONE, FieldElem::ONE);
        assert_eq!(r.mul(u, u), DualElem::ONE);
        for v in r.elements() {
            assert_eq!(r.mul(DualElem::ONE, v), v);
        }
    }

    #[test]
    fn field_mismatch_is_reported() {
        let f4 = make_field(2, 2).unwrap();
        let r = DualRing::new(&f4);
        let bad = DualElem::new(FieldElem(7), FieldElem::ZERO);
        assert_eq!(r.try_mul(bad, DualElem::ONE), Err(Error::FieldMismatch { size: 4 }));
        assert!(r.try_add(DualElem::ONE, bad).is_err());
    }

    #[test]
    fn inverse_examples() {
        let f4 = make_field(2, 2).unwrap();
        let r = DualRing::new(&f4);
        let t = f4.theta();
        assert_eq!(r.inverse(DualElem::ONE).unwrap(), DualElem::ONE);
        let inv = r.inverse(DualElem::new(t, FieldElem::ZERO)).unwrap();
        assert_eq!(inv, DualElem::new(f4.mul(t, t), FieldElem::ZERO));
        let u = DualElem::new(FieldElem::ONE, t);
        let ui = r.inverse(u).unwrap();
        assert_eq!(ui, DualElem::new(FieldElem::ONE, f4.neg(t)));
        assert_eq!(r.mul(u, ui), DualElem::ONE);
        assert_eq!(r.inverse(DualElem::new(FieldElem::ZERO, t)), Err(Error::NotAUnit));
    }

    #[test]
    fn unit_decomposition() {
        let f4 = make_field(2, 2).unwrap();
        let r = DualRing::new(&f4);
        let t = f4.theta();
        assert_eq!(r.unit_decompose(DualElem::ONE).unwrap(), (FieldElem::ONE, FieldElem::ZERO));
        let (a, v) = r.unit_decompose(DualElem::new(t, FieldElem::ONE)).unwrap();
        assert_eq!((a, v), (t, f4.mul(t, t)));
        // 1 + bx -> b is a homomorphism (1 + M, ×) -> (F_q, +)
        for b in f4.elements() {
            for c in f4.elements() {
                let prod = r.mul(DualElem::new(FieldElem::ONE, b), DualElem::new(FieldElem::ONE, c));
                assert_eq!(r.unit_decompose(prod).unwrap(), (FieldElem::ONE, f4.add(b, c)));
            }
        }
    }

    #[test]
    fn ring_counts_exhaustive() {
        for (p, m) in [(2, 1), (2, 2), (3, 1), (2, 3), (2, 4), (3, 2)] {
            let f = make_field(p, m).unwrap();
            let r = DualRing::new(&f);
            let q = f.size() as usize;
            let els = r.elements();
            assert_eq!(els.len(), q * q);
            assert_eq!(els.iter().filter(|u| u.is_unit()).count(), q * (q - 1));
            assert_eq!(els.iter().filter(|u| u.a.is_zero()).count(), q);
            for &u in els.iter().filter(|u| u.is_unit()) {
                assert_eq!(r.mul(u, r.inverse(u).unwrap()), DualElem::ONE);
            }
        }
    }

    #[test]
    fn one_plus_m_is_elementary_abelian() {
        let f = make_field(3, 2).unwrap();
        let r = DualRing::new(&f);
        for b in f.elements() {
            let u = DualElem::new(FieldElem::ONE, b);
            let mut acc = DualElem::ONE;
            for _ in 0..3 {
                acc = r.mul(acc, u);
            }
            assert_eq!(acc, DualElem::ONE);
        }
    }

    #[test]
    fn trace_examples() {
        let t = tower(2, 1, 2);
        let f4 = t.tower().ext();
        let th = f4.theta();
        assert_eq!(t.rel_trace(DualElem::ZERO).unwrap(), DualElem::ZERO);
        assert_eq!(t.rel_trace(DualElem::new(th, th)).unwrap(), DualElem::new(FieldElem::ONE, FieldElem::ONE));
        assert_eq!(t.rel_trace(DualElem::ONE).unwrap(), DualElem::ZERO);
        assert!(t.rel_trace(DualElem::new(FieldElem(9), FieldElem::ZERO)).is_err());
    }

    #[test]
    fn sigma_is_automorphism_of_order_s() {
        let t = tower(2, 2, 2);
        let ext = t.ext();
        let els = ext.elements();
        for &u in &els {
            assert_eq!(t.sigma_q(t.sigma_q(u)), u);
            for &v in els.iter().step_by(7) {
                assert_eq!(t.sigma_q(ext.mul(u, v)), ext.mul(t.sigma_q(u), t.sigma_q(v)));
                assert_eq!(t.sigma_q(ext.add(u, v)), ext.add(t.sigma_q(u), t.sigma_q(v)));
            }
        }
        for r in t.base().elements() {
            assert_eq!(t.sigma_q(t.embed(r)), t.embed(r));
        }
    }

    #[test]
    fn trace_is_r_linear_and_surjective() {
        for (p, m, s) in [(2, 1, 2), (2, 2, 2), (3, 1, 2)] {
            let t = tower(p, m, s);
            let (base, ext) = (t.base(), t.ext());
            let mut hit = std::collections::HashSet::new();
            for u in ext.elements() {
                let tu = t.rel_trace(u).unwrap();
                hit.insert(tu);
                for r in base.elements() {
                    assert_eq!(t.rel_trace(ext.mul(t.embed(r), u)).unwrap(), base.mul(r, tu));
                }
            }
            assert_eq!(hit.len() as u64, base.size());
        }
    }

    #[test]
    fn trace_transitivity() {
        // F_2[x]/(x^2) ⊆ F_4[x]/(x^2) ⊆ F_16[x]/(x^2)
        let lower = tower(2, 1, 2);
        let upper = DualTower::new(Tower::extend(lower.tower().ext().clone(), 2).unwrap());
        let full = tower(2, 1, 4);
        assert_eq!(upper.tower().ext(), full.tower().ext());
        for u in upper.ext().elements() {
            let two_step = lower.rel_trace(upper.rel_trace(u).unwrap()).unwrap();
            assert_eq!(two_step, full.rel_trace(u).unwrap());
        }
    }

    #[test]
    fn text_round_trip() {
        let f4 = make_field(2, 2).unwrap();
        let r = DualRing::new(&f4);
        for u in r.elements() {
            assert_eq!(r.parse(&r.format(u)).unwrap(), u);
        }
        assert_eq!(r.format(DualElem::new(f4.theta(), FieldElem::ONE)), "10+01*x");
        assert_eq!(r.parse("^1+^-1*x").unwrap(), DualElem::new(f4.theta(), FieldElem::ZERO));
        assert!(r.parse("10+01").is_err());
    }
}
