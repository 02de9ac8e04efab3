use super::{monic_candidates, poly, FieldCtx, FieldElem};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// A field tower `F_q ⊆ F_Q` with `Q = q^s`.
///
/// The subfield is identified with `{0} ∪ ⟨θ_Q^k⟩`, `k = (Q-1)/(q-1)`, via
/// `θ_q^j ↦ θ_Q^(jk)`. This is a ring homomorphism exactly when the modulus
/// of `F_q` annihilates `θ_Q^k`, which construction enforces.
#[derive(Clone, Debug)]
pub struct Tower {
    base: FieldCtx,
    ext: FieldCtx,
    s: u32,
    cofactor: u64,
    embed_table: Vec<FieldElem>,
    restrict: HashMap<FieldElem, FieldElem>,
    trace_table: Option<Vec<FieldElem>>,
}

fn check_degrees(base: &FieldCtx, ext: &FieldCtx) -> Result<u32> {
    if base.p() != ext.p() {
        return Err(Error::IncompatibleTower(format!("characteristics differ ({} vs {})", base.p(), ext.p())));
    }
    if !ext.degree().is_multiple_of(base.degree()) {
        return Err(Error::IncompatibleTower(format!("degree {} does not divide {}", base.degree(), ext.degree())));
    }
    Ok(ext.degree() / base.degree())
}

fn cofactor(base: &FieldCtx, ext: &FieldCtx) -> u64 {
    ext.order() as u64 / base.order() as u64
}

/// Evaluates a polynomial over `F_p` (low degree first) at an element of `ext`.
fn eval_prime_poly(ext: &FieldCtx, f: &[u32], x: FieldElem) -> FieldElem {
    f.iter().rev().fold(FieldElem::ZERO, |acc, &c| ext.add(ext.mul(acc, x), ext.scalar(c as u64)))
}

fn compatible(base: &FieldCtx, ext: &FieldCtx) -> bool {
    let gen = ext.theta_pow(cofactor(base, ext));
    eval_prime_poly(ext, base.modulus(), gen).is_zero()
}

impl Tower {
    /// Builds the tower over two existing contexts, rejecting incompatible moduli.
    pub fn new(base: FieldCtx, ext: FieldCtx) -> Result<Self> {
        let s = check_degrees(&base, &ext)?;
        if !compatible(&base, &ext) {
            return Err(Error::IncompatibleTower(format!(
                "θ_Q^{} is not a root of the F_q modulus {:?}",
                cofactor(&base, &ext),
                base.modulus()
            )));
        }
        let k = cofactor(&base, &ext);
        let mut embed_table = vec![FieldElem::ZERO; base.size() as usize];
        let mut restrict = HashMap::with_capacity(base.size() as usize);
        restrict.insert(FieldElem::ZERO, FieldElem::ZERO);
        for j in 0..base.order() as u64 {
            let small = base.theta_pow(j);
            let big = ext.theta_pow(j * k);
            embed_table[small.0 as usize] = big;
            restrict.insert(big, small);
        }
        let mut tower = Tower { base, ext, s, cofactor: k, embed_table, restrict, trace_table: None };
        if tower.ext.has_tables() {
            let table = (0..tower.ext.size()).map(|x| tower.trace_slow(FieldElem(x))).collect();
            tower.trace_table = Some(table);
        }
        Ok(tower)
    }

    /// `F_q ⊆ F_{q^s}` where `F_q` is `make_field(p, m)` and `F_{q^s}` uses the
    /// lexicographically smallest primitive modulus compatible with it.
    pub fn extend(base: FieldCtx, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::BadParams("extension degree must be positive".into()));
        }
        let p = base.p();
        let big_degree = base.degree() * s;
        FieldCtx::new(p, big_degree)?; // size and primality checks
        let target = (p as u64).pow(big_degree) - 1;
        let k = target / base.order() as u64;
        for g in monic_candidates(p, big_degree) {
            if !poly::is_primitive(&g, p) {
                continue;
            }
            // base modulus evaluated at x^k in F_p[x]/(g)
            let y = poly::powmod(&[0, 1], k, &g, p);
            let val = base
                .modulus()
                .iter()
                .rev()
                .fold(Vec::new(), |acc, &c| poly::add(&poly::mulmod(&acc, &y, &g, p), &[c], p));
            if val.is_empty() {
                let ext = FieldCtx::with_modulus(p, g)?;
                return Tower::new(base, ext);
            }
        }
        Err(Error::NoPrimitiveFound { p, degree: big_degree })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    /// Relative degree `s`.
    pub fn degree(&self) -> u32 {
        self.s
    }

    /// `(Q-1)/(q-1)`.
    pub fn cofactor(&self) -> u64 {
        self.cofactor
    }

    pub fn q(&self) -> u64 {
        self.base.size() as u64
    }

    pub fn big_q(&self) -> u64 {
        self.ext.size() as u64
    }

    pub fn embed(&self, a: FieldElem) -> FieldElem {
        self.embed_table[a.0 as usize]
    }

    /// Inverse of [`Tower::embed`] on the subfield image.
    pub fn restrict(&self, a: FieldElem) -> Option<FieldElem> {
        self.restrict.get(&a).copied()
    }

    /// Relative trace `Σ_{i<s} a^(q^i)`, expressed in `F_q`.
    pub fn trace(&self, a: FieldElem) -> FieldElem {
        match &self.trace_table {
            Some(t) => t[a.0 as usize],
            None => self.trace_slow(a),
        }
    }

    fn trace_slow(&self, a: FieldElem) -> FieldElem {
        let sum = self.trace_in_ext(a);
        self.restrict(sum).expect("relative trace leaves the subfield")
    }

    /// Relative trace kept inside `F_Q`.
    pub fn trace_in_ext(&self, a: FieldElem) -> FieldElem {
        let q = self.q();
        let mut acc = FieldElem::ZERO;
        let mut x = a;
        for _ in 0..self.s {
            acc = self.ext.add(acc, x);
            x = self.ext.pow(x, q);
        }
        acc
    }

    /// σ_q on `F_Q`.
    pub fn frobenius_q(&self, a: FieldElem) -> FieldElem {
        self.ext.pow(a, self.q())
    }
}

/// Embeds `a ∈ F_q` into `F_Q` (`θ_q^j ↦ θ_Q^(j(Q-1)/(q-1))`).
pub fn embed(a: FieldElem, base: &FieldCtx, ext: &FieldCtx) -> Result<FieldElem> {
    check_degrees(base, ext)?;
    base.check(a)?;
    if !compatible(base, ext) {
        return Err(Error::IncompatibleTower("moduli are not compatible".into()));
    }
    Ok(match base.log(a) {
        None => FieldElem::ZERO,
        Some(j) => ext.theta_pow(j as u64 * cofactor(base, ext)),
    })
}

/// `Tr_q^Q(a)` for `a ∈ F_Q`, returned as an element of `F_q`.
pub fn trace(a: FieldElem, ext: &FieldCtx, base: &FieldCtx) -> Result<FieldElem> {
    let s = check_degrees(base, ext)?;
    ext.check(a)?;
    if !compatible(base, ext) {
        return Err(Error::IncompatibleTower("moduli are not compatible".into()));
    }
    let q = base.size() as u64;
    let mut acc = FieldElem::ZERO;
    let mut x = a;
    for _ in 0..s {
        acc = ext.add(acc, x);
        x = ext.pow(x, q);
    }
    let k = cofactor(base, ext);
    Ok(match ext.log(acc) {
        None => FieldElem::ZERO,
        Some(l) => {
            debug_assert_eq!(l as u64 % k, 0);
            base.theta_pow(l as u64 / k)
        }
    })
}
