//! Finite fields `F_{p^m}` in the power basis of a fixed primitive element.
//!
//! Elements are packed coordinate vectors: the element `Σ c_i θ^i` is stored
//! as the integer `Σ c_i p^i`, so the prime subfield `F_p` is `0..p` and the
//! zero element is `0`.

pub mod poly;
mod subspace;
mod tower;

pub use subspace::{subspace_arith, Subspace, SubspaceArith};
pub use tower::{embed, trace, Tower};

use crate::error::{Error, Result};
use std::fmt;

/// Largest field the arithmetic accepts.
pub const FIELD_SIZE_CAP: u64 = 1 << 20;
/// Fields up to this size carry discrete-log tables.
pub const LOG_TABLE_CAP: u64 = 1 << 16;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
struct LogTables {
    /// `exp[i] = θ^i` for `0 <= i < 2(size-1)`, doubled so log sums need no reduction.
    exp: Vec<FieldElem>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    digit_pow: Vec<u32>,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

fn checked_size(p: u32, degree: u32) -> Result<u32> {
    if !poly::is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    if degree == 0 {
        return Err(Error::BadParams("field degree must be positive".into()));
    }
    let size = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
    if size > FIELD_SIZE_CAP {
        return Err(Error::SizeCapExceeded { p, degree, cap: FIELD_SIZE_CAP });
    }
    Ok(size as u32)
}

/// Candidate monic polynomials of a given degree in lexicographic order of
/// their lower coefficients `(c_{m-1}, ..., c_0)`.
pub(crate) fn monic_candidates(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |code| {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        let mut c = code;
        for _ in 0..degree {
            coeffs.push((c % p as u64) as u32);
            c /= p as u64;
        }
        coeffs.push(1);
        coeffs
    })
}

/// `F_{p^m}` defined by the lexicographically smallest primitive polynomial.
pub fn make_field(p: u32, degree: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, degree)
}

impl FieldCtx {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        checked_size(p, degree)?;
        let modulus = monic_candidates(p, degree)
            .find(|f| poly::is_primitive(f, p))
            .ok_or(Error::NoPrimitiveFound { p, degree })?;
        Self::with_modulus(p, modulus)
    }

    /// Field defined by a given monic primitive modulus (low degree first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let degree = modulus.len().saturating_sub(1) as u32;
        let size = checked_size(p, degree)?;
        if !poly::is_primitive(&modulus, p) {
            return Err(Error::NotPrimitive { p });
        }
        let digit_pow = (0..=degree).map(|i| p.pow(i)).collect();
        let mut ctx = FieldCtx { p, degree, size, modulus, digit_pow, tables: None };
        if size as u64 <= LOG_TABLE_CAP {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> LogTables {
        let order = (self.size - 1) as usize;
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![0u32; self.size as usize];
        let mut x = FieldElem::ONE;
        for i in 0..order {
            exp.push(x);
            log[x.0 as usize] = i as u32;
            x = self.mul_by_theta(x);
        }
        debug_assert_eq!(x, FieldElem::ONE);
        exp.extend_from_within(..);
        LogTables { exp, log }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over `F_p` (the `m_total` of the field).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The primitive element θ (class of the indeterminate).
    pub fn theta(&self) -> FieldElem {
        if self.degree == 1 {
            FieldElem((self.p - self.modulus[0]) % self.p)
        } else {
            FieldElem(self.p)
        }
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.size
    }

    pub fn check(&self, a: FieldElem) -> Result<FieldElem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::FieldMismatch { size: self.size as u64 })
        }
    }

    pub fn coords(&self, a: FieldElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut x = a.0;
        for _ in 0..self.degree {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElem {
        debug_assert!(coords.len() <= self.degree as usize);
        let v = coords.iter().zip(&self.digit_pow).map(|(&c, &w)| (c % self.p) * w).sum();
        FieldElem(v)
    }

    /// Embeds a prime-field scalar `c mod p`.
    pub fn scalar(&self, c: u64) -> FieldElem {
        FieldElem((c % self.p as u64) as u32)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y, mut out, mut w) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            let d = (x % p + y % p) % p;
            out += d * w;
            x /= p;
            y /= p;
            w = w.wrapping_mul(p);
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut x, mut out, mut w) = (a.0, 0u32, 1u32);
        while x != 0 {
            out += ((p - x % p) % p) * w;
            x /= p;
            w = w.wrapping_mul(p);
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Digit-wise carries of `a + b` seen as vectors of integers in `[0, p)`:
    /// the vector `(⌊(a_i + b_i) / p⌋)_i` packed like an element.
    pub fn carries(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        let (mut x, mut y, mut out, mut w) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            if x % p + y % p >= p {
                out += w;
            }
            x /= p;
            y /= p;
            w = w.wrapping_mul(p);
        }
        FieldElem(out)
    }

    pub fn scale(&self, c: u32, a: FieldElem) -> FieldElem {
        let c = c % self.p;
        match c {
            0 => FieldElem::ZERO,
            1 => a,
            _ => {
                let coords: Vec<u32> = self.coords(a).into_iter().map(|x| x * c % self.p).collect();
                self.from_coords(&coords)
            }
        }
    }

    fn mul_by_theta(&self, a: FieldElem) -> FieldElem {
        if self.degree == 1 {
            return self.mul_poly(a, self.theta());
        }
        let mut c = self.coords(a);
        let top = c.pop().unwrap();
        c.insert(0, 0);
        if top != 0 {
            for (k, ci) in c.iter_mut().enumerate() {
                let s = top * self.modulus[k] % self.p;
                *ci = (*ci + self.p - s) % self.p;
            }
        }
        self.from_coords(&c)
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let prod = poly::mulmod(&self.coords(a), &self.coords(b), &self.modulus, self.p);
        self.from_coords(&prod)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize],
            None => self.mul_poly(a, b),
        }
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64 * (e % self.order() as u64) % self.order() as u64;
            return t.exp[l as usize];
        }
        let mut result = FieldElem::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() as u64 - 1))
        }
    }

    /// `θ^i`.
    pub fn theta_pow(&self, i: u64) -> FieldElem {
        match &self.tables {
            Some(t) => t.exp[(i % self.order() as u64) as usize],
            None => self.pow(self.theta(), i),
        }
    }

    /// Discrete logarithm to base θ; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a.0 as usize]);
        }
        // above the table cap: linear search, only reached by diagnostic paths
        let theta = self.theta();
        let mut x = FieldElem::ONE;
        for i in 0..self.order() {
            if x == a {
                return Some(i);
            }
            x = self.mul(x, theta);
        }
        None
    }

    /// Frobenius power `a^(p^k)`.
    pub fn frobenius(&self, a: FieldElem, k: u32) -> FieldElem {
        let e = (self.p as u64).pow(k % self.degree);
        self.pow(a, e)
    }

    /// Absolute trace `Tr_p^{p^m}(a)` as an integer in `[0, p)`.
    pub fn abs_trace(&self, a: FieldElem) -> u32 {
        let mut acc = FieldElem::ZERO;
        let mut x = a;
        for _ in 0..self.degree {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// Canonical position: 0 for zero, `i + 1` for `θ^i`.
    pub fn index_of(&self, a: FieldElem) -> u32 {
        self.log(a).map_or(0, |l| l + 1)
    }

    pub fn from_index(&self, idx: u32) -> FieldElem {
        if idx == 0 {
            FieldElem::ZERO
        } else {
            self.theta_pow(idx as u64 - 1)
        }
    }

    /// All elements in canonical order: `0, θ^0, θ^1, ..., θ^(size-2)`.
    pub fn elements(&self) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(self.size as usize);
        out.push(FieldElem::ZERO);
        let theta = self.theta();
        let mut x = FieldElem::ONE;
        for _ in 0..self.order() {
            out.push(x);
            x = self.mul(x, theta);
        }
        out
    }

    /// Coordinate text form: base-p digits, most significant first (coefficient of θ^(m-1)).
    pub fn format_elem(&self, a: FieldElem) -> String {
        let mut c = self.coords(a);
        c.reverse();
        digits_to_string(&c, self.p)
    }

    /// Parses either the coordinate form or the power form `^i` (`^-1` is zero).
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('^') {
            let i: i64 = rest.parse().map_err(|_| Error::Parse(format!("bad power form {s:?}")))?;
            return match i {
                -1 => Ok(FieldElem::ZERO),
                i if i >= 0 => Ok(self.theta_pow(i as u64)),
                _ => Err(Error::Parse(format!("bad power form {s:?}"))),
            };
        }
        let mut digits = parse_digits(s, self.p)?;
        if digits.len() != self.degree as usize {
            return Err(Error::Parse(format!("expected {} base-{} digits, got {s:?}", self.degree, self.p)));
        }
        digits.reverse();
        Ok(self.from_coords(&digits))
    }
}

pub(crate) fn digits_to_string(digits: &[u32], p: u32) -> String {
    digits.iter().map(|&d| std::char::from_digit(d, p.max(2)).expect("digit out of range")).collect()
}

pub(crate) fn parse_digits(s: &str, p: u32) -> Result<Vec<u32>> {
    if p > 36 {
        return Err(Error::Parse(format!("digit strings need p <= 36, got p = {p}")));
    }
    s.chars().map(|ch| ch.to_digit(p).ok_or_else(|| Error::Parse(format!("{ch:?} is not a base-{p} digit")))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.theta(), FieldElem::ONE);
    }

    #[test]
    fn f4_modulus_and_order() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = f.theta();
        let t3 = f.mul(f.mul(t, t), t);
        assert_eq!(t3, f.one());
        assert_ne!(f.mul(t, t), f.one());
    }

    #[test]
    fn f9_theta_has_order_eight() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 1, 1]);
        let t = f.theta();
        let mut x = f.one();
        for k in 1..=8 {
            x = f.mul(x, t);
            assert_eq!(x == f.one(), k == 8, "θ^{k}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(make_field(2, 21), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn tables_match_polynomial_multiplication() {
        let f = make_field(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_poly(a, b));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = make_field(2, 17).unwrap();
        assert!(!f.has_tables());
        let t = f.theta();
        assert_eq!(f.pow(t, f.order() as u64), f.one());
        let a = f.theta_pow(1234);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
    }

    #[test]
    fn frobenius_is_additive_exhaustively() {
        for (p, m) in [(2, 8), (3, 4), (5, 2), (7, 2)] {
            let f = make_field(p, m).unwrap();
            let els = f.elements();
            for &a in &els {
                for &b in &els {
                    let lhs = f.pow(f.add(a, b), p as u64);
                    let rhs = f.add(f.pow(a, p as u64), f.pow(b, p as u64));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = make_field(3, 2).unwrap();
        let t = f.theta();
        assert_eq!(f.format_elem(t), "10");
        assert_eq!(f.parse_elem("10").unwrap(), t);
        assert_eq!(f.parse_elem("^1").unwrap(), t);
        assert_eq!(f.parse_elem("^-1").unwrap(), f.zero());
        assert!(f.parse_elem("3").is_err());
    }

    #[test]
    fn carries_detect_overflow() {
        let f = make_field(3, 2).unwrap();
        let a = f.from_coords(&[2, 1]);
        let b = f.from_coords(&[2, 1]);
        assert_eq!(f.carries(a, b), f.from_coords(&[1, 0]));
    }
}
