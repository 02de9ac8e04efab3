//! Galois rings `GR(p^2, m) = Z_{p^2}[x]/(h(x))`.
//!
//! An element is stored by the residues of its Teichmüller pair:
//! `α = t1 + p·t2` with `t1, t2 ∈ T` is kept as `(t̄1, t̄2) ∈ F_q^2`.
//! Multiplication is then `(a1, a2)(b1, b2) = (a1 b1, a1 b2 + a2 b1)`.
//! Addition goes through additive coordinates `c_j = lo_j + p·hi_j`, where
//! `T(a)` has `lo = a` and `hi = H[a]` for a precomputed table `H`.

mod cyclo;
mod tower;

pub use cyclo::CycloSum;
pub use tower::GrTower;

use crate::error::{Error, Result};
use crate::gf::{make_field, poly, FieldCtx, FieldElem};

/// Largest residue field for which a Galois-ring context is built.
pub const GR_FIELD_CAP: u64 = 1 << 16;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrElem {
    /// Residue of the Teichmüller part.
    pub t1: FieldElem,
    /// Residue of the `p`-part.
    pub t2: FieldElem,
}

impl GrElem {
    pub const ZERO: GrElem = GrElem { t1: FieldElem::ZERO, t2: FieldElem::ZERO };
    pub const ONE: GrElem = GrElem { t1: FieldElem::ONE, t2: FieldElem::ZERO };

    pub fn new(t1: FieldElem, t2: FieldElem) -> Self {
        GrElem { t1, t2 }
    }

    pub fn is_zero(self) -> bool {
        self.t1.is_zero() && self.t2.is_zero()
    }

    pub fn is_unit(self) -> bool {
        !self.t1.is_zero()
    }
}

/// Graeffe step for `p = 2`: `h(x^2) = (-1)^m f(x) f(-x) mod 4`.
pub fn graeffe_lift(f: &[u32]) -> Vec<u32> {
    let m = f.len() - 1;
    let f_neg: Vec<u32> =
        f.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { (4 - c % 4) % 4 } else { c % 4 }).collect();
    let prod = poly::mul(f, &f_neg, 4);
    let sign = if m % 2 == 1 { 3 } else { 1 };
    let mut h: Vec<u32> = (0..=m).map(|i| prod.get(2 * i).copied().unwrap_or(0) * sign % 4).collect();
    debug_assert_eq!(h[m], 1);
    h = poly::trim(h);
    h
}

/// One quadratic Hensel step lifting the factor `f` of `x^N - 1`
/// (`N = p^m - 1`) from `F_p` to `Z_{p^2}`.
pub fn hensel_lift(f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    let p2 = p * p;
    let n = (p as u64).pow(m as u32) as usize - 1;
    let mut target_p = vec![0u32; n + 1];
    target_p[0] = p - 1;
    target_p[n] = 1;
    let (g, r) = poly::divrem_prime(&target_p, f, p);
    debug_assert!(r.is_empty());
    let mut target = vec![0u32; n + 1];
    target[0] = p2 - 1;
    target[n] = 1;
    // c = (x^N - 1 - f g) / p over Z
    let fg = poly::mul(f, &g, p2);
    let diff = poly::sub(&target, &fg, p2);
    let c: Vec<u32> = diff
        .iter()
        .map(|&d| {
            debug_assert_eq!(d % p, 0);
            d / p
        })
        .collect();
    let (_, _, t) = poly::ext_gcd_prime(f, &g, p);
    let (_, delta) = poly::divrem_prime(&poly::mul(&t, &c, p), f, p);
    let mut h: Vec<u32> = f.iter().map(|&x| x % p2).collect();
    for (i, &d) in delta.iter().enumerate() {
        h[i] = (h[i] + p * d) % p2;
    }
    h
}

/// Basic primitive lift of a primitive `f` over `F_p`; the root of the
/// result has multiplicative order exactly `p^m - 1` in `Z_{p^2}[x]/(h)`.
pub fn lift_basic_primitive(f: &[u32], p: u32) -> Result<Vec<u32>> {
    if !poly::is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    if !poly::is_primitive(f, p) {
        return Err(Error::NotPrimitive { p });
    }
    let h = if p == 2 { graeffe_lift(f) } else { hensel_lift(f, p) };
    let order = (p as u64).pow(f.len() as u32 - 1) - 1;
    let ok = if f.len() == 2 {
        // degree 1: the root is -h0 in Z_{p^2}
        let r = (p * p - h[0]) % (p * p);
        mult_order(r as u64, (p * p) as u64) == order
    } else {
        poly::x_has_order(&h, p * p, order)
    };
    if !ok {
        return Err(Error::NotPrimitive { p });
    }
    Ok(h)
}

fn mult_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
        if k > n {
            return 0;
        }
    }
    k
}

#[derive(Clone, Debug)]
pub struct GrCtx {
    field: FieldCtx,
    h: Vec<u32>,
    /// `hi` digits of the Teichmüller lift of each residue.
    hi: Vec<FieldElem>,
    /// `Tr_{Z_{p^2}}(T(a))` for each residue `a`, as an integer in `[0, p^2)`.
    teich_trace: Vec<u32>,
}

impl PartialEq for GrCtx {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
    }
}

impl GrCtx {
    /// `GR(p^2, m)` with residue field `make_field(p, m)`.
    pub fn from_params(p: u32, m: u32) -> Result<Self> {
        Self::new(make_field(p, m)?)
    }

    /// The Galois ring whose residue field is `field`, defined by the
    /// basic primitive lift of the field modulus.
    pub fn new(field: FieldCtx) -> Result<Self> {
        if field.size() as u64 > GR_FIELD_CAP {
            return Err(Error::SizeCapExceeded { p: field.p(), degree: field.degree(), cap: GR_FIELD_CAP });
        }
        let p = field.p();
        let h = lift_basic_primitive(field.modulus(), p)?;
        let m = field.degree() as usize;
        let p2 = p * p;
        let mut hi = vec![FieldElem::ZERO; field.size() as usize];
        let mut coords = vec![0u32; m];
        coords[0] = 1;
        for i in 0..field.order() as u64 {
            let lo: Vec<u32> = coords.iter().map(|c| c % p).collect();
            let hv: Vec<u32> = coords.iter().map(|c| c / p).collect();
            let res = field.from_coords(&lo);
            debug_assert_eq!(res, field.theta_pow(i));
            hi[res.0 as usize] = field.from_coords(&hv);
            // multiply by ξ: shift and reduce by the monic h
            let top = coords[m - 1];
            for j in (1..m).rev() {
                coords[j] = (coords[j - 1] + p2 * p2 - top * h[j]) % p2;
            }
            coords[0] = (p2 * p2 - top * h[0]) % p2;
        }
        let mut ctx = GrCtx { field, h, hi, teich_trace: Vec::new() };
        let table =
            (0..ctx.field.size()).map(|a| ctx.abs_trace_slow(GrElem::new(FieldElem(a), FieldElem::ZERO))).collect();
        ctx.teich_trace = table;
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    /// `|R| = q^2`.
    pub fn size(&self) -> u64 {
        let q = self.field.size() as u64;
        q * q
    }

    /// The basic primitive polynomial `h` over `Z_{p^2}`, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.h
    }

    pub fn residue_field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn check(&self, a: GrElem) -> Result<GrElem> {
        self.field.check(a.t1)?;
        self.field.check(a.t2)?;
        Ok(a)
    }

    /// The class ξ of the indeterminate.
    pub fn xi(&self) -> GrElem {
        self.teich(self.field.theta())
    }

    pub fn teich(&self, a: FieldElem) -> GrElem {
        GrElem::new(a, FieldElem::ZERO)
    }

    /// `ξ^i`.
    pub fn xi_pow(&self, i: u64) -> GrElem {
        self.teich(self.field.theta_pow(i))
    }

    /// `p·T(a)`.
    pub fn p_times(&self, a: FieldElem) -> GrElem {
        GrElem::new(FieldElem::ZERO, a)
    }

    /// Additive `(lo, hi)` digits.
    pub(crate) fn to_lohi(&self, a: GrElem) -> (FieldElem, FieldElem) {
        (a.t1, self.field.add(self.hi[a.t1.0 as usize], a.t2))
    }

    pub(crate) fn from_lohi(&self, lo: FieldElem, hi: FieldElem) -> GrElem {
        GrElem::new(lo, self.field.sub(hi, self.hi[lo.0 as usize]))
    }

    /// Coordinates over `Z_{p^2}` in the basis `1, ξ, ..., ξ^(m-1)`.
    pub fn to_additive(&self, a: GrElem) -> Vec<u32> {
        let p = self.p();
        let (lo, hi) = self.to_lohi(a);
        let lo = self.field.coords(lo);
        let hi = self.field.coords(hi);
        lo.iter().zip(&hi).map(|(&l, &h)| l + p * h).collect()
    }

    pub fn from_additive(&self, coords: &[u32]) -> GrElem {
        let p = self.p();
        let p2 = p * p;
        let lo: Vec<u32> = coords.iter().map(|&c| c % p2 % p).collect();
        let hi: Vec<u32> = coords.iter().map(|&c| c % p2 / p).collect();
        self.from_lohi(self.field.from_coords(&lo), self.field.from_coords(&hi))
    }

    /// `a + b` in additive form.
    pub fn add(&self, a: GrElem, b: GrElem) -> GrElem {
        let f = &self.field;
        let (la, ha) = self.to_lohi(a);
        let (lb, hb) = self.to_lohi(b);
        let lo = f.add(la, lb);
        let hi = f.add(f.add(ha, hb), f.carries(la, lb));
        self.from_lohi(lo, hi)
    }

    pub fn neg(&self, a: GrElem) -> GrElem {
        let p2 = self.p() * self.p();
        let c: Vec<u32> = self.to_additive(a).iter().map(|&x| (p2 - x) % p2).collect();
        self.from_additive(&c)
    }

    pub fn sub(&self, a: GrElem, b: GrElem) -> GrElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GrElem, b: GrElem) -> GrElem {
        let f = &self.field;
        GrElem::new(f.mul(a.t1, b.t1), f.add(f.mul(a.t1, b.t2), f.mul(a.t2, b.t1)))
    }

    /// Multiplication by polynomial arithmetic modulo `h`; an independent route.
    pub fn mul_additive(&self, a: GrElem, b: GrElem) -> GrElem {
        let p2 = self.p() * self.p();
        let prod = poly::mulmod(&self.to_additive(a), &self.to_additive(b), &self.h, p2);
        let mut c = prod;
        c.resize(self.degree() as usize, 0);
        self.from_additive(&c)
    }

    pub fn pow(&self, a: GrElem, e: u64) -> GrElem {
        let mut result = GrElem::ONE;
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

    /// `α = t1 + p·t2` with both parts in `T`.
    pub fn teich_decompose(&self, a: GrElem) -> (GrElem, GrElem) {
        (self.teich(a.t1), self.teich(a.t2))
    }

    /// Reduction modulo `p`.
    pub fn mod_p(&self, a: GrElem) -> FieldElem {
        a.t1
    }

    /// `σ_step(t1 + p t2) = t1^step + p t2^step` for `step` a positive power of `p`.
    pub fn frobenius(&self, a: GrElem, step: u64) -> Result<GrElem> {
        let p = self.p() as u64;
        let mut s = step;
        if s < p {
            return Err(Error::InvalidStep(step));
        }
        while s.is_multiple_of(p) {
            s /= p;
        }
        if s != 1 {
            return Err(Error::InvalidStep(step));
        }
        let f = &self.field;
        Ok(GrElem::new(f.pow(a.t1, step), f.pow(a.t2, step)))
    }

    fn abs_trace_slow(&self, a: GrElem) -> u32 {
        let p = self.p() as u64;
        let f = &self.field;
        let mut acc = GrElem::ZERO;
        let mut x = a;
        for _ in 0..self.degree() {
            acc = self.add(acc, x);
            x = GrElem::new(f.pow(x.t1, p), f.pow(x.t2, p));
        }
        let c = self.to_additive(acc);
        debug_assert!(c[1..].iter().all(|&v| v == 0));
        c[0]
    }

    /// `Tr_{Z_{p^2}}^R(α) = Σ σ_p^i(α)` as an integer in `[0, p^2)`.
    pub fn abs_trace(&self, a: GrElem) -> u32 {
        let p = self.p();
        (self.teich_trace[a.t1.0 as usize] + p * self.field.abs_trace(a.t2)) % (p * p)
    }

    /// All `q^2` elements ordered by (index of t1, index of t2).
    pub fn elements(&self) -> Vec<GrElem> {
        let els = self.field.elements();
        els.iter().flat_map(|&a| els.iter().map(move |&b| GrElem::new(a, b))).collect()
    }

    /// Additive text form `c0,c1,...`.
    pub fn format(&self, a: GrElem) -> String {
        self.to_additive(a).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Accepts the additive form or the Teichmüller form `T(i,j)`
    /// (`i`, `j` exponents of ξ, `-1` for zero).
    pub fn parse(&self, s: &str) -> Result<GrElem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad Galois-ring element {s:?}"));
        if let Some(inner) = s.strip_prefix("T(").and_then(|r| r.strip_suffix(')')) {
            let (i, j) = inner.split_once(',').ok_or_else(bad)?;
            let idx = |t: &str| -> Result<FieldElem> {
                let v: i64 = t.trim().parse().map_err(|_| bad())?;
                match v {
                    -1 => Ok(FieldElem::ZERO),
                    v if v >= 0 => Ok(self.field.theta_pow(v as u64)),
                    _ => Err(bad()),
                }
            };
            return Ok(GrElem::new(idx(i)?, idx(j)?));
        }
        let p2 = self.p() * self.p();
        let coords: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().ok().filter(|&c| c < p2).ok_or_else(bad))
            .collect::<Result<_>>()?;
        if coords.len() != self.degree() as usize {
            return Err(bad());
        }
        Ok(self.from_additive(&coords))
    }
}
