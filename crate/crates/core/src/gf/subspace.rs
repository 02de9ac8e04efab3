//! `F_p`-subspaces of a field `F_{p^M}` in canonical row-reduced echelon form.
//!
//! Columns run from the coefficient of `θ^(M-1)` (leftmost) down to the
//! constant coefficient, matching the text form of basis vectors.

use super::{digits_to_string, parse_digits, FieldCtx, FieldElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u32,
    width: u32,
    basis: Vec<FieldElem>,
}

fn to_cols(a: FieldElem, p: u32, width: u32) -> Vec<u32> {
    let mut out = vec![0u32; width as usize];
    let mut x = a.0;
    for j in (0..width as usize).rev() {
        out[j] = x % p;
        x /= p;
    }
    out
}

fn from_cols(cols: &[u32], p: u32) -> FieldElem {
    FieldElem(cols.iter().fold(0u32, |acc, &d| acc * p + d))
}

fn inv_mod(a: u32, p: u32) -> u32 {
    super::poly::inv_mod_prime(a, p)
}

/// Row-reduces in place and returns the pivot columns; zero rows are dropped.
fn rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j]) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl Subspace {
    /// Span of the given packed vectors inside `F_p^width`.
    pub fn span(p: u32, width: u32, vectors: &[FieldElem]) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors.iter().map(|&v| to_cols(v, p, width)).collect();
        rref(&mut rows, p);
        let basis = rows.iter().map(|r| from_cols(r, p)).collect();
        Subspace { p, width, basis }
    }

    pub fn span_in(ctx: &FieldCtx, vectors: &[FieldElem]) -> Self {
        Self::span(ctx.p(), ctx.degree(), vectors)
    }

    pub fn zero(p: u32, width: u32) -> Self {
        Subspace { p, width, basis: Vec::new() }
    }

    pub fn full(p: u32, width: u32) -> Self {
        let vecs: Vec<FieldElem> = (0..width).map(|i| FieldElem(p.pow(i))).collect();
        Self::span(p, width, &vecs)
    }

    /// `F_q` sitting inside `F_Q` through the tower embedding.
    pub fn subfield(tower: &super::Tower) -> Self {
        let b = tower.base();
        let vecs: Vec<FieldElem> =
            (0..b.degree()).map(|i| tower.embed(b.from_coords(&unit_coords(i, b.degree())))).collect();
        Self::span_in(tower.ext(), &vecs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.dim())
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn contains(&self, v: FieldElem) -> bool {
        let mut all = self.basis.clone();
        all.push(v);
        Self::span(self.p, self.width, &all).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(b))
    }

    /// All `p^l` elements; element `j` uses the base-p digits of `j` as
    /// coefficients, the first basis row being the most significant.
    pub fn elements(&self) -> Vec<FieldElem> {
        let l = self.basis.len();
        let p = self.p;
        let mut out = Vec::with_capacity(self.size() as usize);
        let rows: Vec<Vec<u32>> = self.basis.iter().map(|&b| to_cols(b, p, self.width)).collect();
        for j in 0..self.size() {
            let mut acc = vec![0u32; self.width as usize];
            let mut rest = j;
            for i in (0..l).rev() {
                let d = (rest % p as u64) as u32;
                rest /= p as u64;
                if d != 0 {
                    for (a, &r) in acc.iter_mut().zip(&rows[i]) {
                        *a = (*a + d * r) % p;
                    }
                }
            }
            out.push(from_cols(&acc, p));
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend_from_slice(&other.basis);
        Self::span(self.p, self.width, &all)
    }

    /// `U ∩ W = (U^⊥ + W^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace, ctx: &FieldCtx) -> Subspace {
        self.dual(ctx).sum(&other.dual(ctx)).dual(ctx)
    }

    /// `U^⊥ = {y : Tr_p^Q(y u) = 0 for all u ∈ U}`.
    pub fn dual(&self, ctx: &FieldCtx) -> Subspace {
        debug_assert_eq!(ctx.degree(), self.width);
        let width = self.width as usize;
        let p = self.p;
        // functional of each basis vector on the column basis θ^(width-1-j)
        let mut rows: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|&b| {
                (0..width)
                    .map(|j| {
                        let basis_elem = ctx.theta_pow_coord((width - 1 - j) as u32);
                        ctx.abs_trace(ctx.mul(basis_elem, b))
                    })
                    .collect()
            })
            .collect();
        let pivots = rref(&mut rows, p);
        let mut kernel = Vec::new();
        for free in (0..width).filter(|c| !pivots.contains(c)) {
            let mut x = vec![0u32; width];
            x[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - rows[i][free]) % p;
            }
            kernel.push(from_cols(&x, p));
        }
        Self::span(p, self.width, &kernel)
    }

    /// Comma-separated basis vectors, each a base-p digit string of length `width`.
    pub fn format_basis(&self) -> String {
        self.basis
            .iter()
            .map(|&b| digits_to_string(&to_cols(b, self.p, self.width), self.p))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the basis-spec text form; the empty string is the zero subspace.
    pub fn parse(spec: &str, p: u32, width: u32) -> Result<Subspace> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(Self::zero(p, width));
        }
        let mut vecs = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            let digits = parse_digits(part, p).map_err(|e| Error::BadSubspace(e.to_string()))?;
            if digits.len() != width as usize {
                return Err(Error::BadSubspace(format!(
                    "vector {part:?} has {} digits, expected {width}",
                    digits.len()
                )));
            }
            vecs.push(from_cols(&digits, p));
        }
        Ok(Self::span(p, width, &vecs))
    }

    /// Every subspace of `F_p^width` of dimension `dim`, in canonical order
    /// (pivot sets lexicographically, then free entries).
    pub fn all_of_dim(p: u32, width: u32, dim: u32) -> Vec<Subspace> {
        let mut out = Vec::new();
        let w = width as usize;
        let l = dim as usize;
        let mut pivots: Vec<usize> = (0..l).collect();
        if l > w {
            return out;
        }
        loop {
            // free slots: (row, col) with col > pivot[row], col not a pivot
            let free: Vec<(usize, usize)> = (0..l)
                .flat_map(|i| {
                    let piv = pivots.clone();
                    (pivots[i] + 1..w).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let count = (p as u64).pow(free.len() as u32);
            for code in 0..count {
                let mut rows = vec![vec![0u32; w]; l];
                for (i, &pc) in pivots.iter().enumerate() {
                    rows[i][pc] = 1;
                }
                let mut rest = code;
                for &(i, c) in free.iter().rev() {
                    rows[i][c] = (rest % p as u64) as u32;
                    rest /= p as u64;
                }
                let basis = rows.iter().map(|r| from_cols(r, p)).collect();
                out.push(Subspace { p, width, basis });
            }
            // next combination
            let mut i = l;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if pivots[i] < w - l + i {
                    pivots[i] += 1;
                    for j in i + 1..l {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    break;
                }
            }
            if l == 0 {
                return out;
            }
        }
    }

    /// Number of `dim`-dimensional subspaces of `F_p^width` (Gaussian binomial).
    pub fn count_of_dim(p: u32, width: u32, dim: u32) -> u64 {
        if dim > width {
            return 0;
        }
        let p = p as u128;
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..dim {
            num *= p.pow(width - i) - 1;
            den *= p.pow(i + 1) - 1;
        }
        (num / den) as u64
    }
}

/// Sizes of `V + F_q` and `V ∩ F_q` for a subspace of `F_Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceArith {
    pub size_sum: u64,
    pub size_cap: u64,
    pub contains_sum_all: bool,
}

pub fn subspace_arith(v: &Subspace, tower: &super::Tower) -> Result<SubspaceArith> {
    if v.p() != tower.ext().p() || v.width() != tower.ext().degree() {
        return Err(Error::IncompatibleTower(format!("subspace of F_{}^{} does not live in F_Q", v.p(), v.width())));
    }
    let fq = Subspace::subfield(tower);
    let sum = v.sum(&fq);
    let cap = v.intersect(&fq, tower.ext());
    Ok(SubspaceArith { size_sum: sum.size(), size_cap: cap.size(), contains_sum_all: sum.dim() == v.width() })
}

fn unit_coords(i: u32, degree: u32) -> Vec<u32> {
    let mut c = vec![0u32; degree as usize];
    c[i as usize] = 1;
    c
}

impl FieldCtx {
    /// The power-basis element `θ^i` for `i < degree`, built from coordinates.
    pub(crate) fn theta_pow_coord(&self, i: u32) -> FieldElem {
        self.from_coords(&unit_coords(i, self.degree()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_field, Tower};

    #[test]
    fn span_examples() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(Subspace::span_in(&f4, &[]).dim(), 0);
        let t = f4.theta();
        assert_eq!(Subspace::span_in(&f4, &[t, f4.mul(t, t)]).dim(), 2);
        assert_eq!(Subspace::span_in(&f4, &[f4.one(), f4.one()]).dim(), 1);
    }

    #[test]
    fn canonical_form_is_unique() {
        let f16 = make_field(2, 4).unwrap();
        let a = f16.theta_pow(3);
        let b = f16.theta_pow(7);
        let u = Subspace::span_in(&f16, &[a, b]);
        let w = Subspace::span_in(&f16, &[f16.add(a, b), b]);
        assert_eq!(u, w);
    }

    #[test]
    fn duals_in_f4() {
        let f4 = make_field(2, 2).unwrap();
        let zero = Subspace::zero(2, 2);
        let full = Subspace::full(2, 2);
        assert_eq!(zero.dual(&f4), full);
        assert_eq!(full.dual(&f4), zero);
        // span{1}^⊥ = ker Tr = {0, 1}
        let one = Subspace::span_in(&f4, &[f4.one()]);
        let d = one.dual(&f4);
        assert_eq!(d.dim(), 1);
        for x in d.elements() {
            assert_eq!(f4.abs_trace(x), 0);
        }
        assert_eq!(d, one);
    }

    #[test]
    fn dual_laws_hold_for_every_subspace_of_f16() {
        let f16 = make_field(2, 4).unwrap();
        for dim in 0..=4 {
            let all = Subspace::all_of_dim(2, 4, dim);
            assert_eq!(all.len() as u64, Subspace::count_of_dim(2, 4, dim));
            for u in all {
                let d = u.dual(&f16);
                assert_eq!(d.dim() + u.dim(), 4);
                assert_eq!(d.dual(&f16), u);
                for x in d.elements() {
                    for y in u.elements() {
                        assert_eq!(f16.abs_trace(f16.mul(x, y)), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(Subspace::count_of_dim(2, 6, 3), 1395);
        assert_eq!(Subspace::count_of_dim(3, 4, 2), 130);
        let total: usize = (0..=4).map(|d| Subspace::all_of_dim(3, 4, d).len()).sum();
        assert_eq!(total, 212);
    }

    #[test]
    fn sum_and_intersection_dimension_formula() {
        let t = Tower::extend(make_field(2, 2).unwrap(), 2).unwrap();
        let fq = Subspace::subfield(&t);
        assert_eq!(fq.dim(), 2);
        for dim in 0..=4 {
            for v in Subspace::all_of_dim(2, 4, dim) {
                let s = v.sum(&fq);
                let c = v.intersect(&fq, t.ext());
                assert_eq!(s.size() * c.size(), v.size() * fq.size());
                for x in c.elements() {
                    assert!(v.contains(x) && fq.contains(x));
                }
            }
        }
    }

    #[test]
    fn arith_examples_in_f4() {
        let t = Tower::extend(make_field(2, 1).unwrap(), 2).unwrap();
        let f4 = t.ext();
        let cases = [(vec![], 2, 1), (vec![f4.theta()], 4, 1), (vec![f4.one()], 2, 2)];
        for (vecs, sum, cap) in cases {
            let v = Subspace::span_in(f4, &vecs);
            let a = subspace_arith(&v, &t).unwrap();
            assert_eq!((a.size_sum, a.size_cap), (sum, cap));
            assert_eq!(a.contains_sum_all, sum == 4);
        }
        let wrong = Subspace::zero(2, 3);
        assert!(matches!(subspace_arith(&wrong, &t), Err(Error::IncompatibleTower(_))));
    }

    #[test]
    fn parse_and_format() {
        let v = Subspace::parse("0110,0010", 2, 4).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(Subspace::parse(&v.format_basis(), 2, 4).unwrap(), v);
        assert_eq!(Subspace::parse("", 2, 4).unwrap().dim(), 0);
        assert!(matches!(Subspace::parse("012", 2, 3), Err(Error::BadSubspace(_))));
        assert!(matches!(Subspace::parse("01", 2, 3), Err(Error::BadSubspace(_))));
    }

    #[test]
    fn elements_are_distinct_and_closed() {
        let f9 = make_field(3, 2).unwrap();
        let v = Subspace::span_in(&f9, &[f9.theta()]);
        let els = v.elements();
        assert_eq!(els.len(), 3);
        let set: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(set.len(), 3);
        for &a in &els {
            for &b in &els {
                assert!(v.contains(f9.add(a, b)));
            }
        }
    }
}
