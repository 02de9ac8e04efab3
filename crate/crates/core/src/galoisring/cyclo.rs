use crate::error::{Error, Result};

/// A formal sum `Σ counts[j]·ζ^j` of `p^2`-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloSum {
    p: u32,
    counts: Vec<i64>,
}

impl CycloSum {
    pub fn zero(p: u32) -> Self {
        CycloSum { p, counts: vec![0; (p * p) as usize] }
    }

    /// Sum of `ζ^e` over the given exponents (taken mod `p^2`).
    pub fn from_exponents(p: u32, exps: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::zero(p);
        for e in exps {
            s.add_root(e);
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn add_root(&mut self, e: u32) {
        let n = self.counts.len() as u32;
        self.counts[(e % n) as usize] += 1;
    }

    pub fn merge(&mut self, other: &CycloSum) {
        debug_assert_eq!(self.p, other.p);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Canonical form in the basis `ζ^0, ..., ζ^(p(p-1)-1)`, using
    /// `Σ_{i<p} ζ^(j + i p) = 0` to eliminate the top `p` exponents.
    pub fn reduced(&self) -> CycloSum {
        let p = self.p as usize;
        let mut c = self.counts.clone();
        for j in (p * (p - 1)..p * p).rev() {
            let v = c[j];
            if v != 0 {
                let j0 = j % p;
                for i in 0..p - 1 {
                    c[j0 + i * p] -= v;
                }
                c[j] = 0;
            }
        }
        CycloSum { p: self.p, counts: c }
    }

    pub fn is_integer(&self) -> bool {
        self.reduced().counts[1..].iter().all(|&c| c == 0)
    }

    pub fn to_integer(&self) -> Result<i64> {
        let r = self.reduced();
        if r.counts[1..].iter().all(|&c| c == 0) {
            Ok(r.counts[0])
        } else {
            Err(Error::NotAnInteger(format!("{:?}", r.counts)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_orbit_sums_vanish() {
        for p in [2, 3, 5] {
            let all = CycloSum::from_exponents(p, 0..p * p);
            assert_eq!(all.to_integer().unwrap(), 0);
            // ζ^p is a primitive p-th root; its powers sum to zero
            let sub = CycloSum::from_exponents(p, (0..p).map(|i| i * p));
            assert_eq!(sub.to_integer().unwrap(), 0);
        }
    }

    #[test]
    fn negative_integers_are_recognised() {
        // p = 3: ζ^3 + ζ^6 = -1
        let s = CycloSum::from_exponents(3, [3, 6]);
        assert_eq!(s.to_integer().unwrap(), -1);
        let s = CycloSum::from_exponents(2, [2]);
        assert_eq!(s.to_integer().unwrap(), -1);
    }

    #[test]
    fn non_integers_are_rejected() {
        let s = CycloSum::from_exponents(2, [1]);
        assert!(!s.is_integer());
        assert!(matches!(s.to_integer(), Err(Error::NotAnInteger(_))));
        let s = CycloSum::from_exponents(3, [0, 1]);
        assert!(s.to_integer().is_err());
    }

    #[test]
    fn merge_is_addition() {
        let mut a = CycloSum::from_exponents(3, [0, 0, 4]);
        let b = CycloSum::from_exponents(3, [5]);
        a.merge(&b);
        assert_eq!(a.counts()[0], 2);
        assert_eq!(a.counts()[4], 1);
        assert_eq!(a.counts()[5], 1);
    }
}
