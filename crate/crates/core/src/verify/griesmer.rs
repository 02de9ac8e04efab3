use crate::error::{Error, Result};
use crate::gf::poly::prime_factors;
use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GriesmerReport {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub q: u64,
    /// `Σ_(i<k) ⌈d / q^i⌉`.
    pub bound_sum: u64,
    pub meets: bool,
    pub slack: i64,
}

pub fn griesmer_check(n: u64, k: u64, d: u64, q: u64) -> Result<GriesmerReport> {
    if n == 0 || k == 0 || d == 0 {
        return Err(Error::BadParams(format!("n, k, d must be positive, got [{n}, {k}, {d}]")));
    }
    let primes = prime_factors(q);
    if q < 2 || primes.len() != 1 {
        return Err(Error::BadParams(format!("q = {q} is not a prime power")));
    }
    let mut bound_sum = 0u64;
    let mut qi = 1u64;
    for _ in 0..k {
        bound_sum += d.div_ceil(qi);
        qi = qi.saturating_mul(q);
    }
    Ok(GriesmerReport { n, k, d, q, bound_sum, meets: n == bound_sum, slack: n as i64 - bound_sum as i64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = griesmer_check(3, 2, 2, 2).unwrap();
        assert_eq!((r.bound_sum, r.meets, r.slack), (3, true, 0));
        assert!(griesmer_check(20, 2, 16, 4).unwrap().meets);
        let r = griesmer_check(80, 4, 60, 4).unwrap();
        assert_eq!(r.bound_sum, 60 + 15 + 4 + 1);
        assert!(r.meets);
        let r = griesmer_check(7, 3, 3, 2).unwrap();
        assert_eq!((r.bound_sum, r.slack), (6, 1));
        assert!(griesmer_check(3, 2, 2, 6).is_err());
        assert!(griesmer_check(0, 2, 2, 2).is_err());
        assert!(griesmer_check(3, 2, 2, 1).is_err());
    }
}
