use super::{Ring, RingCode, RingElem, WeightDistribution};
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::par::{map_indexed, Workers};
use serde::Serialize;

pub const DEFAULT_MAX_CODEWORDS: u64 = 1 << 20;
pub const DEFAULT_MAX_LENGTH: u64 = 1 << 12;

const CHUNK: u64 = 256;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    /// Cap on `Q^2`.
    pub max_codewords: u64,
    /// Cap on `n`.
    pub max_length: u64,
    pub workers: Workers,
    /// Compute one profile per orbit `βG` and copy it to the rest of the
    /// orbit; `c_(βg)` is a coordinate permutation of `c_β` for `g ∈ G`.
    pub orbit_reduction: bool,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_codewords: DEFAULT_MAX_CODEWORDS,
            max_length: DEFAULT_MAX_LENGTH,
            workers: None,
            orbit_reduction: false,
        }
    }
}

impl EnumLimits {
    pub fn with_workers(workers: Workers) -> Self {
        EnumLimits { workers, ..Self::default() }
    }

    pub fn check(&self, code: &RingCode) -> Result<()> {
        if code.size() > self.max_codewords {
            return Err(Error::EnumerationCapExceeded(format!(
                "Q^2 = {} codewords exceeds {}",
                code.size(),
                self.max_codewords
            )));
        }
        if code.n() as u64 > self.max_length {
            return Err(Error::EnumerationCapExceeded(format!("length n = {} exceeds {}", code.n(), self.max_length)));
        }
        Ok(())
    }
}

/// Hamming and homogeneous weight of one codeword.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaWeights {
    pub hamming: u32,
    pub hom: u32,
}

impl RingCode {
    /// `N_β(a)` for every `a ∈ R`, indexed by `a.a·q + a.b` (packed residues).
    pub fn profile(&self, beta: RingElem) -> Vec<u32> {
        let q = self.q() as usize;
        let mut hist = vec![0u32; q * q];
        self.profile_into(beta, &mut hist);
        hist
    }

    fn profile_into(&self, beta: RingElem, hist: &mut [u32]) {
        hist.fill(0);
        let t = self.ring.fields();
        let (ext, base) = (t.ext(), t.base());
        let q = self.q() as usize;
        let ws: Vec<FieldElem> =
            self.eval.subspace_part().iter().map(|&v| ext.add(ext.mul(beta.a, v), beta.b)).collect();
        for &y in self.eval.cyclic_part() {
            let x1 = ext.mul(beta.a, y);
            let row = t.trace(x1).0 as usize * q;
            let carry = match &self.ring {
                Ring::Galois(g) => g.carry(x1),
                Ring::Dual(_) => FieldElem::ZERO,
            };
            for &w in &ws {
                let t2 = t.trace(ext.mul(y, w));
                let t2 = if carry.is_zero() { t2 } else { base.add(carry, t2) };
                hist[row + t2.0 as usize] += 1;
            }
        }
    }

    fn weights_from_profile(&self, hist: &[u32]) -> BetaWeights {
        let q = self.q() as usize;
        let units: u32 = hist[q..].iter().sum();
        let ideal: u32 = hist[1..q].iter().sum();
        BetaWeights { hamming: self.n() as u32 - hist[0], hom: (q as u32 - 1) * units + q as u32 * ideal }
    }

    pub fn beta_weights(&self, beta: RingElem) -> BetaWeights {
        self.weights_from_profile(&self.profile(beta))
    }

    /// Weights of every codeword, in canonical `β` order.
    pub fn weights(&self, limits: &EnumLimits) -> Result<Vec<BetaWeights>> {
        limits.check(self)?;
        if limits.orbit_reduction {
            return Ok(self.weights_by_orbit());
        }
        let total = self.size();
        let chunks = total.div_ceil(CHUNK) as usize;
        let q = self.q() as usize;
        let parts = map_indexed(chunks, limits.workers, |c| {
            let mut hist = vec![0u32; q * q];
            let start = c as u64 * CHUNK;
            (start..(start + CHUNK).min(total))
                .map(|i| {
                    self.profile_into(self.beta(i), &mut hist);
                    self.weights_from_profile(&hist)
                })
                .collect::<Vec<_>>()
        });
        Ok(parts.into_iter().flatten().collect())
    }

    fn weights_by_orbit(&self) -> Vec<BetaWeights> {
        let ext = self.ring.fields().ext();
        let g = self.eval.elements(ext);
        let mut out: Vec<Option<BetaWeights>> = vec![None; self.size() as usize];
        let mut hist = vec![0u32; (self.q() * self.q()) as usize];
        for i in 0..out.len() {
            if out[i].is_some() {
                continue;
            }
            let beta = self.beta(i as u64);
            self.profile_into(beta, &mut hist);
            let w = self.weights_from_profile(&hist);
            out[i] = Some(w);
            for &x in &g {
                out[self.beta_index(self.ring.ext_mul(beta, x)) as usize] = Some(w);
            }
        }
        out.into_iter().map(|w| w.expect("every beta lies in an orbit")).collect()
    }

    pub fn hamming_distribution(&self, limits: &EnumLimits) -> Result<WeightDistribution> {
        let w = self.weights(limits)?;
        Ok(WeightDistribution::from_weights(w.iter().map(|b| b.hamming as u64)))
    }

    pub fn hom_distribution(&self, limits: &EnumLimits) -> Result<WeightDistribution> {
        let w = self.weights(limits)?;
        Ok(WeightDistribution::from_weights(w.iter().map(|b| b.hom as u64)))
    }

    /// Both distributions from a single pass.
    pub fn distributions(&self, limits: &EnumLimits) -> Result<(WeightDistribution, WeightDistribution)> {
        let w = self.weights(limits)?;
        Ok((
            WeightDistribution::from_weights(w.iter().map(|b| b.hamming as u64)),
            WeightDistribution::from_weights(w.iter().map(|b| b.hom as u64)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{GroupSpec, RingKind};
    use super::*;

    fn code(kind: RingKind, p: u32, m: u32, s: u32, e: u64, v: &str) -> RingCode {
        RingCode::new(GroupSpec::parse(kind, p, m, s, e, v).unwrap()).unwrap()
    }

    #[test]
    fn distribution_examples() {
        let lim = EnumLimits::default();
        let d = code(RingKind::Dual, 2, 1, 2, 1, "").hamming_distribution(&lim).unwrap();
        assert_eq!(d, WeightDistribution::from([(0, 1), (2, 9), (3, 6)]));
        let d = code(RingKind::Galois, 2, 1, 2, 1, "").hamming_distribution(&lim).unwrap();
        assert_eq!(d, WeightDistribution::from([(0, 1), (2, 9), (3, 6)]));
        let d = code(RingKind::Galois, 2, 1, 2, 1, "10").hamming_distribution(&lim).unwrap();
        assert_eq!(d, WeightDistribution::from([(0, 1), (4, 3), (5, 12)]));
    }

    #[test]
    fn fast_profile_matches_codewords() {
        for (kind, p, m, s, e, v) in [
            (RingKind::Dual, 2, 2, 2, 3, "0110"),
            (RingKind::Galois, 2, 2, 2, 3, "0110"),
            (RingKind::Galois, 3, 1, 2, 2, "11"),
        ] {
            let c = code(kind, p, m, s, e, v);
            let q = c.q() as usize;
            for i in 0..c.size() {
                let beta = c.beta(i);
                let mut hist = vec![0u32; q * q];
                for x in c.codeword(beta) {
                    hist[x.a.0 as usize * q + x.b.0 as usize] += 1;
                }
                assert_eq!(c.profile(beta), hist);
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let c = code(RingKind::Galois, 3, 1, 3, 2, "101");
        let one = c.weights(&EnumLimits::with_workers(Some(1))).unwrap();
        let many = c.weights(&EnumLimits::with_workers(Some(4))).unwrap();
        let default = c.weights(&EnumLimits::default()).unwrap();
        assert_eq!(one, many);
        assert_eq!(one, default);
    }

    #[test]
    fn orbit_reduction_matches_full_enumeration() {
        let full = EnumLimits::default();
        let orbit = EnumLimits { orbit_reduction: true, ..EnumLimits::default() };
        for (kind, p, m, s, e, v) in [
            (RingKind::Dual, 2, 2, 2, 3, "1000,0100"),
            (RingKind::Galois, 2, 2, 2, 3, "0110"),
            (RingKind::Galois, 3, 1, 3, 2, "011"),
            (RingKind::Dual, 3, 1, 2, 4, ""),
            (RingKind::Galois, 2, 1, 3, 1, "101,011"),
        ] {
            let c = code(kind, p, m, s, e, v);
            assert_eq!(c.weights(&full).unwrap(), c.weights(&orbit).unwrap(), "{}", c.spec().label());
        }
    }

    #[test]
    fn caps_are_enforced() {
        let c = code(RingKind::Dual, 2, 1, 4, 1, "0001");
        let lim = EnumLimits { max_codewords: 100, ..EnumLimits::default() };
        assert!(matches!(c.weights(&lim), Err(Error::EnumerationCapExceeded(_))));
        let lim = EnumLimits { max_length: 10, ..EnumLimits::default() };
        assert!(matches!(c.weights(&lim), Err(Error::EnumerationCapExceeded(_))));
    }

    #[test]
    fn nonzero_betas_have_positive_weight() {
        for kind in [RingKind::Dual, RingKind::Galois] {
            let c = code(kind, 2, 2, 2, 1, "1000");
            let w = c.weights(&EnumLimits::default()).unwrap();
            assert_eq!(w[0].hamming, 0);
            assert!(w[1..].iter().all(|b| b.hamming > 0));
        }
    }
}
