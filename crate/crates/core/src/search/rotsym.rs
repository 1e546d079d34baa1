//! Rotation-symmetric functions and binary necklaces.

use crate::error::Result;
use crate::metrics::SpectralSummary;
use crate::truth_table::TruthTable;
use crate::walsh::fwht_in_place;

fn rotate(x: u64, n: usize) -> u64 {
    let mask = (1u64 << n) - 1;
    ((x << 1) | (x >> (n - 1))) & mask
}

/// Orbit structure of `F_2^n` under cyclic shifts.
#[derive(Clone, Debug)]
pub struct Necklaces {
    n: usize,
    /// Lexicographically minimal rotation of each orbit, ascending.
    reps: Vec<u64>,
    orbit_size: Vec<u64>,
    /// Orbit index of every point.
    orbit_of: Vec<u32>,
}

impl Necklaces {
    pub fn new(n: usize) -> Self {
        let size = 1usize << n;
        let mut rep_of = vec![0u64; size];
        for (x, slot) in rep_of.iter_mut().enumerate() {
            let mut y = x as u64;
            let mut min = y;
            for _ in 1..n {
                y = rotate(y, n);
                min = min.min(y);
            }
            *slot = min;
        }
        let mut reps: Vec<u64> = rep_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let mut orbit_size = vec![0u64; reps.len()];
        let orbit_of: Vec<u32> = rep_of
            .iter()
            .map(|r| {
                let i = reps.binary_search(r).unwrap();
                orbit_size[i] += 1;
                i as u32
            })
            .collect();
        Self {
            n,
            reps,
            orbit_size,
            orbit_of,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn representatives(&self) -> &[u64] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn orbit_of(&self, x: u64) -> usize {
        self.orbit_of[x as usize] as usize
    }

    /// Spectral summary of the function taking value `assignment >> i & 1`
    /// on orbit `i`. The spectrum is itself rotation invariant, so only the
    /// representatives are read, weighted by orbit size.
    pub fn summary(&self, assignment: u64, scratch: &mut Vec<i64>) -> SpectralSummary {
        scratch.clear();
        scratch.extend(
            self.orbit_of
                .iter()
                .map(|&o| if assignment >> o & 1 == 1 { -1 } else { 1 }),
        );
        fwht_in_place(scratch);
        let mut s = SpectralSummary::new(self.n);
        for (i, &r) in self.reps.iter().enumerate() {
            s.add(scratch[r as usize], r.count_ones(), self.orbit_size[i]);
        }
        s
    }
}

/// A rotation-symmetric function: one output bit per necklace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotSymFunction {
    pub n: usize,
    /// Bit `i` is the value on the `i`-th necklace in ascending order.
    pub necklace_values: u64,
}

impl RotSymFunction {
    pub fn to_truth_table(&self, necklaces: &Necklaces) -> Result<TruthTable> {
        TruthTable::from_fn(self.n, |x| {
            self.necklace_values >> necklaces.orbit_of(x) & 1 == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walsh::walsh_transform;

    #[test]
    fn necklace_counts() {
        // OEIS A000031
        let expected = [2, 3, 4, 6, 8, 14, 20, 36];
        for (n, &count) in (1..=8).zip(expected.iter()) {
            assert_eq!(Necklaces::new(n).len(), count, "n = {n}");
        }
        assert_eq!(Necklaces::new(4).representatives(), &[0, 1, 3, 5, 7, 15]);
    }

    #[test]
    fn orbit_summary_matches_dense() {
        let nk = Necklaces::new(6);
        let mut scratch = Vec::new();
        for a in [1u64, 77, 1234, 16000] {
            let f = RotSymFunction {
                n: 6,
                necklace_values: a,
            };
            let tt = f.to_truth_table(&nk).unwrap();
            for x in 0..64 {
                assert_eq!(tt.get(x), tt.get(rotate(x, 6)));
            }
            let dense = SpectralSummary::from_spectrum(&walsh_transform(&tt).unwrap());
            let fast = nk.summary(a, &mut scratch);
            assert_eq!(dense.inf_num, fast.inf_num);
            assert_eq!(dense.max_abs, fast.max_abs);
            assert!((dense.entropy().to_f64() - fast.entropy().to_f64()).abs() < 1e-12);
        }
    }
}
