//! Symmetric functions, indexed by their value vector.

use crate::error::Result;
use crate::metrics::SpectralSummary;
use crate::truth_table::TruthTable;
use crate::walsh::fwht_in_place;

/// A function invariant under every permutation of its inputs: bit `j` of
/// `value_vector` is the output on inputs of weight `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricFunction {
    pub n: usize,
    pub value_vector: u32,
}

impl SymmetricFunction {
    pub fn new(n: usize, value_vector: u32) -> Self {
        debug_assert!(n < 31);
        Self {
            n,
            value_vector: value_vector & ((1u32 << (n + 1)) - 1),
        }
    }

    /// `A_n = X_1 ⋯ X_n`.
    pub fn and(n: usize) -> Self {
        Self::new(n, 1 << n)
    }

    pub fn value_at_weight(&self, w: u32) -> bool {
        self.value_vector >> w & 1 == 1
    }

    pub fn to_truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.n, |x| self.value_at_weight(x.count_ones()))
    }

    /// `{A_n, ¬A_n, A_n(1 ⊕ x), ¬A_n(1 ⊕ x)}`: the images of `A_n` under output
    /// and input complementation, which leave `H` and `Inf` unchanged.
    pub fn and_orbit(n: usize) -> Vec<SymmetricFunction> {
        let full = (1u32 << (n + 1)) - 1;
        let mut v: Vec<u32> = vec![1 << n, full ^ (1 << n), 1, full ^ 1];
        v.sort_unstable();
        v.dedup();
        v.into_iter().map(|vv| Self::new(n, vv)).collect()
    }
}

/// Per-layer Walsh values: `layers[j][w]` is the transform of the indicator
/// of the weight-`j` layer at any point of weight `w`. The spectrum of a
/// symmetric `f` at a weight-`w` point is `Σ_j (-1)^{v_j} layers[j][w]`.
#[derive(Clone, Debug)]
pub struct LayerTable {
    n: usize,
    layers: Vec<Vec<i64>>,
    binom: Vec<u64>,
}

impl LayerTable {
    /// Built from `n + 1` dense transforms of the layer indicators.
    pub fn new(n: usize) -> Self {
        let size = 1usize << n;
        let layers = (0..=n as u32)
            .map(|j| {
                let mut v: Vec<i64> = (0..size as u64)
                    .map(|x| i64::from(x.count_ones() == j))
                    .collect();
                fwht_in_place(&mut v);
                (0..=n).map(|w| v[(1usize << w) - 1]).collect()
            })
            .collect();
        let mut binom = vec![1u64; n + 1];
        for w in 1..=n {
            binom[w] = binom[w - 1] * (n - w + 1) as u64 / w as u64;
        }
        Self { n, layers, binom }
    }

    /// Correlation of `f` at a point of weight `w`.
    pub fn correlation(&self, f: SymmetricFunction, w: usize) -> i64 {
        self.layers
            .iter()
            .enumerate()
            .map(|(j, layer)| {
                if f.value_at_weight(j as u32) {
                    -layer[w]
                } else {
                    layer[w]
                }
            })
            .sum()
    }

    /// Spectral summary of `f`, each weight class counted `C(n, w)` times.
    pub fn summary(&self, f: SymmetricFunction) -> SpectralSummary {
        let mut s = SpectralSummary::new(self.n);
        for w in 0..=self.n {
            s.add(self.correlation(f, w), w as u32, self.binom[w]);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walsh::walsh_transform;

    #[test]
    fn layer_path_matches_dense_transform() {
        for n in 1..=8 {
            let table = LayerTable::new(n);
            for vv in 0..(1u32 << (n + 1)) {
                let f = SymmetricFunction::new(n, vv);
                let dense = walsh_transform(&f.to_truth_table().unwrap()).unwrap();
                for (alpha, &c) in dense.correlations().iter().enumerate() {
                    assert_eq!(
                        c,
                        table.correlation(f, (alpha as u64).count_ones() as usize)
                    );
                }
                let a = table.summary(f);
                let b = SpectralSummary::from_spectrum(&dense);
                assert_eq!(a.inf_num, b.inf_num);
                assert_eq!(a.max_abs, b.max_abs);
                assert_eq!(a.support, b.support);
                assert!((a.entropy().to_f64() - b.entropy().to_f64()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn and_orbit_members() {
        let o = SymmetricFunction::and_orbit(3);
        assert_eq!(o.len(), 4);
        assert!(o.contains(&SymmetricFunction::and(3)));
        assert_eq!(SymmetricFunction::and_orbit(1).len(), 2);
    }
}
