//! Exact fast Walsh–Hadamard transform.
//!
//! Spectra hold unnormalized correlations `corr[α] = Σ_x (-1)^(f(x) ⊕ ⟨x,α⟩)`,
//! i.e. `2^n · W_f(α)`. They are exact 64-bit integers.

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

/// Default arity cap for dense transforms.
pub const N_MAX_DENSE: usize = 24;
/// Hard upper bound a caller may raise the dense cap to.
pub const N_MAX_DENSE_LIMIT: usize = 28;

/// Dense transform configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenseCap(usize);

impl DenseCap {
    pub fn new(cap: usize) -> Result<Self> {
        if cap > N_MAX_DENSE_LIMIT {
            return Err(Error::CapTooLarge {
                cap,
                limit: N_MAX_DENSE_LIMIT,
            });
        }
        Ok(Self(cap))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::ArityExceedsCap { n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for DenseCap {
    fn default() -> Self {
        Self(N_MAX_DENSE)
    }
}

/// Walsh spectrum of an `n`-variable function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    n: usize,
    corr: Vec<i64>,
}

impl Spectrum {
    /// Wraps raw correlations, checking the length and Parseval's identity.
    pub fn from_correlations(n: usize, corr: Vec<i64>) -> Result<Self> {
        if corr.len() as u64 != 1u64 << n {
            return Err(Error::SpectrumLength {
                n,
                found: corr.len(),
            });
        }
        let s = Self { n, corr };
        s.check_parseval()?;
        Ok(s)
    }

    pub(crate) fn from_raw(n: usize, corr: Vec<i64>) -> Self {
        Self { n, corr }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn correlations(&self) -> &[i64] {
        &self.corr
    }

    pub fn into_correlations(self) -> Vec<i64> {
        self.corr
    }

    #[inline]
    pub fn get(&self, alpha: u64) -> i64 {
        self.corr[alpha as usize]
    }

    /// `Σ corr²`, which equals `4^n` for every Boolean function.
    pub fn sum_of_squares(&self) -> u128 {
        self.corr
            .iter()
            .map(|&c| (c.unsigned_abs() as u128).pow(2))
            .sum()
    }

    pub fn check_parseval(&self) -> Result<()> {
        let expected = 1u128 << (2 * self.n);
        let found = self.sum_of_squares();
        if found != expected {
            return Err(Error::ParsevalViolation { expected, found });
        }
        Ok(())
    }

    /// `max_α corr[α]²`.
    pub fn max_square(&self) -> u64 {
        self.corr
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
            .pow(2)
    }

    /// Runs the butterfly again; for a spectrum of `f` this yields
    /// `2^n · (-1)^f(x)` at every `x`.
    pub fn inverse_scaled(&self) -> Vec<i64> {
        let mut v = self.corr.clone();
        fwht_in_place(&mut v);
        v
    }
}

/// In-place integer butterfly over a slice of length `2^n`.
pub fn fwht_in_place(v: &mut [i64]) {
    let len = v.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

/// [`fwht_in_place`] on 32-bit lanes, used by the sweeps where `n` is small.
pub fn fwht_in_place_i32(v: &mut [i32]) {
    let len = v.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

/// Signs `(-1)^f(x)` of a table, in index order.
pub fn signs(f: &TruthTable) -> Vec<i64> {
    (0..f.len()).map(|x| f.sign(x)).collect()
}

/// Walsh transform under the default dense cap.
pub fn walsh_transform(f: &TruthTable) -> Result<Spectrum> {
    walsh_transform_with_cap(f, DenseCap::default())
}

pub fn walsh_transform_with_cap(f: &TruthTable, cap: DenseCap) -> Result<Spectrum> {
    cap.check(f.n())?;
    let mut v = signs(f);
    fwht_in_place(&mut v);
    Ok(Spectrum::from_raw(f.n(), v))
}

/// Walsh value at one point by direct summation; O(2^n).
pub fn walsh_at(f: &TruthTable, alpha: u64) -> i64 {
    (0..f.len())
        .map(|x| {
            let parity = (x & alpha).count_ones() & 1 == 1;
            if f.get(x) ^ parity {
                -1
            } else {
                1
            }
        })
        .sum()
}

/// `wt(α)`.
#[inline]
pub fn weight(alpha: u64) -> u32 {
    alpha.count_ones()
}
