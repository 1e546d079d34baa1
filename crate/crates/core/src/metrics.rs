//! Spectral metrics: Fourier entropy, min-entropy, total influence,
//! resilience and the plateaued / bent classification.
//!
//! All quantities are derived from the integer correlations of a
//! [`Spectrum`]: with `p_α = corr[α]² / 4^n`,
//!
//! * `H(f)   = Σ p_α log2(1/p_α)` over `p_α ≠ 0`,
//! * `H∞(f)  = log2(4^n / max corr²)`,
//! * `Inf(f) = Σ wt(α) p_α`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::ExactValue;
use crate::truth_table::TruthTable;
use crate::walsh::{walsh_transform, DenseCap, Spectrum};

/// Integer statistics of a spectrum gathered in one pass. Every metric in
/// this module is a function of these fields.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSummary {
    pub n: usize,
    pub corr0: i64,
    pub max_abs: u64,
    /// Smallest nonzero `|corr|`.
    pub min_nonzero_abs: u64,
    /// Number of `α` with `corr[α] ≠ 0`.
    pub support: u64,
    /// `Σ wt(α)·corr[α]²`, i.e. `4^n · Inf(f)`.
    pub inf_num: u128,
    /// Largest `|corr|` over points of weight one.
    pub max_abs_weight1: u64,
    /// Smallest `wt(α)` with `corr[α] ≠ 0`.
    pub min_support_weight: u32,
    /// `Σ corr²`, kept for the Parseval check.
    pub sum_sq: u128,
    entropy: Neumaier,
}

/// Compensated summation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl SpectralSummary {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            corr0: 0,
            max_abs: 0,
            min_nonzero_abs: u64::MAX,
            support: 0,
            inf_num: 0,
            max_abs_weight1: 0,
            min_support_weight: u32::MAX,
            sum_sq: 0,
            entropy: Neumaier::default(),
        }
    }

    /// Accounts for `multiplicity` points of weight `wt` that all carry
    /// correlation `corr`.
    pub fn add(&mut self, corr: i64, wt: u32, multiplicity: u64) {
        if wt == 0 {
            self.corr0 = corr;
        }
        let a = corr.unsigned_abs();
        if a == 0 || multiplicity == 0 {
            return;
        }
        let sq = (a as u128) * (a as u128);
        self.max_abs = self.max_abs.max(a);
        self.min_nonzero_abs = self.min_nonzero_abs.min(a);
        self.support += multiplicity;
        self.inf_num += sq * wt as u128 * multiplicity as u128;
        self.sum_sq += sq * multiplicity as u128;
        if wt == 1 {
            self.max_abs_weight1 = self.max_abs_weight1.max(a);
        }
        self.min_support_weight = self.min_support_weight.min(wt);
        let p = sq as f64 / (1u128 << (2 * self.n)) as f64;
        let bits = 2.0 * self.n as f64 - 2.0 * (a as f64).log2();
        self.entropy.add(p * bits * multiplicity as f64);
    }

    pub fn from_spectrum(s: &Spectrum) -> Self {
        let mut acc = Self::new(s.n());
        for (alpha, &c) in s.correlations().iter().enumerate() {
            acc.add(c, (alpha as u64).count_ones(), 1);
        }
        acc
    }

    pub fn parseval_holds(&self) -> bool {
        self.sum_sq == 1u128 << (2 * self.n)
    }

    pub fn is_balanced(&self) -> bool {
        self.corr0 == 0
    }

    /// `wt(f) = (2^n - corr[0]) / 2`.
    pub fn weight(&self) -> u64 {
        (((1i128 << self.n) - self.corr0 as i128) / 2) as u64
    }

    pub fn max_square(&self) -> u64 {
        self.max_abs * self.max_abs
    }

    /// Largest `t` with `corr[α] = 0` for every `wt(α) ≤ t`; `-1` when
    /// `corr[0] ≠ 0`.
    pub fn resilience_order(&self) -> i32 {
        if self.min_support_weight == u32::MAX {
            return self.n as i32;
        }
        self.min_support_weight as i32 - 1
    }

    pub fn is_plateaued(&self) -> bool {
        self.support > 0 && self.min_nonzero_abs == self.max_abs
    }

    pub fn is_bent(&self) -> bool {
        self.is_plateaued() && self.support == 1u64 << self.n
    }

    /// Some weight-one point attains `max corr²`.
    pub fn weight1_attains_max(&self) -> bool {
        self.max_abs > 0 && self.max_abs_weight1 == self.max_abs
    }

    pub fn influence(&self) -> ExactValue {
        ExactValue::ratio(
            BigInt::from(self.inf_num),
            BigInt::from(1u128) << (2 * self.n),
        )
    }

    pub fn min_entropy(&self) -> ExactValue {
        log2_ratio(2 * self.n as u32, self.max_abs)
    }

    pub fn entropy(&self) -> ExactValue {
        if self.is_plateaued() {
            // p_α = c²/4^n on 4^n/c² points, all equal: H = log2(4^n / c²).
            log2_ratio(2 * self.n as u32, self.max_abs)
        } else {
            ExactValue::float_only(self.entropy.value())
        }
    }

    pub fn mei_ratio(&self) -> Option<ExactValue> {
        self.min_entropy().div(&self.influence())
    }

    pub fn ei_ratio(&self) -> Option<ExactValue> {
        self.entropy().div(&self.influence())
    }
}

/// `log2(2^bits / a²)`, exact when `a` is a power of two.
pub(crate) fn log2_ratio(bits: u32, a: u64) -> ExactValue {
    if a.is_power_of_two() {
        ExactValue::integer(bits as i64 - 2 * a.trailing_zeros() as i64)
    } else {
        ExactValue::float_only(bits as f64 - 2.0 * (a as f64).log2())
    }
}

/// Everything known about one function from its spectrum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n: usize,
    pub weight: u64,
    pub balanced: bool,
    /// `-1` for unbalanced functions.
    pub resilience_order: i32,
    pub plateaued: bool,
    /// Common nonzero `|corr|` when plateaued.
    pub plateau_level: Option<u64>,
    pub bent: bool,
    /// `max corr²`, kept so min-entropy ties are decided exactly.
    pub max_corr_sq: u64,
    pub entropy: ExactValue,
    pub min_entropy: ExactValue,
    pub influence: ExactValue,
    /// `H / Inf`; absent for constant functions.
    pub ei_ratio: Option<ExactValue>,
    /// `H∞ / Inf`; absent for constant functions.
    pub mei_ratio: Option<ExactValue>,
}

impl MetricsReport {
    pub fn from_summary(s: &SpectralSummary) -> Self {
        let plateaued = s.is_plateaued();
        Self {
            n: s.n,
            weight: s.weight(),
            balanced: s.is_balanced(),
            resilience_order: s.resilience_order(),
            plateaued,
            plateau_level: plateaued.then_some(s.max_abs),
            bent: s.is_bent(),
            max_corr_sq: s.max_square(),
            entropy: s.entropy(),
            min_entropy: s.min_entropy(),
            influence: s.influence(),
            ei_ratio: s.ei_ratio(),
            mei_ratio: s.mei_ratio(),
        }
    }
}

/// Fourier entropy `H(f)`.
pub fn entropy(s: &Spectrum) -> Result<ExactValue> {
    s.check_parseval()?;
    Ok(SpectralSummary::from_spectrum(s).entropy())
}

/// Min-entropy `H∞(f)`.
pub fn min_entropy(s: &Spectrum) -> ExactValue {
    log2_ratio(2 * s.n() as u32, s.max_square().isqrt())
}

/// Total influence through the spectrum, `Σ wt(α) W_f(α)²`.
pub fn influence_spectral(s: &Spectrum) -> ExactValue {
    let num: u128 = s
        .correlations()
        .iter()
        .enumerate()
        .map(|(a, &c)| (a as u64).count_ones() as u128 * (c.unsigned_abs() as u128).pow(2))
        .sum();
    ExactValue::ratio(BigInt::from(num), BigInt::from(1u128) << (2 * s.n()))
}

const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Number of unordered pairs `{x, x ⊕ e_i}` on which `f` differs, per
/// variable `i` (0-based).
pub fn sensitive_edges(f: &TruthTable) -> Vec<u64> {
    let words = f.words();
    (0..f.n())
        .map(|i| {
            if i < 6 {
                let shift = 1u32 << i;
                words
                    .iter()
                    .map(|&w| u64::from(((w ^ (w >> shift)) & LOW[i]).count_ones()))
                    .sum()
            } else {
                let stride = 1usize << (i - 6);
                (0..words.len())
                    .filter(|j| j & stride == 0)
                    .map(|j| u64::from((words[j] ^ words[j | stride]).count_ones()))
                    .sum()
            }
        })
        .collect()
}

/// Total influence by direct counting: `Σ_i Pr_x[f(x) ≠ f(x ⊕ e_i)]`.
pub fn influence_probe(f: &TruthTable) -> Result<ExactValue> {
    DenseCap::default().check(f.n())?;
    let flips: u64 = sensitive_edges(f).iter().sum::<u64>() * 2;
    Ok(ExactValue::ratio(flips, 1u64 << f.n()))
}

/// Full classification of a spectrum.
pub fn classify(s: &Spectrum) -> Result<MetricsReport> {
    s.check_parseval()?;
    Ok(MetricsReport::from_summary(
        &SpectralSummary::from_spectrum(s),
    ))
}

/// Transform and classify.
pub fn analyze(f: &TruthTable) -> Result<MetricsReport> {
    classify(&walsh_transform(f)?)
}

/// `Σ_{wt(α) ≢ b (mod 2)} W(α)²`, the spectral mass on the "wrong" parity.
pub fn parity_mass(s: &Spectrum, b: bool) -> ExactValue {
    let target = u32::from(!b);
    let num: u128 = s
        .correlations()
        .iter()
        .enumerate()
        .filter(|(a, _)| (*a as u64).count_ones() & 1 == target)
        .map(|(_, &c)| (c.unsigned_abs() as u128).pow(2))
        .sum();
    ExactValue::ratio(BigInt::from(num), BigInt::from(1u128) << (2 * s.n()))
}
