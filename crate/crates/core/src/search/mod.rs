//! Exhaustive and class-restricted sweeps for the largest entropy/influence
//! and min-entropy/influence ratios.
//!
//! Three classes are supported, each with its own index space:
//!
//! * general functions of `n ≤ 5` variables, indexed by the truth table read
//!   as an integer (bit `x` is `f(x)`);
//! * symmetric functions, indexed by the value vector (bit `j` is the output
//!   on inputs of weight `j`);
//! * rotation-symmetric functions of `n ≤ 7` variables, indexed by one bit
//!   per necklace.
//!
//! The index space is cut into `2^prefix_bits` chunks that are scanned in
//! parallel and merged in chunk order, so a job's outcome does not depend on
//! the thread count, and optionally recorded in a [checkpoint] file.

pub mod checkpoint;
mod general;
mod rotsym;
mod symmetric;
mod tally;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::metrics::SpectralSummary;
use crate::truth_table::TruthTable;

pub use rotsym::{Necklaces, RotSymFunction};
pub use symmetric::{LayerTable, SymmetricFunction};
pub use tally::{ChunkTally, Tally};

use checkpoint::Checkpoint;
use general::{GeneralEngine, N_MAX_GENERAL};

pub const N_MAX_SYMMETRIC_DEFAULT: usize = 12;
pub const N_MAX_SYMMETRIC_EXTENDED: usize = 16;
pub const N_MAX_ROTSYM: usize = 7;
pub const DEFAULT_WITNESS_CAP: usize = 64;
pub const RESULT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionClass {
    General,
    Symmetric,
    RotationSymmetric,
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionClass::General => "general",
            FunctionClass::Symmetric => "symmetric",
            FunctionClass::RotationSymmetric => "rotation-symmetric",
        })
    }
}

/// The ratio being maximized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// `H∞(f) / Inf(f)`.
    Mei,
    /// `H(f) / Inf(f)`.
    Ei,
    /// `H∞(f_m) / Inf(f_m)` of the order-`m` recursion started at `f`, i.e.
    /// `(m+1)·H∞(f) / Inf(f)^{m+1}`. Only meaningful together with the
    /// balanced and weight-one filters.
    OtMei { m: u32 },
}

impl Metric {
    pub fn evaluate(&self, s: &SpectralSummary) -> Option<ExactValue> {
        match self {
            Metric::Mei => s.mei_ratio(),
            Metric::Ei => s.ei_ratio(),
            Metric::OtMei { m } => s
                .min_entropy()
                .mul(&ExactValue::integer(*m as i64 + 1))
                .div(&s.influence().pow(m + 1)),
        }
    }

    /// Whether the value is a function of `(max |corr|, Inf)` only.
    pub(crate) fn depends_on_max_and_influence(&self) -> bool {
        !matches!(self, Metric::Ei)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Mei => f.write_str("mei"),
            Metric::Ei => f.write_str("ei"),
            Metric::OtMei { m } => write!(f, "ot-mei:{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    Balanced,
    Plateaued,
    /// Resilient of order at least `t`.
    Resilient(u32),
    /// Some weight-one point attains `max corr²`.
    Weight1MaxWalsh,
}

impl Filter {
    pub fn accepts(&self, s: &SpectralSummary) -> bool {
        match self {
            Filter::Balanced => s.is_balanced(),
            Filter::Plateaued => s.is_plateaued(),
            Filter::Resilient(t) => s.resilience_order() >= *t as i32,
            Filter::Weight1MaxWalsh => s.weight1_attains_max(),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::Balanced => f.write_str("balanced"),
            Filter::Plateaued => f.write_str("plateaued"),
            Filter::Resilient(t) => write!(f, "resilient:{t}"),
            Filter::Weight1MaxWalsh => f.write_str("weight1-max-walsh"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Maximize,
    /// Also count the functions whose ratio equals the threshold.
    CountAchieving(ExactValue),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchJob {
    pub class: FunctionClass,
    pub n: usize,
    pub metric: Metric,
    pub filters: BTreeSet<Filter>,
    pub target: Target,
    /// The index space splits into `2^prefix_bits` chunks.
    pub prefix_bits: u32,
    pub witness_cap: usize,
    /// Lifts the symmetric bound from 12 to 16 variables.
    pub allow_extended: bool,
    #[serde(skip)]
    pub threads: usize,
    #[serde(skip)]
    pub checkpoint: Option<PathBuf>,
}

impl SearchJob {
    pub fn new(class: FunctionClass, n: usize, metric: Metric) -> Self {
        let mut job = Self {
            class,
            n,
            metric,
            filters: BTreeSet::new(),
            target: Target::Maximize,
            prefix_bits: 0,
            witness_cap: DEFAULT_WITNESS_CAP,
            allow_extended: false,
            threads: 0,
            checkpoint: None,
        };
        job.prefix_bits = job.default_prefix_bits();
        job
    }

    pub fn filter(mut self, f: Filter) -> Self {
        self.filters.insert(f);
        self
    }

    pub fn count_achieving(mut self, threshold: ExactValue) -> Self {
        self.target = Target::CountAchieving(threshold);
        self
    }

    pub fn prefix_bits(mut self, bits: u32) -> Self {
        self.prefix_bits = bits;
        self
    }

    pub fn witness_cap(mut self, cap: usize) -> Self {
        self.witness_cap = cap;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    pub fn allow_extended(mut self, yes: bool) -> Self {
        self.allow_extended = yes;
        if self.prefix_bits > self.index_bits() {
            self.prefix_bits = self.default_prefix_bits();
        }
        self
    }

    /// Bits in a class index; the class has `2^index_bits` members.
    pub fn index_bits(&self) -> u32 {
        match self.class {
            FunctionClass::General => 1u32.checked_shl(self.n as u32).unwrap_or(u32::MAX),
            FunctionClass::Symmetric => self.n as u32 + 1,
            FunctionClass::RotationSymmetric if self.n <= N_MAX_ROTSYM => {
                Necklaces::new(self.n.max(1)).len() as u32
            }
            FunctionClass::RotationSymmetric => u32::MAX,
        }
    }

    /// Chunks of about a million functions, at least 16 of them when the
    /// class is big enough.
    fn default_prefix_bits(&self) -> u32 {
        let k = self.index_bits().min(64);
        k.saturating_sub(20).max(k.min(4))
    }

    fn bound(&self) -> usize {
        match self.class {
            FunctionClass::General => N_MAX_GENERAL,
            FunctionClass::Symmetric if self.allow_extended => N_MAX_SYMMETRIC_EXTENDED,
            FunctionClass::Symmetric => N_MAX_SYMMETRIC_DEFAULT,
            FunctionClass::RotationSymmetric => N_MAX_ROTSYM,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let max = self.bound();
        if self.n == 0 || self.n > max {
            return Err(Error::SearchBound {
                class: match self.class {
                    FunctionClass::General => "general",
                    FunctionClass::Symmetric => "symmetric",
                    FunctionClass::RotationSymmetric => "rotation-symmetric",
                },
                n: self.n,
                max,
            });
        }
        if self.prefix_bits > self.index_bits() || self.prefix_bits > 40 {
            return Err(Error::InvalidJob(format!(
                "prefix width {} exceeds the {}-bit index space",
                self.prefix_bits,
                self.index_bits()
            )));
        }
        for f in &self.filters {
            if let Filter::Resilient(t) = f {
                if *t as usize >= self.n {
                    return Err(Error::InvalidJob(format!(
                        "resilience order {t} needs more than {} variables",
                        self.n
                    )));
                }
            }
        }
        if matches!(self.metric, Metric::OtMei { .. })
            && !(self.filters.contains(&Filter::Balanced)
                && self.filters.contains(&Filter::Weight1MaxWalsh))
        {
            return Err(Error::InvalidJob(
                "ot-mei requires the balanced and weight1-max-walsh filters".into(),
            ));
        }
        Ok(())
    }

    /// Identifies the job's outcome-relevant fields: everything except the
    /// thread count and checkpoint location.
    pub fn fingerprint(&self) -> u64 {
        let filters: Vec<String> = self.filters.iter().map(|f| f.to_string()).collect();
        let target = match &self.target {
            Target::Maximize => "maximize".to_string(),
            Target::CountAchieving(t) => format!("count:{}", t.to_repr()),
        };
        let canonical = format!(
            "{}|{}|{}|{}|{}|{}|{}|{}",
            self.class,
            self.n,
            self.metric,
            filters.join(","),
            target,
            self.prefix_bits,
            self.witness_cap,
            self.allow_extended
        );
        checkpoint::fnv1a(canonical.as_bytes())
    }

    fn chunk_count(&self) -> u64 {
        1u64 << self.prefix_bits
    }

    fn chunk_low_bits(&self) -> u32 {
        self.index_bits() - self.prefix_bits
    }

    /// Truth table of the class member with index `index`.
    pub fn member(&self, index: u64) -> Result<TruthTable> {
        match self.class {
            FunctionClass::General => {
                TruthTable::from_words(self.n, vec![index & low_mask(1 << self.n)])
            }
            FunctionClass::Symmetric => {
                SymmetricFunction::new(self.n, index as u32).to_truth_table()
            }
            FunctionClass::RotationSymmetric => RotSymFunction {
                n: self.n,
                necklace_values: index,
            }
            .to_truth_table(&Necklaces::new(self.n)),
        }
    }
}

fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Functions attaining one value, as reported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Achievers {
    pub value: ExactValue,
    pub count: u64,
    pub balanced: u64,
    /// Truth tables in hex, smallest class indices first.
    pub witnesses: Vec<String>,
    pub witness_indices: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub schema_version: u32,
    pub job: SearchJob,
    /// Absent when no scanned function passed the filters with a defined ratio.
    pub best_ratio: Option<ExactValue>,
    pub best: Option<Achievers>,
    /// Present when the target is a count.
    pub count_achieving: Option<u64>,
    pub at_threshold: Option<Achievers>,
    pub functions_scanned: u64,
    pub functions_passed: u64,
    /// Passing functions with zero influence.
    pub undefined_ratio: u64,
    pub chunks: u64,
    pub elapsed_secs: f64,
    /// Chunks restored from a checkpoint.
    pub resumed_from: Option<u64>,
}

impl SearchResult {
    /// Equality ignoring wall-clock time and resume bookkeeping.
    pub fn same_outcome(&self, other: &SearchResult) -> bool {
        let strip = |r: &SearchResult| SearchResult {
            job: SearchJob {
                threads: 0,
                checkpoint: None,
                ..r.job.clone()
            },
            elapsed_secs: 0.0,
            resumed_from: None,
            ..r.clone()
        };
        strip(self) == strip(other)
    }

    pub fn witnesses(&self) -> &[String] {
        self.best.as_ref().map_or(&[], |b| b.witnesses.as_slice())
    }

    pub fn witness_total(&self) -> u64 {
        self.best.as_ref().map_or(0, |b| b.count)
    }
}

/// Summarizes and offers one class member to the accumulator.
pub(crate) fn offer(job: &SearchJob, acc: &mut ChunkTally, s: &SpectralSummary, index: u64) {
    if !job.filters.iter().all(|f| f.accepts(s)) {
        return;
    }
    acc.passed += 1;
    let Some(v) = job.metric.evaluate(s) else {
        acc.undefined += 1;
        return;
    };
    let balanced = s.is_balanced();
    acc.offer_best(&v, index, balanced, job.witness_cap);
    if let Target::CountAchieving(t) = &job.target {
        if v.approx_eq(t) {
            acc.offer_threshold(t, index, balanced, job.witness_cap);
        }
    }
}

enum Engine {
    General(GeneralEngine),
    Symmetric(LayerTable),
    RotSym(Necklaces),
}

impl Engine {
    fn new(job: &SearchJob) -> Self {
        match job.class {
            FunctionClass::General => Engine::General(GeneralEngine::new(job)),
            FunctionClass::Symmetric => Engine::Symmetric(LayerTable::new(job.n)),
            FunctionClass::RotationSymmetric => Engine::RotSym(Necklaces::new(job.n)),
        }
    }

    fn scan(&self, job: &SearchJob, chunk: u64) -> ChunkTally {
        let low = job.chunk_low_bits();
        let base = chunk << low;
        match self {
            Engine::General(e) => e.scan(job, base, low),
            Engine::Symmetric(t) => {
                let mut acc = ChunkTally::default();
                for i in base..base + (1u64 << low) {
                    acc.scanned += 1;
                    offer(
                        job,
                        &mut acc,
                        &t.summary(SymmetricFunction::new(job.n, i as u32)),
                        i,
                    );
                }
                acc
            }
            Engine::RotSym(nk) => {
                let mut acc = ChunkTally::default();
                let mut scratch = Vec::with_capacity(1 << job.n);
                for i in base..base + (1u64 << low) {
                    acc.scanned += 1;
                    offer(job, &mut acc, &nk.summary(i, &mut scratch), i);
                }
                acc
            }
        }
    }
}

/// Called after each chunk with `(chunks done, chunks total)`.
pub type Progress<'a> = &'a (dyn Fn(u64, u64) + Sync);

pub fn sweep(job: &SearchJob) -> Result<SearchResult> {
    sweep_with_progress(job, &|_, _| {})
}

pub fn sweep_with_progress(job: &SearchJob, progress: Progress) -> Result<SearchResult> {
    job.validate()?;
    let started = Instant::now();
    let chunks = job.chunk_count();
    let (ckpt, mut done) = match &job.checkpoint {
        Some(path) => {
            let (c, d) = Checkpoint::open(path, job.fingerprint(), chunks)?;
            (Some(Mutex::new(c)), d)
        }
        None => (None, BTreeMap::new()),
    };
    let restored = done.len() as u64;
    let todo: Vec<u64> = (0..chunks).filter(|c| !done.contains_key(c)).collect();
    let engine = Engine::new(job);
    let finished = AtomicU64::new(restored);
    let run = || -> Result<Vec<(u64, ChunkTally)>> {
        todo.par_iter()
            .map(|&c| {
                let t = engine.scan(job, c);
                if let Some(ck) = &ckpt {
                    ck.lock().expect("checkpoint lock").append(c, &t)?;
                }
                let k = finished.fetch_add(1, AtomicOrdering::Relaxed) + 1;
                progress(k, chunks);
                Ok((c, t))
            })
            .collect()
    };
    let fresh = if job.threads == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(job.threads)
            .build()
            .map_err(|e| Error::InvalidJob(e.to_string()))?
            .install(run)?
    };
    done.extend(fresh);
    let mut total = ChunkTally::default();
    for (_, t) in done {
        total.merge(t, job.witness_cap);
    }
    let achievers = |t: Tally| -> Result<Achievers> {
        let witnesses = t
            .witnesses
            .iter()
            .map(|&i| job.member(i).map(|tt| tt.to_hex()))
            .collect::<Result<_>>()?;
        Ok(Achievers {
            value: t.value,
            count: t.count,
            balanced: t.balanced,
            witnesses,
            witness_indices: t.witnesses,
        })
    };
    let best = total.best.map(achievers).transpose()?;
    let at_threshold = total.at_threshold.map(achievers).transpose()?;
    Ok(SearchResult {
        schema_version: RESULT_SCHEMA_VERSION,
        job: job.clone(),
        best_ratio: best.as_ref().map(|b| b.value.clone()),
        count_achieving: match job.target {
            Target::CountAchieving(_) => Some(at_threshold.as_ref().map_or(0, |a| a.count)),
            Target::Maximize => None,
        },
        best,
        at_threshold,
        functions_scanned: total.scanned,
        functions_passed: total.passed,
        undefined_ratio: total.undefined,
        chunks,
        elapsed_secs: started.elapsed().as_secs_f64(),
        resumed_from: (restored > 0).then_some(restored),
    })
}

pub fn sweep_symmetric(n: usize, metric: Metric) -> Result<SearchResult> {
    let job = SearchJob::new(FunctionClass::Symmetric, n, metric)
        .allow_extended(n > N_MAX_SYMMETRIC_DEFAULT);
    sweep(&job)
}

pub fn sweep_rotsym(n: usize, metric: Metric) -> Result<SearchResult> {
    sweep(&SearchJob::new(FunctionClass::RotationSymmetric, n, metric))
}

/// Outcome of the symmetric-function checks for one `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub ei_max: ExactValue,
    /// `H(A_n) / Inf(A_n)`.
    pub and_ratio: ExactValue,
    /// The maximizers are exactly `A_n` and its complement images.
    pub and_maximizes: bool,
    pub and_below_four: bool,
    pub mei_max: ExactValue,
    /// Symmetric bent functions (value vectors).
    pub bent: Vec<u64>,
    /// Even `n`: the maximum is 2 and the maximizers are the bent functions.
    /// Odd `n`: the maximum is below 2.
    pub mei_condition: bool,
    pub pass: bool,
    /// A value vector violating the check, in hex truth-table form.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Symmetric-function checks for every `n` in `range`: `A_n` maximizes the
/// entropy/influence ratio up to complementation and its ratio is below 4;
/// the min-entropy/influence ratio is at most 2 for even `n` with equality
/// exactly on bent functions, and below 2 for odd `n`.
pub fn check_conjecture(range: RangeInclusive<usize>) -> Result<ConjectureReport> {
    let mut rows = Vec::new();
    for n in range {
        let orbit: Vec<u64> = SymmetricFunction::and_orbit(n)
            .iter()
            .map(|f| f.value_vector as u64)
            .collect();
        let cap = 1usize << (n + 1);
        let job = |metric| {
            SearchJob::new(FunctionClass::Symmetric, n, metric)
                .allow_extended(n > N_MAX_SYMMETRIC_DEFAULT)
                .witness_cap(cap)
        };
        let hex = |v: u64| {
            SymmetricFunction::new(n, v as u32)
                .to_truth_table()
                .map(|t| t.to_hex())
        };

        let ei = sweep(&job(Metric::Ei))?;
        let ei_best = ei.best.expect("nonconstant symmetric functions exist");
        let table = LayerTable::new(n);
        let and_ratio = table
            .summary(SymmetricFunction::and(n))
            .ei_ratio()
            .expect("A_n is not constant");
        let and_maximizes = ei_best.witness_indices == orbit && ei_best.count == orbit.len() as u64;
        let and_below_four = and_ratio.to_f64() < 4.0;
        let mut counterexample = ei_best
            .witness_indices
            .iter()
            .find(|i| !orbit.contains(i))
            .map(|&i| hex(i))
            .transpose()?;

        let mei = sweep(&job(Metric::Mei))?;
        let mei_best = mei.best.expect("nonconstant symmetric functions exist");
        let bent: Vec<u64> = (0..1u64 << (n + 1))
            .filter(|&v| table.summary(SymmetricFunction::new(n, v as u32)).is_bent())
            .collect();
        let two = ExactValue::integer(2);
        let mei_condition = if n % 2 == 0 {
            mei_best.value == two && mei_best.witness_indices == bent
        } else {
            mei_best
                .value
                .compare(&two, crate::exact::RATIO_TOLERANCE)
                .is_lt()
        };
        if !mei_condition && counterexample.is_none() {
            counterexample = mei_best
                .witness_indices
                .iter()
                .find(|i| !bent.contains(i))
                .map(|&i| hex(i))
                .transpose()?;
        }
        rows.push(ConjectureRow {
            n,
            ei_max: ei_best.value,
            and_ratio,
            and_maximizes,
            and_below_four,
            mei_max: mei_best.value,
            bent,
            mei_condition,
            pass: and_maximizes && and_below_four && mei_condition,
            counterexample,
        });
    }
    Ok(ConjectureReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::analyze;

    /// Independent scan of every `n`-variable table with the dense path.
    fn naive_max(n: usize, metric: Metric) -> (ExactValue, Vec<u64>) {
        let mut best: Option<ExactValue> = None;
        let mut wit = Vec::new();
        for t in 0..1u64 << (1 << n) {
            let tt = TruthTable::from_u64(n, t).unwrap();
            let r = analyze(&tt).unwrap();
            let v = match metric {
                Metric::Mei => r.mei_ratio,
                Metric::Ei => r.ei_ratio,
                _ => unreachable!(),
            };
            let Some(v) = v else { continue };
            match best.as_ref().map(|b| v.compare(b, 1e-9)) {
                None | Some(std::cmp::Ordering::Greater) => {
                    best = Some(v);
                    wit = vec![t];
                }
                Some(std::cmp::Ordering::Equal) => wit.push(t),
                _ => {}
            }
        }
        (best.unwrap(), wit)
    }

    #[test]
    fn general_matches_naive_scan() {
        for n in 1..=3 {
            for metric in [Metric::Mei, Metric::Ei] {
                let (value, wit) = naive_max(n, metric);
                let r = sweep(&SearchJob::new(FunctionClass::General, n, metric).witness_cap(1000))
                    .unwrap();
                assert!(
                    r.best_ratio.as_ref().unwrap().approx_eq(&value),
                    "n={n} {metric}"
                );
                assert_eq!(
                    r.best.as_ref().unwrap().witness_indices,
                    wit,
                    "n={n} {metric}"
                );
                assert_eq!(r.functions_scanned, 1 << (1 << n));
            }
        }
    }

    #[test]
    fn chunking_and_threads_do_not_change_outcome() {
        let base = SearchJob::new(FunctionClass::General, 4, Metric::Mei)
            .filter(Filter::Balanced)
            .witness_cap(7);
        let a = sweep(&base.clone().prefix_bits(0)).unwrap();
        let b = sweep(&base.clone().prefix_bits(5).threads(2)).unwrap();
        let c = sweep(&base.prefix_bits(16).threads(1)).unwrap();
        assert!(a.best == b.best && b.best == c.best);
        assert_eq!(a.functions_passed, c.functions_passed);
    }

    #[test]
    fn ranked_and_generic_paths_agree() {
        // Mei goes through the rank table, Ei through full summaries; the
        // functions passing each filter must agree.
        for f in [
            Filter::Balanced,
            Filter::Plateaued,
            Filter::Resilient(1),
            Filter::Weight1MaxWalsh,
        ] {
            let mei =
                sweep(&SearchJob::new(FunctionClass::General, 4, Metric::Mei).filter(f)).unwrap();
            let ei =
                sweep(&SearchJob::new(FunctionClass::General, 4, Metric::Ei).filter(f)).unwrap();
            assert_eq!(mei.functions_passed, ei.functions_passed, "{f}");
            assert_eq!(mei.undefined_ratio, ei.undefined_ratio, "{f}");
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            sweep(&SearchJob::new(FunctionClass::General, 6, Metric::Mei)),
            Err(Error::SearchBound { .. })
        ));
        assert!(matches!(
            sweep(&SearchJob::new(FunctionClass::Symmetric, 13, Metric::Mei)),
            Err(Error::SearchBound { .. })
        ));
        assert!(matches!(
            sweep(&SearchJob::new(
                FunctionClass::General,
                3,
                Metric::OtMei { m: 1 }
            )),
            Err(Error::InvalidJob(_))
        ));
    }

    #[test]
    fn rotsym_n1_matches_general() {
        for metric in [Metric::Mei, Metric::Ei] {
            let a = sweep_rotsym(1, metric).unwrap();
            let b = sweep(&SearchJob::new(FunctionClass::General, 1, metric)).unwrap();
            assert_eq!(a.best_ratio, b.best_ratio);
            assert_eq!(a.witnesses(), b.witnesses());
        }
    }

    #[test]
    fn n2_and_is_bent_with_ratio_two() {
        let r = sweep_symmetric(2, Metric::Mei).unwrap();
        assert_eq!(r.best_ratio, Some(ExactValue::integer(2)));
        assert!(r.best.unwrap().witness_indices.contains(&0b100));
    }

    #[test]
    fn conjecture_small_n() {
        let rep = check_conjecture(1..=6).unwrap();
        assert!(rep.all_pass(), "{rep:#?}");
    }

    #[test]
    fn witnesses_reverify() {
        let job = SearchJob::new(FunctionClass::General, 4, Metric::Mei);
        let r = sweep(&job).unwrap();
        for h in r.witnesses() {
            let m = analyze(&TruthTable::from_hex(4, h).unwrap()).unwrap();
            assert_eq!(m.mei_ratio.as_ref(), r.best_ratio.as_ref());
        }
    }

    #[test]
    fn checkpoint_resume_gives_same_outcome() {
        let path = std::env::temp_dir().join(format!("bfei-sweep-{}.ckpt", std::process::id()));
        let _ = std::fs::remove_file(&path);
        let job = SearchJob::new(FunctionClass::RotationSymmetric, 5, Metric::Ei).prefix_bits(3);
        let plain = sweep(&job).unwrap();
        let first = sweep(&job.clone().checkpoint(&path)).unwrap();
        assert_eq!(first.resumed_from, None);
        let again = sweep(&job.clone().checkpoint(&path)).unwrap();
        assert_eq!(again.resumed_from, Some(8));
        assert!(plain.same_outcome(&first) && plain.same_outcome(&again));
        let _ = std::fs::remove_file(&path);
    }
}
