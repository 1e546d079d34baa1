//! Reproduction suite: every published value the toolkit can recompute,
//! checked and collected in a [`VerificationLedger`].

use std::sync::OnceLock;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::anf::{from_anf, AnfExpression};
use crate::construct::{
    disjoint_compose, disjoint_min_entropy, epsilon_masses, gb_construction_report,
    ot_recursion_metrics, palindromic_extend, AnalyticReport, CompositionSpec,
};
use crate::error::Result;
use crate::exact::ExactValue;
use crate::metrics::{analyze, SpectralSummary};
use crate::search::{
    self, check_conjecture, sweep, Filter, FunctionClass, Metric, SearchJob, SearchResult,
};
use crate::truth_table::TruthTable;
use crate::walsh::walsh_transform;

/// A 5-variable function attaining the largest min-entropy/influence ratio
/// among all functions of 5 variables.
pub const H_ANF: &str = "X4X3 + X5X2 + X5X4X1 + X5X4X2 + X5X4X3";

/// The 5-variable balanced function used as the seed of both constructions.
pub const G_ANF: &str =
    "X3X2X1 + X4 + X4X1 + X4X2 + X4X2X1 + X4X3X1 + X4X3X2 + X5 + X5X1 + X5X2X1 \
                         + X5X3 + X5X3X1 + X5X3X2 + X5X4 + X5X4X1 + X5X4X2 + X5X4X3";

pub fn example_h() -> TruthTable {
    from_anf(&AnfExpression::parse(H_ANF, 5).expect("valid expression"))
}

pub fn example_g() -> TruthTable {
    from_anf(&AnfExpression::parse(G_ANF, 5).expect("valid expression"))
}

/// How an expected value is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Stated in the published results.
    Published,
    /// Immediate from the definitions.
    Trivial,
    /// Computed by an independent route.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Long-run entry not requested.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub claim_id: String,
    /// Where the expected value comes from.
    pub source: String,
    pub basis: Basis,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub runtime_secs: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationLedger {
    pub entries: Vec<LedgerEntry>,
}

impl VerificationLedger {
    pub fn failed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .count()
    }

    pub fn passed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Pass)
            .count()
    }

    /// `1` iff some entry failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed() > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Everything except the 5-variable general sweeps.
    Fast,
    Full,
    /// The named claims, long-run or not.
    Only(Vec<String>),
}

impl std::str::FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fast" => Ok(Scope::Fast),
            "full" => Ok(Scope::Full),
            other => Err(format!("unknown scope {other:?} (expected fast or full)")),
        }
    }
}

/// Sample sizes for the randomized claims.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub composition_instances: usize,
    pub palindrome_samples: usize,
    pub palindrome_max_n: usize,
    pub conjecture_max_n: usize,
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            composition_instances: 100,
            palindrome_samples: 100,
            palindrome_max_n: 10,
            conjecture_max_n: 12,
            threads: 0,
        }
    }
}

/// Result of one check.
pub struct Outcome {
    pub ok: bool,
    pub computed: String,
}

impl Outcome {
    fn equal(computed: &ExactValue, expected: &ExactValue) -> Self {
        Self {
            ok: computed == expected,
            computed: computed.to_repr(),
        }
    }

    fn within(computed: f64, expected: f64, tol: f64) -> Self {
        Self {
            ok: (computed - expected).abs() <= tol,
            computed: format!("{computed:.9}"),
        }
    }

    fn flag(ok: bool, computed: impl Into<String>) -> Self {
        Self {
            ok,
            computed: computed.into(),
        }
    }
}

/// Shared, lazily computed inputs of the claims.
pub struct Context {
    pub config: SuiteConfig,
    general_mei: OnceLock<Result<SearchResult, String>>,
    family: OnceLock<Result<SearchResult, String>>,
}

impl Context {
    pub fn new(config: SuiteConfig) -> Self {
        Self {
            config,
            general_mei: OnceLock::new(),
            family: OnceLock::new(),
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// `max H∞/Inf` over all 5-variable functions.
    pub fn general_mei(&self) -> Result<&SearchResult, String> {
        self.general_mei
            .get_or_init(|| {
                sweep(
                    &SearchJob::new(FunctionClass::General, 5, Metric::Mei)
                        .witness_cap(4096)
                        .threads(self.config.threads),
                )
                .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Balanced 5-variable functions with a weight-one maximizer whose
    /// order-1 recursion reaches 512/225.
    pub fn family(&self) -> Result<&SearchResult, String> {
        self.family
            .get_or_init(|| {
                sweep(
                    &SearchJob::new(FunctionClass::General, 5, Metric::OtMei { m: 1 })
                        .filter(Filter::Balanced)
                        .filter(Filter::Weight1MaxWalsh)
                        .count_achieving(ExactValue::ratio(512, 225))
                        .witness_cap(4096)
                        .threads(self.config.threads),
                )
                .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

pub struct Claim {
    pub id: &'static str,
    pub source: &'static str,
    pub basis: Basis,
    pub expected: &'static str,
    pub long_run: bool,
    pub check: fn(&Context) -> Result<Outcome, String>,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_table(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen()).expect("arity in range")
}

pub fn random_balanced(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
    let size = 1usize << n;
    let mut t = TruthTable::zero(n).expect("arity in range");
    for x in sample(rng, size, size / 2) {
        t.set(x as u64, true);
    }
    t
}

/// Random balanced `(outer, inner)` with arities drawn so that
/// `outer_max ≥ k`, `inner_max ≥ l` and `k·l ≤ total_max`.
pub fn random_composition(
    rng: &mut ChaCha8Rng,
    outer_max: usize,
    inner_max: usize,
    total_max: usize,
) -> CompositionSpec {
    loop {
        let k = rng.gen_range(1..=outer_max);
        let l = rng.gen_range(1..=inner_max);
        if k * l <= total_max {
            return CompositionSpec::new(random_balanced(rng, k), random_balanced(rng, l));
        }
    }
}

fn exact_or_close(a: &ExactValue, b: &ExactValue) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        a.approx_eq(b)
    }
}

/// Analytic composition spectrum and min-entropy against the dense
/// transform of the materialized composition. Returns the first mismatch.
pub fn composition_oracle(spec: &CompositionSpec) -> crate::error::Result<Option<String>> {
    let composed = disjoint_compose(spec)?;
    let dense = walsh_transform(&composed)?;
    let sp = spec.spectra()?;
    let n = spec.arity();
    let den = num_bigint::BigInt::from(1) << n;
    for (u, &c) in dense.correlations().iter().enumerate() {
        let analytic = sp.walsh_at(u as u64)?;
        if analytic != num_rational::BigRational::new(c.into(), den.clone()) {
            return Ok(Some(format!("spectrum differs at u = {u}")));
        }
    }
    let analytic = disjoint_min_entropy(spec)?.value;
    let brute = SpectralSummary::from_spectrum(&dense).min_entropy();
    if !exact_or_close(&analytic, &brute) {
        return Ok(Some(format!(
            "min-entropy {} vs {}",
            analytic.to_repr(),
            brute.to_repr()
        )));
    }
    Ok(None)
}

/// `Inf(f◇g) = Inf(f)·Inf(g)` exactly and `H(f◇g) = H(f) + H(g)·Inf(f)`
/// within `tol`.
pub fn composition_identities(
    spec: &CompositionSpec,
    tol: f64,
) -> crate::error::Result<Option<String>> {
    let composed = analyze(&disjoint_compose(spec)?)?;
    let f = analyze(spec.outer())?;
    let g = analyze(spec.inner())?;
    if composed.influence != f.influence.mul(&g.influence) {
        return Ok(Some(format!(
            "influence {} vs {}·{}",
            composed.influence.to_repr(),
            f.influence.to_repr(),
            g.influence.to_repr()
        )));
    }
    let predicted = f.entropy.add(&g.entropy.mul(&f.influence));
    if (composed.entropy.to_f64() - predicted.to_f64()).abs() > tol {
        return Ok(Some(format!(
            "entropy {} vs {}",
            composed.entropy.to_repr(),
            predicted.to_repr()
        )));
    }
    Ok(None)
}

/// Palindromic-extension identities for one `g`: the reversal sign rule,
/// the banded spectrum of `g_b`, `H∞(g_b) = H∞(g)`, `Inf(g_b) = Inf(g) + ε_b`
/// and `ε_0 + ε_1 = 1`.
pub fn palindromic_identities(g: &TruthTable) -> crate::error::Result<Option<String>> {
    let n = g.n();
    let sg = walsh_transform(g)?;
    let sr = walsh_transform(&g.reverse())?;
    for (alpha, (&a, &r)) in sg.correlations().iter().zip(sr.correlations()).enumerate() {
        let expect = if alpha.count_ones() % 2 == 0 { a } else { -a };
        if r != expect {
            return Ok(Some(format!("reversal sign rule fails at {alpha}")));
        }
    }
    let (e0, e1) = epsilon_masses(g)?;
    if e0.add(&e1) != ExactValue::integer(1) {
        return Ok(Some(format!(
            "epsilon masses {} + {}",
            e0.to_repr(),
            e1.to_repr()
        )));
    }
    let base = SpectralSummary::from_spectrum(&sg);
    for b in [false, true] {
        let (gb, spec) = palindromic_extend(g, b)?;
        let s = walsh_transform(&gb)?;
        for (beta, &c) in s.correlations().iter().enumerate() {
            let alpha = beta & ((1 << n) - 1);
            let even = (beta.count_ones() + u32::from(b)) % 2 == 0;
            let expect = if even {
                2 * sg.correlations()[alpha]
            } else {
                0
            };
            if c != expect {
                return Ok(Some(format!(
                    "g_{} spectrum off band at {beta}",
                    u8::from(b)
                )));
            }
        }
        let sb = SpectralSummary::from_spectrum(&s);
        if sb.max_abs != 2 * base.max_abs || !exact_or_close(&sb.min_entropy(), &base.min_entropy())
        {
            return Ok(Some(format!("H∞(g_{}) differs from H∞(g)", u8::from(b))));
        }
        if sb.influence() != base.influence().add(&spec.epsilon_b) {
            return Ok(Some(format!("Inf(g_{}) ≠ Inf(g) + ε", u8::from(b))));
        }
    }
    Ok(None)
}

fn analytic_field(
    r: &AnalyticReport,
    f: impl Fn(&AnalyticReport) -> Option<ExactValue>,
) -> Result<ExactValue, String> {
    f(r).ok_or_else(|| "not available".to_string())
}

fn rotsym_check(n: usize, metric: Metric, expected: f64) -> Result<Outcome, String> {
    let r = search::sweep_rotsym(n, metric).map_err(err)?;
    let v = r.best_ratio.ok_or("no maximum")?;
    Ok(Outcome::within(v.to_f64(), expected, 1e-6))
}

pub fn claims() -> Vec<Claim> {
    fn h(ctx: &Context) -> Result<crate::metrics::MetricsReport, String> {
        let _ = ctx;
        analyze(&example_h()).map_err(err)
    }
    fn g() -> Result<crate::metrics::MetricsReport, String> {
        analyze(&example_g()).map_err(err)
    }
    vec![
        Claim {
            id: "h-min-entropy",
            source: "5-variable search example h",
            basis: Basis::Published,
            expected: "4",
            long_run: false,
            check: |c| Ok(Outcome::equal(&h(c)?.min_entropy, &ExactValue::integer(4))),
        },
        Claim {
            id: "h-influence",
            source: "5-variable search example h",
            basis: Basis::Published,
            expected: "7/4",
            long_run: false,
            check: |c| Ok(Outcome::equal(&h(c)?.influence, &ExactValue::ratio(7, 4))),
        },
        Claim {
            id: "h-mei-ratio",
            source: "5-variable search example h",
            basis: Basis::Published,
            expected: "16/7",
            long_run: false,
            check: |c| {
                let r = h(c)?.mei_ratio.ok_or("undefined")?;
                Ok(Outcome::equal(&r, &ExactValue::ratio(16, 7)))
            },
        },
        Claim {
            id: "g-min-entropy",
            source: "recursion seed example g",
            basis: Basis::Published,
            expected: "4",
            long_run: false,
            check: |_| Ok(Outcome::equal(&g()?.min_entropy, &ExactValue::integer(4))),
        },
        Claim {
            id: "g-influence",
            source: "recursion seed example g",
            basis: Basis::Published,
            expected: "15/8",
            long_run: false,
            check: |_| Ok(Outcome::equal(&g()?.influence, &ExactValue::ratio(15, 8))),
        },
        Claim {
            id: "ot-m1-mei-ratio",
            source: "order-1 recursion on g",
            basis: Basis::Published,
            expected: "512/225",
            long_run: false,
            check: |_| {
                let r = ot_recursion_metrics(&example_g(), 1).map_err(err)?;
                Ok(Outcome::equal(
                    &analytic_field(&r, |r| r.mei_ratio.clone())?,
                    &ExactValue::ratio(512, 225),
                ))
            },
        },
        Claim {
            id: "g0-arity",
            source: "palindromic construction on g",
            basis: Basis::Published,
            expected: "30",
            long_run: false,
            check: |_| {
                let r = gb_construction_report(&example_g(), false).map_err(err)?;
                Ok(Outcome::flag(r.arity == 30, r.arity.to_string()))
            },
        },
        Claim {
            id: "g0-epsilon",
            source: "odd-weight spectral mass of g",
            basis: Basis::Derived,
            expected: "3/8",
            long_run: false,
            check: |_| {
                let r = gb_construction_report(&example_g(), false).map_err(err)?;
                Ok(Outcome::equal(
                    &analytic_field(&r, |r| r.epsilon_b.clone())?,
                    &ExactValue::ratio(3, 8),
                ))
            },
        },
        Claim {
            id: "g0-mei-ratio",
            source: "palindromic construction on g",
            basis: Basis::Published,
            expected: "128/45",
            long_run: false,
            check: |_| {
                let r = gb_construction_report(&example_g(), false).map_err(err)?;
                Ok(Outcome::equal(
                    &analytic_field(&r, |r| r.mei_ratio.clone())?,
                    &ExactValue::ratio(128, 45),
                ))
            },
        },
        Claim {
            id: "composition-oracle",
            source: "spectrum and min-entropy of disjoint composition",
            basis: Basis::Derived,
            expected: "analytic = dense on every instance",
            long_run: false,
            check: |c| {
                let mut rng = c.rng(1);
                for i in 0..c.config.composition_instances {
                    let spec = random_composition(&mut rng, 12, 12, 12);
                    if let Some(m) = composition_oracle(&spec).map_err(err)? {
                        return Ok(Outcome::flag(false, format!("instance {i}: {m}")));
                    }
                }
                Ok(Outcome::flag(
                    true,
                    format!("{} instances agree", c.config.composition_instances),
                ))
            },
        },
        Claim {
            id: "composition-identities",
            source: "influence and entropy of disjoint composition",
            basis: Basis::Published,
            expected: "Inf product exact, entropy recursion within 1e-9",
            long_run: false,
            check: |c| {
                let mut rng = c.rng(2);
                for i in 0..c.config.composition_instances {
                    let spec = random_composition(&mut rng, 4, 4, 16);
                    if let Some(m) = composition_identities(&spec, 1e-9).map_err(err)? {
                        return Ok(Outcome::flag(false, format!("instance {i}: {m}")));
                    }
                }
                Ok(Outcome::flag(
                    true,
                    format!("{} instances agree", c.config.composition_instances),
                ))
            },
        },
        Claim {
            id: "palindromic-identities",
            source: "palindromic extension properties",
            basis: Basis::Published,
            expected: "all identities hold exactly",
            long_run: false,
            check: |c| {
                let mut rng = c.rng(3);
                for n in 1..=c.config.palindrome_max_n {
                    for _ in 0..c.config.palindrome_samples {
                        let g = random_table(&mut rng, n);
                        if let Some(m) = palindromic_identities(&g).map_err(err)? {
                            return Ok(Outcome::flag(
                                false,
                                format!("{} (n={n}): {m}", g.to_hex()),
                            ));
                        }
                    }
                }
                Ok(Outcome::flag(
                    true,
                    format!(
                        "{} functions for each n ≤ {}",
                        c.config.palindrome_samples, c.config.palindrome_max_n
                    ),
                ))
            },
        },
        Claim {
            id: "rotsym-6-ei",
            source: "rotation-symmetric sweep",
            basis: Basis::Published,
            expected: "3.739764",
            long_run: false,
            check: |_| rotsym_check(6, Metric::Ei, 3.739764),
        },
        Claim {
            id: "rotsym-6-mei",
            source: "rotation-symmetric sweep",
            basis: Basis::Published,
            expected: "2.168978",
            long_run: false,
            check: |_| rotsym_check(6, Metric::Mei, 2.168978),
        },
        Claim {
            id: "rotsym-7-ei",
            source: "rotation-symmetric sweep",
            basis: Basis::Published,
            expected: "3.804357",
            long_run: false,
            check: |_| rotsym_check(7, Metric::Ei, 3.804357),
        },
        Claim {
            id: "rotsym-7-mei",
            source: "rotation-symmetric sweep",
            basis: Basis::Published,
            expected: "2.227449",
            long_run: false,
            check: |_| rotsym_check(7, Metric::Mei, 2.227449),
        },
        Claim {
            id: "symmetric-conjecture",
            source: "symmetric sweep and AND conjecture",
            basis: Basis::Published,
            expected: "every n passes",
            long_run: false,
            check: |c| {
                let rep = check_conjecture(1..=c.config.conjecture_max_n).map_err(err)?;
                let bad: Vec<String> = rep
                    .rows
                    .iter()
                    .filter(|r| !r.pass)
                    .map(|r| r.n.to_string())
                    .collect();
                Ok(Outcome::flag(
                    bad.is_empty(),
                    if bad.is_empty() {
                        format!("n = 1..{} pass", c.config.conjecture_max_n)
                    } else {
                        format!("fails for n = {}", bad.join(", "))
                    },
                ))
            },
        },
        Claim {
            id: "general-5-mei-max",
            source: "exhaustive 5-variable search",
            basis: Basis::Published,
            expected: "16/7",
            long_run: true,
            check: |c| {
                let r = c.general_mei()?;
                Ok(Outcome::equal(
                    r.best_ratio.as_ref().ok_or("no maximum")?,
                    &ExactValue::ratio(16, 7),
                ))
            },
        },
        Claim {
            id: "general-5-mei-count",
            source: "exhaustive 5-variable search",
            basis: Basis::Published,
            expected: "3840 functions, none balanced",
            long_run: true,
            check: |c| {
                let b = c.general_mei()?.best.as_ref().ok_or("no maximum")?;
                Ok(Outcome::flag(
                    b.count == 3840 && b.balanced == 0,
                    format!("{} functions, {} balanced", b.count, b.balanced),
                ))
            },
        },
        Claim {
            id: "family-count",
            source: "search for recursion seeds",
            basis: Basis::Published,
            expected: "384",
            long_run: true,
            check: |c| {
                let n = c.family()?.count_achieving.unwrap_or(0);
                Ok(Outcome::flag(n == 384, n.to_string()))
            },
        },
        Claim {
            id: "family-constructions",
            source: "search for recursion seeds",
            basis: Basis::Published,
            expected: "every member gives 512/225 and 128/45",
            long_run: true,
            check: |c| {
                let fam = c.family()?.at_threshold.as_ref().ok_or("empty family")?;
                let (ot, gb) = (ExactValue::ratio(512, 225), ExactValue::ratio(128, 45));
                let mut ok = 0;
                for i in &fam.witness_indices {
                    let g = TruthTable::from_u64(5, *i).map_err(err)?;
                    let a = ot_recursion_metrics(&g, 1).map_err(err)?.mei_ratio;
                    let b = gb_construction_report(&g, false).map_err(err)?.mei_ratio;
                    if a.as_ref() == Some(&ot) && b.as_ref() == Some(&gb) {
                        ok += 1;
                    }
                }
                Ok(Outcome::flag(
                    ok == fam.witness_indices.len() && ok as u64 == fam.count,
                    format!("{ok} of {} members", fam.count),
                ))
            },
        },
    ]
}

/// Runs one claim, turning errors into failed entries.
pub fn run_claim(claim: &Claim, ctx: &Context) -> LedgerEntry {
    let start = Instant::now();
    let (status, computed) = match (claim.check)(ctx) {
        Ok(o) => (if o.ok { Status::Pass } else { Status::Fail }, o.computed),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    LedgerEntry {
        claim_id: claim.id.into(),
        source: claim.source.into(),
        basis: claim.basis,
        expected: claim.expected.into(),
        computed,
        status,
        runtime_secs: start.elapsed().as_secs_f64(),
    }
}

pub fn run_verification_suite(scope: &Scope) -> VerificationLedger {
    run_verification_suite_with(scope, &Context::new(SuiteConfig::default()))
}

pub fn run_verification_suite_with(scope: &Scope, ctx: &Context) -> VerificationLedger {
    let mut entries = Vec::new();
    for claim in claims() {
        let selected = match scope {
            Scope::Fast | Scope::Full => true,
            Scope::Only(ids) => ids.iter().any(|i| i == claim.id),
        };
        if !selected {
            continue;
        }
        if claim.long_run && *scope == Scope::Fast {
            entries.push(LedgerEntry {
                claim_id: claim.id.into(),
                source: claim.source.into(),
                basis: claim.basis,
                expected: claim.expected.into(),
                computed: String::new(),
                status: Status::Skipped,
                runtime_secs: 0.0,
            });
            continue;
        }
        entries.push(run_claim(&claim, ctx));
    }
    VerificationLedger { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_scope_gives_empty_ledger() {
        let l = run_verification_suite(&Scope::Only(vec![]));
        assert!(l.entries.is_empty());
        assert_eq!(l.exit_code(), 0);
    }

    #[test]
    fn claim_ids_are_unique() {
        let mut ids: Vec<&str> = claims().iter().map(|c| c.id).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn worked_examples_pass() {
        let ids = [
            "h-mei-ratio",
            "ot-m1-mei-ratio",
            "g0-mei-ratio",
            "g0-epsilon",
        ];
        let l = run_verification_suite(&Scope::Only(ids.iter().map(|s| s.to_string()).collect()));
        assert_eq!(l.entries.len(), 4);
        assert_eq!(l.failed(), 0, "{l:#?}");
    }

    #[test]
    fn example_functions_have_expected_tables() {
        assert_eq!(example_h().to_hex(), "aaccf000");
        assert_eq!(example_g().to_hex(), "d5cdf180");
    }

    #[test]
    fn random_balanced_is_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=8 {
            assert!(random_balanced(&mut rng, n).is_balanced());
        }
    }
}
