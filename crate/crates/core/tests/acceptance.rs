//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. The two 5-variable sweeps take a few minutes on one core; set
//! `BFEI_SKIP_LONG=1` to report them as skipped.

use std::time::{Duration, Instant};

use bfei_core::construct::{gb_construction_report, ot_recursion_metrics, AnalyticReport};
use bfei_core::metrics::{influence_probe, influence_spectral};
use bfei_core::report::{emit_metrics, parse_metrics, Format};
use bfei_core::search::{
    check_conjecture, sweep_rotsym, FunctionClass, Metric, SearchJob, SearchResult,
};
use bfei_core::verify::{
    composition_identities, composition_oracle, example_g, example_h, palindromic_identities,
    random_composition, Context, SuiteConfig,
};
use bfei_core::{analyze, sweep, walsh_transform, ExactValue, TruthTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Verdict,
}

fn random_table(rng: &mut ChaCha8Rng, n: usize) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen()).unwrap()
}

fn h_metrics() -> Verdict {
    let r = analyze(&example_h()).unwrap();
    let ok = r.min_entropy == ExactValue::integer(4)
        && r.influence == ExactValue::ratio(7, 4)
        && r.mei_ratio == Some(ExactValue::ratio(16, 7));
    check(
        ok,
        format!(
            "H∞ = {}, Inf = {}, ratio = {}",
            r.min_entropy.to_repr(),
            r.influence.to_repr(),
            r.mei_ratio.map(|v| v.to_repr()).unwrap_or_default()
        ),
    )
}

fn ot_m1() -> Verdict {
    let g = example_g();
    let base = analyze(&g).unwrap();
    let r = ot_recursion_metrics(&g, 1).unwrap();
    let ok = base.min_entropy == ExactValue::integer(4)
        && base.influence == ExactValue::ratio(15, 8)
        && r.mei_ratio == Some(ExactValue::ratio(512, 225));
    check(
        ok,
        format!(
            "H∞(g) = {}, Inf(g) = {}, f_1 ratio = {}",
            base.min_entropy.to_repr(),
            base.influence.to_repr(),
            r.mei_ratio.map(|v| v.to_repr()).unwrap_or_default()
        ),
    )
}

fn g0() -> Verdict {
    let r = gb_construction_report(&example_g(), false).unwrap();
    let ok = r.arity == 30
        && r.mei_ratio == Some(ExactValue::ratio(128, 45))
        && r.epsilon_b == Some(ExactValue::ratio(3, 8))
        && r.checks.values().all(|&c| c);
    check(
        ok,
        format!(
            "arity {}, ε_0 = {}, ratio = {}",
            r.arity,
            r.epsilon_b.map(|v| v.to_repr()).unwrap_or_default(),
            r.mei_ratio.map(|v| v.to_repr()).unwrap_or_default()
        ),
    )
}

fn composition_pointwise() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let instances = 200;
    for i in 0..instances {
        let spec = random_composition(&mut rng, 12, 12, 12);
        if let Some(m) = composition_oracle(&spec).unwrap() {
            return Verdict::Fail(format!(
                "instance {i} (k={}, l={}): {m}",
                spec.outer().n(),
                spec.inner().n()
            ));
        }
    }
    Verdict::Pass(format!("{instances} instances, k·l ≤ 12"))
}

fn composition_identities_hold() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let instances = 200;
    for i in 0..instances {
        let spec = random_composition(&mut rng, 4, 4, 16);
        if let Some(m) = composition_identities(&spec, 1e-9).unwrap() {
            return Verdict::Fail(format!("instance {i}: {m}"));
        }
    }
    Verdict::Pass(format!("{instances} instances, k, l ≤ 4"))
}

fn palindromic() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=10 {
        for _ in 0..1000 {
            let g = random_table(&mut rng, n);
            if let Some(m) = palindromic_identities(&g).unwrap() {
                return Verdict::Fail(format!("{} (n = {n}): {m}", g.to_hex()));
            }
        }
    }
    Verdict::Pass("1000 functions for each n = 1..10".into())
}

fn rotsym() -> Verdict {
    let expected = [
        (6, Metric::Ei, 3.739764),
        (6, Metric::Mei, 2.168978),
        (7, Metric::Ei, 3.804357),
        (7, Metric::Mei, 2.227449),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, metric, want) in expected {
        let t = Instant::now();
        let got = sweep_rotsym(n, metric)
            .unwrap()
            .best_ratio
            .unwrap()
            .to_f64();
        let elapsed = t.elapsed();
        let budget = if n == 6 {
            Duration::from_secs(5)
        } else {
            Duration::from_secs(600)
        };
        ok &= (got - want).abs() <= 1e-6 && elapsed <= budget;
        parts.push(format!(
            "n={n} {metric} {got:.6} ({:.2}s)",
            elapsed.as_secs_f64()
        ));
    }
    check(ok, parts.join(", "))
}

fn conjecture() -> Verdict {
    let rep = check_conjecture(1..=12).unwrap();
    let failing: Vec<String> = rep
        .rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.n.to_string())
        .collect();
    let below_four = rep.rows.iter().all(|r| r.and_ratio.to_f64() < 4.0);
    check(
        failing.is_empty() && below_four,
        if failing.is_empty() {
            format!(
                "n = 1..12; H(A_12)/Inf(A_12) = {:.6}",
                rep.rows.last().unwrap().and_ratio.to_f64()
            )
        } else {
            format!("fails for n = {}", failing.join(", "))
        },
    )
}

fn five_variable_counts() -> Verdict {
    if std::env::var_os("BFEI_SKIP_LONG").is_some() {
        return Verdict::Skip("BFEI_SKIP_LONG set".into());
    }
    let ctx = Context::new(SuiteConfig::default());
    let general = ctx.general_mei().unwrap();
    let best = general.best.as_ref().unwrap();
    let fam = ctx.family().unwrap();
    let members = fam.at_threshold.as_ref().unwrap();
    let mut constructions_ok = members.witness_indices.len() as u64 == members.count;
    for &i in &members.witness_indices {
        let g = TruthTable::from_u64(5, i).unwrap();
        let ot = ot_recursion_metrics(&g, 1).unwrap();
        let gb = gb_construction_report(&g, false).unwrap();
        constructions_ok &= ot.mei_ratio == Some(ExactValue::ratio(512, 225))
            && gb.mei_ratio == Some(ExactValue::ratio(128, 45))
            && gb.influence.to_f64() > 0.0;
    }
    let ok = best.value == ExactValue::ratio(16, 7)
        && best.count == 3840
        && best.balanced == 0
        && fam.count_achieving == Some(384)
        && constructions_ok;
    check(
        ok,
        format!(
            "max {} with {} functions ({} balanced); family {} members, constructions {}",
            best.value.to_repr(),
            best.count,
            best.balanced,
            fam.count_achieving.unwrap_or(0),
            if constructions_ok { "ok" } else { "mismatch" }
        ),
    )
}

fn property_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut tested = 0;
    for n in 1..=10 {
        for _ in 0..100 {
            let f = random_table(&mut rng, n);
            let s = walsh_transform(&f).unwrap();
            if s.sum_of_squares() != 1u128 << (2 * n) {
                return Verdict::Fail(format!("Parseval fails for {}", f.to_hex()));
            }
            if influence_probe(&f).unwrap() != influence_spectral(&s) {
                return Verdict::Fail(format!("probe ≠ spectral influence for {}", f.to_hex()));
            }
            let r = analyze(&f).unwrap();
            let back = parse_metrics(&emit_metrics(&r, Format::Json).unwrap()).unwrap();
            if back != r || back.entropy.to_f64().to_bits() != r.entropy.to_f64().to_bits() {
                return Verdict::Fail(format!("metrics round-trip fails for {}", f.to_hex()));
            }
            if TruthTable::from_hex(n, &f.to_hex()).unwrap() != f {
                return Verdict::Fail(format!("hex round-trip fails for {}", f.to_hex()));
            }
            tested += 1;
        }
    }
    let jobs = [
        SearchJob::new(FunctionClass::General, 4, Metric::Mei),
        SearchJob::new(FunctionClass::General, 4, Metric::Ei),
        SearchJob::new(FunctionClass::Symmetric, 10, Metric::Ei),
        SearchJob::new(FunctionClass::RotationSymmetric, 6, Metric::Mei),
    ];
    for job in jobs {
        let one = sweep(&job.clone().threads(1)).unwrap();
        let many = sweep(&job.clone().threads(4)).unwrap();
        if !one.same_outcome(&many) {
            return Verdict::Fail(format!(
                "{} n={} differs across thread counts",
                job.class, job.n
            ));
        }
        let text = serde_json::to_string(&one).unwrap();
        let back: SearchResult = serde_json::from_str(&text).unwrap();
        if !back.same_outcome(&one) {
            return Verdict::Fail("search result round-trip fails".into());
        }
    }
    let report = gb_construction_report(&example_g(), false).unwrap();
    let back: AnalyticReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    check(
        back == report,
        format!("{tested} functions; 4 sweeps deterministic across 1 and 4 threads; round-trips lossless"),
    )
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            title: "metrics of h",
            budget: Duration::from_millis(1),
            run: h_metrics,
        },
        Criterion {
            id: 2,
            title: "g and order-1 recursion",
            budget: Duration::from_millis(1),
            run: ot_m1,
        },
        Criterion {
            id: 3,
            title: "palindromic construction G_0",
            budget: Duration::from_millis(10),
            run: g0,
        },
        Criterion {
            id: 4,
            title: "composition spectrum and min-entropy vs dense",
            budget: Duration::from_secs(30),
            run: composition_pointwise,
        },
        Criterion {
            id: 5,
            title: "composition influence and entropy identities",
            budget: Duration::from_secs(30),
            run: composition_identities_hold,
        },
        Criterion {
            id: 6,
            title: "palindromic extension properties",
            budget: Duration::from_secs(60),
            run: palindromic,
        },
        Criterion {
            id: 7,
            title: "rotation-symmetric maxima n = 6, 7",
            budget: Duration::from_secs(600),
            run: rotsym,
        },
        Criterion {
            id: 8,
            title: "symmetric AND / bent checks n = 1..12",
            budget: Duration::from_secs(900),
            run: conjecture,
        },
        Criterion {
            id: 9,
            title: "5-variable counts 3840 and 384",
            budget: Duration::from_secs(8 * 3600),
            run: five_variable_counts,
        },
        Criterion {
            id: 10,
            title: "property suite",
            budget: Duration::from_secs(120),
            run: property_suite,
        },
    ];
    // Warm-up so that first-call costs do not count against sub-millisecond budgets.
    let _ = analyze(&example_g());
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let (tag, detail) = match verdict {
            Verdict::Pass(d) if elapsed <= c.budget => ("PASS", d),
            Verdict::Pass(d) => (
                "FAIL",
                format!(
                    "{d}; {:.3}s exceeds the {:.3}s budget",
                    elapsed.as_secs_f64(),
                    c.budget.as_secs_f64()
                ),
            ),
            Verdict::Fail(d) => ("FAIL", d),
            Verdict::Skip(d) => ("SKIP", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} criterion {:>2}: {} [{}] ({:.3}s)",
            c.id,
            c.title,
            detail,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
