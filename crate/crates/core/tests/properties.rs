use bfei_core::anf::AnfExpression;
use bfei_core::construct::{disjoint_compose, CompositionSpec};
use bfei_core::exact::ExactValue;
use bfei_core::metrics::{influence_probe, influence_spectral};
use bfei_core::report::{emit_metrics, parse_metrics, Format};
use bfei_core::search::{FunctionClass, Metric, SearchJob};
use bfei_core::{analyze, sweep, walsh_transform, TruthTable};
use proptest::prelude::*;

fn vars(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|j| mask >> j & 1 == 1)
        .map(|j| j + 1)
        .collect()
}

fn table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), 1usize << n)
            .prop_map(move |bits| TruthTable::from_fn(n, |x| bits[x as usize]).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parseval(f in table(12)) {
        let s = walsh_transform(&f).unwrap();
        prop_assert_eq!(s.sum_of_squares(), 1u128 << (2 * f.n()));
    }

    #[test]
    fn probe_influence_matches_spectrum(f in table(10)) {
        let s = walsh_transform(&f).unwrap();
        prop_assert_eq!(influence_probe(&f).unwrap(), influence_spectral(&s));
    }

    #[test]
    fn reversal_flips_odd_weight_signs(f in table(10)) {
        let s = walsh_transform(&f).unwrap();
        let r = walsh_transform(&f.reverse()).unwrap();
        for a in 0..f.len() {
            let sign = if a.count_ones() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(r.get(a), sign * s.get(a));
        }
    }

    #[test]
    fn hex_round_trip(f in table(12)) {
        prop_assert_eq!(TruthTable::from_hex(f.n(), &f.to_hex()).unwrap(), f);
    }

    #[test]
    fn anf_display_parses_back(n in 1usize..=8, monos in prop::collection::btree_set(any::<u64>(), 0..20)) {
        let mask = (1u64 << n) - 1;
        let expr = AnfExpression::new(n, monos.iter().map(|m| vars(m & mask))).unwrap();
        let reparsed = AnfExpression::parse(&expr.to_string(), n).unwrap();
        prop_assert_eq!(reparsed.to_truth_table(), expr.to_truth_table());
    }

    #[test]
    fn anf_matches_naive_evaluation(n in 1usize..=6, monos in prop::collection::btree_set(0u64..64, 0..12)) {
        let mask = (1u64 << n) - 1;
        let monos: Vec<u64> = monos.iter().map(|m| m & mask).collect();
        let tt = AnfExpression::new(n, monos.iter().map(|&m| vars(m))).unwrap().to_truth_table();
        for x in 0..(1u64 << n) {
            // Masking can repeat a monomial; repeated terms cancel.
            let v = monos.iter().filter(|&&m| m & x == m).count() % 2 == 1;
            prop_assert_eq!(tt.get(x), v);
        }
    }

    #[test]
    fn exact_value_json_round_trip(num in -1_000_000i64..1_000_000, den in 1i64..1_000_000, x in any::<f64>()) {
        let v = ExactValue::ratio(num, den);
        let back: ExactValue = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(&back, &v);
        if x.is_finite() {
            let f = ExactValue::float_only(x);
            let back: ExactValue = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            prop_assert_eq!(back.to_f64().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn metrics_json_round_trip(f in table(10)) {
        let r = analyze(&f).unwrap();
        let back = parse_metrics(&emit_metrics(&r, Format::Json).unwrap()).unwrap();
        prop_assert_eq!(back.entropy.to_f64().to_bits(), r.entropy.to_f64().to_bits());
        prop_assert_eq!(back.min_entropy.to_f64().to_bits(), r.min_entropy.to_f64().to_bits());
        prop_assert_eq!(back, r);
    }

    #[test]
    fn composition_spectrum_factorizes(outer in table(3), inner in table(3)) {
        prop_assume!(inner.is_balanced());
        let spec = CompositionSpec::new(outer, inner);
        let h = disjoint_compose(&spec).unwrap();
        let dense = walsh_transform(&h).unwrap();
        let spectra = spec.spectra().unwrap();
        let scale = num_rational::BigRational::from_integer((1i64 << h.n()).into());
        for u in 0..h.len() {
            let w = spectra.walsh_at(u).unwrap() * &scale;
            prop_assert_eq!(w, num_rational::BigRational::from_integer(dense.get(u).into()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sweep_is_independent_of_threads_and_chunks(
        n in 1usize..=4,
        prefix in 0u32..=6,
        threads in 1usize..=4,
        metric in prop::sample::select(vec![Metric::Mei, Metric::Ei]),
    ) {
        let base = sweep(&SearchJob::new(FunctionClass::General, n, metric).threads(1)).unwrap();
        let prefix = prefix.min(1 << n);
        let other = sweep(
            &SearchJob::new(FunctionClass::General, n, metric)
                .prefix_bits(prefix)
                .threads(threads),
        )
        .unwrap();
        prop_assert_eq!(&base.best, &other.best);
        prop_assert_eq!(base.functions_passed, other.functions_passed);
        prop_assert_eq!(base.undefined_ratio, other.undefined_ratio);
    }
}
