//! Compositions of Boolean functions and their analytic metrics.
//!
//! For a `k`-variable outer function `f` and a balanced `l`-variable inner
//! function `g`, the disjoint composition `f ◇ g` on `k·l` variables feeds
//! block `i` of the input (bits `i·l .. (i+1)·l`) through a copy of `g` into
//! argument `i` of `f`. Its spectrum, influence, entropy and min-entropy
//! follow from those of `f` and `g`, so compositions far beyond the dense
//! transform cap are handled exactly without materialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactValue, RATIO_TOLERANCE};
use crate::metrics::{log2_ratio, parity_mass, SpectralSummary};
use crate::truth_table::TruthTable;
use crate::walsh::{walsh_transform, DenseCap, Spectrum};

/// Provenance identifiers attached to analytic fields.
pub mod provenance {
    /// `Inf(f ◇ g) = Inf(g)·Inf(f)` for balanced `g`.
    pub const INFLUENCE_PRODUCT: &str = "composition-influence-product";
    /// `H(f ◇ g) = H(f) + H(g)·Inf(f)` for balanced `g`.
    pub const ENTROPY_RECURSION: &str = "composition-entropy-recursion";
    /// `H∞(f ◇ g) = min_i (-log a_i + i·H∞(g))` for balanced `g`.
    pub const MIN_ENTROPY_COMPOSITION: &str = "composition-min-entropy";
    /// `H∞(f_m) = (m+1)·H∞(g)` when a weight-one point maximizes `W_g²`.
    pub const OT_MIN_ENTROPY: &str = "ot-min-entropy-weight1";
    /// Closed form of `H(f_m)/Inf(f_m)` along the recursion.
    pub const OT_ENTROPY_RATIO: &str = "ot-entropy-ratio-closed-form";
    /// `Inf(g_b) = Inf(g) + ε_b(g)`.
    pub const PALINDROMIC_INFLUENCE: &str = "palindromic-influence-shift";
    /// `(H∞(g)/Inf(g))·(t+3)/(Inf(g)+ε_b(g))` for plateaued `t`-resilient `g`.
    pub const PALINDROMIC_CLOSED_FORM: &str = "palindromic-resilient-closed-form";
    /// Value measured on a materialized truth table.
    pub const DENSE: &str = "dense-transform";
    /// Quotient of two other fields.
    pub const QUOTIENT: &str = "quotient-of-fields";
}

/// A map `F_2^n → F_2^k` given by its component functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorialFunction {
    n: usize,
    components: Vec<TruthTable>,
    /// `Some(l)` when component `i` reads only block `i` of `l` bits; the
    /// components are then stored on `l` variables.
    block: Option<usize>,
}

impl VectorialFunction {
    /// General form: `k` components on the same `n` variables.
    pub fn new(components: Vec<TruthTable>) -> Result<Self> {
        let n = components
            .first()
            .map(TruthTable::n)
            .ok_or_else(|| Error::InvalidJob("a vectorial function needs a component".into()))?;
        if let Some(bad) = components.iter().find(|c| c.n() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(Self {
            n,
            components,
            block: None,
        })
    }

    /// Block form: `x ↦ (g_1(x⁽¹⁾), …, g_k(x⁽ᵏ⁾))` with every `g_i` on `l` variables.
    pub fn blocks(components: Vec<TruthTable>) -> Result<Self> {
        let mut v = Self::new(components)?;
        let l = v.n;
        v.n = l
            .checked_mul(v.components.len())
            .filter(|&n| n <= 64)
            .ok_or_else(|| Error::ArityOverflow(format!("{} blocks of {l}", v.components.len())))?;
        v.block = Some(l);
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[TruthTable] {
        &self.components
    }

    pub fn block_width(&self) -> Option<usize> {
        self.block
    }

    /// Output vector at `x`, component `i` in bit `i`.
    pub fn eval(&self, x: u64) -> u64 {
        let mut out = 0;
        match self.block {
            None => {
                for (i, g) in self.components.iter().enumerate() {
                    out |= u64::from(g.get(x)) << i;
                }
            }
            Some(l) => {
                let mask = (1u64 << l) - 1;
                for (i, g) in self.components.iter().enumerate() {
                    out |= u64::from(g.get((x >> (i * l)) & mask)) << i;
                }
            }
        }
        out
    }
}

/// `(f ∘ G)(x) = f(g_1(x), …, g_k(x))` by direct evaluation.
pub fn compose_vectorial(f: &TruthTable, g: &VectorialFunction) -> Result<TruthTable> {
    if f.n() != g.k() {
        return Err(Error::ArityMismatch {
            expected: g.k(),
            found: f.n(),
        });
    }
    DenseCap::default().check(g.n())?;
    TruthTable::from_fn(g.n(), |x| f.get(g.eval(x)))
}

/// The pair `(f, g)` defining `f ◇ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSpec {
    outer: TruthTable,
    inner: TruthTable,
}

impl CompositionSpec {
    pub fn new(outer: TruthTable, inner: TruthTable) -> Self {
        Self { outer, inner }
    }

    pub fn outer(&self) -> &TruthTable {
        &self.outer
    }

    pub fn inner(&self) -> &TruthTable {
        &self.inner
    }

    /// `k·l`.
    pub fn arity(&self) -> usize {
        self.outer.n() * self.inner.n()
    }

    /// Dense spectra of both factors, ready for pointwise evaluation.
    pub fn spectra(&self) -> Result<CompositionSpectra> {
        if !self.inner.is_balanced() {
            return Err(Error::UnbalancedInner);
        }
        Ok(CompositionSpectra {
            k: self.outer.n(),
            l: self.inner.n(),
            outer: walsh_transform(&self.outer)?,
            inner: walsh_transform(&self.inner)?,
        })
    }
}

/// Materializes `f ◇ g`.
pub fn disjoint_compose(spec: &CompositionSpec) -> Result<TruthTable> {
    let n = spec.arity();
    DenseCap::default().check(n)?;
    let l = spec.inner.n();
    let mask = (1u64 << l) - 1;
    TruthTable::from_fn(n, |x| {
        let mut w = 0u64;
        for i in 0..spec.outer.n() {
            w |= u64::from(spec.inner.get((x >> (i * l)) & mask)) << i;
        }
        spec.outer.get(w)
    })
}

/// Spectra of the two factors of a disjoint composition with a balanced inner
/// function.
#[derive(Clone, Debug)]
pub struct CompositionSpectra {
    k: usize,
    l: usize,
    outer: Spectrum,
    inner: Spectrum,
}

impl CompositionSpectra {
    /// Normalized `W_{f◇g}(u)` for `u` given block by block.
    ///
    /// `W_f(0)` at `u = 0`; otherwise `W_f(w_u)·Π_{i ∈ supp(w_u)} W_g(u⁽ⁱ⁾)`,
    /// where `w_u` flags the nonzero blocks.
    pub fn walsh(&self, blocks: &[u64]) -> Result<BigRational> {
        if blocks.len() != self.k {
            return Err(Error::ArityMismatch {
                expected: self.k,
                found: blocks.len(),
            });
        }
        let mut w = 0u64;
        let mut num = BigInt::from(1);
        let mut den_bits = self.k;
        for (i, &b) in blocks.iter().enumerate() {
            if b >> self.l != 0 {
                return Err(Error::PointOutOfRange {
                    point: b,
                    n: self.l,
                });
            }
            if b != 0 {
                w |= 1 << i;
                num *= self.inner.get(b);
                den_bits += self.l;
            }
        }
        num *= self.outer.get(w);
        Ok(BigRational::new(num, BigInt::from(1) << den_bits))
    }

    /// [`CompositionSpectra::walsh`] at a packed point of at most 64 bits.
    pub fn walsh_at(&self, u: u64) -> Result<BigRational> {
        let n = self.k * self.l;
        if n < 64 && u >> n != 0 {
            return Err(Error::PointOutOfRange { point: u, n });
        }
        let mask = (1u64 << self.l) - 1;
        let blocks: Vec<u64> = (0..self.k).map(|i| (u >> (i * self.l)) & mask).collect();
        self.walsh(&blocks)
    }

    pub fn outer(&self) -> &Spectrum {
        &self.outer
    }

    pub fn inner(&self) -> &Spectrum {
        &self.inner
    }
}

/// `W_{f◇g}(u)` as an exact dyadic rational.
pub fn disjoint_walsh(blocks: &[u64], spec: &CompositionSpec) -> Result<BigRational> {
    spec.spectra()?.walsh(blocks)
}

/// Where the maximum squared Walsh value of a composition sits: weight class
/// `weight` of the outer spectrum, attained first (lexicographically
/// smallest) at `point`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Argmax {
    pub weight: usize,
    pub point: u64,
}

/// Min-entropy of `f ◇ g` together with the maximizing weight class.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionMinEntropy {
    pub value: ExactValue,
    pub argmax: Argmax,
}

/// `min over i with a_i > 0 of (-log2 a_i + i·H∞(g))` where
/// `a_i = max_{wt(w)=i} W_f(w)²`.
pub fn composed_min_entropy(
    outer: &Spectrum,
    inner_min_entropy: &ExactValue,
) -> CompositionMinEntropy {
    let k = outer.n();
    // (|corr|, first point) per weight class
    let mut best: Vec<Option<(u64, u64)>> = vec![None; k + 1];
    for (w, &c) in outer.correlations().iter().enumerate() {
        let a = c.unsigned_abs();
        if a == 0 {
            continue;
        }
        let slot = &mut best[(w as u64).count_ones() as usize];
        if slot.is_none_or(|(cur, _)| a > cur) {
            *slot = Some((a, w as u64));
        }
    }
    let mut result: Option<CompositionMinEntropy> = None;
    for (i, entry) in best.iter().enumerate() {
        let Some((a, point)) = *entry else { continue };
        let term =
            log2_ratio(2 * k as u32, a).add(&inner_min_entropy.mul(&ExactValue::integer(i as i64)));
        let better = match &result {
            None => true,
            Some(r) => term.compare(&r.value, RATIO_TOLERANCE) == Ordering::Less,
        };
        if better {
            result = Some(CompositionMinEntropy {
                value: term,
                argmax: Argmax { weight: i, point },
            });
        }
    }
    result.expect("a nonzero spectrum has a nonzero entry")
}

/// Min-entropy of `f ◇ g` without materializing the composition.
pub fn disjoint_min_entropy(spec: &CompositionSpec) -> Result<CompositionMinEntropy> {
    let sp = spec.spectra()?;
    let inner_hinf = SpectralSummary::from_spectrum(&sp.inner).min_entropy();
    Ok(composed_min_entropy(&sp.outer, &inner_hinf))
}

/// Metrics of a construction derived from formulas, each field tagged with
/// the identity that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticReport {
    pub construction: String,
    pub arity: u64,
    pub influence: ExactValue,
    pub entropy: Option<ExactValue>,
    pub min_entropy: Option<ExactValue>,
    pub mei_ratio: Option<ExactValue>,
    pub ei_ratio: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_b: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_mei: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_entropy_argmax: Option<Argmax>,
    /// Hypotheses of the formulas used, evaluated on the inputs.
    pub hypotheses: BTreeMap<String, bool>,
    /// Internal consistency checks between alternative formulas.
    pub checks: BTreeMap<String, bool>,
    pub provenance: BTreeMap<String, String>,
}

impl AnalyticReport {
    fn new(construction: &str, arity: u64, influence: ExactValue, influence_source: &str) -> Self {
        let mut provenance = BTreeMap::new();
        provenance.insert("influence".to_string(), influence_source.to_string());
        Self {
            construction: construction.to_string(),
            arity,
            influence,
            entropy: None,
            min_entropy: None,
            mei_ratio: None,
            ei_ratio: None,
            epsilon_b: None,
            closed_form_mei: None,
            min_entropy_argmax: None,
            hypotheses: BTreeMap::new(),
            checks: BTreeMap::new(),
            provenance,
        }
    }

    fn set(&mut self, field: &str, source: &str) {
        self.provenance
            .insert(field.to_string(), source.to_string());
    }

    fn fill_ratios(&mut self) {
        self.mei_ratio = self
            .min_entropy
            .as_ref()
            .and_then(|h| h.div(&self.influence));
        self.ei_ratio = self.entropy.as_ref().and_then(|h| h.div(&self.influence));
        if self.mei_ratio.is_some() {
            self.set("mei_ratio", provenance::QUOTIENT);
        }
        if self.ei_ratio.is_some() && !self.provenance.contains_key("ei_ratio") {
            self.set("ei_ratio", provenance::QUOTIENT);
        }
    }
}

fn require_balanced(g: &TruthTable) -> Result<()> {
    if g.is_balanced() {
        Ok(())
    } else {
        Err(Error::UnbalancedBase)
    }
}

/// Analytic metrics of `f_m` in the recursion `f_0 = g`, `f_m = g ◇ f_{m-1}`.
pub fn ot_recursion_metrics(g: &TruthTable, m: u32) -> Result<AnalyticReport> {
    require_balanced(g)?;
    let l = g.n() as u64;
    let arity = l
        .checked_pow(m + 1)
        .ok_or_else(|| Error::ArityOverflow(format!("{l}^{}", m + 1)))?;
    let s = SpectralSummary::from_spectrum(&walsh_transform(g)?);
    let inf_g = s.influence();
    let h_g = s.entropy();
    let hinf_g = s.min_entropy();

    let influence = inf_g.pow(m + 1);
    let source = if m == 0 {
        provenance::DENSE
    } else {
        provenance::INFLUENCE_PRODUCT
    };
    let mut r = AnalyticReport::new("ot-recursion", arity, influence, source);
    let weight1 = s.weight1_attains_max();
    r.hypotheses.insert("balanced".into(), true);
    r.hypotheses.insert("weight1-max-walsh".into(), weight1);

    // H(f_m) = H(g)·(1 + Inf(g) + … + Inf(g)^m)
    let mut geometric = ExactValue::zero();
    for j in 0..=m {
        geometric = geometric.add(&inf_g.pow(j));
    }
    r.entropy = Some(h_g.mul(&geometric));
    r.set(
        "entropy",
        if m == 0 {
            provenance::DENSE
        } else {
            provenance::ENTROPY_RECURSION
        },
    );

    if m == 0 {
        r.min_entropy = Some(hinf_g.clone());
        r.set("min_entropy", provenance::DENSE);
    } else if weight1 {
        r.min_entropy = Some(hinf_g.mul(&ExactValue::integer(m as i64 + 1)));
        r.set("min_entropy", provenance::OT_MIN_ENTROPY);
    }
    r.fill_ratios();

    let one = ExactValue::integer(1);
    if m > 0 && !inf_g.approx_eq(&one) && !inf_g.is_zero() {
        // H/I + H/(I(I-1)) - H/(I^{m+1}(I-1))
        let i_minus_1 = inf_g.sub(&one);
        let a = h_g.div(&inf_g).unwrap();
        let b = h_g.div(&inf_g.mul(&i_minus_1)).unwrap();
        let c = h_g.div(&inf_g.pow(m + 1).mul(&i_minus_1)).unwrap();
        let closed = a.add(&b).sub(&c);
        if let Some(ei) = &r.ei_ratio {
            r.checks
                .insert("ot-entropy-ratio-closed-form".into(), closed.approx_eq(ei));
            r.set("ei_ratio", provenance::OT_ENTROPY_RATIO);
            r.ei_ratio = Some(closed);
        }
    }
    if m > 0 && weight1 {
        let closed = hinf_g
            .div(&inf_g)
            .unwrap()
            .mul(&ExactValue::integer(m as i64 + 1))
            .div(&inf_g.pow(m))
            .unwrap();
        r.checks.insert(
            "ot-mei-closed-form".into(),
            r.mei_ratio.as_ref().is_some_and(|v| v.approx_eq(&closed)),
        );
        r.closed_form_mei = Some(closed);
    }
    Ok(r)
}

/// Materializes `f_m` of the recursion.
pub fn ot_materialize(g: &TruthTable, m: u32) -> Result<TruthTable> {
    let mut f = g.clone();
    for _ in 0..m {
        f = disjoint_compose(&CompositionSpec::new(g.clone(), f))?;
    }
    Ok(f)
}

/// Description of the palindromic extension `g_b` of `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct PalindromicSpec {
    pub base: TruthTable,
    pub b: bool,
    /// `ε_b(g) = Σ_{wt(α) ≢ b mod 2} W_g(α)²`.
    pub epsilon_b: ExactValue,
}

impl PalindromicSpec {
    pub fn new(base: TruthTable, b: bool) -> Result<Self> {
        let s = walsh_transform(&base)?;
        Ok(Self {
            epsilon_b: parity_mass(&s, b),
            base,
            b,
        })
    }

    /// `ε_{1-b}(g)`; the two masses sum to one.
    pub fn epsilon_other(&self) -> Result<ExactValue> {
        Ok(parity_mass(&walsh_transform(&self.base)?, !self.b))
    }

    /// Arity of `g_b`.
    pub fn arity(&self) -> usize {
        self.base.n() + 1
    }
}

/// `g_b(X_{n+1}, X) = (1 ⊕ X_{n+1})·g(X) ⊕ X_{n+1}·(b ⊕ g(1_n ⊕ X))`: the table
/// of `g` followed by its reversal, complemented when `b = 1`.
pub fn palindromic_extend(g: &TruthTable, b: bool) -> Result<(TruthTable, PalindromicSpec)> {
    let spec = PalindromicSpec::new(g.clone(), b)?;
    let rev = g.reverse();
    let upper = if b { rev.complement() } else { rev };
    Ok((g.concat(&upper)?, spec))
}

/// Analytic metrics of `G_b = g_b ◇ g`, on `n(n+1)` variables.
pub fn gb_construction_report(g: &TruthTable, b: bool) -> Result<AnalyticReport> {
    require_balanced(g)?;
    let n = g.n() as u64;
    let gs = SpectralSummary::from_spectrum(&walsh_transform(g)?);
    let (gb, pspec) = palindromic_extend(g, b)?;
    let gb_spec = walsh_transform(&gb)?;
    let gbs = SpectralSummary::from_spectrum(&gb_spec);

    let inf_g = gs.influence();
    let inf_gb = inf_g.add(&pspec.epsilon_b);
    let influence = inf_g.mul(&inf_gb);
    let mut r = AnalyticReport::new(
        "palindromic-composition",
        n * (n + 1),
        influence,
        provenance::INFLUENCE_PRODUCT,
    );
    r.provenance
        .insert("epsilon_b".into(), provenance::DENSE.into());
    r.checks.insert(
        "palindromic-influence-shift".into(),
        inf_gb == gbs.influence(),
    );
    r.epsilon_b = Some(pspec.epsilon_b.clone());

    let hinf_g = gs.min_entropy();
    let me = composed_min_entropy(&gb_spec, &hinf_g);
    r.min_entropy = Some(me.value);
    r.min_entropy_argmax = Some(me.argmax);
    r.set("min_entropy", provenance::MIN_ENTROPY_COMPOSITION);

    r.entropy = Some(gbs.entropy().add(&gs.entropy().mul(&inf_gb)));
    r.set("entropy", provenance::ENTROPY_RECURSION);
    r.fill_ratios();

    let t = gs.resilience_order();
    let closed_form_applies = gs.is_plateaued() && t >= 0 && (t & 1 == 1) == b;
    r.hypotheses.insert("balanced".into(), true);
    r.hypotheses.insert("plateaued".into(), gs.is_plateaued());
    r.hypotheses.insert(
        format!("resilience-order-{t}-matches-b"),
        closed_form_applies,
    );
    if closed_form_applies {
        let closed = hinf_g
            .div(&inf_g)
            .unwrap()
            .mul(&ExactValue::integer(t as i64 + 3))
            .div(&inf_gb)
            .unwrap();
        r.checks.insert(
            provenance::PALINDROMIC_CLOSED_FORM.into(),
            r.mei_ratio.as_ref().is_some_and(|v| v.approx_eq(&closed)),
        );
        r.set("closed_form_mei", provenance::PALINDROMIC_CLOSED_FORM);
        r.closed_form_mei = Some(closed);
    }
    Ok(r)
}

/// Materializes `G_b = g_b ◇ g`.
pub fn gb_materialize(g: &TruthTable, b: bool) -> Result<TruthTable> {
    let (gb, _) = palindromic_extend(g, b)?;
    disjoint_compose(&CompositionSpec::new(gb, g.clone()))
}

/// Epsilon sum check `ε_0 + ε_1 = 1`.
pub fn epsilon_masses(g: &TruthTable) -> Result<(ExactValue, ExactValue)> {
    let s = walsh_transform(g)?;
    Ok((parity_mass(&s, false), parity_mass(&s, true)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::analyze;
    use num_traits::Zero;

    pub(crate) use crate::verify::example_g;

    #[test]
    fn identity_and_xor_compositions() {
        let g = TruthTable::from_fn(3, |x| x % 3 == 1).unwrap();
        let id = TruthTable::from_bit_string("01").unwrap();
        let vf = VectorialFunction::new(vec![g.clone()]).unwrap();
        assert_eq!(compose_vectorial(&id, &vf).unwrap(), g);

        let xor2 = TruthTable::from_bit_string("0110").unwrap();
        let x1 = TruthTable::from_bit_string("0101").unwrap();
        let x2 = TruthTable::from_bit_string("0011").unwrap();
        let vf = VectorialFunction::new(vec![x1, x2]).unwrap();
        assert_eq!(compose_vectorial(&xor2, &vf).unwrap(), xor2);
        assert!(matches!(
            compose_vectorial(&g, &vf),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn xor_of_xors_is_parity() {
        let xor2 = TruthTable::from_bit_string("0110").unwrap();
        let p = disjoint_compose(&CompositionSpec::new(xor2.clone(), xor2.clone())).unwrap();
        assert_eq!(
            p,
            TruthTable::from_fn(4, |x| x.count_ones() % 2 == 1).unwrap()
        );
        let me = disjoint_min_entropy(&CompositionSpec::new(xor2.clone(), xor2)).unwrap();
        assert_eq!(me.value, ExactValue::integer(0));
    }

    #[test]
    fn walsh_of_zero_point_is_outer_bias() {
        let f = TruthTable::from_bit_string("0001").unwrap();
        let g = TruthTable::from_bit_string("0110").unwrap();
        let spec = CompositionSpec::new(f, g);
        let w = disjoint_walsh(&[0, 0], &spec).unwrap();
        assert_eq!(w, BigRational::new(BigInt::from(2), BigInt::from(4)));
        // g's spectrum lives only at 3: any nonzero block != 3 vanishes.
        assert!(disjoint_walsh(&[1, 0], &spec).unwrap().is_zero());
    }

    #[test]
    fn unbalanced_inner_is_rejected() {
        let f = TruthTable::from_bit_string("0110").unwrap();
        let g = TruthTable::from_bit_string("0001").unwrap();
        let spec = CompositionSpec::new(f, g);
        assert!(matches!(spec.spectra(), Err(Error::UnbalancedInner)));
        assert!(matches!(
            disjoint_min_entropy(&spec),
            Err(Error::UnbalancedInner)
        ));
    }

    #[test]
    fn palindrome_of_dictator_is_xor() {
        let x1 = TruthTable::from_bit_string("01").unwrap();
        let (g0, spec) = palindromic_extend(&x1, false).unwrap();
        assert_eq!(g0.to_bit_string(), "0110");
        assert_eq!(spec.epsilon_b, ExactValue::integer(1));
        let (g1, _) = palindromic_extend(&x1, true).unwrap();
        assert_eq!(g1.to_bit_string(), "0101");
    }

    #[test]
    fn example_g_extension_masses() {
        let g = example_g();
        let (_, spec) = palindromic_extend(&g, false).unwrap();
        assert_eq!(spec.epsilon_b, ExactValue::ratio(3, 8));
        assert_eq!(spec.epsilon_other().unwrap(), ExactValue::ratio(5, 8));
    }

    #[test]
    fn ot_m0_is_base_metrics() {
        let g = example_g();
        let r = ot_recursion_metrics(&g, 0).unwrap();
        let base = analyze(&g).unwrap();
        assert_eq!(r.arity, 5);
        assert_eq!(r.influence, base.influence);
        assert_eq!(r.min_entropy.as_ref(), Some(&base.min_entropy));
        assert_eq!(r.mei_ratio, base.mei_ratio);
    }

    #[test]
    fn ot_m1_on_example_g() {
        let r = ot_recursion_metrics(&example_g(), 1).unwrap();
        assert_eq!(r.arity, 25);
        assert_eq!(r.min_entropy, Some(ExactValue::integer(8)));
        assert_eq!(r.mei_ratio, Some(ExactValue::ratio(512, 225)));
        assert!(r.checks.values().all(|&ok| ok), "{:?}", r.checks);
    }

    #[test]
    fn ot_rejects_unbalanced() {
        let and2 = TruthTable::from_bit_string("0001").unwrap();
        assert!(matches!(
            ot_recursion_metrics(&and2, 1),
            Err(Error::UnbalancedBase)
        ));
        assert!(matches!(
            gb_construction_report(&and2, false),
            Err(Error::UnbalancedBase)
        ));
    }

    #[test]
    fn ot_without_weight1_hypothesis_has_no_min_entropy() {
        // X1 ⊕ X2 on three variables: all mass at a weight-two point.
        let g = TruthTable::from_fn(3, |x| (x ^ (x >> 1)) & 1 == 1).unwrap();
        let r = ot_recursion_metrics(&g, 1).unwrap();
        assert!(!r.hypotheses["weight1-max-walsh"]);
        assert!(r.min_entropy.is_none() && r.mei_ratio.is_none());
        assert!(r.ei_ratio.is_some());
    }

    #[test]
    fn gb_report_for_example_g() {
        let r = gb_construction_report(&example_g(), false).unwrap();
        assert_eq!(r.arity, 30);
        assert_eq!(r.epsilon_b, Some(ExactValue::ratio(3, 8)));
        assert_eq!(r.influence, ExactValue::ratio(135, 32));
        assert_eq!(r.min_entropy, Some(ExactValue::integer(12)));
        assert_eq!(r.mei_ratio, Some(ExactValue::ratio(128, 45)));
        assert_eq!(r.closed_form_mei, Some(ExactValue::ratio(128, 45)));
        assert!(r.checks.values().all(|&ok| ok), "{:?}", r.checks);
        assert_eq!(
            r.provenance["min_entropy"],
            provenance::MIN_ENTROPY_COMPOSITION
        );
    }
}
