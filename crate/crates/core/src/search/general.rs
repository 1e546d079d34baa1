//! Exhaustive sweep over all functions of `n ≤ 5` variables.
//!
//! Tables inside a chunk are visited in Gray-code order, so consecutive
//! functions differ in one output bit. Flipping `f(x)` moves every
//! correlation by `∓2·(-1)^{⟨x,α⟩}`, the cut-edge count by
//! `n - 2·(differing neighbours)` and the weight by one, all in `O(2^n)`.
//! Ratios built from `(max |corr|, cut edges)` alone are looked up in a
//! ranked table and tallied in a histogram.

use crate::exact::ExactValue;
use crate::metrics::SpectralSummary;
use crate::walsh::fwht_in_place;

use super::tally::{insert_witness, ChunkTally, Tally};
use super::{Filter, SearchJob, Target};

pub(crate) const N_MAX_GENERAL: usize = 5;
const LANES: usize = 1 << N_MAX_GENERAL;

pub(crate) struct GeneralEngine {
    n: usize,
    size: usize,
    /// `rows2[x][α] = 2·(-1)^{⟨x,α⟩}` for `α < 2^n`, zero beyond.
    rows2: Vec<[i16; LANES]>,
    /// Bit mask of the `n` neighbours of `x`.
    neighbours: Vec<u64>,
    ranks: Option<RankTable>,
    resilient_points: Vec<usize>,
}

/// Metric values indexed by `(max |corr| / 2, cut edges)`, replaced by their
/// position in ascending order. Rank 0 marks an undefined ratio.
struct RankTable {
    stride: usize,
    rank: Vec<u16>,
    values: Vec<ExactValue>,
    threshold: Option<u16>,
}

impl RankTable {
    fn build(job: &SearchJob, n: usize) -> Self {
        let size = 1usize << n;
        let stride = n * size / 2 + 1;
        let mut cells = Vec::new();
        for half in 1..=size / 2 {
            for edges in 0..stride {
                let mut s = SpectralSummary::new(n);
                s.max_abs = 2 * half as u64;
                s.inf_num = (edges as u128) << (n + 1);
                if let Some(v) = job.metric.evaluate(&s) {
                    cells.push((v, half, edges));
                }
            }
        }
        cells.sort_by(|a, b| a.0.to_f64().total_cmp(&b.0.to_f64()));
        let mut rank = vec![0u16; (size / 2 + 1) * stride];
        let mut values = vec![ExactValue::zero()];
        for (v, half, edges) in cells {
            if !values
                .last()
                .is_some_and(|last| values.len() > 1 && last.approx_eq(&v))
            {
                values.push(v);
            }
            rank[half * stride + edges] = (values.len() - 1) as u16;
        }
        let threshold = match &job.target {
            Target::CountAchieving(t) => values
                .iter()
                .skip(1)
                .position(|v| v.approx_eq(t))
                .map(|p| p as u16 + 1),
            Target::Maximize => None,
        };
        Self {
            stride,
            rank,
            values,
            threshold,
        }
    }
}

struct Walker {
    corr: [i16; LANES],
    table: u64,
    weight: u32,
    edges: u32,
}

impl GeneralEngine {
    pub(crate) fn new(job: &SearchJob) -> Self {
        let n = job.n;
        let size = 1usize << n;
        let rows2 = (0..size)
            .map(|x| {
                let mut row = [0i16; LANES];
                for (alpha, r) in row.iter_mut().enumerate().take(size) {
                    *r = if (x & alpha).count_ones() % 2 == 0 {
                        2
                    } else {
                        -2
                    };
                }
                row
            })
            .collect();
        let neighbours = (0..size)
            .map(|x| (0..n).fold(0u64, |m, i| m | 1 << (x ^ (1 << i))))
            .collect();
        let resilient_points = job
            .filters
            .iter()
            .filter_map(|f| match f {
                Filter::Resilient(t) => Some(*t),
                _ => None,
            })
            .max()
            .map(|t| (0..size).filter(|a| a.count_ones() <= t).collect())
            .unwrap_or_default();
        let ranks = job
            .metric
            .depends_on_max_and_influence()
            .then(|| RankTable::build(job, n));
        Self {
            n,
            size,
            rows2,
            neighbours,
            ranks,
            resilient_points,
        }
    }

    fn start(&self, table: u64) -> Walker {
        let mut v: Vec<i64> = (0..self.size)
            .map(|x| if table >> x & 1 == 1 { -1 } else { 1 })
            .collect();
        fwht_in_place(&mut v);
        let mut corr = [0i16; LANES];
        for (c, &x) in corr.iter_mut().zip(v.iter()) {
            *c = x as i16;
        }
        let mut edges = 0;
        for x in 0..self.size {
            for i in 0..self.n {
                let y = x ^ (1 << i);
                if x < y && (table >> x & 1) != (table >> y & 1) {
                    edges += 1;
                }
            }
        }
        Walker {
            corr,
            table,
            weight: table.count_ones(),
            edges,
        }
    }

    #[inline(always)]
    fn flip(&self, w: &mut Walker, x: usize) {
        let bit = w.table >> x & 1;
        let ones = (w.table & self.neighbours[x]).count_ones();
        let differing = if bit == 0 { ones } else { self.n as u32 - ones };
        w.edges = w.edges + self.n as u32 - 2 * differing;
        let row = &self.rows2[x];
        if bit == 0 {
            w.weight += 1;
            for (c, r) in w.corr.iter_mut().zip(row) {
                *c -= r;
            }
        } else {
            w.weight -= 1;
            for (c, r) in w.corr.iter_mut().zip(row) {
                *c += r;
            }
        }
        w.table ^= 1 << x;
    }

    #[inline(always)]
    fn max_abs(w: &Walker) -> u16 {
        w.corr.iter().fold(0u16, |m, c| m.max(c.unsigned_abs()))
    }

    /// Filters on the walker state; `max_abs` is computed on demand.
    #[inline(always)]
    fn accepts(&self, job: &SearchJob, w: &Walker, max_abs: &mut Option<u16>) -> bool {
        for f in &job.filters {
            let ok = match f {
                Filter::Balanced => 2 * w.weight as usize == self.size,
                Filter::Resilient(_) => self.resilient_points.iter().all(|&a| w.corr[a] == 0),
                Filter::Weight1MaxWalsh => {
                    let m = *max_abs.get_or_insert_with(|| Self::max_abs(w));
                    (0..self.n).any(|i| w.corr[1 << i].unsigned_abs() == m)
                }
                Filter::Plateaued => {
                    let m = *max_abs.get_or_insert_with(|| Self::max_abs(w));
                    w.corr[..self.size]
                        .iter()
                        .all(|c| *c == 0 || c.unsigned_abs() == m)
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    pub(crate) fn scan(&self, job: &SearchJob, base: u64, low_bits: u32) -> ChunkTally {
        match &self.ranks {
            Some(r) => self.scan_ranked(job, r, base, low_bits),
            None => self.scan_generic(job, base, low_bits),
        }
    }

    fn scan_ranked(
        &self,
        job: &SearchJob,
        ranks: &RankTable,
        base: u64,
        low_bits: u32,
    ) -> ChunkTally {
        let cap = job.witness_cap;
        let balanced_size = self.size as u32 / 2;
        let mut hist = vec![0u64; ranks.values.len()];
        let mut hist_balanced = vec![0u64; ranks.values.len()];
        let mut best = 0u16;
        let mut best_witnesses = Vec::new();
        let mut thr_witnesses = Vec::new();
        let thr = ranks.threshold.unwrap_or(0);
        let mut passed = 0u64;
        let mut w = self.start(base);
        let steps = 1u64 << low_bits;
        for s in 0..steps {
            if s > 0 {
                self.flip(&mut w, s.trailing_zeros() as usize);
            }
            let mut m = None;
            if !self.accepts(job, &w, &mut m) {
                continue;
            }
            passed += 1;
            let m = m.unwrap_or_else(|| Self::max_abs(&w));
            let r = ranks.rank[(m as usize / 2) * ranks.stride + w.edges as usize];
            hist[r as usize] += 1;
            if r == 0 {
                continue;
            }
            if w.weight == balanced_size {
                hist_balanced[r as usize] += 1;
            }
            if r >= best {
                if r > best {
                    best = r;
                    best_witnesses.clear();
                }
                insert_witness(&mut best_witnesses, w.table, cap);
            }
            if r == thr {
                insert_witness(&mut thr_witnesses, w.table, cap);
            }
        }
        let tally = |r: u16, witnesses: Vec<u64>, value: ExactValue| Tally {
            value,
            count: hist[r as usize],
            balanced: hist_balanced[r as usize],
            witnesses,
        };
        ChunkTally {
            scanned: steps,
            passed,
            undefined: hist[0],
            best: (best > 0)
                .then(|| tally(best, best_witnesses, ranks.values[best as usize].clone())),
            at_threshold: match (&job.target, thr) {
                (Target::CountAchieving(t), r) if r > 0 && hist[r as usize] > 0 => {
                    Some(tally(r, thr_witnesses, t.clone()))
                }
                _ => None,
            },
        }
    }

    fn scan_generic(&self, job: &SearchJob, base: u64, low_bits: u32) -> ChunkTally {
        let mut acc = ChunkTally::default();
        let mut w = self.start(base);
        for s in 0..1u64 << low_bits {
            if s > 0 {
                self.flip(&mut w, s.trailing_zeros() as usize);
            }
            acc.scanned += 1;
            let mut summary = SpectralSummary::new(self.n);
            for (alpha, &c) in w.corr[..self.size].iter().enumerate() {
                summary.add(c as i64, alpha.count_ones(), 1);
            }
            super::offer(job, &mut acc, &summary, w.table);
        }
        acc
    }
}
