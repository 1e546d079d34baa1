//! Merge-only accumulators for sweeps.
//!
//! A sweep splits its index space into chunks; each chunk produces a
//! [`ChunkTally`] and tallies are merged in chunk order. Merging keeps the
//! larger maximum (summing counts on ties) and the smallest witness indices,
//! so the outcome does not depend on scheduling.

use std::cmp::Ordering;

use crate::exact::{ExactValue, RATIO_TOLERANCE};

/// Functions attaining one value.
#[derive(Clone, Debug, PartialEq)]
pub struct Tally {
    pub value: ExactValue,
    pub count: u64,
    pub balanced: u64,
    /// Smallest class indices attaining `value`, ascending, at most `cap`.
    pub witnesses: Vec<u64>,
}

impl Tally {
    pub fn new(value: ExactValue) -> Self {
        Self {
            value,
            count: 0,
            balanced: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn record(&mut self, index: u64, balanced: bool, cap: usize) {
        self.count += 1;
        self.balanced += u64::from(balanced);
        insert_witness(&mut self.witnesses, index, cap);
    }

    fn absorb(&mut self, other: Tally, cap: usize) {
        self.count += other.count;
        self.balanced += other.balanced;
        for w in other.witnesses {
            insert_witness(&mut self.witnesses, w, cap);
        }
    }
}

pub(crate) fn insert_witness(list: &mut Vec<u64>, index: u64, cap: usize) {
    if cap == 0 {
        return;
    }
    if list.len() == cap && list.last().is_some_and(|&l| l < index) {
        return;
    }
    if let Err(pos) = list.binary_search(&index) {
        list.insert(pos, index);
        list.truncate(cap);
    }
}

/// Aggregate of one chunk (or of a merged set of chunks).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChunkTally {
    pub scanned: u64,
    /// Functions passing every filter.
    pub passed: u64,
    /// Passing functions whose ratio is undefined (zero influence).
    pub undefined: u64,
    pub best: Option<Tally>,
    /// Functions equal to the count-achieving threshold, when one is set.
    pub at_threshold: Option<Tally>,
}

impl ChunkTally {
    pub fn offer_best(&mut self, value: &ExactValue, index: u64, balanced: bool, cap: usize) {
        match &mut self.best {
            None => {
                let mut t = Tally::new(value.clone());
                t.record(index, balanced, cap);
                self.best = Some(t);
            }
            Some(t) => match value.compare(&t.value, RATIO_TOLERANCE) {
                Ordering::Greater => {
                    let mut fresh = Tally::new(value.clone());
                    fresh.record(index, balanced, cap);
                    *t = fresh;
                }
                Ordering::Equal => t.record(index, balanced, cap),
                Ordering::Less => {}
            },
        }
    }

    pub fn offer_threshold(
        &mut self,
        threshold: &ExactValue,
        index: u64,
        balanced: bool,
        cap: usize,
    ) {
        self.at_threshold
            .get_or_insert_with(|| Tally::new(threshold.clone()))
            .record(index, balanced, cap);
    }

    pub fn merge(&mut self, other: ChunkTally, cap: usize) {
        self.scanned += other.scanned;
        self.passed += other.passed;
        self.undefined += other.undefined;
        self.best = match (self.best.take(), other.best) {
            (None, b) | (b, None) => b,
            (Some(mut a), Some(b)) => match b.value.compare(&a.value, RATIO_TOLERANCE) {
                Ordering::Greater => Some(b),
                Ordering::Less => Some(a),
                Ordering::Equal => {
                    a.absorb(b, cap);
                    Some(a)
                }
            },
        };
        self.at_threshold = match (self.at_threshold.take(), other.at_threshold) {
            (None, b) | (b, None) => b,
            (Some(mut a), Some(b)) => {
                a.absorb(b, cap);
                Some(a)
            }
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_keep_smallest() {
        let mut v = Vec::new();
        for i in [9, 3, 7, 1, 8, 2] {
            insert_witness(&mut v, i, 3);
        }
        assert_eq!(v, vec![1, 2, 3]);
        insert_witness(&mut v, 2, 3);
        assert_eq!(v, vec![1, 2, 3]);
    }

    #[test]
    fn merge_is_order_independent() {
        let mk = |vals: &[(i64, u64)]| {
            let mut t = ChunkTally::default();
            for &(v, i) in vals {
                t.scanned += 1;
                t.offer_best(&ExactValue::integer(v), i, i % 2 == 0, 4);
            }
            t
        };
        let a = mk(&[(1, 0), (3, 1), (3, 2)]);
        let b = mk(&[(3, 10), (2, 11)]);
        let c = mk(&[(0, 20)]);
        let mut x = a.clone();
        x.merge(b.clone(), 4);
        x.merge(c.clone(), 4);
        let mut y = c;
        y.merge(b, 4);
        y.merge(a, 4);
        assert_eq!(x, y);
        let best = x.best.unwrap();
        assert_eq!(best.count, 3);
        assert_eq!(best.balanced, 2);
        assert_eq!(best.witnesses, vec![1, 2, 10]);
    }
}
