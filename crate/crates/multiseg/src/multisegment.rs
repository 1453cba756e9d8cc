//! Multisegments: finite multisets of segments, their orders, Speh-type
//! testing, duality, block partitions and elementary operations.

use crate::segment::Segment;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElementaryOpError {
    #[error("segment {0} is not present with sufficient multiplicity")]
    NotPresent(Segment),
    #[error("segments {0} and {1} are not linked")]
    NotLinked(Segment, Segment),
}

/// A finite multiset of segments, stored as segment -> multiplicity.
///
/// Iteration order is ascending `(begin, end)`; the textual form lists
/// segments in descending order (the convention used for ladders).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Multisegment {
    counts: BTreeMap<Segment, u32>,
}

impl Multisegment {
    pub fn new() -> Self {
        Multisegment::default()
    }

    pub fn singleton(seg: Segment) -> Self {
        let mut m = Multisegment::new();
        m.insert(seg, 1);
        m
    }

    pub fn insert(&mut self, seg: Segment, mult: u32) {
        if mult > 0 {
            *self.counts.entry(seg).or_insert(0) += mult;
        }
    }

    /// Removes `mult` copies; panics if fewer are present.
    pub fn remove(&mut self, seg: Segment, mult: u32) {
        if mult == 0 {
            return;
        }
        let c = self.counts.get_mut(&seg).expect("segment present");
        assert!(*c >= mult, "removing more copies than present");
        *c -= mult;
        if *c == 0 {
            self.counts.remove(&seg);
        }
    }

    pub fn multiplicity(&self, seg: &Segment) -> u32 {
        self.counts.get(seg).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// True if every multiplicity is 1.
    pub fn is_set(&self) -> bool {
        self.counts.values().all(|&c| c == 1)
    }

    /// Ascending `(begin, end)` iteration over (segment, multiplicity).
    pub fn iter(&self) -> impl Iterator<Item = (&Segment, u32)> {
        self.counts.iter().map(|(s, &c)| (s, c))
    }

    /// Every copy of every segment, ascending.
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.counts
            .iter()
            .flat_map(|(s, &c)| std::iter::repeat(*s).take(c as usize))
    }

    /// The `<=_b`-minimal segment (smallest begin, ties by smallest end).
    pub fn min_segment(&self) -> Option<Segment> {
        self.counts.keys().next().copied()
    }

    pub fn support_values(&self) -> BTreeSet<i32> {
        let mut set = BTreeSet::new();
        for (s, _) in self.iter() {
            set.extend(s.begin()..=s.end());
        }
        set
    }

    pub fn sum(&self, other: &Multisegment) -> Multisegment {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.insert(*s, c);
        }
        out
    }

    /// Pointwise minimum of multiplicity functions.
    pub fn pointwise_min(&self, other: &Multisegment) -> Multisegment {
        let mut out = Multisegment::new();
        for (s, c) in self.iter() {
            out.insert(*s, c.min(other.multiplicity(s)));
        }
        out
    }

    /// Multiset difference; panics if `other` is not contained in `self`.
    pub fn difference(&self, other: &Multisegment) -> Multisegment {
        let mut out = self.clone();
        for (s, c) in other.iter() {
            out.remove(*s, c);
        }
        out
    }

    pub fn shift_all(&self, n: i32) -> Multisegment {
        let mut out = Multisegment::new();
        for (s, c) in self.iter() {
            out.insert(s.shift(n), c);
        }
        out
    }

    /// `m^v(D) = m(D^v)` with `[a,b]^v = [-b,-a]`.
    pub fn dual(&self) -> Multisegment {
        let mut out = Multisegment::new();
        for (s, c) in self.iter() {
            out.insert(s.dual(), c);
        }
        out
    }

    /// Speh-type witness: some `n` with `self = n + shift(n, 1)`.
    ///
    /// Greedy: the `<=_b`-minimal segment can only be matched into the
    /// witness, so all of its copies are forced.
    pub fn speh_witness(&self) -> Option<Multisegment> {
        let mut rest = self.clone();
        let mut witness = Multisegment::new();
        while let Some(d0) = rest.min_segment() {
            let c = rest.multiplicity(&d0);
            let up = d0.shift(1);
            if rest.multiplicity(&up) < c {
                return None;
            }
            witness.insert(d0, c);
            rest.remove(d0, c);
            rest.remove(up, c);
        }
        Some(witness)
    }

    pub fn is_speh_type(&self) -> bool {
        self.speh_witness().is_some()
    }

    /// All distinct standard orders: sequences in which no earlier segment
    /// precedes a later one. Orders differing only by transposing equal
    /// segments are identified.
    pub fn standard_orders(&self) -> Vec<OrderedMultisegment> {
        let mut out = Vec::new();
        let mut remaining = self.clone();
        let mut acc = Vec::with_capacity(self.size() as usize);
        fn rec(
            remaining: &mut Multisegment,
            acc: &mut Vec<Segment>,
            out: &mut Vec<OrderedMultisegment>,
        ) {
            if remaining.is_empty() {
                out.push(OrderedMultisegment::new(acc.clone()));
                return;
            }
            let candidates: Vec<Segment> = remaining.counts.keys().copied().collect();
            for v in candidates {
                // v may be placed next iff it precedes nothing still pending
                if remaining.counts.keys().any(|w| v.precedes(w)) {
                    continue;
                }
                remaining.remove(v, 1);
                acc.push(v);
                rec(remaining, acc, out);
                acc.pop();
                remaining.insert(v, 1);
            }
        }
        rec(&mut remaining, &mut acc, &mut out);
        out
    }

    /// Split by distinct ends `c_1 > ... > c_s`; block `i` collects the
    /// segments ending at `c_i`.
    pub fn block_partition(&self) -> Vec<(i32, Multisegment)> {
        let mut by_end: BTreeMap<i32, Multisegment> = BTreeMap::new();
        for (s, c) in self.iter() {
            by_end.entry(s.end()).or_default().insert(*s, c);
        }
        by_end.into_iter().rev().collect()
    }

    /// The canonical standard order: within each end-block, the tail is the
    /// pointwise minimum with the down-shift of the previous head, ordered by
    /// descending begin; the head is the remainder, ordered by ascending
    /// begin; blocks are concatenated by descending end.
    pub fn canonical_order(&self) -> OrderedMultisegment {
        let blocks = self.block_partition();
        let mut rows = Vec::with_capacity(self.size() as usize);
        let mut prev_head: Option<Multisegment> = None;
        for (_, block) in blocks {
            let tail = match &prev_head {
                Some(head) => block.pointwise_min(&head.shift_all(-1)),
                None => Multisegment::new(),
            };
            let head = block.difference(&tail);
            let mut head_rows: Vec<Segment> = head.segments().collect();
            head_rows.sort_by_key(|s| s.begin());
            let mut tail_rows: Vec<Segment> = tail.segments().collect();
            tail_rows.sort_by_key(|s| std::cmp::Reverse(s.begin()));
            rows.extend(head_rows);
            rows.extend(tail_rows);
            prev_head = Some(head);
        }
        OrderedMultisegment::new(rows)
    }

    /// Replace a linked pair by its union and (when nonempty) intersection.
    pub fn elementary_operation(
        &self,
        d1: Segment,
        d2: Segment,
    ) -> Result<Multisegment, ElementaryOpError> {
        let needed = if d1 == d2 { 2 } else { 1 };
        if self.multiplicity(&d1) < needed {
            return Err(ElementaryOpError::NotPresent(d1));
        }
        if d1 != d2 && self.multiplicity(&d2) < 1 {
            return Err(ElementaryOpError::NotPresent(d2));
        }
        if !d1.linked(&d2) {
            return Err(ElementaryOpError::NotLinked(d1, d2));
        }
        let mut out = self.clone();
        out.remove(d1, 1);
        out.remove(d2, 1);
        out.insert(d1.union_if_segment(&d2).expect("linked implies union"), 1);
        if let Some(i) = d1.intersection(&d2) {
            out.insert(i, 1);
        }
        Ok(out)
    }

    /// All multisegments reachable by sequences of elementary operations,
    /// including `self`. Truncated (with a flag) once `cap` is exceeded.
    pub fn subquotient_closure(&self, cap: usize) -> Closure {
        let mut seen: BTreeSet<Multisegment> = BTreeSet::new();
        let mut queue: VecDeque<Multisegment> = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        let mut truncated = false;
        'outer: while let Some(m) = queue.pop_front() {
            let segs: Vec<Segment> = m.counts.keys().copied().collect();
            for (i, &d1) in segs.iter().enumerate() {
                for &d2 in &segs[i..] {
                    if let Ok(next) = m.elementary_operation(d1, d2) {
                        if seen.contains(&next) {
                            continue;
                        }
                        if seen.len() >= cap {
                            truncated = true;
                            break 'outer;
                        }
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        Closure {
            multisegments: seen,
            truncated,
        }
    }

    /// Necessary condition for Speh type on one `nu`-chain of a single
    /// length: `None` unless all segments share a length and lie on the
    /// chain of the minimal segment; then checks the alternating-sum
    /// condition together with nonnegative partial sums.
    pub fn alternating_sum_check(&self) -> Option<bool> {
        let d0 = self.min_segment()?;
        let len = d0.len();
        let mut coeffs: Vec<u32> = Vec::new();
        for (s, c) in self.iter() {
            if s.len() != len {
                return None;
            }
            let n = s.begin() - d0.begin();
            // same begin offset and same length puts s on the chain of d0
            debug_assert!(n >= 0);
            let n = n as usize;
            if coeffs.len() <= n {
                coeffs.resize(n + 1, 0);
            }
            coeffs[n] = c;
        }
        let mut partial: i64 = 0;
        for &a in &coeffs {
            partial = a as i64 - partial;
            if partial < 0 {
                return Some(false);
            }
        }
        Some(partial == 0)
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<T: IntoIterator<Item = Segment>>(iter: T) -> Self {
        let mut m = Multisegment::new();
        for s in iter {
            m.insert(s, 1);
        }
        m
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in self.counts.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if *c > 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Result of a bounded subquotient closure computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    pub multisegments: BTreeSet<Multisegment>,
    pub truncated: bool,
}

/// One linear order on a multisegment: a sequence of segments with
/// repetition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderedMultisegment {
    rows: Vec<Segment>,
}

impl OrderedMultisegment {
    pub fn new(rows: Vec<Segment>) -> Self {
        OrderedMultisegment { rows }
    }

    pub fn rows(&self) -> &[Segment] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// No earlier row precedes a later one.
    pub fn is_standard_form(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i + 1..].iter().all(|b| !a.precedes(b)))
    }

    pub fn as_multisegment(&self) -> Multisegment {
        self.rows.iter().copied().collect()
    }

    pub fn shift_all(&self, n: i32) -> OrderedMultisegment {
        OrderedMultisegment::new(self.rows.iter().map(|s| s.shift(n)).collect())
    }
}

impl fmt::Display for OrderedMultisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Every maximal run of consecutive integers in a set.
fn components(v: &BTreeSet<i32>) -> Vec<(i32, i32)> {
    let mut out: Vec<(i32, i32)> = Vec::new();
    for &x in v {
        match out.last_mut() {
            Some((_, hi)) if *hi + 1 == x => *hi = x,
            _ => out.push((x, x)),
        }
    }
    out
}

/// Totally disjoint integer supports: every component of one set is
/// separated from every component of the other by a gap of at least 2.
pub fn totally_disjoint(v1: &BTreeSet<i32>, v2: &BTreeSet<i32>) -> bool {
    let c1 = components(v1);
    let c2 = components(v2);
    c1.iter().all(|&(lo1, hi1)| {
        c2.iter()
            .all(|&(lo2, hi2)| lo2 - hi1 >= 2 || lo1 - hi2 >= 2)
    })
}
