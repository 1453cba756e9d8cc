//! Independent reference computations used by the integration tests. These
//! transcribe the definitions directly, with no pruning, and stay separate
//! from the library's search paths.
#![allow(dead_code)] // each test binary uses its own subset

use multiseg::relevance::Decomposition;
use multiseg::{Multisegment, Segment};

/// All fixed-point-free involutions on the index set satisfying the
/// relevance conditions, found by pairing the first unmatched index with
/// every compatible later one and checking the row-reversal condition on
/// the completed involution.
pub fn reference_matchings(dec: &Decomposition) -> Vec<Vec<((usize, usize), (usize, usize))>> {
    let idx = dec.indices();
    if idx.len() % 2 != 0 {
        return Vec::new();
    }
    let mut partner: Vec<Option<usize>> = vec![None; idx.len()];
    let mut out = Vec::new();
    fn rec(
        dec: &Decomposition,
        idx: &[(usize, usize)],
        partner: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<((usize, usize), (usize, usize))>>,
    ) {
        let p = match partner.iter().position(Option::is_none) {
            Some(p) => p,
            None => {
                if row_reversal_holds(dec, idx, partner) {
                    let mut pairs = Vec::new();
                    for (a, b) in partner.iter().enumerate() {
                        let b = b.unwrap();
                        if a < b {
                            pairs.push((idx[a], idx[b]));
                        }
                    }
                    out.push(pairs);
                }
                return;
            }
        };
        let (pi, pj) = idx[p];
        for q in p + 1..idx.len() {
            if partner[q].is_some() {
                continue;
            }
            let (qi, qj) = idx[q];
            // the definition: lex-earlier piece is the shift of its partner
            if dec.piece(qi, qj).shift(1) != dec.piece(pi, pj) {
                continue;
            }
            partner[p] = Some(q);
            partner[q] = Some(p);
            rec(dec, idx, partner, out);
            partner[p] = None;
            partner[q] = None;
        }
    }
    rec(dec, &idx, &mut partner, &mut out);
    out
}

fn row_reversal_holds(
    dec: &Decomposition,
    idx: &[(usize, usize)],
    partner: &[Option<usize>],
) -> bool {
    let flat = |i: usize, j: usize| -> usize {
        let mut acc = 0;
        for row in &dec.pieces()[..i] {
            acc += row.len();
        }
        acc + j
    };
    for (i, row) in dec.pieces().iter().enumerate() {
        for j in 0..row.len().saturating_sub(1) {
            let r1 = idx[partner[flat(i, j)].unwrap()].0;
            let r2 = idx[partner[flat(i, j + 1)].unwrap()].0;
            if r2 >= r1 {
                return false;
            }
        }
    }
    true
}

/// Brute-force Speh witness: tries every sub-multiset `n` of `m` with
/// `2|n| = |m|` and checks `n + shift(n, 1) = m` directly.
pub fn brute_force_speh_witness(m: &Multisegment) -> Option<Multisegment> {
    let size = m.size();
    if size % 2 != 0 {
        return None;
    }
    let entries: Vec<(Segment, u32)> = m.iter().map(|(s, c)| (*s, c)).collect();
    let mut current = Multisegment::new();
    fn rec(
        entries: &[(Segment, u32)],
        pos: usize,
        remaining: u32,
        current: &mut Multisegment,
        m: &Multisegment,
    ) -> Option<Multisegment> {
        if pos == entries.len() {
            if remaining == 0 && current.sum(&current.shift_all(1)) == *m {
                return Some(current.clone());
            }
            return None;
        }
        let (seg, max) = entries[pos];
        for take in 0..=max.min(remaining) {
            if take > 0 {
                current.insert(seg, take);
            }
            let found = rec(entries, pos + 1, remaining - take, current, m);
            if take > 0 {
                current.remove(seg, take);
            }
            if found.is_some() {
                return found;
            }
        }
        None
    }
    rec(&entries, 0, size / 2, &mut current, m)
}

/// Every multisegment with support in `[0, max_end]`, size at most
/// `max_size` and multiplicities at most `max_mult` (the empty one
/// excluded). No canonical-translation filtering.
pub fn enumerate_multisegments(max_end: i32, max_size: u32, max_mult: u32) -> Vec<Multisegment> {
    let mut segments = Vec::new();
    for a in 0..=max_end {
        for b in a..=max_end {
            segments.push(Segment::new(a, b).unwrap());
        }
    }
    let mut out = Vec::new();
    let mut current = Multisegment::new();
    fn rec(
        segments: &[Segment],
        pos: usize,
        size: u32,
        max_size: u32,
        max_mult: u32,
        current: &mut Multisegment,
        out: &mut Vec<Multisegment>,
    ) {
        if pos == segments.len() {
            if size > 0 {
                out.push(current.clone());
            }
            return;
        }
        for mult in 0..=max_mult.min(max_size - size) {
            if mult > 0 {
                current.insert(segments[pos], mult);
            }
            rec(segments, pos + 1, size + mult, max_size, max_mult, current, out);
            if mult > 0 {
                current.remove(segments[pos], mult);
            }
        }
    }
    rec(&segments, 0, 0, max_size, max_mult, &mut current, &mut out);
    out
}

/// Every ladder with rows drawn from `0 <= a <= b <= max_end` and at most
/// `max_rows` rows, rows listed top-down.
pub fn enumerate_ladders(max_end: i32, max_rows: usize) -> Vec<Vec<Segment>> {
    let mut segments = Vec::new();
    for a in 0..=max_end {
        for b in a..=max_end {
            segments.push(Segment::new(a, b).unwrap());
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<Segment> = Vec::new();
    fn rec(
        segments: &[Segment],
        max_rows: usize,
        current: &mut Vec<Segment>,
        out: &mut Vec<Vec<Segment>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if current.len() == max_rows {
            return;
        }
        for &s in segments {
            if let Some(&last) = current.last() {
                if !(s.begin() < last.begin() && s.end() < last.end()) {
                    continue;
                }
            }
            current.push(s);
            rec(segments, max_rows, current, out);
            current.pop();
        }
    }
    rec(&segments, max_rows, &mut current, &mut out);
    out
}
