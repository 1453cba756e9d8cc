//! The NC chain criterion for products of two ladders, pairwise reduction,
//! min-excision and the hypothesis-aware product verdict.

use crate::ladders::Ladder;
use crate::multisegment::Multisegment;
use crate::segment::Segment;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrreducibilityError {
    #[error("empty input")]
    EmptyInput,
    #[error("product of the given ladders is reducible")]
    ReducibleProduct,
}

/// A witness `(i, j, k)` for the NC condition, 1-indexed rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NcWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// The chain criterion: there are `k >= 0`, `i`, `j` with each of the `k+1`
/// consecutive rows of `m` preceding the matching row of `n`, and the two
/// boundary non-precedence conditions.
pub fn nc(m: &Ladder, n: &Ladder) -> Option<NcWitness> {
    let t = m.len();
    let s = n.len();
    let row = |l: &Ladder, i: usize| l.rows()[i - 1]; // 1-indexed
    for k in 0..t.min(s) {
        for i in 1..=t - k {
            for j in 1..=s - k {
                let chain = (0..=k).all(|l| row(m, i + l).precedes(&row(n, j + l)));
                if !chain {
                    continue;
                }
                if i > 1 && row(m, i - 1).shift(-1).precedes(&row(n, j)) {
                    continue;
                }
                if j + k + 1 <= s && row(m, i + k).shift(-1).precedes(&row(n, j + k + 1)) {
                    continue;
                }
                return Some(NcWitness { i, j, k });
            }
        }
    }
    None
}

/// Irreducible iff no unordered pair satisfies NC in either direction.
pub fn product_irreducible(ladders: &[Ladder]) -> bool {
    for (a, l1) in ladders.iter().enumerate() {
        for l2 in &ladders[a + 1..] {
            if nc(l1, l2).is_some() || nc(l2, l1).is_some() {
                return false;
            }
        }
    }
    true
}

/// Removes one copy of the `<=_b`-minimal segment of the total sum from
/// every multisegment containing it.
pub fn excise_min(
    list: &[Multisegment],
) -> Result<(Segment, Vec<Multisegment>), IrreducibilityError> {
    let total = list
        .iter()
        .fold(Multisegment::new(), |acc, m| acc.sum(m));
    let d0 = total.min_segment().ok_or(IrreducibilityError::EmptyInput)?;
    let excised = list
        .iter()
        .map(|m| {
            let mut m = m.clone();
            if m.multiplicity(&d0) > 0 {
                m.remove(d0, 1);
            }
            m
        })
        .collect();
    Ok((d0, excised))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductVerdict {
    Distinguished,
    NotDistinguished,
    HypothesisDependent(String),
}

/// Sp-distinction of an irreducible product of ladders. Unconditional when
/// every factor is Sp-distinguished, or when a factor fails and there are at
/// most two ladders; otherwise the answer depends on the open hypothesis and
/// is reported as such.
pub fn product_sp_verdict(ladders: &[Ladder]) -> Result<ProductVerdict, IrreducibilityError> {
    if !product_irreducible(ladders) {
        return Err(IrreducibilityError::ReducibleProduct);
    }
    if ladders.iter().all(Ladder::sp_distinguished_l) {
        return Ok(ProductVerdict::Distinguished);
    }
    if ladders.len() <= 2 {
        Ok(ProductVerdict::NotDistinguished)
    } else {
        Ok(ProductVerdict::HypothesisDependent(
            "not distinguished if Hypothesis ** holds".to_string(),
        ))
    }
}
