//! Integer segments `[a,b]` and the binary relations on them.
//!
//! A segment is a nonempty interval of consecutive integers. The empty
//! segment is never represented by a value; operations that may produce an
//! empty result return `Option`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SegmentError {
    #[error("invalid segment [{0},{1}]: begin must be <= end")]
    EmptyRange(i32, i32),
}

/// A nonempty interval `[a,b]` of integers, `a <= b`.
///
/// Ordered lexicographically by `(begin, end)`; this coincides with the
/// `<=_b` linear order used for excision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Segment {
    begin: i32,
    end: i32,
}

impl Segment {
    pub fn new(begin: i32, end: i32) -> Result<Self, SegmentError> {
        if begin > end {
            return Err(SegmentError::EmptyRange(begin, end));
        }
        Ok(Segment { begin, end })
    }

    pub fn begin(&self) -> i32 {
        self.begin
    }

    pub fn end(&self) -> i32 {
        self.end
    }

    pub fn len(&self) -> i32 {
        self.end - self.begin + 1
    }

    /// Translation by `n`: the n-fold iterate of `[a,b] -> [a+1,b+1]`.
    pub fn shift(&self, n: i32) -> Segment {
        Segment {
            begin: self.begin + n,
            end: self.end + n,
        }
    }

    /// Reflection `[a,b] -> [-b,-a]`.
    pub fn dual(&self) -> Segment {
        Segment {
            begin: -self.end,
            end: -self.begin,
        }
    }

    /// The linkage order: `[a,b]` precedes `[a',b']` iff `a < a'`, `b < b'`
    /// and `b >= a' - 1`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.begin < other.begin && self.end < other.end && self.end >= other.begin - 1
    }

    /// Linked iff one precedes the other.
    pub fn linked(&self, other: &Segment) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.begin <= other.begin && other.end <= self.end
    }

    pub fn intersection(&self, other: &Segment) -> Option<Segment> {
        let begin = self.begin.max(other.begin);
        let end = self.end.min(other.end);
        (begin <= end).then_some(Segment { begin, end })
    }

    pub fn intersection_length(&self, other: &Segment) -> i32 {
        self.intersection(other).map_or(0, |s| s.len())
    }

    /// The union when it is again an interval (overlapping or adjacent).
    pub fn union_if_segment(&self, other: &Segment) -> Option<Segment> {
        let (lo, hi) = if self.begin <= other.begin {
            (self, other)
        } else {
            (other, self)
        };
        (hi.begin <= lo.end + 1).then_some(Segment {
            begin: lo.begin,
            end: self.end.max(other.end),
        })
    }

    /// Right alignment of `self` with `target`: requires
    /// `begin(target) >= begin(self) + 1` and `end(target) = end(self) + 1`.
    /// Returns the label `r = d * (begin(target) - begin(self) - 1)`.
    pub fn right_aligned(&self, target: &Segment, d: i32) -> Option<i32> {
        debug_assert!(d >= 1);
        (target.begin >= self.begin + 1 && target.end == self.end + 1)
            .then(|| d * (target.begin - self.begin - 1))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.begin, self.end)
    }
}

/// Shorthand used throughout the tests.
pub fn seg(a: i32, b: i32) -> Segment {
    Segment::new(a, b).expect("nonempty segment")
}
