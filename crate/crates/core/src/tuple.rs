//! Occurrence statistics over finite tuples.
//!
//! Indices are 1-based throughout, so that they can be compared directly
//! against positions in a path's color sequence.

use std::fmt;

/// The index of the last occurrence of an element, or `Infinity` when the
/// element does not occur at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LastIndex {
    At(usize),
    Infinity,
}

impl LastIndex {
    pub fn index(self) -> Option<usize> {
        match self {
            LastIndex::At(i) => Some(i),
            LastIndex::Infinity => None,
        }
    }
}

impl fmt::Display for LastIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LastIndex::At(i) => write!(f, "{i}"),
            LastIndex::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleStats {
    /// 1-based positions of the element, increasing.
    pub occurrences: Vec<usize>,
    pub count: usize,
    pub last: LastIndex,
}

pub fn tuple_stats<T: PartialEq>(tuple: &[T], q: &T) -> TupleStats {
    let occurrences: Vec<usize> = tuple
        .iter()
        .enumerate()
        .filter(|(_, x)| *x == q)
        .map(|(i, _)| i + 1)
        .collect();
    let last = occurrences.last().map_or(LastIndex::Infinity, |&i| LastIndex::At(i));
    TupleStats {
        count: occurrences.len(),
        occurrences,
        last,
    }
}

pub fn count<T: PartialEq>(tuple: &[T], q: &T) -> usize {
    tuple.iter().filter(|x| *x == q).count()
}

pub fn last<T: PartialEq>(tuple: &[T], q: &T) -> LastIndex {
    tuple
        .iter()
        .rposition(|x| x == q)
        .map_or(LastIndex::Infinity, |i| LastIndex::At(i + 1))
}
