//! Isomorph-free enumeration of atomic paths.
//!
//! Color sequences are generated in restricted-growth form, which picks
//! exactly one representative per orbit of the color permutation action
//! (the initial simplex is 0, so every relabeling fixes it).

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::path::{Simplex, SimplexPath};
use crate::symmetry::canonicalize;

pub const MAX_N: usize = 5;
pub const MAX_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("length {0} must be even and at least 2")]
    BadLength(usize),
    #[error("bounds n <= {n}, k <= {k} exceed the supported n <= {MAX_N}, k <= {MAX_K}")]
    TooLarge { n: usize, k: usize },
}

struct Search {
    n: usize,
    k: usize,
    colors: Vec<usize>,
    values: Vec<bool>,
    out: Vec<SimplexPath>,
}

impl Search {
    // `r` is R^j with j = colors.len() + 1; `used` is one past the largest
    // color so far
    fn go(&mut self, r: &mut Simplex, used: usize) {
        let j = self.colors.len() + 1;
        if j == self.k {
            if r.is_zero() {
                let p = SimplexPath::from_flips(self.n, self.colors.clone(), self.values.clone())
                    .expect("generated flips are valid");
                self.out.push(p);
            }
            return;
        }
        for c in 0..=used.min(self.n) {
            if self.colors.last() == Some(&c) {
                continue;
            }
            for v in [false, true] {
                let old = r.get(c);
                r.set(c, v);
                let next = j + 1;
                let h = r.height();
                let ok = if next == self.k {
                    h == 0
                } else {
                    r.mono_label().is_none() && h <= self.k - next
                };
                if ok {
                    self.colors.push(c);
                    self.values.push(v);
                    self.go(r, used.max(c + 1));
                    self.colors.pop();
                    self.values.pop();
                }
                r.set(c, old);
            }
        }
    }
}

/// One representative per color-permutation class of atomic paths of
/// dimension `n` and length `k` (optionally also up to reflection), sorted
/// by `(C, V)`.
pub fn enumerate_atomic(n: usize, k: usize, mod_reflection: bool) -> Result<Vec<SimplexPath>, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroDimension);
    }
    if k < 2 || !k.is_multiple_of(2) {
        return Err(CensusError::BadLength(k));
    }
    let mut s = Search {
        n,
        k,
        colors: Vec::new(),
        values: Vec::new(),
        out: Vec::new(),
    };
    s.go(&mut Simplex::zeros(n), 0);
    let mut out = s.out;
    if mod_reflection {
        let set: BTreeSet<(Vec<usize>, Vec<bool>)> = out
            .iter()
            .map(|p| {
                let c = canonicalize(p, true).expect("atomic paths start at 0");
                (c.colors().to_vec(), c.values().to_vec())
            })
            .collect();
        out = set
            .into_iter()
            .map(|(c, v)| SimplexPath::from_flips(n, c, v).expect("canonical form is valid"))
            .collect();
    }
    out.sort_by(|a, b| (a.colors(), a.values()).cmp(&(b.colors(), b.values())));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub count_mod_reflection: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    pub rows: Vec<CensusRow>,
}

impl CensusTable {
    pub fn get(&self, n: usize, k: usize) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.n == n && r.k == k)
    }

    /// Smallest `n` from which the counts at length `k` no longer change
    /// within the table.
    pub fn stable_from(&self, k: usize) -> Option<usize> {
        let rows: Vec<&CensusRow> = self.rows.iter().filter(|r| r.k == k).collect();
        let last = rows.last()?;
        let key = |r: &CensusRow| (r.count, r.count_mod_reflection);
        rows.iter()
            .rev()
            .take_while(|r| key(r) == key(last))
            .last()
            .map(|r| r.n)
    }
}

pub fn census(n_max: usize, k_max: usize) -> Result<CensusTable, CensusError> {
    if n_max == 0 {
        return Err(CensusError::ZeroDimension);
    }
    if n_max > MAX_N || k_max > MAX_K {
        return Err(CensusError::TooLarge { n: n_max, k: k_max });
    }
    if k_max < 2 {
        return Err(CensusError::BadLength(k_max));
    }
    let mut rows = Vec::new();
    for k in (2..=k_max).step_by(2) {
        for n in 1..=n_max {
            rows.push(CensusRow {
                n,
                k,
                count: enumerate_atomic(n, k, false)?.len(),
                count_mod_reflection: enumerate_atomic(n, k, true)?.len(),
            });
        }
    }
    Ok(CensusTable { rows })
}
