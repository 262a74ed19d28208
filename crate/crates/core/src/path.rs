//! The abstract simplex path `(I, C, V)` and the data derived from it.
//!
//! A path of dimension `n` and length `k` starts at the boolean
//! `[n]`-tuple `I` and performs `k - 1` flips: flip `i` assigns the bit
//! `V_i` to coordinate `C_i`. The tuples visited along the way are the
//! simplices `R^1 = I, R^2, ..., R^k` of the path. Consecutive colors must
//! differ ("no back-flip").
//!
//! All positions in the public API are 1-based.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::tuple::{self, LastIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("initial simplex has {got} coordinates, expected {expected}")]
    InitialLength { expected: usize, got: usize },
    #[error("C has {colors} entries but V has {values}")]
    LengthMismatch { colors: usize, values: usize },
    #[error("C_{index} = {color} is outside [0, {n}]")]
    ColorOutOfRange { index: usize, color: usize, n: usize },
    #[error("back-flip: C_{index} = C_{} = {color}", index + 1)]
    BackFlip { index: usize, color: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("endpoint mismatch: last simplex {left} differs from initial simplex {right}")]
    EndpointMismatch { left: Simplex, right: Simplex },
    #[error("glue color {color} is outside [0, {n}]")]
    GlueOutOfRange { color: usize, n: usize },
    #[error("position range [{from}, {to}] is outside 1..={len}")]
    RangeOutOfBounds { from: usize, to: usize, len: usize },
    #[error("path is not admissible: {0}")]
    NotAdmissible(String),
}

/// A boolean `[n]`-tuple, the label vector at one position of a path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<bool>);

impl Simplex {
    pub fn zeros(n: usize) -> Self {
        Simplex(vec![false; n + 1])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Simplex(bits)
    }

    /// Convenience constructor from 0/1 integers; anything nonzero is 1.
    pub fn from_u8s(bits: &[u8]) -> Self {
        Simplex(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Number of coordinates, i.e. `n + 1`.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    pub fn with(&self, i: usize, value: bool) -> Self {
        let mut s = self.clone();
        s.0[i] = value;
        s
    }

    pub fn height(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    /// `Some(w)` when every coordinate equals `w`.
    pub fn mono_label(&self) -> Option<bool> {
        let first = *self.0.first()?;
        self.0.iter().all(|&b| b == first).then_some(first)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn mono_label(s: &Simplex) -> Option<bool> {
    s.mono_label()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplexPath {
    n: usize,
    initial: Simplex,
    colors: Vec<usize>,
    values: Vec<bool>,
}

impl SimplexPath {
    pub fn new(n: usize, initial: Simplex, colors: Vec<usize>, values: Vec<bool>) -> Result<Self, PathError> {
        if n == 0 {
            return Err(PathError::ZeroDimension);
        }
        if initial.width() != n + 1 {
            return Err(PathError::InitialLength {
                expected: n + 1,
                got: initial.width(),
            });
        }
        if colors.len() != values.len() {
            return Err(PathError::LengthMismatch {
                colors: colors.len(),
                values: values.len(),
            });
        }
        if let Some((i, &c)) = colors.iter().enumerate().find(|(_, &c)| c > n) {
            return Err(PathError::ColorOutOfRange {
                index: i + 1,
                color: c,
                n,
            });
        }
        if let Some(i) = colors.windows(2).position(|w| w[0] == w[1]) {
            return Err(PathError::BackFlip {
                index: i + 1,
                color: colors[i],
            });
        }
        Ok(SimplexPath {
            n,
            initial,
            colors,
            values,
        })
    }

    /// A path with zero initial simplex, the usual case for atomic and
    /// admissible paths.
    pub fn from_flips(n: usize, colors: Vec<usize>, values: Vec<bool>) -> Result<Self, PathError> {
        Self::new(n, Simplex::zeros(n), colors, values)
    }

    /// Test and example helper taking `V` as 0/1 integers.
    pub fn from_u8s(n: usize, colors: &[usize], values: &[u8]) -> Result<Self, PathError> {
        Self::from_flips(n, colors.to_vec(), values.iter().map(|&v| v != 0).collect())
    }

    /// The length-`k` 0-path with the given colors.
    pub fn zero_path(n: usize, colors: Vec<usize>) -> Result<Self, PathError> {
        let values = vec![false; colors.len()];
        Self::from_flips(n, colors, values)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// The length `k`: number of simplices, one more than the number of flips.
    pub fn len(&self) -> usize {
        self.colors.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn initial(&self) -> &Simplex {
        &self.initial
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// `C_i`, 1-based.
    pub fn color(&self, i: usize) -> usize {
        self.colors[i - 1]
    }

    /// `V_i`, 1-based.
    pub fn value(&self, i: usize) -> bool {
        self.values[i - 1]
    }

    /// The simplices `R^1, ..., R^k`, by replaying flips left to right.
    pub fn r_sequence(&self) -> Vec<Simplex> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.initial.clone();
        out.push(cur.clone());
        for (&c, &v) in self.colors.iter().zip(&self.values) {
            cur.set(c, v);
            out.push(cur.clone());
        }
        out
    }

    /// `R^j`, 1-based.
    pub fn simplex(&self, j: usize) -> Simplex {
        let mut cur = self.initial.clone();
        for (&c, &v) in self.colors[..j - 1].iter().zip(&self.values) {
            cur.set(c, v);
        }
        cur
    }

    /// `R^j` via the last-occurrence formula: coordinate `i` is `V` at the
    /// last occurrence of `i` in `C_1..C_{j-1}`, or `I_i` if there is none.
    pub fn simplex_by_last_occurrence(&self, j: usize) -> Simplex {
        let prefix = &self.colors[..j - 1];
        let bits = (0..=self.n)
            .map(|i| match tuple::last(prefix, &i) {
                LastIndex::At(l) => self.values[l - 1],
                LastIndex::Infinity => self.initial.get(i),
            })
            .collect();
        Simplex(bits)
    }

    pub fn last_simplex(&self) -> Simplex {
        self.simplex(self.len())
    }

    pub fn heights(&self) -> Heights {
        let values: Vec<usize> = self.r_sequence().iter().map(Simplex::height).collect();
        let marked = values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(i, _)| MarkedEdge {
                index: i + 1,
                mark: self.values[i],
            })
            .collect();
        Heights { values, marked }
    }

    pub fn height_stats(&self) -> HeightStats {
        let mut counts = vec![0; self.n + 2];
        for s in self.r_sequence() {
            counts[s.height()] += 1;
        }
        HeightStats(counts)
    }

    pub fn max_height(&self) -> usize {
        self.r_sequence().iter().map(Simplex::height).max().unwrap_or(0)
    }

    pub fn is_zero_path(&self) -> bool {
        self.initial.is_zero() && self.values.iter().all(|&v| !v)
    }

    pub fn is_atomic(&self) -> bool {
        let k = self.len();
        if !k.is_multiple_of(2) {
            return false;
        }
        let r = self.r_sequence();
        r[0].is_zero() && r[k - 1].is_zero() && r[1..k - 1].iter().all(|s| s.mono_label().is_none())
    }

    pub fn is_admissible(&self) -> bool {
        self.decompose().is_ok()
    }

    pub fn classify(&self) -> Classification {
        Classification {
            is_zero_path: self.is_zero_path(),
            is_atomic: self.is_atomic(),
            is_admissible: self.is_admissible(),
        }
    }

    /// `P[from, to]`: the path through `R^from, ..., R^to`.
    pub fn subpath(&self, from: usize, to: usize) -> Result<SimplexPath, PathError> {
        if from == 0 || from > to || to > self.len() {
            return Err(PathError::RangeOutOfBounds {
                from,
                to,
                len: self.len(),
            });
        }
        Ok(SimplexPath {
            n: self.n,
            initial: self.simplex(from),
            colors: self.colors[from - 1..to - 1].to_vec(),
            values: self.values[from - 1..to - 1].to_vec(),
        })
    }

    /// Glue `other` after `self` with the extra flip of color `p`.
    pub fn concatenate(&self, p: usize, other: &SimplexPath) -> Result<SimplexPath, PathError> {
        if self.n != other.n {
            return Err(PathError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if p > self.n {
            return Err(PathError::GlueOutOfRange { color: p, n: self.n });
        }
        let end = self.last_simplex();
        if end != other.initial {
            return Err(PathError::EndpointMismatch {
                left: end,
                right: other.initial.clone(),
            });
        }
        let mut colors = self.colors.clone();
        colors.push(p);
        colors.extend_from_slice(&other.colors);
        let mut values = self.values.clone();
        values.push(other.initial.get(p));
        values.extend_from_slice(&other.values);
        SimplexPath::new(self.n, self.initial.clone(), colors, values)
    }

    /// The unique factorization into atomic pieces.
    ///
    /// Pieces start and end at zero simplices with no zero simplex in
    /// between, and consecutive pieces are joined by a flip between two zero
    /// simplices, so the zero positions pair up consecutively. The pairing is
    /// therefore forced; this routine checks that it yields atomic pieces.
    pub fn decompose(&self) -> Result<Decomposition, PathError> {
        let r = self.r_sequence();
        let k = r.len();
        if let Some(j) = r.iter().position(|s| s.mono_label() == Some(true)) {
            return Err(PathError::NotAdmissible(format!(
                "R^{} = {} is 1-monochromatic",
                j + 1,
                r[j]
            )));
        }
        let zeros: Vec<usize> = (1..=k).filter(|&j| r[j - 1].is_zero()).collect();
        if zeros.first() != Some(&1) {
            return Err(PathError::NotAdmissible("initial simplex is not 0".into()));
        }
        if zeros.last() != Some(&k) {
            return Err(PathError::NotAdmissible("last simplex is not 0".into()));
        }
        if !zeros.len().is_multiple_of(2) {
            return Err(PathError::NotAdmissible("odd number of zero simplices".into()));
        }
        let mut spans = Vec::with_capacity(zeros.len() / 2);
        for (idx, pair) in zeros.chunks(2).enumerate() {
            let (a, b) = (pair[0], pair[1]);
            if idx > 0 {
                let prev_end = zeros[2 * idx - 1];
                if a != prev_end + 1 {
                    return Err(PathError::NotAdmissible(format!(
                        "zero simplex R^{prev_end} is not followed by a zero simplex"
                    )));
                }
            }
            if (b - a + 1) % 2 != 0 {
                return Err(PathError::NotAdmissible(format!("piece [{a}, {b}] has odd length")));
            }
            spans.push((a, b));
        }
        let pieces = spans
            .iter()
            .map(|&(a, b)| self.subpath(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        let glue = spans[..spans.len() - 1].iter().map(|&(_, b)| self.color(b)).collect();
        Ok(Decomposition {
            pieces,
            glue_colors: glue,
            spans,
        })
    }
}

impl fmt::Display for SimplexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.colors.iter().map(usize::to_string).collect();
        let v: Vec<&str> = self.values.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(
            f,
            "n={} I={} C=({}) V=({})",
            self.n,
            self.initial,
            c.join(","),
            v.join(",")
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedEdge {
    /// Edge between positions `index` and `index + 1`.
    pub index: usize,
    pub mark: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heights {
    /// `h_1, ..., h_k`.
    pub values: Vec<usize>,
    pub marked: Vec<MarkedEdge>,
}

/// `(ν_0, ..., ν_{n+1})`: the number of positions at each height.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightStats(pub Vec<usize>);

impl HeightStats {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Reverse lexicographic comparison: the first difference counted from
    /// the top height decides.
    pub fn revlex_cmp(&self, other: &HeightStats) -> Result<Ordering, PathError> {
        if self.0.len() != other.0.len() {
            return Err(PathError::DimensionMismatch {
                left: self.0.len().saturating_sub(2),
                right: other.0.len().saturating_sub(2),
            });
        }
        Ok(self.0.iter().rev().cmp(other.0.iter().rev()))
    }

    pub fn revlex_greater(&self, other: &HeightStats) -> Result<bool, PathError> {
        Ok(self.revlex_cmp(other)? == Ordering::Greater)
    }
}

pub fn revlex_greater(a: &HeightStats, b: &HeightStats) -> Result<bool, PathError> {
    a.revlex_greater(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_zero_path: bool,
    pub is_atomic: bool,
    pub is_admissible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub pieces: Vec<SimplexPath>,
    pub glue_colors: Vec<usize>,
    /// 1-based inclusive position range of each piece in the original path.
    pub spans: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn recompose(&self) -> Result<SimplexPath, PathError> {
        concatenate_all(&self.pieces, &self.glue_colors)
    }
}

/// Concatenate `pieces[0] ∘ glue[0] ∘ pieces[1] ∘ ...`.
pub fn concatenate_all(pieces: &[SimplexPath], glue: &[usize]) -> Result<SimplexPath, PathError> {
    assert_eq!(
        pieces.len(),
        glue.len() + 1,
        "one glue color between each pair of pieces"
    );
    let mut acc = pieces[0].clone();
    for (p, piece) in glue.iter().zip(&pieces[1..]) {
        acc = acc.concatenate(*p, piece)?;
    }
    Ok(acc)
}
