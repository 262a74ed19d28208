//! The color permutation action, the reflection action, and canonical
//! orbit representatives.

use thiserror::Error;

use crate::path::{PathError, Simplex, SimplexPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("not a permutation of [0, {n}]: {image:?}")]
    NotAPermutation { n: usize, image: Vec<usize> },
    #[error("permutation acts on [0, {perm}] but the path has dimension {path}")]
    DimensionMismatch { perm: usize, path: usize },
    #[error("canonical forms need a zero initial simplex, got {0}")]
    NonzeroInitial(Simplex),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// A bijection `[0, n] -> [0, n]`, stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorPermutation(Vec<usize>);

impl ColorPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self, SymmetryError> {
        let len = image.len();
        let mut seen = vec![false; len];
        for &x in &image {
            if x >= len || seen[x] {
                return Err(SymmetryError::NotAPermutation {
                    n: len.saturating_sub(1),
                    image,
                });
            }
            seen[x] = true;
        }
        Ok(ColorPermutation(image))
    }

    pub fn identity(n: usize) -> Self {
        ColorPermutation((0..=n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..=n).collect();
        image.swap(a, b);
        ColorPermutation(image)
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, c: usize) -> usize {
        self.0[c]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        ColorPermutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ColorPermutation) -> Self {
        ColorPermutation(other.0.iter().map(|&x| self.0[x]).collect())
    }
}

/// `π(P)`: colors are mapped through `π` and the initial simplex is moved
/// along with them (coordinate `c` of `I` becomes coordinate `π(c)`), so
/// that `R^j(π(P))` is `R^j(P)` with coordinates relabeled.
pub fn permute(pi: &ColorPermutation, path: &SimplexPath) -> Result<SimplexPath, SymmetryError> {
    if pi.dim() != path.dim() {
        return Err(SymmetryError::DimensionMismatch {
            perm: pi.dim(),
            path: path.dim(),
        });
    }
    Ok(SimplexPath::new(
        path.dim(),
        permute_simplex(pi, path.initial()),
        path.colors().iter().map(|&c| pi.apply(c)).collect(),
        path.values().to_vec(),
    )?)
}

pub fn permute_simplex(pi: &ColorPermutation, s: &Simplex) -> Simplex {
    let mut out = Simplex::zeros(s.width() - 1);
    for (c, &b) in s.bits().iter().enumerate() {
        out.set(pi.apply(c), b);
    }
    out
}

/// Walk the path backwards. The new initial simplex is `R^k`, colors are
/// reversed, and the value written by each reversed flip is the value the
/// coordinate had before the original flip.
pub fn reflect(path: &SimplexPath) -> SimplexPath {
    let r = path.r_sequence();
    let k = path.len();
    let colors: Vec<usize> = path.colors().iter().rev().copied().collect();
    let values: Vec<bool> = (1..k).rev().map(|j| r[j - 1].get(path.color(j))).collect();
    SimplexPath::new(path.dim(), r[k - 1].clone(), colors, values).expect("reversing a valid path keeps it valid")
}

/// Relabel colors in order of first appearance. Requires `I = 0`, since
/// only then is the initial simplex fixed by every relabeling.
pub fn canonicalize(path: &SimplexPath, mod_reflection: bool) -> Result<SimplexPath, SymmetryError> {
    let forward = relabel_by_first_appearance(path)?;
    if !mod_reflection {
        return Ok(forward);
    }
    let backward = relabel_by_first_appearance(&reflect(path))?;
    Ok(std::cmp::min_by(forward, backward, |a, b| {
        (a.colors(), a.values()).cmp(&(b.colors(), b.values()))
    }))
}

fn relabel_by_first_appearance(path: &SimplexPath) -> Result<SimplexPath, SymmetryError> {
    if !path.initial().is_zero() {
        return Err(SymmetryError::NonzeroInitial(path.initial().clone()));
    }
    let mut map: Vec<Option<usize>> = vec![None; path.dim() + 1];
    let mut next = 0;
    let colors = path
        .colors()
        .iter()
        .map(|&c| {
            *map[c].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    Ok(SimplexPath::from_flips(path.dim(), colors, path.values().to_vec())?)
}

/// Whether the color sequence is in restricted-growth form: each color is
/// at most one more than the largest color before it, starting at 0.
pub fn is_restricted_growth(colors: &[usize]) -> bool {
    let mut bound = 0;
    for &c in colors {
        if c > bound {
            return false;
        }
        if c == bound {
            bound += 1;
        }
    }
    true
}
