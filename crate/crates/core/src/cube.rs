//! The edge graph of the `[n]`-cube.
//!
//! Vertices are boolean functions `α: [n] -> [1]`, packed into a `u64`
//! (bit `j` is `α(j)`), so dimensions up to [`MAX_CUBE_DIM`] are supported.
//! A direction sequence `q_1, ..., q_t` describes a walk from the origin;
//! after `i` steps the walk sits at the parity vector of `q_1, ..., q_i`.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::expansion::LabelArray;

pub const MAX_CUBE_DIM: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeVertex(pub u64);

impl CubeVertex {
    pub const ORIGIN: CubeVertex = CubeVertex(0);

    pub fn unit(j: usize) -> Self {
        CubeVertex(1 << j)
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        CubeVertex(
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0, |acc, (j, _)| acc | 1 << j),
        )
    }

    pub fn get(self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    pub fn with(self, j: usize, value: bool) -> Self {
        if value {
            CubeVertex(self.0 | 1 << j)
        } else {
            CubeVertex(self.0 & !(1 << j))
        }
    }

    pub fn flip(self, j: usize) -> Self {
        CubeVertex(self.0 ^ 1 << j)
    }

    pub fn is_adjacent(self, other: CubeVertex) -> bool {
        (self.0 ^ other.0).count_ones() == 1
    }

    pub fn bits(self, n: usize) -> Vec<bool> {
        (0..=n).map(|j| self.get(j)).collect()
    }

    /// Renders `α(0) α(1) ... α(n)` as a bit string.
    pub fn display(self, n: usize) -> impl fmt::Display {
        DisplayVertex(self, n)
    }
}

struct DisplayVertex(CubeVertex, usize);

impl fmt::Display for DisplayVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..=self.1 {
            f.write_str(if self.0.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Why a direction sequence is not a cube loop or cube `p`-path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeViolation {
    #[error("dimension {n} is outside 1..={max}", max = MAX_CUBE_DIM)]
    Dimension { n: usize },
    #[error("sequence has {len} entries, at least {min} needed")]
    TooShort { len: usize, min: usize },
    #[error("q_{index} = {color} is outside [0, {n}]")]
    ColorOutOfRange { index: usize, color: usize, n: usize },
    #[error("q_{index} uses the excluded direction {p}")]
    UsesExcludedDirection { index: usize, p: usize },
    #[error("split s = {s} is outside [1, {max}]")]
    SplitOutOfRange { s: usize, max: usize },
    #[error("direction {color} occurs an odd number of times")]
    OddCount { color: usize },
    #[error("segment q[{i}, {j}] has every count even (self-intersection)")]
    SelfIntersection { i: usize, j: usize },
}

/// The cube vertex reached after the first `i` steps of `q`.
pub fn parity_vector(q: &[usize], i: usize) -> CubeVertex {
    q[..i].iter().fold(CubeVertex::ORIGIN, |v, &c| v.flip(c))
}

fn prefix_parities(q: &[usize]) -> Vec<CubeVertex> {
    let mut out = Vec::with_capacity(q.len() + 1);
    let mut cur = CubeVertex::ORIGIN;
    out.push(cur);
    for &c in q {
        cur = cur.flip(c);
        out.push(cur);
    }
    out
}

fn check_entries(n: usize, q: &[usize], excluded: Option<usize>) -> Result<(), CubeViolation> {
    if n == 0 || n > MAX_CUBE_DIM {
        return Err(CubeViolation::Dimension { n });
    }
    for (i, &c) in q.iter().enumerate() {
        if c > n {
            return Err(CubeViolation::ColorOutOfRange {
                index: i + 1,
                color: c,
                n,
            });
        }
        if Some(c) == excluded {
            return Err(CubeViolation::UsesExcludedDirection { index: i + 1, p: c });
        }
    }
    Ok(())
}

fn check_even_counts(n: usize, q: &[usize]) -> Result<(), CubeViolation> {
    let end = parity_vector(q, q.len());
    match (0..=n).find(|&c| end.get(c)) {
        Some(color) => Err(CubeViolation::OddCount { color }),
        None => Ok(()),
    }
}

/// First segment `q[i, j]` with `lo <= i < j <= hi` and all counts even,
/// skipping the pair `skip`.
fn find_even_segment(
    parities: &[CubeVertex],
    lo: usize,
    hi: usize,
    skip: Option<(usize, usize)>,
) -> Option<(usize, usize)> {
    for i in lo..=hi {
        for j in i + 1..=hi {
            if Some((i, j)) != skip && parities[i - 1] == parities[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Checks the cycle condition and the no-self-intersection condition.
pub fn validate_loop(n: usize, q: &[usize]) -> Result<(), CubeViolation> {
    check_entries(n, q, None)?;
    if q.len() < 2 {
        return Err(CubeViolation::TooShort { len: q.len(), min: 2 });
    }
    check_even_counts(n, q)?;
    let t = q.len();
    match find_even_segment(&prefix_parities(q), 1, t, Some((1, t))) {
        Some((i, j)) => Err(CubeViolation::SelfIntersection { i, j }),
        None => Ok(()),
    }
}

/// Checks that `(p, q, s)` describes a cube `p`-path: the walk `q_1..q_s`,
/// then the single `p`-edge, then `q_{s+1}..q_t`.
pub fn validate_ppath(n: usize, p: usize, q: &[usize], s: usize) -> Result<(), CubeViolation> {
    if p > n {
        return Err(CubeViolation::ColorOutOfRange { index: 0, color: p, n });
    }
    check_entries(n, q, Some(p))?;
    let t = q.len();
    if t < 2 {
        return Err(CubeViolation::TooShort { len: t, min: 2 });
    }
    if s == 0 || s >= t {
        return Err(CubeViolation::SplitOutOfRange { s, max: t - 1 });
    }
    check_even_counts(n, q)?;
    let parities = prefix_parities(q);
    if let Some((i, j)) =
        find_even_segment(&parities, 1, s, None).or_else(|| find_even_segment(&parities, s + 1, t, None))
    {
        return Err(CubeViolation::SelfIntersection { i, j });
    }
    Ok(())
}

/// `M(A)`: all `α` for which `A(α)` is monochromatic.
///
/// For a target label `b`, column `j` can be read from any row holding `b`
/// there; the admissible `α` form a subcube spanned by the columns where
/// both rows hold `b`.
pub fn mono_vertex_set(a: &LabelArray) -> BTreeSet<CubeVertex> {
    let n = a.dim();
    let mut out = BTreeSet::new();
    for b in [false, true] {
        let mut forced = 0u64;
        let mut free = Vec::new();
        let mut possible = true;
        for j in 0..=n {
            match (a.get(0, j) == b, a.get(1, j) == b) {
                (true, true) => free.push(j),
                (true, false) => {}
                (false, true) => forced |= 1 << j,
                (false, false) => {
                    possible = false;
                    break;
                }
            }
        }
        if !possible {
            continue;
        }
        for mask in 0u64..1 << free.len() {
            let v = free
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .fold(forced, |acc, (_, &j)| acc | 1 << j);
            out.insert(CubeVertex(v));
        }
    }
    out
}

pub type Matching = Vec<(CubeVertex, CubeVertex)>;

/// A matching inside `vertices` (Hamming-distance-1 pairs only) that covers
/// every vertex of `required`, if one exists.
///
/// Required vertices are inserted one at a time along alternating paths. A
/// path may end at an unmatched vertex, or at a matched vertex whose partner
/// is not required (that partner is released). Previously covered required
/// vertices stay covered, and if no such path exists no covering matching
/// exists at all.
pub fn exists_saturating_matching(
    vertices: &BTreeSet<CubeVertex>,
    required: &BTreeSet<CubeVertex>,
) -> Option<Matching> {
    let verts: Vec<CubeVertex> = vertices.iter().copied().collect();
    if !required.iter().all(|r| vertices.contains(r)) {
        return None;
    }
    let is_required: Vec<bool> = verts.iter().map(|v| required.contains(v)).collect();
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| (0..verts.len()).filter(|&u| v.is_adjacent(verts[u])).collect())
        .collect();
    let mut mate: Vec<Option<usize>> = vec![None; verts.len()];

    fn augment(
        v: usize,
        adj: &[Vec<usize>],
        is_required: &[bool],
        mate: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &u in &adj[v] {
            if visited[u] {
                continue;
            }
            visited[u] = true;
            let ok = match mate[u] {
                None => true,
                Some(w) if !is_required[w] => {
                    mate[w] = None;
                    true
                }
                Some(w) => augment(w, adj, is_required, mate, visited),
            };
            if ok {
                mate[u] = Some(v);
                mate[v] = Some(u);
                return true;
            }
        }
        false
    }

    for r in 0..verts.len() {
        if !is_required[r] || mate[r].is_some() {
            continue;
        }
        let mut visited = vec![false; verts.len()];
        visited[r] = true;
        if !augment(r, &adj, &is_required, &mut mate, &mut visited) {
            return None;
        }
    }
    Some(
        (0..verts.len())
            .filter_map(|i| mate[i].filter(|&j| i < j).map(|j| (verts[i], verts[j])))
            .collect(),
    )
}

/// Exhaustive backtracking over partner choices for each required vertex.
/// Slow, but shares no logic with [`exists_saturating_matching`], which makes
/// it usable as an independent check.
pub fn saturating_matching_by_backtracking(
    vertices: &BTreeSet<CubeVertex>,
    required: &BTreeSet<CubeVertex>,
) -> Option<Matching> {
    fn go(pending: &[CubeVertex], free: &mut BTreeSet<CubeVertex>, acc: &mut Matching) -> bool {
        let Some((&v, rest)) = pending.split_first() else {
            return true;
        };
        if !free.contains(&v) {
            return go(rest, free, acc);
        }
        free.remove(&v);
        let candidates: Vec<CubeVertex> = free.iter().copied().filter(|u| u.is_adjacent(v)).collect();
        for u in candidates {
            free.remove(&u);
            acc.push((v, u));
            if go(rest, free, acc) {
                return true;
            }
            acc.pop();
            free.insert(u);
        }
        free.insert(v);
        false
    }

    if !required.is_subset(vertices) {
        return None;
    }
    let pending: Vec<CubeVertex> = required.iter().copied().collect();
    let mut free = vertices.clone();
    let mut acc = Vec::new();
    go(&pending, &mut free, &mut acc).then_some(acc)
}

/// Checks that `matching` is a valid matching inside `vertices` covering `required`.
pub fn is_saturating_matching(
    matching: &Matching,
    vertices: &BTreeSet<CubeVertex>,
    required: &BTreeSet<CubeVertex>,
) -> bool {
    let mut used = BTreeSet::new();
    for &(a, b) in matching {
        if !a.is_adjacent(b) || !vertices.contains(&a) || !vertices.contains(&b) {
            return false;
        }
        if !used.insert(a) || !used.insert(b) {
            return false;
        }
    }
    required.iter().all(|r| used.contains(r))
}

/// Graphviz rendering of `Cube_[n]` restricted to `vertices`.
pub fn to_dot(n: usize, vertices: &BTreeSet<CubeVertex>) -> String {
    let mut out = String::from("graph cube {\n");
    for v in vertices {
        let _ = writeln!(out, "  \"{}\";", v.display(n));
    }
    for (i, a) in vertices.iter().enumerate() {
        for b in vertices.iter().skip(i + 1) {
            if a.is_adjacent(*b) {
                let _ = writeln!(out, "  \"{}\" -- \"{}\";", a.display(n), b.display(n));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Simplex;

    fn v(s: &str) -> CubeVertex {
        CubeVertex::from_bits(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    fn set(items: &[&str]) -> BTreeSet<CubeVertex> {
        items.iter().map(|s| v(s)).collect()
    }

    fn array(top: &[u8], bottom: &[u8]) -> LabelArray {
        LabelArray::new(Simplex::from_u8s(top), Simplex::from_u8s(bottom))
    }

    #[test]
    fn parity_vectors() {
        let q = [0, 1, 2, 0, 2, 1];
        assert_eq!(parity_vector(&q, 3), v("111"));
        assert_eq!(parity_vector(&q, 0), CubeVertex::ORIGIN);
        assert_eq!(parity_vector(&[2, 0, 2, 1, 2, 0, 2, 1], 8), CubeVertex::ORIGIN);
    }

    #[test]
    fn loop_validation() {
        assert_eq!(validate_loop(2, &[2, 0, 2, 1, 2, 0, 2, 1]), Ok(()));
        assert_eq!(validate_loop(1, &[0, 1]), Err(CubeViolation::OddCount { color: 0 }));
        assert_eq!(
            validate_loop(1, &[0, 1, 1, 0]),
            Err(CubeViolation::SelfIntersection { i: 2, j: 3 })
        );
        assert_eq!(validate_loop(2, &[0, 1, 2, 0, 2, 1]), Ok(()));
        assert_eq!(
            validate_loop(1, &[0, 2]),
            Err(CubeViolation::ColorOutOfRange {
                index: 2,
                color: 2,
                n: 1
            })
        );
        assert!(matches!(validate_loop(1, &[]), Err(CubeViolation::TooShort { .. })));
    }

    #[test]
    fn ppath_validation() {
        assert_eq!(validate_ppath(2, 0, &[2, 1, 2, 1], 1), Ok(()));
        assert_eq!(validate_ppath(1, 1, &[0, 0], 1), Ok(()));
        assert_eq!(validate_ppath(3, 1, &[0, 0], 1), Ok(()));
        assert_eq!(
            validate_ppath(2, 0, &[1, 2, 2, 1], 3),
            Err(CubeViolation::SelfIntersection { i: 2, j: 3 })
        );
        assert!(matches!(
            validate_ppath(2, 0, &[1, 0, 0, 1], 2),
            Err(CubeViolation::UsesExcludedDirection { index: 2, p: 0 })
        ));
        assert!(matches!(
            validate_ppath(2, 0, &[1, 1], 2),
            Err(CubeViolation::SplitOutOfRange { .. })
        ));
        assert!(matches!(
            validate_ppath(2, 0, &[1, 2], 1),
            Err(CubeViolation::OddCount { color: 1 })
        ));
    }

    #[test]
    fn mono_sets_from_move_arrays() {
        // eliminate-unit array: two adjacent 0-monochromatic vertices
        let m = mono_vertex_set(&array(&[1, 0, 0, 0], &[0, 0, 1, 1]));
        assert_eq!(m, set(&["1000", "1100"]));

        // plateau array with mixed tail: empty
        let m = mono_vertex_set(&array(&[0, 1, 1, 0], &[0, 0, 1, 0]));
        assert!(m.is_empty());

        // shorten-zeroes array with a fresh color: eight vertices
        let m = mono_vertex_set(&array(&[0, 1, 0, 0, 0, 0], &[0, 0, 0, 0, 1, 1]));
        assert_eq!(m.len(), 8);

        // the two opposite tuples case
        let m = mono_vertex_set(&array(&[0, 0], &[1, 1]));
        assert_eq!(m, set(&["00", "11"]));
    }

    #[test]
    fn matching_examples() {
        let both = set(&["100", "110"]);
        let m = exists_saturating_matching(&both, &both).unwrap();
        assert_eq!(m.len(), 1);
        assert!(is_saturating_matching(&m, &both, &both));

        let m = exists_saturating_matching(&both, &BTreeSet::new()).unwrap();
        assert!(m.is_empty());

        let far = set(&["000", "011"]);
        assert!(exists_saturating_matching(&far, &far).is_none());
        assert!(saturating_matching_by_backtracking(&far, &far).is_none());
    }

    #[test]
    fn matching_evicts_unrequired_partner() {
        // 000 - 100 - 110; 100 is first paired with 000, then 110 takes it
        let verts = set(&["000", "100", "110"]);
        let req = set(&["000", "110"]);
        assert!(exists_saturating_matching(&verts, &req).is_none());
        let req = set(&["100", "110"]);
        let m = exists_saturating_matching(&verts, &req).unwrap();
        assert!(is_saturating_matching(&m, &verts, &req));
    }

    #[test]
    fn dot_output_lists_edges() {
        let dot = to_dot(1, &set(&["00", "10", "11"]));
        assert!(dot.contains("\"00\" -- \"10\""));
        assert!(dot.contains("\"10\" -- \"11\""));
        assert!(!dot.contains("\"00\" -- \"11\""));
    }
}
