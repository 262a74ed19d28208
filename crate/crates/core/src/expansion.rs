//! Vertex and edge expansions and the exhaustiveness predicate.
//!
//! A vertex expansion at position `m` replaces the simplex `R^m` by a walk
//! through a subdivided copy of it: the new simplices are `A(α)` for the
//! vertices `α` visited by a cube loop `Q` (the walk is dual to a tour of
//! the boundary of a cross-polytope). An edge expansion does the same for
//! the pair `R^m, R^{m+1}` sharing the facet opposite color `C_m`, using a
//! cube `C_m`-path and a split `s` that says when the walk crosses over.
//!
//! `A` is the label array: row 0 holds the old labels `R^m(P)`, row 1 the
//! new labels `D` (for an edge expansion, column `C_m` of row 1 is `V_m`).
//! An expansion is exhaustive when every `α` with `A(α)` monochromatic is
//! either visited by the new path or matched to a cube neighbor.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cube::{self, CubeVertex, CubeViolation, Matching, MAX_CUBE_DIM};
use crate::path::{PathError, Simplex, SimplexPath};
use crate::tuple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("path of length {k} is too short for a {kind} expansion")]
    PathTooShort { kind: &'static str, k: usize },
    #[error("position m = {m} is outside [{min}, {max}]")]
    PositionOutOfRange { m: usize, min: usize, max: usize },
    #[error("D has {got} entries, expected {expected}")]
    LabelsLength { expected: usize, got: usize },
    #[error("D must be blank exactly at column C_m = {c_m}, found a problem at column {column}")]
    LabelSlot { c_m: usize, column: usize },
    #[error("Q must run from {expected_first} to {expected_last}, got q_1 = {first}, q_t = {last}")]
    Endpoints {
        expected_first: usize,
        expected_last: usize,
        first: usize,
        last: usize,
    },
    #[error("dimension {n} is too large for cube computations")]
    DimensionTooLarge { n: usize },
    #[error("invalid cube walk: {0}")]
    Cube(#[from] CubeViolation),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexExpansion {
    pub m: usize,
    /// New labels `d_0, ..., d_n`.
    pub d: Vec<bool>,
    pub q: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeExpansion {
    pub m: usize,
    /// New labels indexed by `[n]`; blank (`None`) exactly at column `C_m`.
    pub d: Vec<Option<bool>>,
    pub q: Vec<usize>,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expansion {
    Vertex(VertexExpansion),
    Edge(EdgeExpansion),
}

impl Expansion {
    pub fn m(&self) -> usize {
        match self {
            Expansion::Vertex(e) => e.m,
            Expansion::Edge(e) => e.m,
        }
    }

    pub fn q(&self) -> &[usize] {
        match self {
            Expansion::Vertex(e) => &e.q,
            Expansion::Edge(e) => &e.q,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Expansion::Vertex(_) => "vertex",
            Expansion::Edge(_) => "edge",
        }
    }
}

impl From<VertexExpansion> for Expansion {
    fn from(e: VertexExpansion) -> Self {
        Expansion::Vertex(e)
    }
}

impl From<EdgeExpansion> for Expansion {
    fn from(e: EdgeExpansion) -> Self {
        Expansion::Edge(e)
    }
}

/// The `2 × (n+1)` array pairing old and new labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelArray {
    rows: [Simplex; 2],
}

impl LabelArray {
    pub fn new(old: Simplex, new: Simplex) -> Self {
        assert_eq!(old.width(), new.width(), "label array rows differ in width");
        LabelArray { rows: [old, new] }
    }

    pub fn dim(&self) -> usize {
        self.rows[0].width() - 1
    }

    pub fn row(&self, r: usize) -> &Simplex {
        &self.rows[r]
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    /// `A(α) = (A[α(0), 0], ..., A[α(n), n])`.
    pub fn eval(&self, alpha: CubeVertex) -> Simplex {
        Simplex::from_bits(
            (0..=self.dim())
                .map(|j| self.get(usize::from(alpha.get(j)), j))
                .collect(),
        )
    }
}

fn check_vertex(path: &SimplexPath, e: &VertexExpansion) -> Result<(), ExpansionError> {
    let k = path.len();
    let n = path.dim();
    if n > MAX_CUBE_DIM {
        return Err(ExpansionError::DimensionTooLarge { n });
    }
    if k < 3 {
        return Err(ExpansionError::PathTooShort { kind: "vertex", k });
    }
    if e.m < 2 || e.m > k - 1 {
        return Err(ExpansionError::PositionOutOfRange {
            m: e.m,
            min: 2,
            max: k - 1,
        });
    }
    if e.d.len() != n + 1 {
        return Err(ExpansionError::LabelsLength {
            expected: n + 1,
            got: e.d.len(),
        });
    }
    cube::validate_loop(n, &e.q)?;
    let (first, last) = (e.q[0], e.q[e.q.len() - 1]);
    let (want_first, want_last) = (path.color(e.m - 1), path.color(e.m));
    if first != want_first || last != want_last {
        return Err(ExpansionError::Endpoints {
            expected_first: want_first,
            expected_last: want_last,
            first,
            last,
        });
    }
    Ok(())
}

fn check_edge(path: &SimplexPath, e: &EdgeExpansion) -> Result<(), ExpansionError> {
    let k = path.len();
    let n = path.dim();
    if n > MAX_CUBE_DIM {
        return Err(ExpansionError::DimensionTooLarge { n });
    }
    if k < 4 {
        return Err(ExpansionError::PathTooShort { kind: "edge", k });
    }
    if e.m < 2 || e.m > k - 2 {
        return Err(ExpansionError::PositionOutOfRange {
            m: e.m,
            min: 2,
            max: k - 2,
        });
    }
    if e.d.len() != n + 1 {
        return Err(ExpansionError::LabelsLength {
            expected: n + 1,
            got: e.d.len(),
        });
    }
    let c_m = path.color(e.m);
    if let Some(column) = (0..=n).find(|&j| e.d[j].is_none() != (j == c_m)) {
        return Err(ExpansionError::LabelSlot { c_m, column });
    }
    cube::validate_ppath(n, c_m, &e.q, e.s)?;
    let (first, last) = (e.q[0], e.q[e.q.len() - 1]);
    let (want_first, want_last) = (path.color(e.m - 1), path.color(e.m + 1));
    if first != want_first || last != want_last {
        return Err(ExpansionError::Endpoints {
            expected_first: want_first,
            expected_last: want_last,
            first,
            last,
        });
    }
    Ok(())
}

pub fn validate(path: &SimplexPath, e: &Expansion) -> Result<(), ExpansionError> {
    match e {
        Expansion::Vertex(v) => check_vertex(path, v),
        Expansion::Edge(v) => check_edge(path, v),
    }
}

/// `w_i` is the old label `c_{q_i}` when `q_i` has occurred an even number
/// of times in `q_1..q_i`, and the new label `d_{q_i}` otherwise.
fn new_values(q: &[usize], old: &Simplex, new: impl Fn(usize) -> bool) -> Vec<bool> {
    (1..q.len())
        .map(|i| {
            let c = q[i - 1];
            if tuple::count(&q[..i], &c).is_multiple_of(2) {
                old.get(c)
            } else {
                new(c)
            }
        })
        .collect()
}

/// The inserted labels `w_1, ..., w_{t-1}`.
pub fn inserted_values(path: &SimplexPath, e: &Expansion) -> Result<Vec<bool>, ExpansionError> {
    validate(path, e)?;
    let old = path.simplex(e.m());
    Ok(match e {
        Expansion::Vertex(v) => new_values(&v.q, &old, |c| v.d[c]),
        Expansion::Edge(v) => new_values(&v.q, &old, |c| v.d[c].expect("checked slot")),
    })
}

pub fn vertex_expand(path: &SimplexPath, e: &VertexExpansion) -> Result<SimplexPath, ExpansionError> {
    check_vertex(path, e)?;
    let m = e.m;
    let t = e.q.len();
    let w = new_values(&e.q, &path.simplex(m), |c| e.d[c]);
    let (colors, values) = (path.colors(), path.values());

    let mut c_new = colors[..m - 1].to_vec();
    c_new.extend_from_slice(&e.q[1..t - 1]);
    c_new.extend_from_slice(&colors[m - 1..]);

    let mut v_new = values[..m - 2].to_vec();
    v_new.extend_from_slice(&w);
    v_new.extend_from_slice(&values[m - 1..]);

    Ok(SimplexPath::new(path.dim(), path.initial().clone(), c_new, v_new)?)
}

pub fn edge_expand(path: &SimplexPath, e: &EdgeExpansion) -> Result<SimplexPath, ExpansionError> {
    check_edge(path, e)?;
    let (m, s) = (e.m, e.s);
    let t = e.q.len();
    let w = new_values(&e.q, &path.simplex(m), |c| e.d[c].expect("checked slot"));
    let (colors, values) = (path.colors(), path.values());

    let mut c_new = colors[..m - 1].to_vec();
    c_new.extend_from_slice(&e.q[1..s]);
    c_new.push(colors[m - 1]);
    c_new.extend_from_slice(&e.q[s..t - 1]);
    c_new.extend_from_slice(&colors[m..]);

    let mut v_new = values[..m - 2].to_vec();
    v_new.extend_from_slice(&w[..s]);
    v_new.push(values[m - 1]);
    v_new.extend_from_slice(&w[s..]);
    v_new.extend_from_slice(&values[m..]);

    Ok(SimplexPath::new(path.dim(), path.initial().clone(), c_new, v_new)?)
}

pub fn expand(path: &SimplexPath, e: &Expansion) -> Result<SimplexPath, ExpansionError> {
    match e {
        Expansion::Vertex(v) => vertex_expand(path, v),
        Expansion::Edge(v) => edge_expand(path, v),
    }
}

pub fn label_array(path: &SimplexPath, e: &Expansion) -> Result<LabelArray, ExpansionError> {
    validate(path, e)?;
    let old = path.simplex(e.m());
    let new = match e {
        Expansion::Vertex(v) => Simplex::from_bits(v.d.clone()),
        Expansion::Edge(v) => {
            let c_m = path.color(v.m);
            Simplex::from_bits(
                (0..=path.dim())
                    .map(|j| {
                        if j == c_m {
                            path.value(v.m)
                        } else {
                            v.d[j].expect("checked slot")
                        }
                    })
                    .collect(),
            )
        }
    };
    Ok(LabelArray::new(old, new))
}

/// The cube vertices whose simplices `A(α)` the expanded path passes
/// through, in walk order.
///
/// For an edge expansion the walk stays on the side `α(C_m) = 0` for the
/// first `s` steps and then crosses to `α(C_m) = 1`, where the remaining
/// vertices are the prefix parities `q_1..q_{i-1}` for `s+1 <= i <= t`.
pub fn on_path_walk(path: &SimplexPath, e: &Expansion) -> Result<Vec<CubeVertex>, ExpansionError> {
    validate(path, e)?;
    Ok(match e {
        Expansion::Vertex(v) => (1..v.q.len()).map(|i| cube::parity_vector(&v.q, i)).collect(),
        Expansion::Edge(v) => {
            let c_m = path.color(v.m);
            let t = v.q.len();
            (1..=v.s)
                .map(|i| cube::parity_vector(&v.q, i))
                .chain((v.s + 1..=t).map(|i| cube::parity_vector(&v.q, i - 1).with(c_m, true)))
                .collect()
        }
    })
}

pub fn on_path_set(path: &SimplexPath, e: &Expansion) -> Result<BTreeSet<CubeVertex>, ExpansionError> {
    Ok(on_path_walk(path, e)?.into_iter().collect())
}

/// Witness for the exhaustiveness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustivenessCertificate {
    pub exhaustive: bool,
    /// `M(A)`.
    pub mono: BTreeSet<CubeVertex>,
    /// The part of `M(A)` visited by the expanded path.
    pub on_path: BTreeSet<CubeVertex>,
    /// Covers `M(A) \ on_path` when `exhaustive`.
    pub matching: Option<Matching>,
}

impl ExhaustivenessCertificate {
    pub fn off_path(&self) -> BTreeSet<CubeVertex> {
        self.mono.difference(&self.on_path).copied().collect()
    }
}

pub fn is_exhaustive(path: &SimplexPath, e: &Expansion) -> Result<ExhaustivenessCertificate, ExpansionError> {
    let a = label_array(path, e)?;
    let mono = cube::mono_vertex_set(&a);
    let walk = on_path_set(path, e)?;
    let on_path: BTreeSet<CubeVertex> = mono.intersection(&walk).copied().collect();
    let off: BTreeSet<CubeVertex> = mono.difference(&on_path).copied().collect();
    let matching = cube::exists_saturating_matching(&mono, &off);
    Ok(ExhaustivenessCertificate {
        exhaustive: matching.is_some(),
        mono,
        on_path,
        matching,
    })
}
