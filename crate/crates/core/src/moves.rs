//! The named moves, each packaged as an expansion of an atomic path.
//!
//! Every move reads its colors straight off the path (`a = C_{i-1}` and so
//! on) instead of first permuting the path into a normal form, so the
//! emitted expansion applies verbatim to the path it was computed for.
//! The only exception is the summit move at an even position, which works
//! on the reflected path and says so in `orientation_flipped`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expansion::{self, EdgeExpansion, ExhaustivenessCertificate, Expansion, ExpansionError, VertexExpansion};
use crate::path::{PathError, SimplexPath};
use crate::symmetry::reflect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Summit,
    SimplifiedSummit,
    PlateauGeneric,
    PlateauSpecial,
    Fatten,
    Eliminate,
    Shorten,
    FinishK4,
    SplitN1,
}

impl MoveKind {
    pub const ALL: [MoveKind; 9] = [
        MoveKind::Summit,
        MoveKind::SimplifiedSummit,
        MoveKind::PlateauGeneric,
        MoveKind::PlateauSpecial,
        MoveKind::Fatten,
        MoveKind::Eliminate,
        MoveKind::Shorten,
        MoveKind::FinishK4,
        MoveKind::SplitN1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Summit => "summit",
            MoveKind::SimplifiedSummit => "simplified_summit",
            MoveKind::PlateauGeneric => "plateau_generic",
            MoveKind::PlateauSpecial => "plateau_special",
            MoveKind::Fatten => "fatten",
            MoveKind::Eliminate => "eliminate",
            MoveKind::Shorten => "shorten",
            MoveKind::FinishK4 => "finish_k4",
            MoveKind::SplitN1 => "split_n1",
        }
    }

    /// Moves that must strictly lower the height statistics.
    pub fn lowers_heights(self) -> bool {
        matches!(
            self,
            MoveKind::Summit | MoveKind::SimplifiedSummit | MoveKind::PlateauGeneric | MoveKind::PlateauSpecial
        )
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("path is not atomic: {0}")]
    NotAtomic(SimplexPath),
    #[error("position {i} is not a summit")]
    NotASummit { i: usize },
    #[error("position {i} is not a plateau")]
    NotAPlateau { i: usize },
    #[error("height {h} at position {i} is below the required {min}")]
    HeightTooLow { i: usize, h: usize, min: usize },
    #[error("dimension {n} is below the required {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("move needs max height 1, path has {max}")]
    MaxHeight { max: usize },
    #[error("position {u} is not a unit")]
    NotAUnit { u: usize },
    #[error("unit at {u} has the wrong parity for this move")]
    UnitParity { u: usize },
    #[error("path still has units")]
    UnitsPresent,
    #[error("path length {k} does not fit this move ({expected})")]
    WrongLength { k: usize, expected: &'static str },
    #[error("color pattern assumed by the move does not hold: {0}")]
    Pattern(String),
    #[error("emitted expansion is not exhaustive")]
    NotExhaustive,
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Path(#[from] PathError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveOutcome {
    pub kind: MoveKind,
    pub expansion: Expansion,
    /// The path the expansion was applied to: the input, or its reflection
    /// when `orientation_flipped`.
    pub input: SimplexPath,
    pub new_path: SimplexPath,
    pub orientation_flipped: bool,
    pub certificate: ExhaustivenessCertificate,
}

fn outcome(kind: MoveKind, input: SimplexPath, e: Expansion, flipped: bool) -> Result<MoveOutcome, MoveError> {
    let new_path = expansion::expand(&input, &e)?;
    let certificate = expansion::is_exhaustive(&input, &e)?;
    if !certificate.exhaustive {
        return Err(MoveError::NotExhaustive);
    }
    Ok(MoveOutcome {
        kind,
        expansion: e,
        input,
        new_path,
        orientation_flipped: flipped,
        certificate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Summit(usize),
    Plateau(usize),
    Height1,
}

fn require_atomic(p: &SimplexPath) -> Result<Vec<usize>, MoveError> {
    if !p.is_atomic() {
        return Err(MoveError::NotAtomic(p.clone()));
    }
    Ok(p.heights().values)
}

fn is_summit(h: &[usize], i: usize) -> bool {
    i >= 2 && i < h.len() && h[i - 2] < h[i - 1] && h[i - 1] > h[i]
}

/// Smallest odd summit, else smallest summit, else the first position of
/// maximal height when that height is at least 2.
pub fn find_site(p: &SimplexPath) -> Result<Site, MoveError> {
    let h = require_atomic(p)?;
    let summits: Vec<usize> = (2..h.len()).filter(|&i| is_summit(&h, i)).collect();
    if let Some(&i) = summits.iter().find(|&&i| i % 2 == 1).or(summits.first()) {
        return Ok(Site::Summit(i));
    }
    let max = *h.iter().max().expect("nonempty");
    if max >= 2 {
        let i = h.iter().position(|&x| x == max).expect("max exists") + 1;
        return Ok(Site::Plateau(i));
    }
    Ok(Site::Height1)
}

/// Resolves a summit at `i`, reflecting when `i` is even.
fn summit_frame(p: &SimplexPath, i: usize, min_height: usize) -> Result<(SimplexPath, usize, bool), MoveError> {
    let h = require_atomic(p)?;
    if !is_summit(&h, i) {
        return Err(MoveError::NotASummit { i });
    }
    if h[i - 1] < min_height {
        return Err(MoveError::HeightTooLow {
            i,
            h: h[i - 1],
            min: min_height,
        });
    }
    if p.dim() < 2 {
        return Err(MoveError::DimensionTooSmall { n: p.dim(), min: 2 });
    }
    if i.is_multiple_of(2) {
        Ok((reflect(p), p.len() + 1 - i, true))
    } else {
        Ok((p.clone(), i, false))
    }
}

pub fn summit_move(p: &SimplexPath, i: usize) -> Result<MoveOutcome, MoveError> {
    let (q, i, flipped) = summit_frame(p, i, 2)?;
    let r = q.simplex(i);
    let (a, b) = (q.color(i - 1), q.color(i));
    // R^i is not 1-monochromatic, and its a and b entries are both 1
    let z = (0..=q.dim())
        .find(|&c| c != a && c != b && !r.get(c))
        .ok_or_else(|| MoveError::Pattern(format!("no third zero color in R^{i} = {r}")))?;
    let d = (0..=q.dim())
        .map(|c| if c == a || c == b || c == z { false } else { !r.get(c) })
        .collect();
    let e = VertexExpansion {
        m: i,
        d,
        q: vec![a, b, z, a, z, b],
    };
    outcome(MoveKind::Summit, q, e.into(), flipped)
}

pub fn simplified_summit_move(p: &SimplexPath, i: usize) -> Result<MoveOutcome, MoveError> {
    let (q, i, flipped) = summit_frame(p, i, 3)?;
    let r = q.simplex(i);
    let (a, b) = (q.color(i - 1), q.color(i));
    let d = (0..=q.dim())
        .map(|c| if c == a || c == b { false } else { r.get(c) })
        .collect();
    let e = VertexExpansion {
        m: i,
        d,
        q: vec![a, b, a, b],
    };
    outcome(MoveKind::SimplifiedSummit, q, e.into(), flipped)
}

pub fn plateau_move(p: &SimplexPath, i: usize) -> Result<MoveOutcome, MoveError> {
    let h = require_atomic(p)?;
    if i < 2 || i + 1 > h.len() || !(h[i] == h[i - 1] && h[i - 1] > h[i - 2]) {
        return Err(MoveError::NotAPlateau { i });
    }
    if h[i - 1] < 2 {
        return Err(MoveError::HeightTooLow { i, h: h[i - 1], min: 2 });
    }
    let r = p.simplex(i);
    let (a, c, pc) = (p.color(i - 1), p.color(i), p.color(i + 1));
    let d = (0..=p.dim())
        .map(|j| match j {
            _ if j == c => None,
            _ if j == a => Some(false),
            _ => Some(r.get(j)),
        })
        .collect();
    let (kind, q, s) = if pc == a {
        (MoveKind::PlateauSpecial, vec![a, a], 1)
    } else {
        (MoveKind::PlateauGeneric, vec![a, pc, a, pc], 2)
    };
    let e = EdgeExpansion { m: i, d, q, s };
    outcome(kind, p.clone(), e.into(), false)
}

/// Positions `u` with `V_u = 1` and `3 <= u <= k-3`. In an atomic path of
/// max height 1 these are exactly the interior 1-flips that do not start
/// the path.
pub fn units(p: &SimplexPath) -> Vec<usize> {
    let k = p.len();
    if k < 6 {
        return Vec::new();
    }
    (3..=k - 3).filter(|&u| p.value(u)).collect()
}

fn require_height1(p: &SimplexPath) -> Result<(), MoveError> {
    require_atomic(p)?;
    let max = p.max_height();
    if max != 1 {
        return Err(MoveError::MaxHeight { max });
    }
    Ok(())
}

fn require_unit(p: &SimplexPath, u: usize) -> Result<(), MoveError> {
    require_height1(p)?;
    if !units(p).contains(&u) {
        return Err(MoveError::NotAUnit { u });
    }
    Ok(())
}

/// Move a unit at an even position to an odd one by inserting two flips
/// in front of it.
pub fn fatten_unit(p: &SimplexPath, u: usize) -> Result<MoveOutcome, MoveError> {
    require_unit(p, u)?;
    if u % 2 == 1 {
        return Err(MoveError::UnitParity { u });
    }
    let n = p.dim();
    if n < 2 {
        return Err(MoveError::DimensionTooSmall { n, min: 2 });
    }
    let x0 = p.color(1);
    let (a, x) = (p.color(u - 1), p.color(u + 1));
    let q = if x != a {
        vec![a, x, a, x]
    } else {
        let y = (0..=n)
            .find(|&c| c != a && c != x0)
            .expect("n >= 2 leaves a third color");
        vec![a, y, y, a]
    };
    let d = (0..=n)
        .map(|j| if j == p.color(u) { None } else { Some(false) })
        .collect();
    let e = EdgeExpansion { m: u, d, q, s: 2 };
    outcome(MoveKind::Fatten, p.clone(), e.into(), false)
}

/// Replace a unit at an odd position by a dip to the zero simplex, which
/// splits the path in two.
pub fn eliminate_unit(p: &SimplexPath, u: usize) -> Result<MoveOutcome, MoveError> {
    require_unit(p, u)?;
    if u.is_multiple_of(2) {
        return Err(MoveError::UnitParity { u });
    }
    let x0 = p.color(1);
    let x = p.color(u + 1);
    let d = (0..=p.dim()).map(|j| j != x0 && j != x).collect();
    let e = VertexExpansion {
        m: u + 1,
        d,
        q: vec![x0, x, x0, x],
    };
    outcome(MoveKind::Eliminate, p.clone(), e.into(), false)
}

pub fn shorten_zeroes(p: &SimplexPath) -> Result<MoveOutcome, MoveError> {
    require_height1(p)?;
    if !units(p).is_empty() {
        return Err(MoveError::UnitsPresent);
    }
    let k = p.len();
    if k < 6 {
        return Err(MoveError::WrongLength {
            k,
            expected: "at least 6",
        });
    }
    let n = p.dim();
    if n < 2 {
        return Err(MoveError::DimensionTooSmall { n, min: 2 });
    }
    let (x0, y, z, c4) = (p.color(1), p.color(2), p.color(3), p.color(4));
    if y == x0 || z == x0 || z == y || c4 == x0 {
        return Err(MoveError::Pattern(format!(
            "expected C_2, C_3 distinct from C_1 and C_4 != C_1, got C = {:?}",
            &p.colors()[..4]
        )));
    }
    let mut d: Vec<Option<bool>> = (0..=n).map(|j| Some(j != x0 && j != y)).collect();
    d[z] = None;
    let (q, s) = if c4 == y {
        (vec![y, x0, x0, y], 2)
    } else {
        d[c4] = Some(false);
        (vec![y, x0, c4, y, x0, c4], 3)
    };
    let e = EdgeExpansion { m: 3, d, q, s };
    outcome(MoveKind::Shorten, p.clone(), e.into(), false)
}

pub fn finish_k4(p: &SimplexPath) -> Result<MoveOutcome, MoveError> {
    require_atomic(p)?;
    if p.len() != 4 {
        return Err(MoveError::WrongLength {
            k: p.len(),
            expected: "exactly 4",
        });
    }
    let (a, b) = (p.color(1), p.color(2));
    let d = (0..=p.dim())
        .map(|j| match j {
            _ if j == b => None,
            _ if j == a => Some(false),
            _ => Some(true),
        })
        .collect();
    let e = EdgeExpansion {
        m: 2,
        d,
        q: vec![a, a],
        s: 1,
    };
    outcome(MoveKind::FinishK4, p.clone(), e.into(), false)
}

/// Splitting move for `n = 1` paths whose only 1-flip is the first.
///
/// No atomic path meets these conditions (after `V_1 = 1` the next two
/// 0-flips return to the zero simplex at position 4), so the reducer never
/// needs it; it is kept for completeness and always validates its input.
pub fn split_n1(p: &SimplexPath) -> Result<MoveOutcome, MoveError> {
    if p.dim() != 1 {
        return Err(MoveError::Pattern(format!("split_n1 needs n = 1, got {}", p.dim())));
    }
    require_atomic(p)?;
    let k = p.len();
    if k < 6 {
        return Err(MoveError::WrongLength {
            k,
            expected: "at least 6",
        });
    }
    if (2..k).any(|i| p.value(i)) {
        return Err(MoveError::UnitsPresent);
    }
    let e = VertexExpansion {
        m: 2,
        d: vec![false, false],
        q: vec![p.color(1), p.color(2), p.color(1), p.color(2)],
    };
    outcome(MoveKind::SplitN1, p.clone(), e.into(), false)
}

/// The move the reducer applies to a non-zero atomic component.
pub fn next_move(p: &SimplexPath, simplified_summits: bool) -> Result<MoveOutcome, MoveError> {
    match find_site(p)? {
        Site::Summit(i) => {
            let h = p.heights().values[i - 1];
            if simplified_summits && h >= 3 {
                simplified_summit_move(p, i)
            } else {
                summit_move(p, i)
            }
        }
        Site::Plateau(i) => plateau_move(p, i),
        Site::Height1 => {
            let us = units(p);
            if let Some(&u) = us.iter().find(|&&u| u % 2 == 0) {
                fatten_unit(p, u)
            } else if let Some(&u) = us.first() {
                eliminate_unit(p, u)
            } else if p.len() == 4 {
                finish_k4(p)
            } else {
                shorten_zeroes(p)
            }
        }
    }
}
