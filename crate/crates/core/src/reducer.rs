//! Reduction of admissible paths to 0-paths, and an independent replayer
//! for the resulting traces.
//!
//! The reducer keeps the whole path. Each step decomposes it into atomic
//! components, picks the first one that is not a 0-path, applies the move
//! chosen by [`moves::next_move`] and splices the result back between the
//! same glue colors. A summit move that worked on the reflected component
//! is reflected back before splicing; both ends are zero simplices, so the
//! splice is unaffected.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube;
use crate::expansion::{self, Expansion};
use crate::moves::{self, MoveError, MoveKind};
use crate::path::{concatenate_all, HeightStats, PathError, SimplexPath};
use crate::symmetry::reflect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReduceConfig {
    pub simplified_summits: bool,
    /// Defaults to `10 k^2` for an input of length `k`.
    pub max_steps: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub move_kind: MoveKind,
    pub orientation_flipped: bool,
    /// Applies to the component, or to its reflection when flipped.
    pub expansion: Expansion,
    pub component_index: usize,
    pub length_before: usize,
    pub length_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub initial: SimplexPath,
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final")]
    pub final_path: SimplexPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("path is not admissible: {0}")]
    NotAdmissible(PathError),
    #[error("no 0-path after {limit} steps")]
    StepLimit { limit: usize },
    #[error("move failed on component {component}: {source}")]
    Move { component: usize, source: MoveError },
    #[error("step {step} does not decrease the termination key")]
    NoDescent { step: usize },
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Per-component measure that every step lowers: the height statistics
/// restricted to heights at least 2 (compared revlex), then the number of
/// units at even positions, the number of units, and the length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminationKey {
    pub high: HeightStats,
    pub even_units: usize,
    pub units: usize,
    pub length: usize,
}

impl TerminationKey {
    pub fn of(p: &SimplexPath) -> Self {
        let mut high = p.height_stats();
        high.0[0] = 0;
        if high.0.len() > 1 {
            high.0[1] = 0;
        }
        let us = if p.max_height() <= 1 {
            moves::units(p)
        } else {
            Vec::new()
        };
        TerminationKey {
            high,
            even_units: us.iter().filter(|&&u| u % 2 == 0).count(),
            units: us.len(),
            length: p.len(),
        }
    }
}

impl PartialOrd for TerminationKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let high = self.high.revlex_cmp(&other.high).ok()?;
        Some(high.then_with(|| {
            (self.even_units, self.units, self.length).cmp(&(other.even_units, other.units, other.length))
        }))
    }
}

pub fn reduce(p: &SimplexPath, config: ReduceConfig) -> Result<Trace, ReduceError> {
    p.decompose().map_err(ReduceError::NotAdmissible)?;
    let k = p.len();
    let limit = config.max_steps.unwrap_or(10 * k * k);
    let mut path = p.clone();
    let mut steps = Vec::new();
    loop {
        let mut dec = path.decompose()?;
        let Some(idx) = dec.pieces.iter().position(|c| !c.is_zero_path()) else {
            break;
        };
        if steps.len() >= limit {
            return Err(ReduceError::StepLimit { limit });
        }
        let comp = &dec.pieces[idx];
        let out = moves::next_move(comp, config.simplified_summits)
            .map_err(|source| ReduceError::Move { component: idx, source })?;
        let replacement = if out.orientation_flipped {
            reflect(&out.new_path)
        } else {
            out.new_path.clone()
        };
        let before = TerminationKey::of(comp);
        let descended = replacement
            .decompose()?
            .pieces
            .iter()
            .filter(|t| !t.is_zero_path())
            .all(|t| TerminationKey::of(t) < before);
        if !descended {
            return Err(ReduceError::NoDescent { step: steps.len() });
        }
        steps.push(TraceStep {
            move_kind: out.kind,
            orientation_flipped: out.orientation_flipped,
            expansion: out.expansion,
            component_index: idx,
            length_before: comp.len(),
            length_after: out.new_path.len(),
        });
        dec.pieces[idx] = replacement;
        path = concatenate_all(&dec.pieces, &dec.glue_colors)?;
    }
    Ok(Trace {
        initial: p.clone(),
        steps,
        final_path: path,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    /// `None` for whole-trace checks.
    pub step: Option<usize>,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok  " } else { "FAIL" };
        match self.step {
            Some(s) => write!(f, "{status} step {s:>3} {}", self.name)?,
            None => write!(f, "{status} trace    {}", self.name)?,
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, step: Option<usize>, name: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            step,
            name,
            passed,
            detail: if passed { String::new() } else { detail.into() },
        });
        passed
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Re-executes `trace` from `p`, validating every step from scratch.
/// Exhaustiveness is decided by backtracking over matchings rather than by
/// the augmenting-path search the moves use.
pub fn replay(p: &SimplexPath, trace: &Trace) -> VerificationReport {
    let mut rep = VerificationReport::default();
    rep.record(
        None,
        "initial path matches",
        *p == trace.initial,
        "trace starts from a different path",
    );
    if !rep.record(None, "initial path admissible", p.is_admissible(), format!("{p}")) {
        return rep;
    }
    let mut path = p.clone();
    for (n, step) in trace.steps.iter().enumerate() {
        let s = Some(n);
        let dec = path.decompose().expect("path checked admissible");
        let Some(comp) = dec.pieces.get(step.component_index) else {
            rep.record(
                s,
                "component exists",
                false,
                format!("index {} of {}", step.component_index, dec.pieces.len()),
            );
            return rep;
        };
        rep.record(
            s,
            "component length",
            comp.len() == step.length_before,
            format!("{} != {}", comp.len(), step.length_before),
        );
        let target = if step.orientation_flipped {
            reflect(comp)
        } else {
            comp.clone()
        };
        if let Err(e) = expansion::validate(&target, &step.expansion) {
            rep.record(s, "expansion well-formed", false, e.to_string());
            return rep;
        }
        rep.record(s, "expansion well-formed", true, "");
        let new = expansion::expand(&target, &step.expansion).expect("validated");
        rep.record(
            s,
            "length after",
            new.len() == step.length_after,
            format!("{} != {}", new.len(), step.length_after),
        );
        let t = step.expansion.q().len();
        rep.record(
            s,
            "length law k+t-2",
            new.len() == target.len() + t - 2,
            format!("{} + {t} - 2 != {}", target.len(), new.len()),
        );

        let a = expansion::label_array(&target, &step.expansion).expect("validated");
        let mono = cube::mono_vertex_set(&a);
        let walk = expansion::on_path_set(&target, &step.expansion).expect("validated");
        let off = mono.difference(&walk).copied().collect();
        let oracle = cube::saturating_matching_by_backtracking(&mono, &off).is_some();
        rep.record(
            s,
            "exhaustive",
            oracle,
            format!("{} off-path vertices of M(A) cannot be matched", mono.len()),
        );
        let fast = expansion::is_exhaustive(&target, &step.expansion)
            .expect("validated")
            .exhaustive;
        rep.record(
            s,
            "matching searches agree",
            fast == oracle,
            format!("augmenting {fast}, backtracking {oracle}"),
        );

        let back = if step.orientation_flipped { reflect(&new) } else { new };
        let pieces = match back.decompose() {
            Ok(d) => d.pieces,
            Err(e) => {
                rep.record(s, "component admissible", false, e.to_string());
                return rep;
            }
        };
        rep.record(s, "component admissible", true, "");
        if step.move_kind.lowers_heights() {
            let h = comp.height_stats();
            let bad = pieces
                .iter()
                .filter(|t| !h.revlex_greater(&t.height_stats()).unwrap_or(false))
                .count();
            rep.record(
                s,
                "height statistics descend",
                bad == 0,
                format!("{bad} components not revlex-smaller"),
            );
        }
        let key = TerminationKey::of(comp);
        let bad = pieces
            .iter()
            .filter(|t| !t.is_zero_path() && TerminationKey::of(t).partial_cmp(&key) != Some(std::cmp::Ordering::Less))
            .count();
        rep.record(
            s,
            "termination key descends",
            bad == 0,
            format!("{bad} components not smaller"),
        );

        let mut all = dec.pieces.clone();
        all[step.component_index] = back;
        match concatenate_all(&all, &dec.glue_colors) {
            Ok(next) if next.is_admissible() => {
                rep.record(s, "path admissible", true, "");
                path = next;
            }
            Ok(next) => {
                rep.record(s, "path admissible", false, format!("{next}"));
                return rep;
            }
            Err(e) => {
                rep.record(s, "path admissible", false, e.to_string());
                return rep;
            }
        }
    }
    rep.record(None, "final 0-path", path.is_zero_path(), format!("{path}"));
    rep.record(
        None,
        "final length even",
        path.len().is_multiple_of(2),
        format!("length {}", path.len()),
    );
    rep.record(
        None,
        "final path matches",
        path == trace.final_path,
        format!("replayed {path}"),
    );
    rep
}
