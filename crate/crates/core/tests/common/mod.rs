//! Oracles that share no code with the library beyond the path type.
#![allow(dead_code)]

use std::collections::BTreeSet;

use simplex_paths::expansion::Expansion;
use simplex_paths::reducer::Trace;
use simplex_paths::{reflect, SimplexPath};

pub type Vertex = Vec<bool>;

fn walk(n: usize, q: &[usize]) -> Vec<Vertex> {
    let mut cur = vec![false; n + 1];
    let mut out = vec![cur.clone()];
    for &c in q {
        cur[c] = !cur[c];
        out.push(cur.clone());
    }
    out
}

fn distinct(vs: &[Vertex]) -> bool {
    vs.iter().collect::<BTreeSet<_>>().len() == vs.len()
}

/// Walk `q` from the origin: it must close up and visit no vertex twice.
pub fn is_loop_by_walking(n: usize, q: &[usize]) -> bool {
    if q.len() < 2 || q.iter().any(|&c| c > n) {
        return false;
    }
    let vs = walk(n, q);
    vs[q.len()] == vs[0] && distinct(&vs[..q.len()])
}

/// Walk `q_1..q_s`, cross along `p`, walk `q_{s+1}..q_t`: the walk must end
/// at `e_p` and visit no vertex twice.
pub fn is_ppath_by_walking(n: usize, p: usize, q: &[usize], s: usize) -> bool {
    let t = q.len();
    if p > n || t < 2 || s == 0 || s >= t || q.iter().any(|&c| c > n || c == p) {
        return false;
    }
    let mut vs = walk(n, &q[..s]);
    let mut cur = vs[s].clone();
    cur[p] = !cur[p];
    vs.push(cur.clone());
    for &c in &q[s..] {
        cur[c] = !cur[c];
        vs.push(cur.clone());
    }
    let mut target = vec![false; n + 1];
    target[p] = true;
    vs.last() == Some(&target) && distinct(&vs)
}

/// The label rows, read off the path and the expansion directly.
pub fn rows(p: &SimplexPath, e: &Expansion) -> (Vec<bool>, Vec<bool>) {
    let (m, n) = (e.m(), p.dim());
    let mut top = p.initial().bits().to_vec();
    for j in 1..m {
        top[p.color(j)] = p.value(j);
    }
    let bottom = match e {
        Expansion::Vertex(v) => v.d.clone(),
        Expansion::Edge(v) => (0..=n).map(|j| v.d[j].unwrap_or_else(|| p.value(m))).collect(),
    };
    (top, bottom)
}

/// `M(A)` by trying every row selector.
pub fn mono_by_enumeration(p: &SimplexPath, e: &Expansion) -> BTreeSet<Vertex> {
    let n = p.dim();
    let (top, bottom) = rows(p, e);
    (0u64..1 << (n + 1))
        .map(|mask| (0..=n).map(|j| mask >> j & 1 == 1).collect::<Vertex>())
        .filter(|alpha| {
            let labels: Vec<bool> = (0..=n).map(|j| if alpha[j] { bottom[j] } else { top[j] }).collect();
            labels.iter().all(|&b| b) || labels.iter().all(|&b| !b)
        })
        .collect()
}

/// Cube vertices whose simplices the expanded path walks through.
pub fn on_path_by_walking(p: &SimplexPath, e: &Expansion) -> BTreeSet<Vertex> {
    let n = p.dim();
    match e {
        Expansion::Vertex(v) => walk(n, &v.q)[1..v.q.len()].iter().cloned().collect(),
        Expansion::Edge(v) => {
            let c = p.color(v.m);
            let vs = walk(n, &v.q);
            let mut out: BTreeSet<Vertex> = vs[1..=v.s].iter().cloned().collect();
            for x in &vs[v.s..v.q.len()] {
                let mut y = x.clone();
                y[c] = true;
                out.insert(y);
            }
            out
        }
    }
}

fn adjacent(a: &Vertex, b: &Vertex) -> bool {
    a.iter().zip(b).filter(|(x, y)| x != y).count() == 1
}

/// Whether some matching of `verts` covers every vertex of `required`.
pub fn covering_matching_exists(verts: &BTreeSet<Vertex>, required: &BTreeSet<Vertex>) -> bool {
    fn go(pending: &[Vertex], free: &mut BTreeSet<Vertex>) -> bool {
        let Some((v, rest)) = pending.split_first() else {
            return true;
        };
        if !free.contains(v) {
            return go(rest, free);
        }
        free.remove(v);
        let partners: Vec<Vertex> = free.iter().filter(|u| adjacent(u, v)).cloned().collect();
        for u in partners {
            free.remove(&u);
            if go(rest, free) {
                return true;
            }
            free.insert(u);
        }
        free.insert(v.clone());
        false
    }
    let pending: Vec<Vertex> = required.iter().cloned().collect();
    go(&pending, &mut verts.clone())
}

pub struct OracleVerdict {
    pub mono: BTreeSet<Vertex>,
    pub on_path: BTreeSet<Vertex>,
    pub exhaustive: bool,
}

pub fn exhaustive_by_enumeration(p: &SimplexPath, e: &Expansion) -> OracleVerdict {
    let mono = mono_by_enumeration(p, e);
    let walked = on_path_by_walking(p, e);
    let on_path: BTreeSet<Vertex> = mono.intersection(&walked).cloned().collect();
    let off: BTreeSet<Vertex> = mono.difference(&on_path).cloned().collect();
    let exhaustive = covering_matching_exists(&mono, &off);
    OracleVerdict {
        mono,
        on_path,
        exhaustive,
    }
}

/// One trace step, with the path the expansion applies to and the
/// component it replaced.
pub struct StepView {
    pub index: usize,
    pub component: SimplexPath,
    pub target: SimplexPath,
    pub result: SimplexPath,
}

/// Re-runs a trace without any checks, exposing each step.
pub fn steps(trace: &Trace) -> Vec<StepView> {
    let mut path = trace.initial.clone();
    let mut out = Vec::new();
    for (index, step) in trace.steps.iter().enumerate() {
        let dec = path.decompose().expect("admissible");
        let component = dec.pieces[step.component_index].clone();
        let target = if step.orientation_flipped {
            reflect(&component)
        } else {
            component.clone()
        };
        let result = simplex_paths::expansion::expand(&target, &step.expansion).expect("valid step");
        let back = if step.orientation_flipped {
            reflect(&result)
        } else {
            result.clone()
        };
        let mut pieces = dec.pieces.clone();
        pieces[step.component_index] = back;
        path = simplex_paths::path::concatenate_all(&pieces, &dec.glue_colors).expect("splice");
        out.push(StepView {
            index,
            component,
            target,
            result,
        });
    }
    out
}

/// Applies flips from a zero start and returns every simplex.
pub fn simplices(p: &SimplexPath) -> Vec<Vec<bool>> {
    let mut cur = p.initial().bits().to_vec();
    let mut out = vec![cur.clone()];
    for (&c, &v) in p.colors().iter().zip(p.values()) {
        cur[c] = v;
        out.push(cur.clone());
    }
    out
}
