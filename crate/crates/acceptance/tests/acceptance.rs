//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that every criterion is reported
//! even when an earlier one fails; the process exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::{exhaustive_by_enumeration, is_loop_by_walking, is_ppath_by_walking, steps};
use simplex_paths::cube::{validate_loop, validate_ppath};
use simplex_paths::expansion::{self, EdgeExpansion, Expansion, VertexExpansion};
use simplex_paths::moves::{self, MoveKind};
use simplex_paths::path::concatenate_all;
use simplex_paths::reducer::{reduce, replay, ReduceConfig, Trace};
use simplex_paths::{enumerate_atomic, permute, reflect, ColorPermutation, SimplexPath};

const WORKED_EXAMPLE_LIMIT: Duration = Duration::from_millis(1);
const CENSUS_LIMIT: Duration = Duration::from_secs(5);
const SWEEP_LIMIT: Duration = Duration::from_secs(120);
const PROPERTY_LIMIT: Duration = Duration::from_secs(30);
const RANDOM_SEQUENCES: usize = 10_000;
const RANDOM_EXPANSIONS: usize = 1_000;
const SEED: u64 = 0x5eed_2024;

struct Outcome {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn path(n: usize, c: &[usize], v: &[u8]) -> SimplexPath {
    SimplexPath::from_u8s(n, c, v).unwrap()
}

fn bools(xs: &[u8]) -> Vec<bool> {
    xs.iter().map(|&x| x != 0).collect()
}

/// Timing in debug builds is noisy; the worked examples are timed as the
/// best of several runs.
fn best_of<T>(runs: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..runs {
        let t = Instant::now();
        let v = f();
        best = best.min(t.elapsed());
        last = Some(v);
    }
    (last.unwrap(), best)
}

fn criterion_1() -> Outcome {
    let p = path(2, &[1, 0, 1, 2, 0], &[1, 1, 0, 0, 0]);
    let e: Expansion = VertexExpansion {
        m: 3,
        d: vec![false; 3],
        q: vec![0, 1, 2, 0, 2, 1],
    }
    .into();
    let ((out, w), took) = best_of(5, || {
        (
            expansion::expand(&p, &e).unwrap(),
            expansion::inserted_values(&p, &e).unwrap(),
        )
    });
    let ok = out.colors() == [1, 0, 1, 2, 0, 2, 1, 2, 0]
        && out.values() == bools(&[1, 0, 0, 0, 1, 0, 0, 0, 0])
        && w == bools(&[0, 0, 0, 1, 0]);
    verdict(ok && took < WORKED_EXAMPLE_LIMIT, format!("{out}, w = {w:?}, {took:?}"))
}

fn criterion_2() -> Outcome {
    let p = path(2, &[2, 1, 0, 2, 1], &[1, 1, 0, 0, 0]);
    let e: Expansion = EdgeExpansion {
        m: 3,
        d: vec![None, Some(false), Some(true)],
        q: vec![1, 2, 1, 2],
        s: 2,
    }
    .into();
    let ((out, w), took) = best_of(5, || {
        (
            expansion::expand(&p, &e).unwrap(),
            expansion::inserted_values(&p, &e).unwrap(),
        )
    });
    let ok = out.colors() == [2, 1, 2, 0, 1, 2, 1]
        && out.values() == bools(&[1, 0, 1, 0, 1, 0, 0])
        && w == bools(&[0, 1, 1]);
    verdict(ok && took < WORKED_EXAMPLE_LIMIT, format!("{out}, w = {w:?}, {took:?}"))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for n in 1..=5 {
        let p = path(n, &[0, 1, 0], &[1, 0, 0]);
        let (out, took) = best_of(5, || moves::finish_k4(&p).unwrap());
        slowest = slowest.max(took);
        let c = &out.certificate;
        let ok = out.new_path.is_zero_path()
            && out.new_path.len() == 4
            && c.exhaustive
            && c.mono.len() == 2
            && c.on_path == c.mono;
        if !ok {
            bad.push(n);
        }
    }
    verdict(
        bad.is_empty() && slowest < WORKED_EXAMPLE_LIMIT,
        format!("failing n: {bad:?}, slowest {slowest:?}"),
    )
}

fn criterion_4() -> Outcome {
    let started = Instant::now();
    let expect_k6 = [(1, 2, 2), (2, 8, 7), (3, 9, 8), (4, 9, 8), (5, 9, 8)];
    let mut mismatches = Vec::new();
    for n in 1..=5 {
        for k in [2, 4] {
            let got = (
                enumerate_atomic(n, k, false).unwrap().len(),
                enumerate_atomic(n, k, true).unwrap().len(),
            );
            if got != (1, 1) {
                mismatches.push(format!("n={n} k={k}: got {got:?}, expected (1, 1)"));
            }
        }
    }
    for (n, count, reflected) in expect_k6 {
        let got = (
            enumerate_atomic(n, 6, false).unwrap().len(),
            enumerate_atomic(n, 6, true).unwrap().len(),
        );
        if got != (count, reflected) {
            mismatches.push(format!("n={n} k=6: got {got:?}, expected ({count}, {reflected})"));
        }
    }
    let took = started.elapsed();
    let detail = if mismatches.is_empty() {
        format!("{took:?}")
    } else {
        format!("{}; {took:?}", mismatches.join("; "))
    };
    verdict(mismatches.is_empty() && took < CENSUS_LIMIT, detail)
}

struct Sweep {
    traces: Vec<Trace>,
    failures: Vec<String>,
    took: Duration,
}

fn sweep() -> Sweep {
    let started = Instant::now();
    let mut traces = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=3 {
        for k in (2..=8).step_by(2) {
            for p in enumerate_atomic(n, k, false).unwrap() {
                for simplified_summits in [false, true] {
                    match reduce(
                        &p,
                        ReduceConfig {
                            simplified_summits,
                            max_steps: None,
                        },
                    ) {
                        Ok(t) => {
                            let rep = replay(&p, &t);
                            if !rep.all_passed() {
                                failures.push(format!("{p}: {}", rep.failures().next().unwrap()));
                            }
                            traces.push(t);
                        }
                        Err(e) => failures.push(format!("{p}: {e}")),
                    }
                }
            }
        }
    }
    Sweep {
        traces,
        failures,
        took: started.elapsed(),
    }
}

/// Collects `(kind, |M(A)|, |on path|, exhaustive, summit height)` for
/// every step of every trace.
fn move_facts(traces: &[Trace]) -> Vec<(MoveKind, usize, usize, bool, usize)> {
    let mut out = Vec::new();
    for t in traces {
        for (view, step) in steps(t).iter().zip(&t.steps) {
            let c = expansion::is_exhaustive(&view.target, &step.expansion).unwrap();
            let h = view.target.heights().values[step.expansion.m() - 1];
            out.push((step.move_kind, c.mono.len(), c.on_path.len(), c.exhaustive, h));
        }
    }
    out
}

fn criterion_5(traces: &[Trace]) -> Outcome {
    let facts = move_facts(traces);
    let mut seen = BTreeSet::new();
    let mut bad = Vec::new();
    for &(kind, mono, on, exhaustive, h) in &facts {
        let shape = match kind {
            MoveKind::Summit => mono == 2 && ((on == 2) == (h == 2)),
            MoveKind::SimplifiedSummit | MoveKind::PlateauGeneric | MoveKind::PlateauSpecial | MoveKind::Fatten => {
                mono == 0
            }
            MoveKind::Eliminate | MoveKind::FinishK4 => mono == 2 && on == 2,
            MoveKind::Shorten => (mono, on) == (4, 2) || (mono, on) == (8, 4),
            MoveKind::SplitN1 => true,
        };
        seen.insert((kind, mono, on, h == 2 || kind != MoveKind::Summit));
        if !shape || !exhaustive {
            bad.push(format!("{kind}: |M(A)| = {mono}, on path {on}, h = {h}"));
        }
    }
    let must_see = [
        (MoveKind::Summit, 2, 2, true),
        (MoveKind::Summit, 2, 0, false),
        (MoveKind::SimplifiedSummit, 0, 0, true),
        (MoveKind::PlateauGeneric, 0, 0, true),
        (MoveKind::PlateauSpecial, 0, 0, true),
        (MoveKind::Fatten, 0, 0, true),
        (MoveKind::Eliminate, 2, 2, true),
        (MoveKind::Shorten, 4, 2, true),
        (MoveKind::Shorten, 8, 4, true),
    ];
    let missing: Vec<_> = must_see.iter().filter(|m| !seen.contains(m)).collect();
    verdict(
        bad.is_empty() && missing.is_empty(),
        format!(
            "{} steps, violations {:?}, unexercised {:?}",
            facts.len(),
            bad.first(),
            missing
        ),
    )
}

fn criterion_6(s: &Sweep) -> Outcome {
    verdict(
        s.failures.is_empty() && s.took < SWEEP_LIMIT,
        format!(
            "{} traces, {} failures {:?}, {:?}",
            s.traces.len(),
            s.failures.len(),
            s.failures.first(),
            s.took
        ),
    )
}

fn criterion_7(traces: &[Trace]) -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    for t in traces {
        for (view, step) in steps(t).iter().zip(&t.steps) {
            if !step.move_kind.lowers_heights() {
                continue;
            }
            let h = view.component.height_stats();
            for piece in view.result.decompose().unwrap().pieces {
                checked += 1;
                if !h.revlex_greater(&piece.height_stats()).unwrap() {
                    violations += 1;
                }
            }
        }
    }
    verdict(
        violations == 0 && checked > 0,
        format!("{checked} components checked, {violations} violations"),
    )
}

fn random_q(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let t = rng.gen_range(0..=10);
    if rng.gen_bool(0.5) {
        (0..t).map(|_| rng.gen_range(0..=n)).collect()
    } else {
        // doubled multisets make even counts common
        let mut q: Vec<usize> = (0..t / 2 + 1).map(|_| rng.gen_range(0..=n)).collect();
        q.extend(q.clone());
        q.shuffle(rng);
        q
    }
}

fn criterion_8(traces: &[Trace]) -> Outcome {
    let mut disagreements = Vec::new();
    let mut expansions = 0;
    let mut check = |p: &SimplexPath, e: &Expansion| {
        expansions += 1;
        let fast = expansion::is_exhaustive(p, e).unwrap();
        let oracle = exhaustive_by_enumeration(p, e);
        let n = p.dim();
        let mono: BTreeSet<Vec<bool>> = fast.mono.iter().map(|v| v.bits(n)).collect();
        let on: BTreeSet<Vec<bool>> = fast.on_path.iter().map(|v| v.bits(n)).collect();
        if fast.exhaustive != oracle.exhaustive || mono != oracle.mono || on != oracle.on_path {
            disagreements.push(format!("{p} with {e:?}"));
        }
    };
    for n in 1..=5 {
        let p = path(n, &[0, 1, 0], &[1, 0, 0]);
        check(&p, &moves::finish_k4(&p).unwrap().expansion);
    }
    for t in traces {
        for (view, step) in steps(t).iter().zip(&t.steps) {
            check(&view.target, &step.expansion);
        }
    }

    let mut rng = StdRng::seed_from_u64(SEED);
    let mut walk_disagreements = 0;
    let mut valid = 0;
    for _ in 0..RANDOM_SEQUENCES {
        let n = rng.gen_range(1..=4);
        let q = random_q(&mut rng, n);
        let lib = validate_loop(n, &q).is_ok();
        valid += usize::from(lib);
        if lib != is_loop_by_walking(n, &q) {
            walk_disagreements += 1;
        }
        let p = rng.gen_range(0..=n);
        let s = rng.gen_range(0..=q.len().max(1));
        let lib = validate_ppath(n, p, &q, s).is_ok();
        valid += usize::from(lib);
        if lib != is_ppath_by_walking(n, p, &q, s) {
            walk_disagreements += 1;
        }
    }
    verdict(
        disagreements.is_empty() && walk_disagreements == 0,
        format!(
            "{expansions} expansions, {} matching disagreements; {RANDOM_SEQUENCES} sequences ({valid} valid walks), {walk_disagreements} walk disagreements",
            disagreements.len()
        ),
    )
}

/// A random expansion of `p` that passes validation, if one turns up.
fn random_expansion(rng: &mut StdRng, p: &SimplexPath) -> Option<Expansion> {
    let (n, k) = (p.dim(), p.len());
    for _ in 0..200 {
        let t = 2 * rng.gen_range(1..=4);
        let e: Expansion = if rng.gen_bool(0.5) && k >= 3 {
            let m = rng.gen_range(2..=k - 1);
            let mut q: Vec<usize> = (0..t).map(|_| rng.gen_range(0..=n)).collect();
            q[0] = p.color(m - 1);
            q[t - 1] = p.color(m);
            VertexExpansion {
                m,
                d: (0..=n).map(|_| rng.gen_bool(0.5)).collect(),
                q,
            }
            .into()
        } else if k >= 4 {
            let m = rng.gen_range(2..=k - 2);
            let c = p.color(m);
            let others: Vec<usize> = (0..=n).filter(|&x| x != c).collect();
            let mut q: Vec<usize> = (0..t).map(|_| *others.choose(rng).unwrap()).collect();
            q[0] = p.color(m - 1);
            q[t - 1] = p.color(m + 1);
            let d = (0..=n).map(|j| (j != c).then(|| rng.gen_bool(0.5))).collect();
            EdgeExpansion {
                m,
                d,
                q,
                s: rng.gen_range(1..t),
            }
            .into()
        } else {
            return None;
        };
        if expansion::validate(p, &e).is_ok() {
            return Some(e);
        }
    }
    None
}

fn random_permutation(rng: &mut StdRng, n: usize) -> ColorPermutation {
    let mut image: Vec<usize> = (0..=n).collect();
    image.shuffle(rng);
    ColorPermutation::new(image).unwrap()
}

fn criterion_9() -> Outcome {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut pool = Vec::new();
    for n in 1..=3 {
        for k in (2..=8).step_by(2) {
            pool.extend(enumerate_atomic(n, k, false).unwrap());
        }
    }
    let mut violations: Vec<String> = Vec::new();
    let mut fail = |what: &str, p: &SimplexPath| violations.push(format!("{what}: {p}"));

    for p in &pool {
        let r = reflect(p);
        if reflect(&r) != *p || r.height_stats() != p.height_stats() {
            fail("reflection", p);
        }
        let (pi, sigma) = (
            random_permutation(&mut rng, p.dim()),
            random_permutation(&mut rng, p.dim()),
        );
        let composed = permute(&pi.compose(&sigma), p).unwrap();
        let stepwise = permute(&pi, &permute(&sigma, p).unwrap()).unwrap();
        if composed != stepwise
            || permute(&ColorPermutation::identity(p.dim()), p).unwrap() != *p
            || stepwise.heights() != p.heights()
        {
            fail("permutation action", p);
        }
    }

    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let same_n: Vec<&SimplexPath> = pool.iter().filter(|p| p.dim() == n).collect();
        let count = rng.gen_range(1..=4);
        let pieces: Vec<SimplexPath> = (0..count)
            .map(|_| (*same_n.choose(&mut rng).unwrap()).clone())
            .collect();
        let glue: Vec<usize> = (1..count)
            .map(|i| loop {
                let c = rng.gen_range(0..=n);
                let prev = pieces[i - 1].colors().last().copied();
                let next = pieces[i].colors().first().copied();
                if Some(c) != prev && Some(c) != next {
                    break c;
                }
            })
            .collect();
        let whole = concatenate_all(&pieces, &glue).unwrap();
        let dec = whole.decompose().unwrap();
        if dec.pieces != pieces || dec.glue_colors != glue {
            fail("decompose after concatenate", &whole);
        }
    }

    let mut done = 0;
    while done < RANDOM_EXPANSIONS {
        let p = pool.choose(&mut rng).unwrap();
        let Some(e) = random_expansion(&mut rng, p) else {
            continue;
        };
        done += 1;
        let out = expansion::expand(p, &e).unwrap();
        let (k, t, m) = (p.len(), e.q().len(), e.m());
        if out.len() != k + t - 2 {
            fail("length law", p);
        }
        let old = p.r_sequence();
        let new = out.r_sequence();
        let a = expansion::label_array(p, &e).unwrap();
        let walk = expansion::on_path_walk(p, &e).unwrap();
        let inserted_end = m - 1 + walk.len();
        let prefix = new[..m - 1] == old[..m - 1];
        let spliced = walk
            .iter()
            .enumerate()
            .all(|(i, &alpha)| new[m - 1 + i] == a.eval(alpha));
        let replaced = match e {
            Expansion::Vertex(_) => 1,
            Expansion::Edge(_) => 2,
        };
        let suffix = new[inserted_end..] == old[m - 1 + replaced..];
        if !(prefix && spliced && suffix) {
            fail("splice", p);
        }
    }
    let took = started.elapsed();
    verdict(
        violations.is_empty() && took < PROPERTY_LIMIT,
        format!(
            "{} paths, {RANDOM_EXPANSIONS} expansions, violations {:?}, {took:?}",
            pool.len(),
            violations.first()
        ),
    )
}

fn main() {
    let mut results = vec![
        ("1 worked vertex expansion", criterion_1()),
        ("2 worked edge expansion", criterion_2()),
        ("3 length-4 base case", criterion_3()),
        ("4 census of short atomic paths", criterion_4()),
    ];
    let s = sweep();
    results.push(("5 move-level M(A) facts", criterion_5(&s.traces)));
    results.push(("6 reduction sweep n<=3 k<=8", criterion_6(&s)));
    results.push(("7 height statistics descent", criterion_7(&s.traces)));
    results.push(("8 oracle equivalence", criterion_8(&s.traces)));
    results.push(("9 property suite", criterion_9()));

    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
