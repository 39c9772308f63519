#![allow(dead_code)]

use std::path::PathBuf;

use coxeter_growth::config::AnalysisConfig;
use coxeter_growth::diagram::{parse_diagram, CoxeterDiagram, Label};
use coxeter_growth::roots::Escape;
use coxeter_growth::Pipeline;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_SEED: u64 = 0x5eed_c0de;
pub const RANDOM_COUNT: usize = 25;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.cox"))
}

pub fn fixture(name: &str) -> CoxeterDiagram {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_diagram(&text).expect("fixture parses").to_coxeter()
}

pub const FIXTURES: &[&str] = &[
    "universal3",
    "universal4",
    "universal5",
    "infinite_dihedral",
    "golden",
    "golden_m13_3",
    "golden_m13_4",
    "golden_m13_5",
    "path4_chords",
    "finite_a2",
    "ideal_triangle",
    "pentagon",
    "quadrilateral",
];

pub fn fixtures() -> Vec<(String, CoxeterDiagram)> {
    FIXTURES.iter().map(|n| (n.to_string(), fixture(n))).collect()
}

/// Random infinity-spanned diagram: a random spanning tree with infinite
/// labels, every other pair labelled from {2, 3, 4, 5, inf}.
pub fn random_spanned(rng: &mut ChaCha8Rng) -> CoxeterDiagram {
    let n = rng.random_range(3..=5);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut tree = Vec::new();
    for v in 1..n {
        let p = rng.random_range(0..v);
        tree.push((perm[p].min(perm[v]), perm[p].max(perm[v])));
    }
    let choices = [
        Label::Finite(2),
        Label::Finite(3),
        Label::Finite(4),
        Label::Finite(5),
        Label::Infinity,
    ];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = if tree.contains(&(i, j)) {
                Label::Infinity
            } else {
                choices[rng.random_range(0..choices.len())]
            };
            edges.push((i, j, m));
        }
    }
    CoxeterDiagram::from_edges(n, &edges).expect("valid random diagram")
}

pub fn random_set() -> Vec<CoxeterDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    (0..RANDOM_COUNT).map(|_| random_spanned(&mut rng)).collect()
}

/// Fixtures followed by the random set, with names.
pub fn corpus() -> Vec<(String, CoxeterDiagram)> {
    let mut all = fixtures();
    for (k, d) in random_set().into_iter().enumerate() {
        all.push((format!("random#{k}"), d));
    }
    all
}

pub fn pipeline(d: &CoxeterDiagram) -> Pipeline {
    Pipeline::new(d, &AnalysisConfig::default()).expect("pipeline builds")
}

fn infinity_pairs(d: &CoxeterDiagram) -> Vec<(usize, usize)> {
    d.pairs().filter(|&(_, _, m)| m.is_infinite()).map(|(i, j, _)| (i, j)).collect()
}

/// After any `s_i` transition, reading `s_j` across a tree edge `{i, j}` stays
/// accepted and moves to a different state.
pub fn hiking_violations(p: &Pipeline) -> Vec<String> {
    let Some(tree) = &p.tree else { return Vec::new() };
    let mut out = Vec::new();
    for a in [&p.geo, &p.shortlex] {
        for d in 0..a.state_count() {
            for i in 0..a.alphabet() {
                let Some(next) = a.transition(d, i) else { continue };
                for &j in tree.neighbours(i) {
                    match a.transition(next, j) {
                        Some(t) if t != next => {}
                        t => out.push(format!("{}: q{d} -s{}-> q{next} -s{}-> {t:?}", a.kind(), i + 1, j + 1)),
                    }
                }
            }
        }
    }
    out
}

/// Every stabilised small root of an infinite pair `(i, j)` lies in
/// `span{alpha_i + alpha_j, alpha_k : m_ki = m_kj = 2}`.  The spanning set has
/// disjoint supports apart from the pair, so membership is exactly: support
/// inside `{i, j} + K` and equal coordinates at `i` and `j`.
pub fn stabiliser_violations(p: &Pipeline) -> Vec<String> {
    let s = &p.roots;
    let d = &p.diagram;
    let mut out = Vec::new();
    for (i, j) in infinity_pairs(d) {
        let allowed: Vec<usize> = (0..d.rank())
            .filter(|&k| k == i || k == j || (d.label(k, i) == Label::Finite(2) && d.label(k, j) == Label::Finite(2)))
            .collect();
        for r in s.stabilizer_roots(i, j).expect("infinite pair") {
            let v = s.root(r);
            let support_ok = v.support().iter().all(|k| allowed.contains(k));
            if !support_ok || v[i] != v[j] {
                out.push(format!("pair ({}, {}): root {r} outside the span", i + 1, j + 1));
            }
        }
    }
    out
}

/// Every non-stabilised small root escapes under powers of `s_i s_j` within
/// `4 |Sigma|` steps.
pub fn cycling_violations(p: &Pipeline) -> Vec<String> {
    let s = &p.roots;
    let bound = 4 * s.len();
    let mut out = Vec::new();
    for (i, j) in infinity_pairs(&p.diagram) {
        let stab = s.stabilizer_roots(i, j).expect("infinite pair");
        for r in 0..s.len() {
            let res = s.cycle_escape(i, j, r);
            let ok = match &res {
                Ok(Escape::Fixed) => stab.contains(&r),
                Ok(Escape::After(n)) => !stab.contains(&r) && *n >= 1 && *n <= bound,
                Err(_) => false,
            };
            if !ok {
                out.push(format!("pair ({}, {}): root {r}: {res:?}", i + 1, j + 1));
            }
        }
    }
    out
}

/// The state `{alpha_1}` (first generator of the admissible labelling) is
/// reachable from every non-start state, in both automata.
pub fn hydra_violations(p: &Pipeline) -> Vec<String> {
    let Some(l) = &p.labelling else { return Vec::new() };
    let first = l.vertex_with(0);
    let target_set = vec![p.roots.simple_index(first)];
    let mut out = Vec::new();
    for a in [&p.geo, &p.shortlex] {
        let Some(target) = a.find_state(&target_set) else {
            out.push(format!("{}: no state {{alpha_1}}", a.kind()));
            continue;
        };
        let core = a.accept_core();
        for q in 1..a.state_count() {
            if !core.reachable_from(q - 1)[target - 1] {
                out.push(format!("{}: q{target} unreachable from q{q}", a.kind()));
            }
        }
    }
    out
}
