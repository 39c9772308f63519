//! Geo and ShortLex automata by subset construction over the small roots.

use std::collections::HashMap;
use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{RootAction, SmallRootSet};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AutomatonKind {
    Geo,
    ShortLex,
}

impl std::fmt::Display for AutomatonKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AutomatonKind::Geo => "Geo",
            AutomatonKind::ShortLex => "ShortLex",
        })
    }
}

/// Deterministic automaton whose states are sets of small-root indices.
/// State 0 is the start state (the empty set); a missing transition is the
/// omitted fail state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    kind: AutomatonKind,
    alphabet: usize,
    /// Generators from least to greatest; the identity order for Geo.
    order: Vec<usize>,
    states: Vec<Vec<usize>>,
    trans: Vec<Vec<Option<usize>>>,
}

impl Automaton {
    pub fn kind(&self) -> &AutomatonKind {
        &self.kind
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, s: usize) -> &[usize] {
        &self.states[s]
    }

    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    pub fn transition(&self, state: usize, letter: usize) -> Option<usize> {
        self.trans[state][letter]
    }

    pub fn find_state(&self, set: &[usize]) -> Option<usize> {
        self.states.iter().position(|s| s == set)
    }

    /// Runs `word` from the start state; `None` once the fail state is hit.
    pub fn run(&self, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(0, |s, &a| self.trans[s][a])
    }

    /// Graph on the non-start states with one edge per non-fail transition.
    pub fn accept_core(&self) -> CoreGraph {
        let adj = self.trans[1..]
            .iter()
            .map(|row| row.iter().flatten().map(|&t| t - 1).collect())
            .collect();
        CoreGraph { adj }
    }

    pub fn export_dot(&self) -> Result<String> {
        if self.alphabet == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut s = format!("digraph {} {{\n  rankdir=LR;\n", self.kind);
        for (k, set) in self.states.iter().enumerate() {
            let label = if k == 0 {
                "{}".to_string()
            } else {
                let names: Vec<String> = set.iter().map(|r| format!("r{r}")).collect();
                format!("{{{}}}", names.join(","))
            };
            let shape = if k == 0 { "doublecircle" } else { "circle" };
            s.push_str(&format!("  q{k} [label=\"{label}\", shape={shape}];\n"));
        }
        for (k, row) in self.trans.iter().enumerate() {
            for (a, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    s.push_str(&format!("  q{k} -> q{t} [label=\"s{}\"];\n", a + 1));
                }
            }
        }
        s.push_str("}\n");
        Ok(s)
    }

    pub fn dump(&self) -> AutomatonDump {
        AutomatonDump {
            kind: self.kind.clone(),
            alphabet: self.alphabet,
            order: self.order.iter().map(|g| g + 1).collect(),
            states: self.states.clone(),
            transitions: self.trans.clone(),
        }
    }
}

/// Machine-readable automaton: generators are 1-based, states and roots 0-based.
#[derive(Debug, Clone, Serialize)]
pub struct AutomatonDump {
    pub kind: AutomatonKind,
    pub alphabet: usize,
    pub order: Vec<usize>,
    pub states: Vec<Vec<usize>>,
    pub transitions: Vec<Vec<Option<usize>>>,
}

/// `delta(D, s_i) = {alpha_i} u ({sigma_i(v) : v in D} n Sigma)`.
pub fn build_geo(s: &SmallRootSet, state_cap: usize) -> Result<Automaton> {
    let n = s.rank();
    subset_construction(s, AutomatonKind::Geo, (0..n).collect(), vec![Vec::new(); n], state_cap)
}

/// As Geo, additionally adding `sigma_i(alpha_j) n Sigma` for every generator
/// `j` preceding `i` in `order` (listed from least to greatest).
pub fn build_shortlex(s: &SmallRootSet, order: &[usize], state_cap: usize) -> Result<Automaton> {
    let n = s.rank();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&g| g >= n || std::mem::replace(&mut seen[g], true)) {
        return Err(Error::Config(format!(
            "generator order must be a permutation of 1..={n}"
        )));
    }
    let mut extra = vec![Vec::new(); n];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if let RootAction::Index(r) = s.act(i, s.simple_index(j)) {
                extra[i].push(r);
            }
        }
    }
    subset_construction(s, AutomatonKind::ShortLex, order.to_vec(), extra, state_cap)
}

fn subset_construction(
    s: &SmallRootSet,
    kind: AutomatonKind,
    order: Vec<usize>,
    extra: Vec<Vec<usize>>,
    state_cap: usize,
) -> Result<Automaton> {
    let n = s.rank();
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut states: Vec<Vec<usize>> = vec![Vec::new()];
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut mark = vec![false; s.len()];
    while let Some(q) = queue.pop_front() {
        let mut row = vec![None; n];
        for (i, slot) in row.iter_mut().enumerate() {
            let alpha = s.simple_index(i);
            if states[q].binary_search(&alpha).is_ok() {
                continue;
            }
            let mut next = vec![alpha];
            mark[alpha] = true;
            let images = states[q].iter().filter_map(|&r| match s.act(i, r) {
                RootAction::Index(t) => Some(t),
                _ => None,
            });
            for t in images.chain(extra[i].iter().copied()) {
                if !std::mem::replace(&mut mark[t], true) {
                    next.push(t);
                }
            }
            for &t in &next {
                mark[t] = false;
            }
            next.sort_unstable();
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= state_cap {
                        return Err(Error::CapExceeded {
                            what: "automaton states",
                            value: states.len() + 1,
                            cap: state_cap,
                        });
                    }
                    let id = states.len();
                    ids.insert(next.clone(), id);
                    states.push(next);
                    queue.push_back(id);
                    id
                }
            };
            *slot = Some(id);
        }
        debug_assert_eq!(trans.len(), q);
        trans.push(row);
    }
    Ok(Automaton {
        kind,
        alphabet: n,
        order,
        states,
        trans,
    })
}

/// Directed multigraph on `0..len`; node `k` stands for automaton state `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreGraph {
    adj: Vec<Vec<usize>>,
}

impl CoreGraph {
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        CoreGraph { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// Strongly connected components (Tarjan), each sorted, listed in
    /// reverse topological order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(top) = call.last_mut() {
                let (v, pos) = *top;
                if let Some(&w) = self.adj[v].get(pos) {
                    top.1 += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(p, _)) = call.last() {
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
        out
    }

    /// Irreducible: one component containing at least one cycle.
    pub fn strongly_connected(&self) -> (bool, Vec<Vec<usize>>) {
        let comps = self.components();
        let ok = comps.len() == 1 && self.edge_count() > 0;
        (ok, comps)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected().0
    }

    /// Gcd of all cycle lengths, via BFS levels.
    pub fn period(&self) -> Result<usize> {
        let (ok, comps) = self.strongly_connected();
        if !ok {
            return Err(Error::NotStronglyConnected {
                components: comps.len(),
            });
        }
        let level = self.bfs_levels(0);
        let mut g = 0usize;
        for (u, succ) in self.adj.iter().enumerate() {
            for &v in succ {
                let d = (level[u] + 1) as i64 - level[v] as i64;
                g = g.gcd(&(d.unsigned_abs() as usize));
            }
        }
        Ok(g)
    }

    fn bfs_levels(&self, root: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.len()];
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    /// Nodes reachable from `u` (including `u`).
    pub fn reachable_from(&self, u: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Subgraph induced on `nodes` (renumbered in the given order).
    pub fn induced(&self, nodes: &[usize]) -> CoreGraph {
        let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        CoreGraph {
            adj: nodes
                .iter()
                .map(|&u| self.adj[u].iter().filter_map(|v| pos.get(v).copied()).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_DEGREE_CAP;
    use crate::diagram::parse_diagram;
    use crate::roots::{small_roots, DEFAULT_SIGMA_CAP};

    fn roots(text: &str) -> SmallRootSet {
        let d = parse_diagram(text).unwrap().to_coxeter();
        small_roots(&d, DEFAULT_DEGREE_CAP, DEFAULT_SIGMA_CAP).unwrap()
    }

    const UNIVERSAL3: &str = "rank 3\nedge 1 2 inf\nedge 2 3 inf\nedge 1 3 inf\n";
    const GOLDEN: &str = "rank 3\nedge 1 2 inf\nedge 2 3 inf\n";

    #[test]
    fn universal_geo() {
        let a = build_geo(&roots(UNIVERSAL3), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(a.state_count(), 4);
        for i in 0..3 {
            let q = a.transition(0, i).unwrap();
            assert_eq!(a.state(q), &[i]);
            assert_eq!(a.transition(q, i), None);
            for j in (0..3).filter(|&j| j != i) {
                assert_eq!(a.state(a.transition(q, j).unwrap()), &[j]);
            }
        }
        assert_eq!(a.run(&[]), Some(0));
        assert_eq!(a.run(&[0, 0]), None);
        assert_eq!(a.run(&[0, 1, 0]), a.run(&[0]));
        let core = a.accept_core();
        assert_eq!((core.len(), core.edge_count()), (3, 6));
        assert!(core.is_strongly_connected());
        assert_eq!(core.period().unwrap(), 1);
    }

    #[test]
    fn infinite_dihedral() {
        let s = roots("rank 2\nedge 1 2 inf\n");
        let a = build_geo(&s, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(a.state_count(), 3);
        let core = a.accept_core();
        assert_eq!(core.edge_count(), 2);
        assert_eq!(core.period().unwrap(), 2);
        let b = build_shortlex(&s, &[1, 0], DEFAULT_STATE_CAP).unwrap();
        assert_eq!(b.state_count(), 3);
    }

    #[test]
    fn golden_commuting_pair() {
        let s = roots(GOLDEN);
        let a = build_geo(&s, DEFAULT_STATE_CAP).unwrap();
        let q = a.run(&[0, 2]).unwrap();
        assert_eq!(a.state(q), &[0, 2]);
        assert_eq!(a.transition(q, 0), None);
        assert_eq!(a.transition(q, 2), None);
        let sl = build_shortlex(&s, &[0, 1, 2], DEFAULT_STATE_CAP).unwrap();
        assert!(sl.run(&[0, 2]).is_some());
        assert!(sl.run(&[2, 0]).is_none());
    }

    #[test]
    fn shortlex_rejects_bad_order() {
        let s = roots(GOLDEN);
        assert!(build_shortlex(&s, &[0, 0, 1], DEFAULT_STATE_CAP).is_err());
        assert!(build_shortlex(&s, &[0, 1], DEFAULT_STATE_CAP).is_err());
    }

    #[test]
    fn state_cap() {
        let s = roots(GOLDEN);
        assert!(matches!(build_geo(&s, 2), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn graph_fixtures() {
        let two = CoreGraph::from_adjacency(vec![vec![0], vec![1]]);
        let (ok, comps) = two.strongly_connected();
        assert!(!ok);
        assert_eq!(comps.len(), 2);
        assert!(two.period().is_err());
        let cycle = CoreGraph::from_adjacency(vec![vec![1], vec![2], vec![3], vec![0]]);
        assert_eq!(cycle.period().unwrap(), 4);
        let mixed = CoreGraph::from_adjacency(vec![vec![1], vec![2, 0], vec![0]]);
        assert_eq!(mixed.period().unwrap(), 1);
        let lonely = CoreGraph::from_adjacency(vec![vec![]]);
        assert!(!lonely.is_strongly_connected());
    }

    #[test]
    fn dot_is_deterministic() {
        let a = build_geo(&roots(UNIVERSAL3), DEFAULT_STATE_CAP).unwrap();
        let d1 = a.export_dot().unwrap();
        let d2 = build_geo(&roots(UNIVERSAL3), DEFAULT_STATE_CAP)
            .unwrap()
            .export_dot()
            .unwrap();
        assert_eq!(d1, d2);
        assert_eq!(d1.matches("label=\"{").count(), 4);
        assert!(!d1.contains("fail"));
        let empty = Automaton {
            kind: AutomatonKind::Geo,
            alphabet: 0,
            order: vec![],
            states: vec![vec![]],
            trans: vec![vec![]],
        };
        assert_eq!(empty.export_dot(), Err(Error::EmptyAlphabet));
    }
}
