use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::automata::{Automaton, CoreGraph};

/// Number of accepted words of each length `0..=k`.
pub fn count_words(a: &Automaton, k: usize) -> Vec<BigUint> {
    let mut cur = vec![BigUint::zero(); a.state_count()];
    cur[0] = BigUint::one();
    let mut out = Vec::with_capacity(k + 1);
    out.push(BigUint::one());
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); a.state_count()];
        for (q, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for letter in 0..a.alphabet() {
                if let Some(t) = a.transition(q, letter) {
                    next[t] += c;
                }
            }
        }
        out.push(next.iter().sum());
        cur = next;
    }
    out
}

/// Letter-multiplicity adjacency matrix of the accept core, stored by rows.
/// Row/column `k` is automaton state `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferMatrix {
    dim: usize,
    /// `rows[u]`: sorted `(v, multiplicity)` pairs.
    rows: Vec<Vec<(usize, u32)>>,
    /// Multiplicities of start-state transitions into each core state.
    start: Vec<u32>,
}

impl TransferMatrix {
    pub fn from_automaton(a: &Automaton) -> Self {
        let dim = a.state_count() - 1;
        let row_of = |q: usize| {
            let mut row: Vec<(usize, u32)> = Vec::new();
            for letter in 0..a.alphabet() {
                if let Some(t) = a.transition(q, letter) {
                    row.push((t - 1, 1));
                }
            }
            row.sort_unstable();
            row.dedup_by(|b, a| {
                if a.0 == b.0 {
                    a.1 += b.1;
                    true
                } else {
                    false
                }
            });
            row
        };
        let rows = (1..a.state_count()).map(row_of).collect();
        let mut start = vec![0; dim];
        for (v, m) in row_of(0) {
            start[v] = m;
        }
        TransferMatrix { dim, rows, start }
    }

    pub fn from_dense(m: &[Vec<u32>]) -> Self {
        let dim = m.len();
        let rows = m
            .iter()
            .map(|r| {
                assert_eq!(r.len(), dim, "square matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(v, &x)| (v, x))
                    .collect()
            })
            .collect();
        TransferMatrix {
            dim,
            rows,
            start: vec![1; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, u: usize) -> &[(usize, u32)] {
        &self.rows[u]
    }

    pub fn start_row(&self) -> &[u32] {
        &self.start
    }

    pub fn entry(&self, u: usize, v: usize) -> u32 {
        self.rows[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|k| self.rows[u][k].1)
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        (0..self.dim)
            .map(|u| (0..self.dim).map(|v| self.entry(u, v)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn graph(&self) -> CoreGraph {
        CoreGraph::from_adjacency(
            self.rows
                .iter()
                .map(|r| r.iter().map(|&(v, _)| v).collect())
                .collect(),
        )
    }

    /// Principal submatrix on `nodes` (renumbered in the given order).
    pub fn restrict(&self, nodes: &[usize]) -> TransferMatrix {
        let mut pos = vec![usize::MAX; self.dim];
        for (k, &v) in nodes.iter().enumerate() {
            pos[v] = k;
        }
        let rows = nodes
            .iter()
            .map(|&u| {
                let mut r: Vec<(usize, u32)> = self.rows[u]
                    .iter()
                    .filter(|(v, _)| pos[*v] != usize::MAX)
                    .map(|&(v, m)| (pos[v], m))
                    .collect();
                r.sort_unstable();
                r
            })
            .collect();
        TransferMatrix {
            dim: nodes.len(),
            rows,
            start: nodes.iter().map(|&v| self.start[v]).collect(),
        }
    }

    /// `start * M^(k-1) * 1` for `k >= 1`, and 1 for `k = 0`.
    pub fn counts(&self, k: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::one()];
        if k == 0 {
            return out;
        }
        let mut cur: Vec<BigUint> = self.start.iter().map(|&x| BigUint::from(x)).collect();
        out.push(cur.iter().sum());
        for _ in 1..k {
            let mut next = vec![BigUint::zero(); self.dim];
            for (u, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(v, m) in &self.rows[u] {
                    next[v] += c * m;
                }
            }
            out.push(next.iter().sum());
            cur = next;
        }
        out
    }
}
