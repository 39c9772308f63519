//! Brute-force ground truth: breadth-first enumeration of group elements as
//! exact matrices of the geometric representation, independent of the
//! small roots and the automata.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{gram_matrix, BilinearForm, FieldElement};
use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;
pub const DEFAULT_ORACLE_DEPTH: usize = 8;

/// Image of a group element, `n x n` row-major in the simple-root basis.
pub type GroupElement = Vec<FieldElement>;

/// Elements of word length `<= depth`, in breadth-first order.
#[derive(Debug, Clone)]
pub struct GroupBall {
    rank: usize,
    depth: usize,
    elements: Vec<GroupElement>,
    /// Word length of each element.
    lengths: Vec<usize>,
    /// Index of each element.
    index: HashMap<GroupElement, usize>,
    /// `edges[e]`: `(parent, generator)` pairs with `parent * s_generator = e`
    /// and `length(parent) + 1 = length(e)`.
    edges: Vec<Vec<(usize, usize)>>,
    /// Per-element geodesic count.
    geodesics: Vec<BigUint>,
}

impl GroupBall {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, e: usize) -> &GroupElement {
        &self.elements[e]
    }

    pub fn length(&self, e: usize) -> usize {
        self.lengths[e]
    }

    pub fn find(&self, m: &GroupElement) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn geodesics_of(&self, e: usize) -> &BigUint {
        &self.geodesics[e]
    }

    /// Number of elements of each length `0..=depth`.
    pub fn element_counts(&self) -> Vec<BigUint> {
        let mut w = vec![BigUint::zero(); self.depth + 1];
        for &l in &self.lengths {
            w[l] += 1u32;
        }
        w
    }

    /// Number of geodesic words of each length `0..=depth`.
    pub fn geodesic_counts(&self) -> Vec<BigUint> {
        let mut g = vec![BigUint::zero(); self.depth + 1];
        for (e, &l) in self.lengths.iter().enumerate() {
            g[l] += &self.geodesics[e];
        }
        g
    }

    /// Lexicographically least geodesic word of every element, under
    /// `order` (generators from least to greatest).
    pub fn shortlex_normal_forms(&self, order: &[usize]) -> Result<Vec<Vec<usize>>> {
        let n = self.rank;
        let mut rank_of = vec![usize::MAX; n];
        for (r, &g) in order.iter().enumerate() {
            if g >= n || rank_of[g] != usize::MAX {
                return Err(Error::Config("generator order must be a permutation".into()));
            }
            rank_of[g] = r;
        }
        if order.len() != n {
            return Err(Error::Config("generator order must be a permutation".into()));
        }
        let mut nf: Vec<Option<Vec<usize>>> = vec![None; self.len()];
        nf[0] = Some(Vec::new());
        // ranks: position of each element's normal form among its length class
        let mut key: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for e in 1..self.len() {
            let best = self.edges[e]
                .iter()
                .map(|&(p, s)| {
                    let mut k = key[p].clone();
                    k.push(rank_of[s]);
                    (k, p, s)
                })
                .min()
                .expect("non-identity element has a parent");
            let (k, p, s) = best;
            let mut word = nf[p].clone().expect("parents precede children");
            word.push(s);
            nf[e] = Some(word);
            key[e] = k;
        }
        Ok(nf.into_iter().map(|w| w.expect("all assigned")).collect())
    }
}

/// Breadth-first search from the identity by right multiplication with the
/// generators, up to word length `depth`.
pub fn bfs_group(d: &CoxeterDiagram, depth: usize, degree_cap: usize, element_cap: usize) -> Result<GroupBall> {
    let form = gram_matrix(d, degree_cap)?;
    let n = d.rank();
    let f = form.field().clone();
    let identity: GroupElement = (0..n * n)
        .map(|k| if k / n == k % n { f.one() } else { f.zero() })
        .collect();
    let mut ball = GroupBall {
        rank: n,
        depth,
        elements: vec![identity.clone()],
        lengths: vec![0],
        index: HashMap::from([(identity, 0)]),
        edges: vec![Vec::new()],
        geodesics: vec![BigUint::one()],
    };
    let mut level_start = 0;
    for k in 1..=depth {
        let level_end = ball.elements.len();
        for p in level_start..level_end {
            for s in 0..n {
                let m = right_multiply(&form, &ball.elements[p], s);
                match ball.index.get(&m) {
                    Some(&e) => {
                        if ball.lengths[e] == k {
                            ball.edges[e].push((p, s));
                            let add = ball.geodesics[p].clone();
                            ball.geodesics[e] += add;
                        }
                    }
                    None => {
                        if ball.elements.len() >= element_cap {
                            return Err(Error::CapExceeded {
                                what: "group elements",
                                value: ball.elements.len() + 1,
                                cap: element_cap,
                            });
                        }
                        let e = ball.elements.len();
                        ball.index.insert(m.clone(), e);
                        ball.elements.push(m);
                        ball.lengths.push(k);
                        ball.edges.push(vec![(p, s)]);
                        ball.geodesics.push(ball.geodesics[p].clone());
                    }
                }
            }
        }
        level_start = level_end;
    }
    Ok(ball)
}

/// `M * rho(s_i)`: `rho(s_i)` is the identity except row `i`, which is
/// `(c_i1, ..., -1, ..., c_in)` with `c_ij = 2cos(pi/m_ij)`; hence column `i`
/// is negated and column `i` scaled by `c_ij` is added to every other column `j`.
fn right_multiply(form: &BilinearForm, m: &GroupElement, i: usize) -> GroupElement {
    let n = form.rank();
    let f = form.field();
    let mut out = m.clone();
    for r in 0..n {
        let col_i = &m[r * n + i];
        if col_i.is_zero() {
            continue;
        }
        for j in 0..n {
            if j == i {
                out[r * n + j] = -col_i;
            } else {
                let c = form.reflection_coefficient(i, j);
                if !c.is_zero() {
                    out[r * n + j] = f.mul_add(&m[r * n + j], c, col_i);
                }
            }
        }
    }
    out
}

/// `w_k` for `k = 0..=depth`.
pub fn element_counts(d: &CoxeterDiagram, depth: usize, degree_cap: usize, element_cap: usize) -> Result<Vec<BigUint>> {
    Ok(bfs_group(d, depth, degree_cap, element_cap)?.element_counts())
}

/// `g_k` for `k = 0..=depth`.
pub fn geodesic_counts(d: &CoxeterDiagram, depth: usize, degree_cap: usize, element_cap: usize) -> Result<Vec<BigUint>> {
    Ok(bfs_group(d, depth, degree_cap, element_cap)?.geodesic_counts())
}

/// Counts of shortlex normal forms per length, with the normal forms.
pub fn shortlex_language_counts(
    d: &CoxeterDiagram,
    order: &[usize],
    depth: usize,
    degree_cap: usize,
    element_cap: usize,
) -> Result<(Vec<BigUint>, Vec<Vec<usize>>)> {
    let ball = bfs_group(d, depth, degree_cap, element_cap)?;
    let forms = ball.shortlex_normal_forms(order)?;
    let mut counts = vec![BigUint::zero(); depth + 1];
    for w in &forms {
        counts[w.len()] += 1u32;
    }
    Ok((counts, forms))
}

/// Per-length oracle table.
#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub k: usize,
    pub w: String,
    pub g: String,
}

pub fn oracle_table(ball: &GroupBall) -> Vec<OracleRow> {
    ball.element_counts()
        .iter()
        .zip(ball.geodesic_counts())
        .enumerate()
        .map(|(k, (w, g))| OracleRow {
            k,
            w: w.to_string(),
            g: g.to_string(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_DEGREE_CAP;
    use crate::diagram::parse_diagram;

    fn ball(text: &str, k: usize) -> GroupBall {
        let d = parse_diagram(text).unwrap().to_coxeter();
        bfs_group(&d, k, DEFAULT_DEGREE_CAP, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn small(v: Vec<BigUint>) -> Vec<u64> {
        v.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn infinite_dihedral() {
        let b = ball("rank 2\nedge 1 2 inf\n", 4);
        assert_eq!(small(b.element_counts()), vec![1, 2, 2, 2, 2]);
        assert_eq!(small(b.geodesic_counts()), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn universal_rank_three() {
        let b = ball("rank 3\nedge 1 2 inf\nedge 2 3 inf\nedge 1 3 inf\n", 4);
        assert_eq!(small(b.element_counts()), vec![1, 3, 6, 12, 24]);
        assert_eq!(small(b.geodesic_counts()), vec![1, 3, 6, 12, 24]);
    }

    #[test]
    fn symmetric_group_s3() {
        let b = ball("rank 2\nedge 1 2 3\n", 5);
        assert_eq!(small(b.element_counts()), vec![1, 2, 2, 1, 0, 0]);
        // the longest element has two reduced words
        assert_eq!(small(b.geodesic_counts()), vec![1, 2, 2, 2, 0, 0]);
    }

    #[test]
    fn commuting_pair_has_two_geodesics() {
        let b = ball("rank 3\nedge 1 2 inf\nedge 2 3 inf\n", 2);
        assert_eq!(small(b.element_counts()), vec![1, 3, 5]);
        assert_eq!(small(b.geodesic_counts()), vec![1, 3, 6]);
        let forms = b.shortlex_normal_forms(&[0, 1, 2]).unwrap();
        assert!(forms.contains(&vec![0, 2]));
        assert!(!forms.contains(&vec![2, 0]));
        let forms = b.shortlex_normal_forms(&[2, 1, 0]).unwrap();
        assert!(forms.contains(&vec![2, 0]));
    }

    #[test]
    fn element_cap() {
        let d = parse_diagram("rank 3\nedge 1 2 inf\nedge 2 3 inf\nedge 1 3 inf\n").unwrap().to_coxeter();
        assert!(matches!(
            bfs_group(&d, 6, DEFAULT_DEGREE_CAP, 20),
            Err(Error::CapExceeded { .. })
        ));
    }
}
