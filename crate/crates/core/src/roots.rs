//! The finite set of small roots and the reflection action on it.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::field::format_exact;
use crate::algebra::{gram_matrix, BilinearForm, RootVector, Sign};
use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_SIGMA_CAP: usize = 100_000;

/// Image of a small root under a simple reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootAction {
    /// `sigma_i(r)` is the small root with this index.
    Index(usize),
    /// `sigma_i(r)` is a positive root outside the small-root set.
    NotSmall,
    /// `r = alpha_i`, so `sigma_i(r) = -alpha_i`.
    NegativeSelf,
}

/// Outcome of iterating `sigma_i sigma_j` on a small root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Escape {
    /// Least `N >= 1` with `(sigma_i sigma_j)^N (r)` outside the small roots.
    After(usize),
    /// `r` is fixed by both reflections.
    Fixed,
}

#[derive(Debug, Clone)]
pub struct SmallRootSet {
    form: BilinearForm,
    roots: Vec<RootVector>,
    index: HashMap<RootVector, usize>,
    /// `act[i][r]`
    act: Vec<Vec<RootAction>>,
}

impl SmallRootSet {
    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn root(&self, r: usize) -> &RootVector {
        &self.roots[r]
    }

    /// Simple roots come first, so `alpha_i` has index `i`.
    pub fn simple_index(&self, i: usize) -> usize {
        i
    }

    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn act(&self, i: usize, r: usize) -> RootAction {
        self.act[i][r]
    }

    /// Small roots fixed by both `sigma_i` and `sigma_j`; requires `m_ij = inf`.
    pub fn stabilizer_roots(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        self.require_infinity(i, j)?;
        Ok((0..self.len())
            .filter(|&r| self.is_fixed(i, r) && self.is_fixed(j, r))
            .collect())
    }

    fn is_fixed(&self, i: usize, r: usize) -> bool {
        self.act[i][r] == RootAction::Index(r)
    }

    fn require_infinity(&self, i: usize, j: usize) -> Result<()> {
        let n = self.rank();
        for k in [i, j] {
            if k >= n {
                return Err(Error::IndexOutOfRange { index: k, size: n });
            }
        }
        // (alpha_i | alpha_j) = -1 exactly when m_ij = inf
        let e = self.form.entry(i, j);
        if i == j || *e != self.form.field().from_int(-1) {
            return Err(Error::NotInfinityEdge { i, j });
        }
        Ok(())
    }

    /// Iterates `v -> sigma_i(sigma_j(v))` from `r` until it leaves the small
    /// roots (becoming negative counts as leaving).
    pub fn cycle_escape(&self, i: usize, j: usize, r: usize) -> Result<Escape> {
        self.require_infinity(i, j)?;
        if r >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: r,
                size: self.len(),
            });
        }
        if self.is_fixed(i, r) && self.is_fixed(j, r) {
            return Ok(Escape::Fixed);
        }
        let bound = 4 * self.len();
        let mut v = self.roots[r].clone();
        for n in 1..=bound {
            v = self.form.reflect_unchecked(j, &v);
            v = self.form.reflect_unchecked(i, &v);
            if self.index_of(&v).is_none() {
                return Ok(Escape::After(n));
            }
        }
        Err(Error::Invariant(format!(
            "root {r} did not escape under (s{} s{})^N within {bound} steps",
            i + 1,
            j + 1
        )))
    }

    /// Exact and decimal listing of the set.
    pub fn report(&self, digits: usize) -> RootsReport {
        let f = self.form.field();
        RootsReport {
            rank: self.rank(),
            field_conductor: f.conductor(),
            field_degree: f.degree(),
            minimal_polynomial: f.minimal_polynomial().display_in("c"),
            count: self.len(),
            roots: self
                .roots
                .iter()
                .enumerate()
                .map(|(k, v)| RootEntry {
                    index: k,
                    exact: v.coords().iter().map(format_exact).collect(),
                    decimal: v.coords().iter().map(|x| f.to_decimal(x, digits)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootsReport {
    pub rank: usize,
    pub field_conductor: u64,
    pub field_degree: usize,
    pub minimal_polynomial: String,
    pub count: usize,
    pub roots: Vec<RootEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootEntry {
    pub index: usize,
    pub exact: Vec<String>,
    pub decimal: Vec<String>,
}

impl RootsReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "small roots: {} (rank {}, field Q(c), c = 2cos(pi/{}), minimal polynomial {})\n",
            self.count, self.rank, self.field_conductor, self.minimal_polynomial
        );
        for r in &self.roots {
            s.push_str(&format!(
                "  [{}] ({})  ~ ({})\n",
                r.index,
                r.exact.join(", "),
                r.decimal.join(", ")
            ));
        }
        s
    }
}

/// Closure of the simple roots under `r -> sigma_i(r)` whenever
/// `-1 < (r | alpha_i) < 0`.
pub fn small_roots(d: &CoxeterDiagram, degree_cap: usize, sigma_cap: usize) -> Result<SmallRootSet> {
    let form = gram_matrix(d, degree_cap)?;
    small_roots_for_form(form, sigma_cap)
}

pub fn small_roots_for_form(form: BilinearForm, sigma_cap: usize) -> Result<SmallRootSet> {
    let n = form.rank();
    let mut found: Vec<RootVector> = (0..n).map(|i| form.simple_root(i)).collect();
    let mut seen: HashMap<RootVector, usize> =
        found.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let mut next = 0;
    while next < found.len() {
        let r = found[next].clone();
        next += 1;
        for i in 0..n {
            let (s, s1) = form.small_root_test(&r, i);
            if s != Sign::Negative || s1 != Sign::Positive {
                continue;
            }
            let image = form.reflect_unchecked(i, &r);
            if !seen.contains_key(&image) {
                if found.len() >= sigma_cap {
                    return Err(Error::CapExceeded {
                        what: "small roots",
                        value: found.len() + 1,
                        cap: sigma_cap,
                    });
                }
                seen.insert(image.clone(), found.len());
                found.push(image);
            }
        }
    }

    let f = form.field().clone();
    let mut rest: Vec<(RootVector, _)> = found
        .drain(n..)
        .map(|v| {
            let h = v.height();
            (v, h)
        })
        .collect();
    rest.sort_by(|(a, ha), (b, hb)| {
        f.cmp(ha, hb).then_with(|| {
            a.coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| f.cmp(x, y))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    });
    found.extend(rest.into_iter().map(|(v, _)| v));
    let index: HashMap<RootVector, usize> =
        found.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();

    let act = (0..n)
        .map(|i| {
            found
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    if k == i {
                        RootAction::NegativeSelf
                    } else {
                        match index.get(&form.reflect_unchecked(i, v)) {
                            Some(&t) => RootAction::Index(t),
                            None => RootAction::NotSmall,
                        }
                    }
                })
                .collect()
        })
        .collect();

    Ok(SmallRootSet {
        form,
        roots: found,
        index,
        act,
    })
}
