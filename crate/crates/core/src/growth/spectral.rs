//! Certified spectral-radius enclosures and the primitivity certificate.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::counting::TransferMatrix;
use crate::automata::Automaton;
use crate::error::{Error, Result};

pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

/// Interval `[lo, hi]` containing a spectral radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    pub iterations: usize,
    /// False when the tolerance was not reached within the iteration cap.
    pub converged: bool,
}

impl Enclosure {
    pub fn point(x: BigRational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
            iterations: 0,
            converged: true,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64, slack: f64) -> bool {
        self.lo.to_f64().unwrap_or(f64::NAN) - slack <= x && x <= self.hi.to_f64().unwrap_or(f64::NAN) + slack
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

/// Collatz–Wielandt enclosure of the spectral radius of an irreducible
/// matrix: for a positive vector `x`, `min (Mx)_i/x_i <= rho <= max (Mx)_i/x_i`.
///
/// A floating-point power iteration supplies a good eigenvector estimate
/// cheaply; exact big-integer iteration of `x -> (M + I)x` takes over once
/// floating point stops improving. Only exact bounds are reported; the
/// running best bounds are kept so successive intervals are nested.
pub fn spectral_radius_enclosure(m: &TransferMatrix, tol: &BigRational, iteration_cap: usize) -> Result<Enclosure> {
    spectral_radius_trace(m, tol, iteration_cap, |_| {})
}

/// As [`spectral_radius_enclosure`], calling `observe` on every intermediate interval.
pub fn spectral_radius_trace(
    m: &TransferMatrix,
    tol: &BigRational,
    iteration_cap: usize,
    mut observe: impl FnMut(&Enclosure),
) -> Result<Enclosure> {
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let (ok, comps) = m.graph().strongly_connected();
    if !ok {
        return Err(Error::NotStronglyConnected {
            components: comps.len(),
        });
    }
    let dim = m.dim();
    let mut best: Option<Enclosure> = None;
    let mut iterations = 0usize;
    let mut update = |lo: BigRational, hi: BigRational, it: usize, best: &mut Option<Enclosure>| {
        let e = match best.take() {
            None => Enclosure {
                lo,
                hi,
                iterations: it,
                converged: false,
            },
            Some(b) => Enclosure {
                lo: if lo > b.lo { lo } else { b.lo },
                hi: if hi < b.hi { hi } else { b.hi },
                iterations: it,
                converged: false,
            },
        };
        observe(&e);
        let done = &e.hi - &e.lo <= *tol;
        *best = Some(e);
        done
    };

    // floating-point phase
    let mut x = vec![1.0f64; dim];
    let mut last_gap = f64::INFINITY;
    let mut stalls = 0;
    let mut check_every = 1usize;
    while iterations < iteration_cap {
        let y = mul_f64(m, &x);
        let mut z: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a + b).collect();
        let scale = z.iter().cloned().fold(0.0, f64::max);
        z.iter_mut().for_each(|v| *v /= scale);
        x = z;
        iterations += 1;
        if !iterations.is_multiple_of(check_every) {
            continue;
        }
        check_every = (check_every * 2).min(64);
        let xi = to_integer_vector(&x);
        let (lo, hi) = collatz_wielandt(m, &xi);
        let gap = (&hi - &lo).to_f64().unwrap_or(f64::INFINITY);
        if update(lo, hi, iterations, &mut best) {
            return Ok(finish(best, true));
        }
        if gap >= last_gap * 0.999 {
            stalls += 1;
            if stalls >= 3 {
                break;
            }
        } else {
            stalls = 0;
        }
        last_gap = gap;
    }

    // exact phase
    let mut xi = to_integer_vector(&x);
    while iterations < iteration_cap {
        let y = mul_exact(m, &xi);
        let (lo, hi) = bounds_from(&xi, &y);
        if update(lo, hi, iterations, &mut best) {
            return Ok(finish(best, true));
        }
        xi = xi.iter().zip(&y).map(|(a, b)| a + b).collect();
        let bits = xi.iter().map(|v| v.bits()).max().unwrap_or(0);
        if bits > 256 {
            let shift = bits - 200;
            // keep entries positive: add 1 after truncation
            xi = xi.iter().map(|v| (v >> shift) + 1u32).collect();
        }
        iterations += 1;
    }
    Ok(finish(best, false))
}

fn finish(best: Option<Enclosure>, converged: bool) -> Enclosure {
    let mut e = best.expect("at least one bound computed");
    e.converged = converged;
    e
}

fn mul_f64(m: &TransferMatrix, x: &[f64]) -> Vec<f64> {
    (0..m.dim())
        .map(|u| m.row(u).iter().map(|&(v, k)| k as f64 * x[v]).sum())
        .collect()
}

fn mul_exact(m: &TransferMatrix, x: &[BigUint]) -> Vec<BigUint> {
    (0..m.dim())
        .map(|u| m.row(u).iter().map(|&(v, k)| &x[v] * k).sum())
        .collect()
}

/// Strictly positive integer vector proportional (up to rounding) to `x`.
fn to_integer_vector(x: &[f64]) -> Vec<BigUint> {
    let max = x.iter().cloned().fold(0.0, f64::max);
    x.iter()
        .map(|&v| {
            let scaled = (v / max * 2f64.powi(60)).round();
            let s = if scaled.is_finite() && scaled >= 1.0 { scaled as u64 } else { 1 };
            BigUint::from(s.max(1))
        })
        .collect()
}

fn collatz_wielandt(m: &TransferMatrix, x: &[BigUint]) -> (BigRational, BigRational) {
    let y = mul_exact(m, x);
    bounds_from(x, &y)
}

/// `(min_i y_i/x_i, max_i y_i/x_i)` for positive `x`.
fn bounds_from(x: &[BigUint], y: &[BigUint]) -> (BigRational, BigRational) {
    let cmp = |a: usize, b: usize| (&y[a] * &x[b]).cmp(&(&y[b] * &x[a]));
    let mut lo = 0;
    let mut hi = 0;
    for i in 1..x.len() {
        if cmp(i, lo) == Ordering::Less {
            lo = i;
        }
        if cmp(i, hi) == Ordering::Greater {
            hi = i;
        }
    }
    let q = |i: usize| BigRational::new(BigInt::from(y[i].clone()), BigInt::from(x[i].clone()));
    (q(lo), q(hi))
}

/// Growth-rate enclosure valid for any nonnegative matrix: the maximum over
/// the strongly connected components carrying a cycle, or `[0, 0]` when the
/// matrix is nilpotent.
pub fn growth_rate_enclosure(m: &TransferMatrix, tol: &BigRational, iteration_cap: usize) -> Result<Enclosure> {
    let graph = m.graph();
    let mut best: Option<Enclosure> = None;
    for comp in graph.components() {
        let sub = m.restrict(&comp);
        if sub.is_zero() {
            continue;
        }
        let e = spectral_radius_enclosure(&sub, tol, iteration_cap)?;
        best = Some(match best {
            None => e,
            Some(b) => Enclosure {
                lo: if e.lo > b.lo { e.lo.clone() } else { b.lo.clone() },
                hi: if e.hi > b.hi { e.hi.clone() } else { b.hi.clone() },
                iterations: b.iterations + e.iterations,
                converged: b.converged && e.converged,
            },
        });
    }
    Ok(best.unwrap_or_else(|| Enclosure::point(BigRational::zero())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    CertifiedPerron,
    NotCertified(String),
}

/// Primitivity certificate for the accept core of an automaton: a primitive
/// nonnegative integer matrix has a Perron number as spectral radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerronCertificate {
    pub irreducible: bool,
    pub components: usize,
    /// Gcd of cycle lengths; absent when the core is not irreducible.
    pub period: Option<usize>,
    pub primitive: bool,
    pub conclusion: Conclusion,
}

impl PerronCertificate {
    pub fn is_certified(&self) -> bool {
        self.conclusion == Conclusion::CertifiedPerron
    }
}

pub fn perron_certificate(a: &Automaton) -> PerronCertificate {
    let core = a.accept_core();
    let (irreducible, comps) = core.strongly_connected();
    let period = if irreducible { core.period().ok() } else { None };
    let primitive = irreducible && period == Some(1);
    let conclusion = if primitive {
        Conclusion::CertifiedPerron
    } else if !irreducible {
        Conclusion::NotCertified(if core.edge_count() == 0 || comps.iter().all(|c| c.len() == 1 && !core.successors(c[0]).contains(&c[0])) {
            format!("core is acyclic ({} states)", core.len())
        } else {
            format!("core not strongly connected ({} components)", comps.len())
        })
    } else {
        Conclusion::NotCertified(format!("period = {}", period.unwrap_or(0)))
    };
    PerronCertificate {
        irreducible,
        components: comps.len(),
        period,
        primitive,
        conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn tol() -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
    }

    #[test]
    fn permutation_matrix() {
        let m = TransferMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        let e = spectral_radius_enclosure(&m, &tol(), DEFAULT_ITERATION_CAP).unwrap();
        assert!(e.contains(&BigRational::one()));
        assert!(e.converged);
    }

    #[test]
    fn complete_graph() {
        let m = TransferMatrix::from_dense(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        let e = spectral_radius_enclosure(&m, &tol(), DEFAULT_ITERATION_CAP).unwrap();
        assert!(e.contains(&BigRational::from(BigInt::from(2))));
    }

    #[test]
    fn fibonacci_matrix() {
        let m = TransferMatrix::from_dense(&[vec![1, 1], vec![1, 0]]);
        let mut trace = Vec::new();
        let e = spectral_radius_trace(&m, &tol(), DEFAULT_ITERATION_CAP, |e| trace.push(e.clone())).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(e.contains_f64(phi, 1e-15));
        assert!(e.width() <= tol());
        for w in trace.windows(2) {
            assert!(w[1].lo >= w[0].lo && w[1].hi <= w[0].hi);
        }
    }

    #[test]
    fn tight_tolerance_uses_exact_phase() {
        // 2I + cyclic shift: rho = 3, beyond what f64 can certify at 1e-30
        let m = TransferMatrix::from_dense(&[vec![2, 1, 0], vec![0, 2, 1], vec![1, 0, 2]]);
        let e = spectral_radius_enclosure(&m, &BigRational::new(BigInt::one(), BigInt::from(10u64).pow(30)), DEFAULT_ITERATION_CAP).unwrap();
        assert!(e.converged);
        assert!(e.contains(&BigRational::from(BigInt::from(3))));
    }

    #[test]
    fn errors_and_reducible() {
        let z = TransferMatrix::from_dense(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(spectral_radius_enclosure(&z, &tol(), 10), Err(Error::ZeroMatrix));
        let r = TransferMatrix::from_dense(&[vec![1, 1], vec![0, 2]]);
        assert!(matches!(
            spectral_radius_enclosure(&r, &tol(), 10),
            Err(Error::NotStronglyConnected { .. })
        ));
        let e = growth_rate_enclosure(&r, &tol(), DEFAULT_ITERATION_CAP).unwrap();
        assert!(e.contains(&BigRational::from(BigInt::from(2))));
        let e = growth_rate_enclosure(&z, &tol(), DEFAULT_ITERATION_CAP).unwrap();
        assert!(e.lo.is_zero() && e.hi.is_zero());
    }
}
