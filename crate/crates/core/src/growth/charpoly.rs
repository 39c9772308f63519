//! Exact characteristic polynomials and floating-point corroboration of the
//! Perron property.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::counting::TransferMatrix;
use super::spectral::Enclosure;
use crate::algebra::IntPoly;
use crate::error::{Error, Result};

pub const DEFAULT_CHARPOLY_CAP: usize = 512;

/// `det(xI - M)` by Faddeev–LeVerrier over the integers:
/// `A_1 = M`, `c_{n-k} = -tr(A_k)/k`, `A_{k+1} = M (A_k + c_{n-k} I)`.
/// Every division is exact. Sparse rows of `M` keep each step at
/// `O(dim^2 * row length)`.
pub fn characteristic_polynomial(m: &TransferMatrix, cap: usize) -> Result<IntPoly> {
    let n = m.dim();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "characteristic polynomial dimension",
            value: n,
            cap,
        });
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    if n == 0 {
        return Ok(IntPoly::new(coeffs));
    }
    // a = A_k, stored dense row-major
    let mut a: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for u in 0..n {
        for &(v, k) in m.row(u) {
            a[u * n + v] = BigInt::from(k);
        }
    }
    for k in 1..=n {
        let trace: BigInt = (0..n).map(|i| &a[i * n + i]).sum();
        let c = -trace / BigInt::from(k);
        coeffs[n - k] = c.clone();
        if k == n {
            break;
        }
        for i in 0..n {
            a[i * n + i] += &c;
        }
        let mut next = vec![BigInt::zero(); n * n];
        for u in 0..n {
            for &(w, mult) in m.row(u) {
                let mult = BigInt::from(mult);
                for v in 0..n {
                    let x = &a[w * n + v];
                    if !x.is_zero() {
                        next[u * n + v] += &mult * x;
                    }
                }
            }
        }
        a = next;
    }
    Ok(IntPoly::new(coeffs))
}

/// Numeric check that the spectral radius strictly dominates every other
/// root of the characteristic polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct Corroboration {
    /// Distinct nonzero roots examined.
    pub roots: usize,
    /// Root identified with the spectral radius.
    pub dominant: Option<f64>,
    pub max_other_modulus: f64,
    /// `lo(rho) - max |other roots|`.
    pub margin: f64,
    pub corroborated: bool,
    pub converged: bool,
}

pub const CORROBORATION_TOLERANCE: f64 = 1e-8;

/// Roots of the squarefree part of `p` (zero roots stripped) are approximated
/// numerically; the one nearest the enclosure is taken as the spectral
/// radius and the margin to the remaining moduli is reported.
pub fn corroborate_perron(p: &IntPoly, rho: &Enclosure) -> Corroboration {
    let squarefree = {
        let g = p.gcd(&p.derivative());
        if g.degree().unwrap_or(0) == 0 {
            p.primitive()
        } else {
            p.div_primitive(&g).expect("gcd divides p")
        }
    };
    let coeffs: Vec<BigInt> = squarefree.coeffs().to_vec();
    let first = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let stripped = IntPoly::new(coeffs[first..].to_vec());
    let lo = rho.lo_f64();
    let target = rho.midpoint().to_f64().unwrap_or(lo);
    let (roots, converged) = polynomial_roots(&stripped);
    let dominant_idx = roots
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()))
        .map(|(k, _)| k);
    let dominant = dominant_idx.map(|k| roots[k].re);
    let max_other = roots
        .iter()
        .enumerate()
        .filter(|(k, _)| Some(*k) != dominant_idx)
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    let margin = lo - max_other;
    let near = dominant_idx.is_some_and(|k| (roots[k] - target).norm() <= 1e-6 * (1.0 + target.abs()));
    Corroboration {
        roots: roots.len(),
        dominant,
        max_other_modulus: max_other,
        margin,
        corroborated: near && converged && lo > 0.0 && margin > CORROBORATION_TOLERANCE,
        converged,
    }
}

/// All complex roots by Aberth–Ehrlich iteration followed by Newton polishing.
pub fn polynomial_roots(p: &IntPoly) -> (Vec<Complex64>, bool) {
    let deg = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return (Vec::new(), true),
    };
    // monic float coefficients, scaled via the leading coefficient
    let lead = p.leading().to_f64().unwrap_or(f64::NAN);
    let a: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN) / lead).collect();
    if deg == 1 {
        return (vec![Complex64::new(-a[0], 0.0)], true);
    }
    // Cauchy bound for the initial circle
    let radius = 1.0 + a[..deg].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let r0 = radius.min(
        a[..deg]
            .iter()
            .enumerate()
            .map(|(k, c)| c.abs().powf(1.0 / (deg - k) as f64))
            .fold(0.0, f64::max)
            * 2.0,
    );
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(r0.max(1e-3), 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(1.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in a[..deg].iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };
    let mut converged = false;
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let sum: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = eval(*zi);
            let step = v / d;
            if step.is_finite() {
                *zi -= step;
            }
        }
    }
    (z, converged)
}
