use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::charpoly::characteristic_polynomial;
use super::counting::{count_words, TransferMatrix};
use crate::algebra::IntPoly;
use crate::automata::Automaton;
use crate::error::{Error, Result};

/// Growth series `sum v_k z^k = numerator / denominator` in lowest terms,
/// normalised so that `denominator(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalSeries {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
    /// Number of leading coefficients checked against direct counting.
    pub verified_terms: usize,
}

impl RationalSeries {
    pub fn taylor(&self, n: usize) -> Vec<BigInt> {
        self.numerator.series_div(&self.denominator, n)
    }
}

/// The start state has no incoming transitions, so
/// `det(I - zA) = det(I - zM) = z^d chi_M(1/z)` where `M` is the core matrix
/// of dimension `d`. Multiplying the first `d + 1` counts by it gives the
/// numerator exactly; the fraction is then reduced and re-checked.
pub fn rational_series(a: &Automaton, cap: usize) -> Result<RationalSeries> {
    let m = TransferMatrix::from_automaton(a);
    let d = m.dim();
    let chi = characteristic_polynomial(&m, cap)?;
    let q = chi.reversed(d);
    let counts: Vec<BigInt> = count_words(a, d).into_iter().map(BigInt::from).collect();
    let p = IntPoly::new(
        (0..=d)
            .map(|k| (0..=k).map(|j| q.coeff(j) * &counts[k - j]).sum())
            .collect(),
    );
    let g = p.gcd(&q);
    let (mut p, mut q) = if g.degree().unwrap_or(0) > 0 {
        (
            div_exact(&p, &g)?,
            div_exact(&q, &g)?,
        )
    } else {
        (p, q)
    };
    let q0 = q.coeff(0);
    if !q0.abs().is_one() {
        return Err(Error::Invariant(format!("growth series denominator has constant term {q0}")));
    }
    if q0.is_negative() {
        p = p.scale(&BigInt::from(-1));
        q = q.scale(&BigInt::from(-1));
    }
    let terms = p.degree().unwrap_or(0) + q.degree().unwrap_or(0) + 5;
    let check: Vec<BigInt> = count_words(a, terms - 1).into_iter().map(BigInt::from).collect();
    if p.series_div(&q, terms) != check {
        return Err(Error::Invariant("growth series disagrees with word counts".into()));
    }
    Ok(RationalSeries {
        numerator: p,
        denominator: q,
        verified_terms: terms,
    })
}

/// `a / g` for a primitive divisor `g` with `g(0) = ±1`, keeping integrality.
fn div_exact(a: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    // g(0) = ±1 divides q(0) = 1, so power-series division by g is exact in Z[[z]]
    let n = a.degree().unwrap_or(0) + 1;
    let quot = IntPoly::new(a.series_div(g, n));
    if quot.mul(g) != *a {
        return Err(Error::Invariant("inexact polynomial division".into()));
    }
    Ok(quot)
}
