use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::spectral::{Enclosure, PerronCertificate};
use crate::error::{Error, Result};

/// Comparison of geodesic and element growth: `g_k ~ delta^k w_k`.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaReport {
    /// `mid(gamma) / mid(omega)`.
    pub delta_hat: f64,
    /// `[lo(gamma)/hi(omega), hi(gamma)/lo(omega)]`.
    pub delta_lo: f64,
    pub delta_hi: f64,
    /// `r_k = g_k / (delta_hat^k w_k)` for `k = 0..=K`.
    pub ratios: Vec<f64>,
    /// `|r_K - 1|`.
    pub trend: f64,
    /// `lo(gamma) > hi(omega)`, decided on exact bounds.
    pub strict_domination: bool,
}

impl DeltaReport {
    pub fn ratio(&self, k: usize) -> f64 {
        self.ratios[k]
    }

    pub fn deviation(&self, k: usize) -> f64 {
        (self.ratios[k] - 1.0).abs()
    }
}

pub fn delta_report(
    w: &[BigUint],
    g: &[BigUint],
    omega: &Enclosure,
    gamma: &Enclosure,
    certificates: [&PerronCertificate; 2],
) -> Result<DeltaReport> {
    if let Some(c) = certificates.iter().find(|c| !c.is_certified()) {
        return Err(Error::MissingCertificate(format!("{:?}", c.conclusion)));
    }
    if w.len() != g.len() || w.is_empty() {
        return Err(Error::DimensionMismatch {
            left: w.len(),
            right: g.len(),
        });
    }
    if omega.lo.is_zero() {
        return Err(Error::MissingCertificate("word growth rate is not positive".into()));
    }
    let delta = gamma.midpoint() / omega.midpoint();
    let delta_hat = delta.to_f64().unwrap_or(f64::NAN);
    let ln_delta = delta_hat.ln();
    let ratios: Vec<f64> = w
        .iter()
        .zip(g)
        .enumerate()
        .map(|(k, (wk, gk))| {
            if wk.is_zero() {
                f64::NAN
            } else {
                (ln_big(gk) - ln_big(wk) - k as f64 * ln_delta).exp()
            }
        })
        .collect();
    let trend = (ratios.last().copied().unwrap_or(f64::NAN) - 1.0).abs();
    let ratio = |a: &BigRational, b: &BigRational| (a / b).to_f64().unwrap_or(f64::NAN);
    Ok(DeltaReport {
        delta_hat,
        delta_lo: ratio(&gamma.lo, &omega.hi),
        delta_hi: ratio(&gamma.hi, &omega.lo),
        ratios,
        trend,
        strict_domination: gamma.lo > omega.hi,
    })
}

/// Natural logarithm of a big integer without overflow.
pub(crate) fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}
