//! Dense univariate polynomials with integer coefficients, stored low degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact division by a monic divisor; `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        assert!(divisor.leading().is_one(), "divisor must be monic");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let q = rem[k + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::new(quot))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut p: Vec<BigInt> = self.coeffs.iter().map(|c| c / &g).collect();
        if p.last().is_some_and(|c| c.is_negative()) {
            for c in &mut p {
                *c = -&*c;
            }
        }
        Self::new(p)
    }

    /// Greatest common divisor over the rationals, returned primitive.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Remainder of `lc(d)^k * self` modulo `d`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.leading();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading();
            let shifted = {
                let mut c = vec![BigInt::zero(); rd - dd];
                c.extend(d.coeffs.iter().map(|x| x * &lr));
                IntPoly::new(c)
            };
            r = r.scale(&lc).sub(&shifted);
        }
        r
    }

    /// Exact quotient over the rationals when `divisor` divides `self`
    /// (up to a rational scalar); the result is scaled to be integral and primitive.
    pub fn div_primitive(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let lc = divisor.leading();
        let mut rem: Vec<BigRational> = self.coeffs.iter().map(|c| BigRational::from(c.clone())).collect();
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let q = &rem[k + dd] / BigRational::from(lc.clone());
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * BigRational::from(c.clone());
            }
            quot[k] = q;
        }
        if !rem.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(rational_to_primitive(&quot))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `sum |a_k| x^k`, the usual Horner error scale.
    pub fn eval_f64_abs(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN).abs())
    }

    /// Coefficients converted to `f64`.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `x^deg * p(1/x)` for the given nominal degree.
    pub fn reversed(&self, degree: usize) -> Self {
        let mut c = vec![BigInt::zero(); degree + 1];
        for (k, v) in self.coeffs.iter().enumerate() {
            assert!(k <= degree, "nominal degree too small");
            c[degree - k] = v.clone();
        }
        Self::new(c)
    }

    /// First `n` Taylor coefficients of `self / q`, assuming `q(0) = ±1`.
    pub fn series_div(&self, q: &Self, n: usize) -> Vec<BigInt> {
        let q0 = q.coeff(0);
        assert!(q0.abs().is_one(), "series division needs q(0) = ±1");
        let mut out: Vec<BigInt> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(q.coeffs.len().saturating_sub(1)) {
                acc -= q.coeff(j) * &out[k - j];
            }
            out.push(acc * &q0);
        }
        out
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

fn rational_to_primitive(coeffs: &[BigRational]) -> IntPoly {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    IntPoly::new(
        coeffs
            .iter()
            .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
            .collect(),
    )
    .primitive()
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// The `n`-th cyclotomic polynomial, via the Möbius product of `z^d - 1`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for &d in &divisors {
        let mut f = IntPoly::monomial(d as usize);
        f = f.sub(&IntPoly::one());
        match mobius(n / d) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.div_exact_monic(&den).expect("cyclotomic division is exact")
}

/// `D_k` with `D_k(z + 1/z) = z^k + z^-k`: `D_0 = 2`, `D_1 = x`, `D_{k+1} = x D_k - D_{k-1}`.
pub fn dickson(k: usize) -> IntPoly {
    let x = IntPoly::monomial(1);
    let mut prev = IntPoly::from_i64(&[2]);
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..k {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Degree of the minimal polynomial of `2cos(pi/L)`.
pub fn degree_2cos(l: u64) -> u64 {
    if l <= 1 {
        1
    } else {
        euler_phi(2 * l) / 2
    }
}

/// Minimal polynomial of `2cos(pi/L)` over the rationals (monic, integer).
///
/// For `L >= 2` the cyclotomic polynomial `Phi_{2L}` is palindromic of even
/// degree `2k`, and `z^-k Phi_{2L}(z)` rewritten in `x = z + 1/z` is the answer.
pub fn minimal_polynomial_2cos(l: u64) -> IntPoly {
    assert!(l >= 1, "L must be positive");
    if l == 1 {
        return IntPoly::from_i64(&[2, 1]);
    }
    let phi = cyclotomic(2 * l);
    let deg = phi.degree().expect("nonzero");
    debug_assert!(deg.is_multiple_of(2));
    let k = deg / 2;
    let mut out = IntPoly::new(vec![phi.coeff(k)]);
    for j in 1..=k {
        let a = phi.coeff(k + j);
        if !a.is_zero() {
            out = out.add(&dickson(j).scale(&a));
        }
    }
    out
}

/// Sturm sequence of a squarefree polynomial, over the rationals.
pub struct Sturm {
    seq: Vec<Vec<BigRational>>,
}

impl Sturm {
    pub fn new(p: &IntPoly) -> Self {
        let to_q = |q: &IntPoly| -> Vec<BigRational> {
            q.coeffs.iter().map(|c| BigRational::from(c.clone())).collect()
        };
        let mut seq = vec![to_q(p), to_q(&p.derivative())];
        loop {
            let n = seq.len();
            let r = rat_rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        Sturm { seq }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn sign_at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|q| {
            let mut acc = BigRational::zero();
            for c in q.iter().rev() {
                acc = acc * x + c;
            }
            sign_of(&acc)
        }))
    }

    fn sign_at_infinity(&self) -> usize {
        Self::variations(self.seq.iter().map(|q| sign_of(q.last().expect("nonzero"))))
    }

    /// Number of distinct real roots in `(a, +inf)`.
    pub fn roots_above(&self, a: &BigRational) -> usize {
        self.sign_at(a) - self.sign_at_infinity()
    }
}

fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let q = &r[k] / lb;
        for (j, c) in b.iter().enumerate() {
            let t = &q * c;
            r[k - db + j] -= t;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}
