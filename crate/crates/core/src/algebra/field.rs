//! Exact arithmetic in the real field `Q(c)` with `c = 2cos(pi/L)`.
//!
//! Elements are rational-coefficient polynomials in `c` of degree below the
//! field degree, kept in lowest terms over a common positive denominator.
//! Coefficients live in `i128` and move to `BigInt` only when an operation
//! would overflow; the representation is canonical so derived equality and
//! hashing are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::{degree_2cos, dickson, minimal_polynomial_2cos, IntPoly, Sturm};
use crate::diagram::Label;
use crate::error::{Error, Result};

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

trait Coeff:
    Clone + PartialEq + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul
{
    fn fits(&self) -> bool;
}

impl Coeff for i128 {
    fn fits(&self) -> bool {
        *self != i128::MIN
    }
}

impl Coeff for BigInt {
    fn fits(&self) -> bool {
        true
    }
}

fn cadd<T: Coeff>(a: &T, b: &T) -> Option<T> {
    a.checked_add(b).filter(Coeff::fits)
}

fn csub<T: Coeff>(a: &T, b: &T) -> Option<T> {
    a.checked_sub(b).filter(Coeff::fits)
}

fn cmul<T: Coeff>(a: &T, b: &T) -> Option<T> {
    a.checked_mul(b).filter(Coeff::fits)
}

fn normalize<T: Coeff>(mut num: Vec<T>, mut den: T) -> Option<(Vec<T>, T)> {
    if num.iter().all(Zero::is_zero) {
        return Some((num, T::one()));
    }
    if den.is_negative() {
        den = T::zero().checked_sub(&den).filter(Coeff::fits)?;
        for c in &mut num {
            *c = T::zero().checked_sub(c).filter(Coeff::fits)?;
        }
    }
    if den.is_one() {
        return Some((num, den));
    }
    let mut g = den.clone();
    for c in &num {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    if !g.is_one() {
        for c in &mut num {
            *c = c.div_floor(&g);
        }
        den = den.div_floor(&g);
    }
    Some((num, den))
}

fn add_generic<T: Coeff>(a: &[T], da: &T, b: &[T], db: &T, subtract: bool) -> Option<(Vec<T>, T)> {
    let combine = |x: &T, y: &T| if subtract { csub(x, y) } else { cadd(x, y) };
    if da == db {
        let num = a
            .iter()
            .zip(b)
            .map(|(x, y)| combine(x, y))
            .collect::<Option<Vec<T>>>()?;
        return normalize(num, da.clone());
    }
    let g = da.gcd(db);
    let ma = db.div_floor(&g);
    let mb = da.div_floor(&g);
    let den = cmul(da, &ma)?;
    let num = a
        .iter()
        .zip(b)
        .map(|(x, y)| combine(&cmul(x, &ma)?, &cmul(y, &mb)?))
        .collect::<Option<Vec<T>>>()?;
    normalize(num, den)
}

/// `minpoly` holds the non-leading coefficients of the monic minimal polynomial.
fn mul_generic<T: Coeff>(a: &[T], da: &T, b: &[T], db: &T, minpoly: &[T]) -> Option<(Vec<T>, T)> {
    let d = a.len();
    let mut raw = vec![T::zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            raw[i + j] = cadd(&raw[i + j], &cmul(x, y)?)?;
        }
    }
    for k in (d..2 * d - 1).rev() {
        let top = std::mem::replace(&mut raw[k], T::zero());
        if top.is_zero() {
            continue;
        }
        // x^k = x^(k-d) * x^d and x^d = -sum p_j x^j
        for (j, p) in minpoly.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            raw[k - d + j] = csub(&raw[k - d + j], &cmul(&top, p)?)?;
        }
    }
    raw.truncate(d);
    normalize(raw, cmul(da, db)?)
}

fn scale_generic<T: Coeff>(a: &[T], da: &T, p: &T, q: &T) -> Option<(Vec<T>, T)> {
    let num = a.iter().map(|x| cmul(x, p)).collect::<Option<Vec<T>>>()?;
    normalize(num, cmul(da, q)?)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: Box<[i128]>, den: i128 },
    Big { num: Box<[BigInt]>, den: BigInt },
}

/// An element of `Q(2cos(pi/L))`; see [`NumberField`] for the operations that
/// need the field's defining polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl FieldElement {
    fn from_small(num: Vec<i128>, den: i128) -> Self {
        FieldElement(Repr::Small {
            num: num.into_boxed_slice(),
            den,
        })
    }

    fn from_big(num: Vec<BigInt>, den: BigInt) -> Self {
        let fits = |x: &BigInt| x.to_i128().filter(|v| *v != i128::MIN);
        if let Some(d) = fits(&den) {
            if let Some(small) = num.iter().map(fits).collect::<Option<Vec<_>>>() {
                return Self::from_small(small, d);
            }
        }
        FieldElement(Repr::Big {
            num: num.into_boxed_slice(),
            den,
        })
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den)),
            Repr::Big { num, den } => (num.to_vec(), den.clone()),
        }
    }

    /// Number of stored coefficients (the field degree).
    pub fn len(&self) -> usize {
        match &self.0 {
            Repr::Small { num, .. } => num.len(),
            Repr::Big { num, .. } => num.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => num.iter().all(|c| *c == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    /// True when the element is a rational number (no `c` terms).
    pub fn is_rational(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => num[1..].iter().all(|c| *c == 0),
            Repr::Big { num, .. } => num[1..].iter().all(Zero::is_zero),
        }
    }

    /// Coefficients of `1, c, c^2, ...` as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let (num, den) = self.big_parts();
        num.into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect()
    }

    /// Numerator polynomial and positive common denominator.
    pub fn numerator_and_denominator(&self) -> (IntPoly, BigInt) {
        let (num, den) = self.big_parts();
        (IntPoly::new(num), den)
    }

    /// Exact product with the rational `p/q`.
    pub fn scale(&self, p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        if let Repr::Small { num, den } = &self.0 {
            if let Some((n, d)) = scale_generic(num, den, &(p as i128), &(q as i128)) {
                return Self::from_small(n, d);
            }
        }
        let (num, den) = self.big_parts();
        let (n, d) = scale_generic(&num, &den, &BigInt::from(p), &BigInt::from(q)).expect("bigint");
        Self::from_big(n, d)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        assert_eq!(self.len(), other.len(), "elements of different fields");
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.0, &other.0) {
            if let Some((n, d)) = add_generic(a, da, b, db, subtract) {
                return Self::from_small(n, d);
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let (n, d) = add_generic(&a, &da, &b, &db, subtract).expect("bigint");
        Self::from_big(n, d)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.combine(rhs, false)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.combine(rhs, true)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.combine(&rhs, false)
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.combine(&rhs, true)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.0 {
            // canonical small values never hold i128::MIN
            Repr::Small { num, den } => FieldElement::from_small(num.iter().map(|c| -c).collect(), *den),
            Repr::Big { num, den } => FieldElement::from_big(num.iter().map(|c| -c).collect(), den.clone()),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", format_exact(self))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_exact(self))
    }
}

/// Exact text such as `1 + 1/2*c^2`, where `c` is the field generator.
pub fn format_exact(x: &FieldElement) -> String {
    let coeffs = x.coefficients();
    let mut s = String::new();
    for (k, q) in coeffs.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let neg = q.is_negative();
        let mag = q.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "c".to_string(),
            _ => format!("c^{k}"),
        };
        if k == 0 {
            s.push_str(&mag.to_string());
        } else if mag.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{mag}*{mono}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// The real field `Q(2cos(pi/L))` with a certified rational enclosure of
/// its generator, which is the largest real root of the minimal polynomial.
#[derive(Debug)]
pub struct NumberField {
    conductor: u64,
    minpoly: IntPoly,
    min_small: Option<Vec<i128>>,
    min_big: Vec<BigInt>,
    lower: BigRational,
    upper: BigRational,
    upper_sign: i32,
    generator_f64: f64,
}

pub const DEFAULT_DEGREE_CAP: usize = 64;

impl NumberField {
    /// Field generated by `2cos(pi/L)`; refuses fields of degree above `degree_cap`.
    pub fn new(conductor: u64, degree_cap: usize) -> Result<Arc<Self>> {
        if conductor == 0 {
            return Err(Error::Config("conductor must be positive".into()));
        }
        let degree = degree_2cos(conductor) as usize;
        if degree > degree_cap {
            return Err(Error::CapExceeded {
                what: "field degree",
                value: degree,
                cap: degree_cap,
            });
        }
        let minpoly = minimal_polynomial_2cos(conductor);
        let min_big: Vec<BigInt> = minpoly.coeffs()[..degree].to_vec();
        let min_small = min_big
            .iter()
            .map(|c| c.to_i128().filter(|v| *v != i128::MIN))
            .collect::<Option<Vec<_>>>();
        let (lower, upper, upper_sign) = isolate_largest_root(&minpoly, conductor);
        let generator_f64 = midpoint(&lower, &upper).to_f64().unwrap_or(f64::NAN);
        Ok(Arc::new(NumberField {
            conductor,
            minpoly,
            min_small,
            min_big,
            lower,
            upper,
            upper_sign,
            generator_f64,
        }))
    }

    /// Smallest single-generator field containing `2cos(pi/m)` for every
    /// given label. Labels 2 and 3 (and infinity) give rational constants and
    /// do not enlarge the field.
    pub fn for_labels(labels: &[u32], degree_cap: usize) -> Result<Arc<Self>> {
        let mut l: u64 = 1;
        for &m in labels.iter().filter(|&&m| m >= 4) {
            l = l.lcm(&(m as u64));
            if degree_2cos(l) as usize > degree_cap {
                return Err(Error::CapExceeded {
                    what: "field degree",
                    value: degree_2cos(l) as usize,
                    cap: degree_cap,
                });
            }
        }
        Self::new(l, degree_cap)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.min_big.len()
    }

    pub fn minimal_polynomial(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn generator_approx(&self) -> f64 {
        self.generator_f64
    }

    /// Certified rational bounds `lower < c <= upper` (equal when `c` is rational).
    pub fn generator_enclosure(&self) -> (&BigRational, &BigRational) {
        (&self.lower, &self.upper)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_small(vec![0; self.degree()], 1)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        self.from_rational(v, 1)
    }

    pub fn from_rational(&self, p: i64, q: i64) -> FieldElement {
        assert!(q != 0, "zero denominator");
        let mut num = vec![0i128; self.degree()];
        num[0] = p as i128;
        let (n, d) = normalize(num, q as i128).expect("i64 inputs fit");
        FieldElement::from_small(n, d)
    }

    /// The generator `c = 2cos(pi/L)`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&IntPoly::monomial(1))
    }

    /// Reduces an integer polynomial in `c` into the field.
    pub fn from_poly(&self, p: &IntPoly) -> FieldElement {
        let d = self.degree();
        let mut raw: Vec<BigInt> = p.coeffs().to_vec();
        for k in (d..raw.len()).rev() {
            let top = std::mem::take(&mut raw[k]);
            if top.is_zero() {
                continue;
            }
            for (j, q) in self.min_big.iter().enumerate() {
                raw[k - d + j] -= &top * q;
            }
        }
        raw.resize(d, BigInt::zero());
        FieldElement::from_big(raw, BigInt::one())
    }

    /// Element with the given rational coefficients of `1, c, c^2, ...`.
    pub fn from_coefficients(&self, coeffs: &[BigRational]) -> FieldElement {
        let den = coeffs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|q| (q * BigRational::from(den.clone())).to_integer())
            .collect();
        let reduced = self.from_poly(&IntPoly::new(num));
        let (n, _) = reduced.big_parts();
        let (n, d) = normalize(n, den).expect("bigint");
        FieldElement::from_big(n, d)
    }

    /// `2cos(pi/m)` for a Coxeter label: `-2` for `m = 1`, `2` for infinity.
    pub fn two_cos_pi_over(&self, m: Label) -> Result<FieldElement> {
        match m {
            Label::Infinity => Ok(self.from_int(2)),
            Label::Finite(0) => Err(Error::InvalidDiagram("label 0".into())),
            Label::Finite(1) => Ok(self.from_int(-2)),
            Label::Finite(2) => Ok(self.zero()),
            Label::Finite(3) => Ok(self.one()),
            Label::Finite(m) => {
                if !self.conductor.is_multiple_of(m as u64) {
                    return Err(Error::Invariant(format!(
                        "2cos(pi/{m}) is not in Q(2cos(pi/{}))",
                        self.conductor
                    )));
                }
                // 2cos(pi/m) = D_{L/m}(2cos(pi/L))
                Ok(self.from_poly(&dickson((self.conductor / m as u64) as usize)))
            }
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        assert_eq!(a.len(), self.degree(), "element from a different field");
        assert_eq!(b.len(), self.degree(), "element from a different field");
        if let (Repr::Small { num: x, den: dx }, Repr::Small { num: y, den: dy }) = (&a.0, &b.0) {
            // rational operand: plain scaling
            if b.is_rational() {
                if let Some((n, d)) = scale_generic(x, dx, &y[0], dy) {
                    return FieldElement::from_small(n, d);
                }
            } else if a.is_rational() {
                if let Some((n, d)) = scale_generic(y, dy, &x[0], dx) {
                    return FieldElement::from_small(n, d);
                }
            } else if let Some(minp) = &self.min_small {
                if let Some((n, d)) = mul_generic(x, dx, y, dy, minp) {
                    return FieldElement::from_small(n, d);
                }
            }
        }
        let (x, dx) = a.big_parts();
        let (y, dy) = b.big_parts();
        let (n, d) = mul_generic(&x, &dx, &y, &dy, &self.min_big).expect("bigint");
        FieldElement::from_big(n, d)
    }

    /// `a * b + acc`, the inner step of dot products.
    pub fn mul_add(&self, acc: &FieldElement, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return acc.clone();
        }
        acc + &self.mul(a, b)
    }

    /// Exact sign.
    ///
    /// A floating-point evaluation decides whenever its value clears a
    /// rigorous rounding-error bound by a wide margin; otherwise the
    /// numerator polynomial is evaluated in rational interval arithmetic on
    /// the generator enclosure, bisecting the enclosure until the interval
    /// excludes zero. Zero itself is recognised exactly from the normal form.
    pub fn sign(&self, x: &FieldElement) -> Sign {
        if x.is_zero() {
            return Sign::Zero;
        }
        let (num, _den) = x.numerator_and_denominator();
        if let Some(s) = self.float_sign(&num) {
            return s;
        }
        let mut lo = self.lower.clone();
        let mut hi = self.upper.clone();
        loop {
            let (a, b) = eval_interval(&num, &lo, &hi);
            if a.is_positive() {
                return Sign::Positive;
            }
            if b.is_negative() {
                return Sign::Negative;
            }
            if lo == hi {
                // rational generator: the interval is a point
                return if a.is_zero() { Sign::Zero } else if a.is_positive() { Sign::Positive } else { Sign::Negative };
            }
            for _ in 0..32 {
                self.bisect(&mut lo, &mut hi);
            }
        }
    }

    fn float_sign(&self, num: &IntPoly) -> Option<Sign> {
        let c = self.generator_f64;
        let mut v = 0.0f64;
        let mut bound = 0.0f64;
        let r = c.abs() + 1.0;
        let mut pow = 1.0;
        for coeff in num.coeffs() {
            let f = coeff.to_f64()?;
            if !f.is_finite() {
                return None;
            }
            bound += f.abs() * pow;
            pow *= r;
        }
        for coeff in num.coeffs().iter().rev() {
            v = v * c + coeff.to_f64()?;
        }
        if !v.is_finite() || !bound.is_finite() {
            return None;
        }
        // rounding and generator error stay below 1e-13 * bound for degree <= 64
        if v.abs() > 1e-9 * bound {
            Some(if v > 0.0 { Sign::Positive } else { Sign::Negative })
        } else {
            None
        }
    }

    fn bisect(&self, lo: &mut BigRational, hi: &mut BigRational) {
        if lo == hi {
            return;
        }
        let mid = midpoint(lo, hi);
        let s = sign_i32(&self.minpoly.eval_rational(&mid));
        if s == 0 {
            *lo = mid.clone();
            *hi = mid;
        } else if s == self.upper_sign {
            *hi = mid;
        } else {
            *lo = mid;
        }
    }

    pub fn cmp(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        self.sign(&(a - b)).to_ordering()
    }

    pub fn to_f64(&self, x: &FieldElement) -> f64 {
        let (num, den) = x.numerator_and_denominator();
        let c = self.generator_f64;
        let v = num.eval_f64(c);
        let bound = num.eval_f64_abs(c.abs());
        // Horner in f64 is only trustworthy when cancellation is mild.
        if let Some(d) = den.to_f64().filter(|d| d.is_finite()) {
            if v.is_finite() && bound.is_finite() && bound <= 8.0 * v.abs() {
                return v / d;
            }
        }
        let bits = 64 + (bound.max(1.0).log2().ceil() as u32).min(4096);
        let (a, b) = self.value_enclosure(x, bits);
        midpoint(&a, &b).to_f64().unwrap_or(f64::NAN)
    }

    /// Rational interval containing `x`, of width at most `2^-bits` when the
    /// generator enclosure allows it.
    pub fn value_enclosure(&self, x: &FieldElement, bits: u32) -> (BigRational, BigRational) {
        let (num, den) = x.numerator_and_denominator();
        let den = BigRational::from(den);
        let tol = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let mut lo = self.lower.clone();
        let mut hi = self.upper.clone();
        loop {
            let (a, b) = eval_interval(&num, &lo, &hi);
            let (a, b) = (a / &den, b / &den);
            if &b - &a <= tol || lo == hi {
                return (a, b);
            }
            for _ in 0..16 {
                self.bisect(&mut lo, &mut hi);
            }
        }
    }

    /// Decimal rendering with `digits` significant digits (trailing zeros trimmed).
    pub fn to_decimal(&self, x: &FieldElement, digits: usize) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let approx = self.to_f64(x);
        let mut exp = if approx.is_finite() && approx != 0.0 {
            approx.abs().log10().floor() as i64
        } else {
            0
        };
        let bits = (((digits as i64 + 6 - exp).max(8)) as f64 * std::f64::consts::LOG2_10).ceil() as u32;
        let (a, b) = self.value_enclosure(x, bits);
        let mid = midpoint(&a, &b);
        let neg = mid.is_negative();
        let mag = mid.abs();
        let render = |exp: i64| -> BigInt {
            let shift = digits as i64 - 1 - exp;
            let scaled = if shift >= 0 {
                &mag * BigRational::from(BigInt::from(10).pow(shift as u32))
            } else {
                &mag / BigRational::from(BigInt::from(10).pow((-shift) as u32))
            };
            scaled.round().to_integer()
        };
        let mut int = render(exp);
        let limit = BigInt::from(10).pow(digits as u32);
        if int >= limit {
            exp += 1;
            int = render(exp);
        } else if int < BigInt::from(10).pow(digits as u32 - 1) {
            exp -= 1;
            int = render(exp);
        }
        let s = int.to_string();
        let body = if (0..=20).contains(&exp) {
            let point = (exp + 1) as usize;
            if point >= s.len() {
                format!("{}{}", s, "0".repeat(point - s.len()))
            } else {
                trim_fraction(format!("{}.{}", &s[..point], &s[point..]))
            }
        } else if (-6..0).contains(&exp) {
            trim_fraction(format!("0.{}{}", "0".repeat((-exp - 1) as usize), s))
        } else {
            let mant = trim_fraction(format!("{}.{}", &s[..1], &s[1..]));
            format!("{mant}e{exp}")
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from(BigInt::from(2))
}

fn sign_i32(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Horner evaluation of an integer polynomial over a rational interval.
fn eval_interval(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let products = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mut min = products[0].clone();
        let mut max = products[0].clone();
        for p in &products[1..] {
            if *p < min {
                min = p.clone();
            }
            if *p > max {
                max = p.clone();
            }
        }
        let c = BigRational::from(c.clone());
        a = min + &c;
        b = max + c;
    }
    (a, b)
}

/// Certified enclosure of `2cos(pi/L)`, the largest root of `p`.
/// Returns `(lower, upper, sign of p at upper)`.
fn isolate_largest_root(p: &IntPoly, conductor: u64) -> (BigRational, BigRational, i32) {
    if p.degree() == Some(1) {
        let root = BigRational::new(-p.coeff(0), p.coeff(1));
        return (root.clone(), root, 0);
    }
    let sturm = Sturm::new(p);
    let approx = 2.0 * (std::f64::consts::PI / conductor as f64).cos();
    let mut margin = 1e-9;
    let (mut lo, mut hi) = loop {
        let lo = BigRational::from_float(approx - margin).expect("finite");
        let hi = BigRational::from_float(approx + margin).expect("finite");
        if sturm.roots_above(&lo) == 1 && sturm.roots_above(&hi) == 0 {
            break (lo, hi);
        }
        margin *= 16.0;
        assert!(margin < 16.0, "failed to isolate 2cos(pi/{conductor})");
    };
    let upper_sign = sign_i32(&p.eval_rational(&hi));
    debug_assert!(upper_sign != 0);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << 96u32);
    while &hi - &lo > tol {
        let mid = midpoint(&lo, &hi);
        let s = sign_i32(&p.eval_rational(&mid));
        if s == upper_sign {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi, upper_sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(l: u64) -> Arc<NumberField> {
        NumberField::new(l, DEFAULT_DEGREE_CAP).unwrap()
    }

    #[test]
    fn enclosure_contains_generator() {
        for l in [1u64, 2, 3, 4, 5, 7, 12, 20, 60] {
            let f = field(l);
            let (a, b) = f.generator_enclosure();
            let c = 2.0 * (std::f64::consts::PI / l as f64).cos();
            assert!(a.to_f64().unwrap() <= c + 1e-15 && c - 1e-15 <= b.to_f64().unwrap(), "L={l}");
            assert!((f.generator_approx() - c).abs() < 1e-14);
        }
    }

    #[test]
    fn sign_examples() {
        let f = field(5);
        assert_eq!(f.sign(&f.zero()), Sign::Zero);
        // 2cos(pi/5) - 1 ~ 0.618
        let x = &f.generator() - &f.one();
        assert_eq!(f.sign(&x), Sign::Positive);
        // c^2 - c - 1 = 0 exactly
        let c = f.generator();
        let y = &(&f.mul(&c, &c) - &c) - &f.one();
        assert!(y.is_zero());

        let f7 = field(7);
        let minus_cos = f7.generator().scale(-1, 2);
        assert_eq!(f7.sign(&minus_cos), Sign::Negative);
        assert!((f7.to_f64(&minus_cos) + 0.9009688679).abs() < 1e-9);
    }

    #[test]
    fn sign_of_tiny_values_uses_interval_path() {
        // (c - p/q) with p/q a very good rational approximation of sqrt 2
        let f = field(4);
        let c = f.generator();
        let approx = f.from_rational(665857, 470832); // slightly above sqrt 2
        assert_eq!(f.sign(&(&c - &approx)), Sign::Negative);
        let approx = f.from_rational(470832, 332929); // slightly below
        assert_eq!(f.sign(&(&c - &approx)), Sign::Positive);
        // far beyond f64 resolution: continued-fraction convergents of sqrt 2
        let (mut p, mut q) = (BigInt::from(1), BigInt::from(1));
        for _ in 0..60 {
            let np = &p + BigInt::from(2) * &q;
            let nq = &p + &q;
            p = np;
            q = nq;
        }
        let r = f.from_coefficients(&[BigRational::new(p.clone(), q.clone())]);
        let expected = if (&p * &p) > BigInt::from(2) * &q * &q { Sign::Negative } else { Sign::Positive };
        assert_eq!(f.sign(&(&c - &r)), expected);
    }

    #[test]
    fn two_cos_values() {
        let f = field(60);
        for m in [3u32, 4, 5, 6, 10, 12, 15, 20, 30, 60] {
            let v = f.two_cos_pi_over(Label::Finite(m)).unwrap();
            let want = 2.0 * (std::f64::consts::PI / m as f64).cos();
            assert!((f.to_f64(&v) - want).abs() < 1e-12, "m={m}");
        }
        assert_eq!(f.two_cos_pi_over(Label::Infinity).unwrap(), f.from_int(2));
        assert_eq!(f.two_cos_pi_over(Label::Finite(2)).unwrap(), f.zero());
        assert!(f.two_cos_pi_over(Label::Finite(7)).is_err());
    }

    #[test]
    fn field_for_labels_skips_rational_cosines() {
        let f = NumberField::for_labels(&[3, 2], 64).unwrap();
        assert_eq!(f.degree(), 1);
        let f = NumberField::for_labels(&[3, 4, 5], 64).unwrap();
        assert_eq!(f.conductor(), 20);
        assert_eq!(f.degree(), 8);
        assert!(matches!(
            NumberField::for_labels(&[7, 11, 13], 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let f = field(5);
        let mut x = f.from_int(3);
        for _ in 0..200 {
            x = f.mul(&x, &f.generator());
            x = &x + &f.from_rational(1, 7);
        }
        assert!(matches!(x.0, Repr::Big { .. }));
        // value stays consistent with floating evaluation in log scale
        let v = f.value_enclosure(&x, 8);
        assert!(v.0.is_positive());
        let y = &x - &x;
        assert!(y.is_zero());
        assert!(matches!(y.0, Repr::Small { .. }));
    }

    #[test]
    fn decimal_rendering() {
        let f = field(4);
        assert_eq!(f.to_decimal(&f.generator(), 30), "1.41421356237309504880168872421");
        assert_eq!(f.to_decimal(&f.from_rational(-1, 2), 30), "-0.5");
        assert_eq!(f.to_decimal(&f.from_int(1000), 5), "1000");
        let f5 = field(5);
        assert_eq!(f5.to_decimal(&f5.generator(), 12), "1.61803398875");
    }

    #[test]
    fn exact_format() {
        let f = field(5);
        let x = &f.generator().scale(3, 2) - &f.one();
        assert_eq!(format_exact(&x), "-1 + 3/2*c");
        assert_eq!(format_exact(&f.zero()), "0");
    }
}
