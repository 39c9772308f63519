use std::sync::Arc;

use super::field::{FieldElement, NumberField, Sign};
use crate::diagram::CoxeterDiagram;
use crate::error::{Error, Result};

/// Vector in the simple-root basis; `v[i]` is the coefficient of `alpha_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<FieldElement>);

impl RootVector {
    pub fn simple(field: &NumberField, n: usize, i: usize) -> Self {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        RootVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    /// Indices with a nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    /// Sum of coordinates.
    pub fn height(&self) -> FieldElement {
        let mut it = self.0.iter();
        let first = it.next().expect("nonempty").clone();
        it.fold(first, |acc, x| &acc + x)
    }
}

impl std::ops::Index<usize> for RootVector {
    type Output = FieldElement;
    fn index(&self, i: usize) -> &FieldElement {
        &self.0[i]
    }
}

/// The symmetric form `(alpha_i | alpha_j) = -cos(pi/m_ij)` of a Coxeter diagram,
/// together with its field of definition.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    field: Arc<NumberField>,
    rank: usize,
    /// `(alpha_i | alpha_j)`
    entries: Vec<FieldElement>,
    /// `-2 (alpha_i | alpha_j) = 2cos(pi/m_ij)`, off-diagonal reflection coefficients
    reflect: Vec<FieldElement>,
}

impl BilinearForm {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.rank + j]
    }

    /// `2cos(pi/m_ij)`.
    pub fn reflection_coefficient(&self, i: usize, j: usize) -> &FieldElement {
        &self.reflect[i * self.rank + j]
    }

    pub fn simple_root(&self, i: usize) -> RootVector {
        RootVector::simple(&self.field, self.rank, i)
    }

    fn check_dim(&self, v: &RootVector) -> Result<()> {
        if v.dim() != self.rank {
            return Err(Error::DimensionMismatch {
                left: v.dim(),
                right: self.rank,
            });
        }
        Ok(())
    }

    /// `(u | v)`.
    pub fn inner(&self, u: &RootVector, v: &RootVector) -> Result<FieldElement> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.rank {
            if u[i].is_zero() {
                continue;
            }
            let bv = self.inner_simple_unchecked(v, i);
            acc = f.mul_add(&acc, &u[i], &bv);
        }
        Ok(acc)
    }

    /// `(v | alpha_i)`.
    pub fn inner_simple(&self, v: &RootVector, i: usize) -> Result<FieldElement> {
        self.check_dim(v)?;
        self.check_index(i)?;
        Ok(self.inner_simple_unchecked(v, i))
    }

    fn inner_simple_unchecked(&self, v: &RootVector, i: usize) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for j in 0..self.rank {
            acc = f.mul_add(&acc, self.entry(i, j), &v[j]);
        }
        acc
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.rank,
            });
        }
        Ok(())
    }

    /// `sigma_i(v) = v - 2 (v | alpha_i) alpha_i`.
    pub fn apply_reflection(&self, i: usize, v: &RootVector) -> Result<RootVector> {
        self.check_dim(v)?;
        self.check_index(i)?;
        Ok(self.reflect_unchecked(i, v))
    }

    /// Only coordinate `i` changes: `v_i -> -v_i + sum_{j != i} 2cos(pi/m_ij) v_j`.
    pub(crate) fn reflect_unchecked(&self, i: usize, v: &RootVector) -> RootVector {
        let mut out = v.clone();
        out.0[i] = self.reflected_coordinate(i, &v.0);
        out
    }

    pub(crate) fn reflected_coordinate(&self, i: usize, v: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let mut acc = -&v[i];
        for (j, vj) in v.iter().enumerate() {
            if j != i {
                acc = f.mul_add(&acc, self.reflection_coefficient(i, j), vj);
            }
        }
        acc
    }

    /// Sign of `(v | alpha_i)` together with the sign of `(v | alpha_i) + 1`.
    pub fn small_root_test(&self, v: &RootVector, i: usize) -> (Sign, Sign) {
        let ip = self.inner_simple_unchecked(v, i);
        let s = self.field.sign(&ip);
        let s1 = self.field.sign(&(&ip + &self.field.one()));
        (s, s1)
    }
}

/// The exact Gram matrix of the diagram's bilinear form.
pub fn gram_matrix(d: &CoxeterDiagram, degree_cap: usize) -> Result<BilinearForm> {
    let field = NumberField::for_labels(&d.finite_edge_labels(), degree_cap)?;
    gram_matrix_in(d, field)
}

/// Gram matrix over a caller-supplied field (which must contain every `2cos(pi/m_ij)`).
pub fn gram_matrix_in(d: &CoxeterDiagram, field: Arc<NumberField>) -> Result<BilinearForm> {
    let n = d.rank();
    let mut entries = Vec::with_capacity(n * n);
    let mut reflect = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let two_cos = field.two_cos_pi_over(d.label(i, j))?;
            entries.push(two_cos.scale(-1, 2));
            reflect.push(if i == j { field.zero() } else { two_cos });
        }
    }
    Ok(BilinearForm {
        field,
        rank: n,
        entries,
        reflect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn form(text: &str) -> BilinearForm {
        gram_matrix(&parse_diagram(text).unwrap().to_coxeter(), 64).unwrap()
    }

    #[test]
    fn gram_entries() {
        let b = form("rank 3\nedge 1 2 inf\nedge 2 3 inf\nedge 1 3 inf\n");
        let f = b.field().clone();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { f.one() } else { f.from_int(-1) };
                assert_eq!(b.entry(i, j), &want);
            }
        }
        let b = form("rank 2\n");
        assert!(b.entry(0, 1).is_zero());
        let b = form("rank 2\nedge 1 2 3\n");
        assert_eq!(b.entry(0, 1), &b.field().from_rational(-1, 2));
        assert!((b.field().to_f64(b.entry(0, 1)) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn inner_examples() {
        let b = form("rank 3\nedge 1 2 3\nedge 2 3 inf\n");
        let f = b.field().clone();
        let a1 = b.simple_root(0);
        let a2 = b.simple_root(1);
        let a3 = b.simple_root(2);
        assert_eq!(b.inner(&a1, &a1).unwrap(), f.one());
        assert_eq!(b.inner(&a2, &a3).unwrap(), f.from_int(-1));
        let sum = RootVector(vec![f.one(), f.one(), f.zero()]);
        // (a1 + a2 | a1) = 1 - 1/2
        assert_eq!(b.inner(&sum, &a1).unwrap(), f.from_rational(1, 2));
        assert!(matches!(
            b.inner(&sum, &RootVector(vec![f.one()])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflection_examples() {
        let b = form("rank 3\nedge 1 2 inf\nedge 2 3 inf\nedge 1 3 4\n");
        let f = b.field().clone();
        let a1 = b.simple_root(0);
        let a2 = b.simple_root(1);
        let neg = b.apply_reflection(0, &a1).unwrap();
        assert_eq!(neg, RootVector(vec![f.from_int(-1), f.zero(), f.zero()]));
        let r = b.apply_reflection(0, &a2).unwrap();
        assert_eq!(r, RootVector(vec![f.from_int(2), f.one(), f.zero()]));
        let r = b.apply_reflection(2, &a1).unwrap();
        assert_eq!(r[0], f.one());
        assert!((f.to_f64(&r[2]) - 2f64.sqrt()).abs() < 1e-14);
        assert!(b.apply_reflection(3, &a1).is_err());
    }

    #[test]
    fn off_diagonal_entries_in_range() {
        let b = form("rank 4\nedge 1 2 inf\nedge 2 3 5\nedge 3 4 4\nedge 1 4 6\nedge 1 3 3\n");
        let f = b.field().clone();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let e = b.entry(i, j);
                assert_ne!(f.sign(e), Sign::Positive);
                let shifted = e + &f.one();
                let s = f.sign(&shifted);
                assert_ne!(s, Sign::Negative);
                let inf = matches!(
                    (i.min(j), i.max(j)),
                    (0, 1)
                );
                assert_eq!(s == Sign::Zero, inf);
            }
        }
    }
}
